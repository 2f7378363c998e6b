/*
   Copyright 2026 The r2reduce Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "r2/reducer.hpp"
#include "test_support.hpp"

using r2::Complex;
using r2::Params;
using r2::TestIntegrand;
using r2::Triple;
using r2test::rel_err;

namespace {

Params pq(Triple T, double p, double q, double c = 0.0) {
    Params P;
    P.triple = T;
    P.p = p;
    P.q = q;
    P.c = c;
    return P;
}

TestIntegrand power_exp(double mu, double sigma) {
    TestIntegrand f;
    f.mu = mu;
    f.sigma = sigma;
    return f;
}

const r2::Rule& rule(const char* id) { return *r2::find_rule(id); }

}  // namespace

TEST_CASE("shift_power") {
    CHECK(r2::shift_power({0, 0, 1}, -0.5) == Triple{1, 1, 0});
    CHECK(r2::shift_power({4, 0, 0}, 2.0) == Triple{0, -4, 4});
    CHECK(r2::shift_power({3, 5, 1}, 0.0) == Triple{3, 5, 1});
    for (double d : {0.5, -1.0, 1.5, -2.0}) {
        CHECK(r2::shift_power(r2::shift_power({2, 3, 1}, d), -d) == Triple{2, 3, 1});
    }
    CHECK_THROWS_AS(r2::shift_power({0, 0, 0}, 0.25), r2::DomainError);
}

TEST_CASE("normalize finds shifted and mirrored rules") {
    const Params P = pq({1, 1, 0}, 1.0, 2.0);
    const TestIntegrand f = power_exp(1.0, 0.5);
    auto hit = r2::normalize(P, f);
    REQUIRE(hit);
    // (1,1,0) is itself a catalog triple, so the exact match wins.
    CHECK(hit->rule->id == "E2-110");

    // Force the shift: E1 reached from a triple outside the catalog.
    const Params Q = pq({-1, -1, 2}, 1.0, 2.0);
    hit = r2::normalize(Q, f);
    REQUIRE(hit);
    CHECK(hit->rule->id == "E1-pbm-corrected");
    CHECK(hit->delta == -0.5);
    CHECK(hit->f.mu == 1.5);

    hit = r2::normalize(pq({0, 4, 0}, 1.0, 3.0), power_exp(2.0, 1.0));
    REQUIRE(hit);
    CHECK(hit->rule->id == "K3-400");
    CHECK(hit->mirrored);
    CHECK(hit->params.p == 3.0);

    CHECK_FALSE(r2::normalize(pq({9, 9, 9}, 1.0, 1.0), power_exp(0.0, 1.0)));
}

TEST_CASE("normalization is value-preserving") {
    struct Case {
        Params P;
        TestIntegrand f;
    };
    Params inv;
    inv.triple = {3, 1, 2};  // a < b: reached through the x/y mirror
    inv.a = 0.7;
    inv.b = 1.9;
    inv.c = 0.8;
    const Case cases[] = {
        {pq({-1, -1, 2}, 1.0, 2.0), power_exp(1.0, 0.5)},
        {pq({0, 4, 0}, 1.5, 0.5), power_exp(2.2, 0.3)},
        {pq({3, 3, -1}, 0.7, 1.1), power_exp(1.0, 0.0)},
        {inv, power_exp(0.5, 0.2)},
    };
    for (const Case& c : cases) {
        auto hit = r2::normalize(c.P, c.f);
        REQUIRE(hit);
        const r2::QuadResult reduced = r2::reduce_to_1d(*hit->rule, hit->params, hit->f);
        const r2::QuadResult direct = r2::direct_2d(c.P, c.f);
        CHECK(reduced.converged);
        CHECK(direct.converged);
        CHECK(rel_err(reduced.value, direct.value) < 1e-6);
    }
}

TEST_CASE("direct_2d guards and trivial cases") {
    TestIntegrand zero;
    zero.coeff = 0.0;
    const r2::QuadResult z = r2::direct_2d(pq({0, 0, 1}, 1, 1), zero);
    CHECK(z.converged);
    CHECK(z.value == Complex(0.0, 0.0));

    // (x+y)^{-1/2} with f = 1 and no exponential decay diverges.
    CHECK_THROWS_AS(r2::direct_2d(pq({0, 0, 1}, 0, 0), power_exp(0.0, 0.0)), r2::DomainError);
    // x^{-2} at the y axis without a cutoff.
    CHECK_THROWS_AS(r2::direct_2d(pq({4, 0, 0}, 1, 1), power_exp(0.5, 0.0)), r2::DomainError);

    const r2::QuadResult e1 = r2::direct_2d(pq({0, 0, 1}, 1, 1), power_exp(0.0, 1.0));
    CHECK(e1.converged);
    CHECK(std::fabs(e1.value.real() - 0.7089815) < 1e-7);

    Params eq;
    eq.triple = {4, 4, 0};
    eq.a = eq.b = 1.0;
    eq.c = 1.0;
    const r2::VerificationRecord rec = r2::verify(rule("N6-aeqb"), eq, power_exp(1.5, 0.0));
    CHECK(rec.pass);
    CHECK(rec.lhs.value.real() > 0.0);
}

TEST_CASE("verify: corrected and uncorrected base case") {
    const Params P = pq({0, 0, 1}, 1.0, 4.0);
    const TestIntegrand f = power_exp(0.0, 1.0);
    const r2::VerificationRecord good = r2::verify(rule("E1-pbm-corrected"), P, f);
    CHECK(good.pass);
    CHECK(good.rel_diff <= 1e-6);
    const r2::VerificationRecord bad = r2::verify(rule("E1-uncorrected-pbm"), P, f);
    CHECK_FALSE(bad.pass);
    CHECK(bad.reason == "values differ");
    CHECK(std::fabs((bad.rhs.value / bad.lhs.value).real() - 1.0 / (3.0 * std::sqrt(5.0))) < 1e-8);

    CHECK(r2::verify(rule("K1-111"), pq({1, 1, 1}, 2.0, 2.0), power_exp(0.5, 0.0)).pass);

    // Errors end up in the record instead of escaping.
    const r2::VerificationRecord inapplicable = r2::verify(rule("E1-pbm-corrected"), pq({0, 0, 1}, 0.0, 1.0), f);
    CHECK_FALSE(inapplicable.pass);
    CHECK(inapplicable.reason.find("requires p>0") != std::string::npos);
}

TEST_CASE("swap covariance for the positive-exponent family") {
    const TestIntegrand f = power_exp(2.1, 0.4);
    const Params P = pq({5, 1, -1}, 0.6, 2.5);
    const Params M = r2::mirror(P);
    const r2::QuadResult direct = r2::direct_2d(P, f);
    const r2::QuadResult swapped = r2::direct_2d(M, f);
    CHECK(rel_err(direct.value, swapped.value) < 1e-8);
    CHECK(r2::verify(rule("K4-51m1"), P, f).pass);
}

TEST_CASE("positivity of verified values") {
    r2::SweepConfig cfg;
    cfg.rules = r2::select_rules("E3,K7,N2,T5,G1");
    cfg.samples = 4;
    cfg.seed = 5;
    for (const auto& rec : r2::run_sweep(cfg)) {
        CHECK(rec.pass);
        CHECK(rec.lhs.value.real() >= 0.0);
    }
}

TEST_CASE("sweeps are deterministic and independent of the job count") {
    r2::SweepConfig cfg;
    cfg.rules = r2::select_rules("K1,N5,R1");
    cfg.samples = 3;
    cfg.seed = 7;
    cfg.jobs = 1;
    const auto a = r2::run_sweep(cfg);
    cfg.jobs = 3;
    const auto b = r2::run_sweep(cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].rule_id == b[i].rule_id);
        CHECK(a[i].seed == b[i].seed);
        CHECK(a[i].lhs.value == b[i].lhs.value);
        CHECK(a[i].rhs.value == b[i].rhs.value);
        CHECK(a[i].case_index == static_cast<std::int64_t>(i));
    }
    CHECK(r2::case_seed(42, 0) != r2::case_seed(42, 1));
    CHECK(r2::case_seed(42, 0) != r2::case_seed(43, 0));
}

TEST_CASE("K7 is minus the p-derivative of K6") {
    int sign = 0;
    for (double p : {1.0, 2.0}) {
        Params P = pq({-1, 1, 1}, p, 1.0);
        const r2::DerivativeReport rep = r2::derivative_check_K7(P, power_exp(0.5, 0.0));
        CHECK(rep.converged);
        CHECK(std::min(rep.residual_plus, rep.residual_minus) <= 1e-4);
        CHECK(rep.sign == -1);
        CHECK(rep.halving_ratio > 3.5);
        CHECK(rep.halving_ratio < 4.5);
        if (sign != 0) CHECK(rep.sign == sign);
        sign = rep.sign;
    }
}
