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
#include <limits>
#include <vector>

#include "r2/quadrature.hpp"
#include "test_support.hpp"

using r2::Complex;
using r2::QuadResult;
using r2::Tolerance;
using r2test::rel_err;

namespace {
const double kPi = 3.14159265358979323846;
}

TEST_CASE("half line: exponential and algebraic endpoint behaviour") {
    QuadResult r = r2::integrate_half_line([](double t) { return std::exp(-t); });
    CHECK(r.converged);
    CHECK(rel_err(r.value, 1.0) < 1e-12);

    r = r2::integrate_half_line([](double t) { return std::exp(-t) / std::sqrt(t); });
    CHECK(r.converged);
    CHECK(rel_err(r.value, Complex(std::sqrt(kPi))) < 1e-11);

    // Scale far from one and an essential cutoff at the origin.
    r = r2::integrate_half_line([](double t) { return std::exp(-40.0 * t - 0.1 / t); });
    // int exp(-a t - b/t) dt = 2 sqrt(b/a) K_1(2 sqrt(ab)); a=40, b=0.1 -> K_1(4)
    const double k1_of_4 = 0.012483498887268432;
    CHECK(r.converged);
    CHECK(rel_err(r.value, Complex(2.0 * std::sqrt(0.1 / 40.0) * k1_of_4)) < 1e-10);
}

TEST_CASE("interval: Beta(1/2,1/2) needs the accurate complement") {
    QuadResult r = r2::integrate_complement(
        [](double x, double comp) { return 1.0 / std::sqrt(x * comp); }, 0.0, 1.0);
    CHECK(r.converged);
    CHECK(rel_err(r.value, Complex(kPi)) < 1e-11);

    r = r2::integrate_interval([](double x) { return std::cos(x); }, 0.0, kPi / 2);
    CHECK(r.converged);
    CHECK(rel_err(r.value, 1.0) < 1e-13);
    CHECK_THROWS_AS(r2::integrate_interval([](double) { return 1.0; }, 1.0, 1.0), r2::DomainError);
}

TEST_CASE("complex integrands are integrated component-wise") {
    const Complex i(0.0, 1.0);
    QuadResult r = r2::integrate_half_line([&](double t) { return std::exp(-t + i * t); });
    CHECK(r.converged);
    CHECK(rel_err(r.value, 1.0 / (1.0 - i)) < 1e-11);
}

TEST_CASE("quadrant oracle on separable and radial integrands") {
    QuadResult r = r2::integrate_quadrant([](double x, double y) { return std::exp(-x - y); });
    CHECK(r.converged);
    CHECK(rel_err(r.value, 1.0) < 1e-10);

    r = r2::integrate_quadrant(
        [](double x, double y) { return std::exp(-x - 2.0 * y) / std::sqrt(x * y); });
    CHECK(r.converged);
    CHECK(rel_err(r.value, Complex(kPi / std::sqrt(2.0))) < 1e-10);

    // Depends only on x + y: int_0^inf s * s^{-1/2} e^{-s} ds = Gamma(3/2).
    r = r2::integrate_quadrant([](double x, double y) { return std::exp(-(x + y)) / std::sqrt(x + y); });
    CHECK(r.converged);
    CHECK(rel_err(r.value, Complex(std::sqrt(kPi) / 2.0)) < 1e-10);
}

TEST_CASE("failure modes") {
    CHECK_THROWS_AS(r2::integrate_half_line([](double) { return std::nan(""); }), r2::NumericalError);
    Tolerance bad;
    bad.rel = 1e-16;
    CHECK_THROWS_AS(r2::integrate_half_line([](double t) { return std::exp(-t); }, bad), r2::DomainError);
    // Divergent integral: the estimate never settles, so it must not claim convergence.
    Tolerance small_budget;
    small_budget.max_evaluations = 20000;
    QuadResult r = r2::integrate_half_line([](double t) { return 1.0 / (1.0 + t); }, small_budget);
    CHECK_FALSE(r.converged);
}

TEST_CASE("error estimates are honest on a validation set") {
    struct Known {
        std::function<Complex(double)> f;
        double exact;
    };
    const std::vector<Known> set = {
        {[](double t) { return std::exp(-t); }, 1.0},
        {[](double t) { return t * t * std::exp(-3.0 * t); }, 2.0 / 27.0},
        {[](double t) { return std::exp(-t) / std::sqrt(t); }, std::sqrt(kPi)},
        {[](double t) { return 1.0 / (1.0 + t * t); }, kPi / 2.0},
        {[](double t) { return std::exp(-t * t); }, std::sqrt(kPi) / 2.0},
        {[](double t) { return std::pow(t, -0.75) * std::exp(-t); }, 3.6256099082219083119},
    };
    for (double rel : {1e-6, 1e-9, 1e-12}) {
        Tolerance tol;
        tol.rel = rel;
        for (const auto& k : set) {
            const QuadResult r = r2::integrate_half_line(k.f, tol);
            REQUIRE(r.converged);
            const double err = std::abs(r.value - k.exact);
            CHECK(err <= 10.0 * r.abs_error_estimate + 1e-14 * std::fabs(k.exact));
            CHECK(r.abs_error_estimate <= std::max(tol.abs, tol.rel * std::max(1.0, std::abs(r.value))));
        }
    }
}

TEST_CASE("results are bit-for-bit reproducible") {
    auto f = [](double x, double y) { return std::exp(-x - y - x * y / (x + y)); };
    const QuadResult a = r2::integrate_quadrant(f);
    const QuadResult b = r2::integrate_quadrant(f);
    CHECK(a.value == b.value);
    CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("worked examples and structural properties") {
    // int t^{-1/2} e^{-t-1/t} dt = sqrt(pi) e^{-2}
    QuadResult r = r2::integrate_half_line([](double t) { return std::exp(-t - 1.0 / t) / std::sqrt(t); });
    CHECK(r.converged);
    CHECK(rel_err(r.value, Complex(std::sqrt(kPi) * std::exp(-2.0))) < 1e-11);
    CHECK(std::fabs(r.value.real() - 0.2398755) < 1e-7);

    r = r2::integrate_interval([](double) { return 1.0; }, 0.0, 1.0);
    CHECK(rel_err(r.value, 1.0) < 1e-14);
    r = r2::integrate_interval([](double u) { return 2.0 / std::sqrt(kPi) * std::exp(-u * u); }, 0.0, 1.0);
    CHECK(rel_err(r.value, Complex(std::erf(1.0))) < 1e-13);

    // The compactified image t = u/(1-u) on (0,1) gives the same half-line value.
    auto g = [](double t) { return std::pow(t, 0.3) * std::exp(-2.0 * t); };
    const QuadResult direct = r2::integrate_half_line(g);
    const QuadResult mapped = r2::integrate_complement(
        [&](double u, double comp) { return g(u / comp) / (comp * comp); }, 0.0, 1.0);
    CHECK(rel_err(direct.value, mapped.value) < 1e-10);

    // Linearity.
    auto h = [](double t) { return std::exp(-t) * std::cos(t); };
    const QuadResult sum = r2::integrate_half_line([&](double t) { return 2.0 * g(t) + 3.0 * h(t); });
    CHECK(rel_err(sum.value, 2.0 * direct.value + 3.0 * r2::integrate_half_line(h).value) < 1e-10);

    // A separable quadrant integral is the product of its 1D factors.
    auto gx = [](double x) { return std::exp(-1.5 * x) * std::pow(x, -0.3); };
    auto gy = [](double y) { return std::exp(-0.5 * y - 0.2 / y); };
    const QuadResult prod = r2::integrate_quadrant([&](double x, double y) { return gx(x) * gy(y); });
    CHECK(rel_err(prod.value, r2::integrate_half_line(gx).value * r2::integrate_half_line(gy).value) < 1e-9);
}
