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
#include "r2/reducer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

namespace r2 {

Triple shift_power(const Triple& triple, double delta) {
    const double twice = 2.0 * delta;
    if (twice != std::round(twice)) throw DomainError("shift_power: delta must be a multiple of 1/2");
    const int d = static_cast<int>(twice);
    return {triple.n - d, triple.m - d, triple.nu + d};
}

Params mirror(const Params& P) {
    Params M = P;
    std::swap(M.triple.n, M.triple.m);
    std::swap(M.a, M.b);
    std::swap(M.p, M.q);
    return M;
}

namespace {

// Every term must decay at large t once f's own exponential is included.
void check_large_t(const Kernel& kernel, const TestIntegrand& f) {
    for (const KernelTerm& term : kernel.terms) {
        if (!(term.beta.real() + f.sigma > 0.0)) throw DomainError("requires c+sigma>0 for convergence at large t");
    }
}

}  // namespace

std::optional<Normalized> normalize(const Params& params, const TestIntegrand& f) {
    static const double kDeltas[] = {0.0, 0.5, -0.5, 1.0, -1.0, 1.5, -1.5, 2.0, -2.0};
    for (bool mirrored : {false, true}) {
        if (mirrored && (params.h != Complex(0.0, 0.0) || params.tilde)) continue;
        const Params base = mirrored ? mirror(params) : params;
        for (double delta : kDeltas) {
            Params shifted = base;
            shifted.triple = shift_power(base.triple, delta);
            TestIntegrand g = f;
            g.mu = f.mu - delta;
            for (const Rule& rule : all_rules()) {
                if (rule.erratum || !accepts_triple(rule, shifted.triple)) continue;
                try {
                    const Kernel kernel = build_kernel(rule, shifted);
                    if (!(g.mu > kernel.mu_min())) continue;
                    check_large_t(kernel, g);
                } catch (const ApplicabilityError&) {
                    continue;
                } catch (const DomainError&) {
                    continue;
                }
                return Normalized{&rule, shifted, g, delta, mirrored};
            }
        }
    }
    return std::nullopt;
}

void check_quadrant_convergence(const Params& P, const TestIntegrand& f) {
    const double n = P.triple.n, m = P.triple.m, nu = P.triple.nu;
    const bool tilde_cut = P.tilde && P.a > P.b;
    auto refuse = [](const std::string& where) { throw DomainError("divergent integrand: " + where); };
    // Axes: near x = 0, t ~ x and the integrand behaves like x^{-n/2 + mu}.
    if (!(P.a > 0.0 || tilde_cut) && !(-0.5 * n + f.mu > -1.0)) refuse("x -> 0");
    if (!(P.b > 0.0 || tilde_cut) && !(-0.5 * m + f.mu > -1.0)) refuse("y -> 0");
    // Origin: homogeneous degree plus the area element.
    const bool origin_cut = P.a > 0.0 || P.b > 0.0 || P.j > 0.0 || tilde_cut;
    const double degree = -0.5 * (n + m + nu) + f.mu;
    if (!origin_cut && !(degree + 2.0 > 0.0)) refuse("origin");
    // Infinity along each axis direction, then radially.
    if (!(P.p > 0.0 || tilde_cut) && !(0.5 * (n + nu) > 1.0)) refuse("x -> infinity");
    if (!(P.q > 0.0) && !(0.5 * (m + nu) > 1.0)) refuse("y -> infinity");
    const bool radial_cut = (P.p > 0.0 && P.q > 0.0) || P.c + f.sigma > 0.0;
    if (!radial_cut && !(degree + 2.0 < 0.0)) refuse("infinity");
}

QuadResult direct_2d(const Params& P, const TestIntegrand& f, const Tolerance& tol) {
    if (f.coeff == 0.0) {
        QuadResult zero;
        zero.converged = true;
        return zero;
    }
    check_quadrant_convergence(P, f);
    const double hn = 0.5 * P.triple.n, hm = 0.5 * P.triple.m, hnu = 0.5 * P.triple.nu;
    const double d = P.a - P.b;
    auto g = [&](double x, double y) -> Complex {
        const double s = x + y;
        const double t = 1.0 / (1.0 / x + 1.0 / y);
        const double w = y / s;
        double e = -hn * std::log(x) - hm * std::log(y) - hnu * std::log(s) + f.mu * std::log(t);
        e -= P.a / x + P.b / y + (P.c + f.sigma) * t + P.h.real() * w + P.j / s + P.p * x + P.q * y;
        if (P.tilde) e -= d * (s / y) * (s / y) / x;
        if (e < -745.0) return 0.0;
        return f.coeff * std::exp(Complex(e, -P.h.imag() * w));
    };
    return integrate_quadrant(g, tol);
}

QuadResult reduce_to_1d(const Rule& rule, const Params& params, const TestIntegrand& f, const Tolerance& tol) {
    const Kernel kernel = build_kernel(rule, params);
    const double floor = kernel.mu_min();
    if (!(f.mu > floor)) {
        std::ostringstream msg;
        msg << "requires mu>" << floor << " (convergence at t=0)";
        throw DomainError(msg.str());
    }
    check_large_t(kernel, f);
    if (f.coeff == 0.0) {
        QuadResult zero;
        zero.converged = true;
        return zero;
    }
    QuadResult r = integrate_half_line([&](double t) { return f(t) * kernel.weight(t); }, tol);
    if (kernel.inner_failures && kernel.inner_failures->load() > 0) r.converged = false;
    return r;
}

VerificationRecord verify(const Rule& rule, const Params& params, const TestIntegrand& f,
                          const VerifyTolerances& tol) {
    VerificationRecord rec;
    rec.rule_id = rule.id;
    rec.params = params;
    rec.f = f;
    rec.tol = tol.check;
    try {
        rec.rhs = reduce_to_1d(rule, params, f, tol.evaluator);
    } catch (const std::exception& e) {
        rec.reason = std::string("reduced side: ") + e.what();
        return rec;
    }
    try {
        rec.lhs = direct_2d(params, f, tol.oracle);
    } catch (const std::exception& e) {
        rec.reason = std::string("oracle: ") + e.what();
        return rec;
    }
    rec.abs_diff = std::abs(rec.lhs.value - rec.rhs.value);
    const double scale = std::abs(rec.lhs.value);
    rec.rel_diff = scale > 0.0 ? rec.abs_diff / scale
                               : (rec.abs_diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
    const bool close = rec.abs_diff <= tol.check.abs || rec.rel_diff <= tol.check.rel;
    rec.pass = close && rec.lhs.converged && rec.rhs.converged;
    if (!rec.lhs.converged) {
        rec.reason = "oracle did not converge";
    } else if (!rec.rhs.converged) {
        rec.reason = "reduced side did not converge";
    } else if (!close) {
        rec.reason = "values differ";
    }
    return rec;
}

std::uint64_t case_seed(std::uint64_t sweep_seed, std::uint64_t case_index) {
    // splitmix64 finalizer over a combination of both inputs.
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(sweep_seed ^ mix(case_index));
}

TestIntegrand sample_integrand(Rng& rng, double mu_min) {
    const double floor = std::max(mu_min, -1.0);
    TestIntegrand f;
    f.mu = floor + 0.5 + 2.5 * uniform01(rng);
    f.sigma = 2.0 * uniform01(rng);
    return f;
}

std::vector<VerificationRecord> run_sweep(const SweepConfig& config) {
    if (config.samples < 1) throw DomainError("sweep: requires samples>=1");
    const std::int64_t total = static_cast<std::int64_t>(config.rules.size()) * config.samples;
    std::vector<VerificationRecord> records(static_cast<std::size_t>(total));
    std::atomic<std::int64_t> next{0};
    auto worker = [&]() {
        for (std::int64_t i = next++; i < total; i = next++) {
            const Rule& rule = *config.rules[static_cast<std::size_t>(i / config.samples)];
            const int sample = static_cast<int>(i % config.samples);
            const std::uint64_t seed = case_seed(config.seed, static_cast<std::uint64_t>(i));
            Rng rng(seed);
            VerificationRecord rec;
            try {
                const Params params = rule.sampler(rng, sample);
                const TestIntegrand f = sample_integrand(rng, mu_min(rule, params));
                rec = verify(rule, params, f, config.tol);
            } catch (const std::exception& e) {
                rec.rule_id = rule.id;
                rec.tol = config.tol.check;
                rec.reason = std::string("sampling: ") + e.what();
            }
            rec.seed = seed;
            rec.case_index = i;
            records[static_cast<std::size_t>(i)] = std::move(rec);
        }
    };
    const int jobs = std::max(1, std::min<int>(config.jobs, static_cast<int>(std::max<std::int64_t>(total, 1))));
    std::vector<std::thread> pool;
    for (int k = 1; k < jobs; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return records;
}

DerivativeReport derivative_check_K7(const Params& params, const TestIntegrand& f, double step) {
    const Rule& k6 = *find_rule("K6-m111");
    const Rule& k7 = *find_rule("K7-m311");
    const Tolerance tight{1e-13, 0.0};
    DerivativeReport rep;
    rep.p = params.p;
    rep.step = step > 0.0 ? step : 1e-4 * params.p;
    bool converged = true;
    auto k6_at = [&](double p) {
        Params P = params;
        P.triple = *k6.triple;
        P.p = p;
        const QuadResult r = reduce_to_1d(k6, P, f, tight);
        converged = converged && r.converged;
        return r.value.real();
    };
    auto central = [&](double h) { return (k6_at(params.p + h) - k6_at(params.p - h)) / (2.0 * h); };
    Params P7 = params;
    P7.triple = *k7.triple;
    const QuadResult r7 = reduce_to_1d(k7, P7, f, tight);
    converged = converged && r7.converged;
    rep.k7_value = r7.value.real();
    rep.finite_difference = central(rep.step);
    const double scale = std::fabs(rep.k7_value);
    rep.residual_plus = std::fabs(rep.finite_difference - rep.k7_value) / scale;
    rep.residual_minus = std::fabs(rep.finite_difference + rep.k7_value) / scale;
    const double best = std::min(rep.residual_plus, rep.residual_minus);
    if (best <= 1e-4) rep.sign = rep.residual_plus <= rep.residual_minus ? 1 : -1;
    // Coarse steps keep the truncation error well above quadrature noise.
    const double target = (rep.sign >= 0 ? 1.0 : -1.0) * rep.k7_value;
    rep.coarse_error = std::fabs(central(0.1 * params.p) - target);
    rep.halved_error = std::fabs(central(0.05 * params.p) - target);
    rep.halving_ratio = rep.halved_error > 0.0 ? rep.coarse_error / rep.halved_error : 0.0;
    rep.converged = converged;
    return rep;
}

}  // namespace r2
