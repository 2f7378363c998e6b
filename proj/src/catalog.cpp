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
#include "r2/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "r2/specfun.hpp"

namespace r2 {

using specfun::kPi;
using specfun::kSqrtPi;

double TestIntegrand::operator()(double t) const {
    if (coeff == 0.0) return 0.0;
    return coeff * std::exp(mu * std::log(t) - sigma * t);
}

// ---- special factors ---------------------------------------------------------

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// e^{2L}-scaled erfc moments of the mixed family, x = 2 sqrt(L).
double tilde_moment_scaled(TildeMoment which, double x) {
    const double X = specfun::erfcx(x);
    switch (which) {
        case TildeMoment::Lm32:
            return kSqrtPi / x * specfun::one_minus_erfcx(x);
        case TildeMoment::Lm12:
            return kSqrtPi / x * (1.0 + X);
        case TildeMoment::Diff:
            return 2.0 * kSqrtPi / x * X;
        case TildeMoment::M4: {
            double tail;
            if (x < 2.0) {
                // -1 + sqrt(pi)/(2x) (1 - erfcx x) as a series, free of cancellation.
                tail = 0.0;
                double xp = x;  // x^{k-1}
                for (int k = 2; k < 200; ++k) {
                    const double add = ((k % 2 == 0) ? 1.0 : -1.0) * xp * specfun::rgamma(0.5 * k + 1.0);
                    tail += add;
                    if (std::fabs(add) < 1e-17 * std::fabs(tail)) break;
                    xp *= x;
                }
                tail *= -0.5 * kSqrtPi;
            } else {
                tail = -1.0 + kSqrtPi / (2.0 * x) * specfun::one_minus_erfcx(x);
            }
            return 4.0 / (x * x) * (kSqrtPi * x * X + tail);
        }
        case TildeMoment::M5:
            return 2.0 / (x * x) * (kSqrtPi * (1.0 + X) / x - kSqrtPi * x * X + 2.0);
    }
    return 0.0;
}

// (sqrt(pi)/2)(2L-1) erf(sqrt L)/sqrt L + e^{-L}
double n3_bracket(double lambda) {
    if (lambda < 1.0) {
        double sum = 0.0, term = 1.0;  // term = (-1)^n L^n / n!
        for (int n = 1; n < 60; ++n) {
            term *= -lambda / n;
            const double c = 1.0 - 2.0 * n / (2.0 * n - 1.0) - 1.0 / (2.0 * n + 1.0);
            sum += term * c;
            if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
        }
        return sum;
    }
    const double r = std::sqrt(lambda);
    return 0.5 * kSqrtPi * (2.0 * lambda - 1.0) * specfun::erf(r) / r + std::exp(-lambda);
}

struct FactorEval {
    double t;

    ScaledValue operator()(const NoFactor&) const { return {}; }
    ScaledValue operator()(const BesselKFactor& f) const {
        const double x = f.scale * t;
        return {specfun::bessel_k_scaled(f.order, x), -x};
    }
    ScaledValue operator()(const ErfInvSqrtFactor& f) const {
        return {specfun::erf(std::sqrt(f.amount / t)), 0.0};
    }
    ScaledValue operator()(const TildeMomentFactor& f) const {
        const double lambda = f.amount / t;
        return {tilde_moment_scaled(f.which, 2.0 * std::sqrt(lambda)), -2.0 * lambda};
    }
    ScaledValue operator()(const ExpRemainderFactor& f) const {
        const double z = -f.amount / t;
        if (z > 2.0) {
            // Dominated by e^z: keep that part in the log scale.
            double poly = 0.0, term = 1.0;
            for (int i = 0; i < f.order; ++i) {
                poly += term;
                term *= z / (i + 1);
            }
            return {1.0 - std::exp(-z) * poly, z};
        }
        return {specfun::exp_remainder(f.order, z), 0.0};
    }
    ScaledValue operator()(const N3BracketFactor& f) const { return {n3_bracket(f.amount / t), 0.0}; }
    ScaledValue operator()(const KummerFactor& f) const {
        return {specfun::hyp1f1(f.A, f.B, -(f.shift / t + f.h)), 0.0};
    }
    ScaledValue operator()(const RInnerFactor& f) const {
        const double d = f.a - f.b;
        const double floor = std::min(f.a, f.b);
        auto g = [&](double w, double comp) -> Complex {
            // phi(w) - min(a, b), written so no large terms cancel.
            const double excess = d >= 0.0 ? w * (d + f.j * comp) : comp * (-d + f.j * w);
            const double log_mag = f.alpha_w * std::log(w) + f.beta_w * std::log(comp) - excess / t - f.h.real() * w;
            if (log_mag < -745.0) return 0.0;
            return std::exp(Complex(log_mag, -f.h.imag() * w));
        };
        const QuadResult r = integrate_complement(g, 0.0, 1.0, f.tol);
        if (!r.converged && f.failures) f.failures->fetch_add(1, std::memory_order_relaxed);
        return {r.value, -floor / t};
    }
    ScaledValue operator()(const ErfiAffineFactor& f) const {
        const Complex i(0.0, 1.0);
        const double st = std::sqrt(t);
        const Complex shifted(0.25 * (f.eta1_sq - f.eta2_sq) + 0.25 * f.k * f.k, f.k_dot_x2 * t);
        const Complex z1 = shifted / (f.k * st);
        const Complex z2 = (shifted - 0.5 * f.k * f.k) / (f.k * st);
        const double floor = 0.25 * std::min(f.eta1_sq, f.eta2_sq);
        const double a1 = std::exp(-(0.25 * f.eta2_sq - floor) / t);
        const Complex a2 = std::exp(-(0.25 * f.eta1_sq - floor) / t) * std::exp(-i * f.k_dot_x2);
        // The e^{-z^2} pieces of the two erfi terms are equal and cancel; what is
        // left is a Faddeeva difference, taken in the half plane where w is bounded.
        Complex bracket;
        if (f.k_dot_x2 >= 0.0) {
            bracket = -i * (a1 * specfun::faddeeva(z1) - a2 * specfun::faddeeva(z2));
        } else {
            bracket = i * (a1 * specfun::faddeeva(-z1) - a2 * specfun::faddeeva(-z2));
        }
        return {bracket, -floor / t};
    }
};

struct FactorAsymptote {
    SmallTAsymptote operator()(const NoFactor&) const { return {}; }
    SmallTAsymptote operator()(const BesselKFactor& f) const { return {-static_cast<double>(f.order), 0.0}; }
    SmallTAsymptote operator()(const ErfInvSqrtFactor&) const { return {}; }
    SmallTAsymptote operator()(const TildeMomentFactor& f) const {
        static const double powers[] = {0.5, 0.5, 1.0, 1.5, 1.0};
        return {powers[static_cast<int>(f.which)], 2.0 * f.amount};
    }
    SmallTAsymptote operator()(const ExpRemainderFactor& f) const {
        if (f.amount > 0.0) return {-(f.order - 1.0), 0.0};
        return {0.0, f.amount};
    }
    SmallTAsymptote operator()(const N3BracketFactor&) const { return {-0.5, 0.0}; }
    SmallTAsymptote operator()(const KummerFactor& f) const { return {f.shift > 0.0 ? f.A : 0.0, 0.0}; }
    SmallTAsymptote operator()(const RInnerFactor& f) const { return {0.0, std::min(f.a, f.b)}; }
    SmallTAsymptote operator()(const ErfiAffineFactor& f) const {
        return {0.0, 0.25 * std::min(f.eta1_sq, f.eta2_sq)};
    }
};

}  // namespace

ScaledValue evaluate_factor(const SpecialFactor& factor, double t) { return std::visit(FactorEval{t}, factor); }

SmallTAsymptote factor_asymptote(const SpecialFactor& factor) { return std::visit(FactorAsymptote{}, factor); }

Complex KernelTerm::value(double t) const {
    const ScaledValue s = evaluate_factor(special, t);
    if (s.mantissa == Complex(0.0, 0.0) || coeff == Complex(0.0, 0.0)) return 0.0;
    const double log_mag = alpha * std::log(t) - beta.real() * t - gamma.real() / t + s.log_scale;
    if (log_mag < -745.0) return 0.0;
    const double phase = -beta.imag() * t - gamma.imag() / t;
    return coeff * s.mantissa * std::exp(Complex(log_mag, phase));
}

Complex Kernel::weight(double t) const {
    Complex sum = 0.0;
    for (const auto& term : terms) sum += term.value(t);
    return sum;
}

double Kernel::mu_min() const {
    double lowest = kInf;
    for (const auto& term : terms) {
        const SmallTAsymptote a = factor_asymptote(term.special);
        if (term.gamma.real() + a.cutoff > 0.0) continue;
        lowest = std::min(lowest, term.alpha + a.power);
    }
    return lowest == kInf ? -kInf : -1.0 - lowest;
}

// ---- families, sampling ------------------------------------------------------

std::string family_name(Family f) {
    switch (f) {
        case Family::PositiveExp: return "positive-exp";
        case Family::InverseExp: return "inverse-exp";
        case Family::MixedTilde: return "mixed-tilde";
        case Family::GeneralH: return "general-h";
        case Family::RIntegral: return "r-integral";
    }
    return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
    for (Family f : {Family::PositiveExp, Family::InverseExp, Family::MixedTilde, Family::GeneralH,
                     Family::RIntegral}) {
        if (family_name(f) == name) return f;
    }
    return std::nullopt;
}

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double log_uniform(Rng& rng, double lo, double hi) { return lo * std::exp(uniform01(rng) * std::log(hi / lo)); }

namespace {

[[noreturn]] void fail(const std::string& what) { throw ApplicabilityError("requires " + what); }

double coef(Rng& rng) { return log_uniform(rng, 0.1, 10.0); }

// ---- predicates ---------------------------------------------------------------

void positive_pq(const Params& P) {
    if (!(P.p > 0.0)) fail("p>0");
    if (!(P.q > 0.0)) fail("q>0");
}

void distinct_ab(const Params& P) {
    if (P.a == P.b) fail("a!=b");
}

void a_above_b(const Params& P) {
    if (!(P.a > P.b)) fail("a>b");
}

void equal_ab(const Params& P) {
    if (P.a != P.b) fail("a=b");
    const Triple& T = P.triple;
    if (!(T.m + T.nu > 2)) fail("m+nu>2");
    if (!(T.n + T.nu > 2)) fail("n+nu>2");
}

void general_h(const Params& P) {
    const Triple& T = P.triple;
    if (!(T.m + T.nu > 2)) fail("m+nu>2");
    if (!(T.n + T.nu > 2)) fail("n+nu>2");
    if (P.h.imag() != 0.0 || !(P.h.real() >= 0.0)) fail("h real and h>=0");
    if (!(P.a >= P.b)) fail("a>=b");
    if (P.a == P.b && P.h.real() == 0.0) fail("a>b or h>0");
}

void r_integral(const Params& P) {
    const Triple& T = P.triple;
    if (!(T.n + T.nu > 2)) fail("n+nu>2");
    if (!(T.m + T.nu > 2)) fail("m+nu>2");
    if (!(P.a > 0.0)) fail("a>0");
    if (!(P.b > 0.0)) fail("b>0");
    if (!(P.h.real() >= 0.0)) fail("Re h>=0");
}

// ---- kernel builders ----------------------------------------------------------

KernelTerm term(Complex coeff, double alpha, Complex beta, Complex gamma = 0.0, SpecialFactor s = NoFactor{}) {
    return KernelTerm{coeff, alpha, beta, gamma, std::move(s)};
}

double sum_roots(const Params& P) { return std::sqrt(P.p) + std::sqrt(P.q); }

Kernel e1(const Params& P) {
    const double S = sum_roots(P);
    return {{term(kSqrtPi * S / std::sqrt(P.p * P.q), 0.0, S * S + P.c)}, nullptr};
}
Kernel e1_uncorrected(const Params& P) {
    const double S = sum_roots(P);
    return {{term(kSqrtPi / std::sqrt(P.p * P.q * (P.p + P.q)), 0.0, S * S + P.c)}, nullptr};
}
Kernel e2(const Params& P) {
    const double S = sum_roots(P);
    return {{term(kSqrtPi * S / std::sqrt(P.p * P.q), -0.5, S * S + P.c)}, nullptr};
}
Kernel e3_with_shift(const Params& P, double shift) {
    const double S = sum_roots(P), rate = S * S + P.c;
    return {{term(kSqrtPi * S * S / (P.p * std::sqrt(P.q)), 0.5 + shift, rate),
             term(kSqrtPi / (2.0 * P.p * std::sqrt(P.p)), -0.5 + shift, rate)},
            nullptr};
}
Kernel e3(const Params& P) { return e3_with_shift(P, 0.0); }
Kernel e3_as_printed(const Params& P) { return e3_with_shift(P, 0.5); }
Kernel e4(const Params& P) {
    const double S = sum_roots(P);
    return {{term(kSqrtPi / std::sqrt(P.q), -1.5, S * S + P.c)}, nullptr};
}
Kernel e5(const Params& P) {
    const double S = sum_roots(P), rate = S * S + P.c;
    return {{term(kSqrtPi / (2.0 * P.q * std::sqrt(P.q)), -2.5, rate),
             term(kSqrtPi * std::sqrt(P.p) / P.q, -1.5, rate)},
            nullptr};
}

BesselKFactor bk(int order, const Params& P) { return {order, 2.0 * std::sqrt(P.p * P.q)}; }
double k_rate(const Params& P) { return P.p + P.q + P.c; }

Kernel k1(const Params& P) { return {{term(2.0, -0.5, k_rate(P), 0.0, bk(0, P))}, nullptr}; }
Kernel k2(const Params& P) { return {{term(2.0, -1.0, k_rate(P), 0.0, bk(0, P))}, nullptr}; }
Kernel k3(const Params& P) {
    return {{term(2.0 * std::sqrt(P.p / P.q), -1.0, k_rate(P), 0.0, bk(1, P))}, nullptr};
}
Kernel k4(const Params& P) {
    return {{term(2.0 * std::sqrt(P.p / P.q), -1.5, k_rate(P), 0.0, bk(1, P))}, nullptr};
}
Kernel k5(const Params& P) { return {{term(2.0 * P.p / P.q, -1.5, k_rate(P), 0.0, bk(2, P))}, nullptr}; }
Kernel k6(const Params& P) {
    return {{term(2.0, 0.5, k_rate(P), 0.0, bk(0, P)),
             term(2.0 * std::sqrt(P.q / P.p), 0.5, k_rate(P), 0.0, bk(1, P))},
            nullptr};
}
Kernel k7(const Params& P) {
    const double rp = std::sqrt(P.p), rq = std::sqrt(P.q);
    return {{term(2.0 * (P.p + P.q) / P.p, 1.5, k_rate(P), 0.0, bk(0, P)),
             term(4.0 * rq / rp, 1.5, k_rate(P), 0.0, bk(1, P)),
             term(2.0 * rq / (P.p * rp), 0.5, k_rate(P), 0.0, bk(1, P))},
            nullptr};
}

Kernel n1(const Params& P) {
    const double d = P.a - P.b;
    return {{term(1.0 / (d * d), -0.5, P.c, P.b, ExpRemainderFactor{2, d})}, nullptr};
}
Kernel n2(const Params& P) {
    const double d = P.a - P.b;
    return {{term(2.0 / (d * d * d), -0.5, P.c, P.b, ExpRemainderFactor{3, d}),
             term(1.0 / (d * d), -1.5, P.c, P.b, ExpRemainderFactor{2, d})},
            nullptr};
}
Kernel n3(const Params& P) {
    const double d = P.a - P.b;
    return {{term(1.0 / d, -1.0, P.c, P.b, N3BracketFactor{d})}, nullptr};
}
Kernel n4(const Params& P) {
    const double d = P.a - P.b;
    return {{term(kSqrtPi / std::sqrt(d), -1.0, P.c, P.b, ErfInvSqrtFactor{d})}, nullptr};
}
Kernel n5_with_power(const Params& P, double alpha) {
    const double d = P.a - P.b;
    return {{term(-1.0 / d, alpha, P.c, P.b, ExpRemainderFactor{1, d})}, nullptr};
}
Kernel n5(const Params& P) { return n5_with_power(P, -1.0); }
Kernel n5_as_printed(const Params& P) { return n5_with_power(P, -1.5); }

double gamma_ratio(const Triple& T) {
    return specfun::gamma(0.5 * (T.m + T.nu - 2)) * specfun::gamma(0.5 * (T.n + T.nu - 2)) /
           specfun::gamma(0.5 * (T.m + T.n + 2 * T.nu - 4));
}
double general_power(const Triple& T) { return 0.5 * (2 - T.m - T.n - T.nu); }

Kernel n6(const Params& P) {
    return {{term(gamma_ratio(P.triple), general_power(P.triple), P.c, P.b)}, nullptr};
}

Kernel tilde_kernel(const Params& P, TildeMoment which, double extra_power, double coeff = 1.0,
                    double extra_cutoff = 0.0) {
    const double d = P.a - P.b;
    return {{term(coeff, -0.5 * P.triple.m + extra_power, P.c, P.b + extra_cutoff, TildeMomentFactor{which, d})},
            nullptr};
}
Kernel t1(const Params& P) { return tilde_kernel(P, TildeMoment::Lm32, -0.5); }
Kernel t2(const Params& P) { return tilde_kernel(P, TildeMoment::Lm12, 0.5); }
Kernel t2_as_printed(const Params& P) { return tilde_kernel(P, TildeMoment::Lm12, 0.5, 2.0); }
Kernel t3(const Params& P) { return tilde_kernel(P, TildeMoment::Diff, 0.5); }
Kernel t3_as_printed(const Params& P) {
    return tilde_kernel(P, TildeMoment::Diff, 0.5, 1.0, 4.0 * (P.a - P.b));
}
Kernel t4(const Params& P) { return tilde_kernel(P, TildeMoment::M4, 0.5); }
Kernel t5(const Params& P) { return tilde_kernel(P, TildeMoment::M5, 1.5); }

Kernel g1(const Params& P) {
    const Triple& T = P.triple;
    KummerFactor k{0.5 * (T.n + T.nu - 2), 0.5 * (T.m + T.n + 2 * T.nu - 4), P.a - P.b, P.h};
    return {{term(gamma_ratio(T), general_power(T), P.c, P.b, k)}, nullptr};
}

Kernel r1(const Params& P) {
    const Triple& T = P.triple;
    Kernel K;
    K.inner_failures = std::make_shared<std::atomic<long>>(0);
    RInnerFactor f;
    f.alpha_w = 0.5 * (T.n + T.nu) - 2.0;
    f.beta_w = 0.5 * (T.m + T.nu) - 2.0;
    f.a = P.a;
    f.b = P.b;
    f.j = P.j;
    f.h = P.h;
    f.failures = K.inner_failures;
    K.terms.push_back(term(1.0, 1.0 - 0.5 * (T.n + T.m + T.nu), P.c, 0.0, f));
    return K;
}

// ---- samplers -----------------------------------------------------------------

Params with_triple(Triple T) {
    Params P;
    P.triple = T;
    return P;
}

Params pq_sampler(Rng& rng, int index, Triple T) {
    Params P = with_triple(T);
    P.p = coef(rng);
    P.q = coef(rng);
    if (index % 2 == 1) P.c = coef(rng);
    return P;
}

// Distinct a, b in either order.
void sample_distinct(Rng& rng, Params& P) {
    do {
        P.a = coef(rng);
        P.b = coef(rng);
    } while (std::fabs(P.a - P.b) < 0.05 * std::max(P.a, P.b));
}

void sample_ordered(Rng& rng, Params& P) {
    P.b = coef(rng);
    P.a = P.b + coef(rng);
}

template <int N, int M, int NU>
Params sample_pq(Rng& rng, int index) {
    return pq_sampler(rng, index, {N, M, NU});
}

template <int N, int M, int NU, bool Ordered>
Params sample_ab(Rng& rng, int) {
    Params P = with_triple({N, M, NU});
    if (Ordered) {
        sample_ordered(rng, P);
    } else {
        sample_distinct(rng, P);
    }
    P.c = coef(rng);
    return P;
}

const Triple kEqualGrid[] = {{4, 4, 0}, {3, 3, 1}, {2, 4, 2}, {1, 1, 3}, {3, 5, 0}};

Params sample_n6(Rng& rng, int index) {
    Params P = with_triple(kEqualGrid[index % 5]);
    P.a = P.b = coef(rng);
    P.c = coef(rng);
    return P;
}

template <int NU, int N0, int M0>
Params sample_tilde(Rng& rng, int) {
    Params P = with_triple({N0 - NU, M0 - NU, NU});
    P.tilde = true;
    sample_ordered(rng, P);
    P.c = coef(rng);
    return P;
}

struct GeneralPoint {
    Triple triple;
    double h;
};
const GeneralPoint kGeneralGrid[] = {
    {{1, 1, 3}, 1.0}, {{4, 4, 0}, 0.5}, {{2, 4, 2}, 2.0}, {{3, 3, 1}, 0.0}, {{1, 3, 3}, 1.5},
    {{2, 2, 2}, 0.3}, {{3, 5, 0}, 1.0}, {{1, 1, 5}, 0.7}, {{2, 6, 2}, 2.5}, {{5, 3, 1}, 0.0},
};

Params sample_g1(Rng& rng, int index) {
    const GeneralPoint& g = kGeneralGrid[index % 10];
    Params P = with_triple(g.triple);
    P.h = g.h;
    if (g.h > 0.0 && (index / 10) % 3 == 0) {
        P.a = P.b = coef(rng);
    } else {
        sample_ordered(rng, P);
    }
    P.c = coef(rng);
    return P;
}

const Triple kRGrid[] = {{4, 4, 0}, {3, 3, 1}, {1, 1, 3}, {2, 4, 2}, {5, 3, 0}};

Params sample_r1(Rng& rng, int index) {
    Params P = with_triple(kRGrid[index % 5]);
    P.a = coef(rng);
    P.b = coef(rng);
    P.c = coef(rng);
    if (index % 2 == 0) {
        P.h = log_uniform(rng, 0.1, 10.0);
    } else {
        const double re = log_uniform(rng, 0.1, 2.0);
        P.h = Complex(re, -3.0 + 6.0 * uniform01(rng));
    }
    if ((index / 2) % 2 == 1) P.j = coef(rng);
    return P;
}

// ---- registry -----------------------------------------------------------------

const char* const kPQ = "p,q,c";
const char* const kAB = "a,b,c";

std::vector<Rule> make_rules() {
    std::vector<Rule> R;
    auto add = [&](Rule r) { R.push_back(std::move(r)); };
    using F = Family;

    add({"E1-pbm-corrected", "E1", F::PositiveExp, Triple{0, 0, 1}, "", kPQ, false,
         "sqrt(pi)(sqrt p+sqrt q)/sqrt(pq) exp(-((sqrt p+sqrt q)^2+c) t)",
         "positive exponents, base case with the corrected coefficient", false, "", positive_pq, e1,
         sample_pq<0, 0, 1>});
    add({"E2-110", "E2", F::PositiveExp, Triple{1, 1, 0}, "", kPQ, false,
         "sqrt(pi)(sqrt p+sqrt q)/sqrt(pq) t^{-1/2} exp(-((sqrt p+sqrt q)^2+c) t)",
         "positive exponents, base case shifted by t^{1/2}", false, "", positive_pq, e2, sample_pq<1, 1, 0>});
    add({"E3-m110", "E3", F::PositiveExp, Triple{-1, 1, 0}, "", kPQ, false,
         "sqrt(pi)/(2 p^{3/2} sqrt q) t^{-1/2} (2 sqrt p (sqrt p+sqrt q)^2 t + sqrt q) exp(-((sqrt p+sqrt q)^2+c) t)",
         "positive exponents, unlike powers of x and y", false, "", positive_pq, e3, sample_pq<-1, 1, 0>});
    add({"E4-310", "E4", F::PositiveExp, Triple{3, 1, 0}, "", kPQ, false,
         "sqrt(pi)/sqrt q t^{-3/2} exp(-((sqrt p+sqrt q)^2+c) t)",
         "positive exponents, unlike powers, x^{-3/2} y^{-1/2}", false,
         "equivalent to triple (1,-1,2) after a power shift", positive_pq, e4, sample_pq<3, 1, 0>});
    add({"E5-5m10", "E5", F::PositiveExp, Triple{5, -1, 0}, "", kPQ, false,
         "sqrt(pi)/(2 q^{3/2}) t^{-5/2} (1 + 2 sqrt(pq) t) exp(-((sqrt p+sqrt q)^2+c) t)",
         "positive exponents, continued unlike powers", false, "", positive_pq, e5, sample_pq<5, -1, 0>});

    add({"K1-111", "K1", F::PositiveExp, Triple{1, 1, 1}, "", kPQ, false,
         "2 t^{-1/2} exp(-(p+q+c) t) K0(2 sqrt(pq) t)", "Macdonald kernels, equal powers with (x+y)^{-1/2}", false,
         "", positive_pq, k1, sample_pq<1, 1, 1>});
    add({"K2-220", "K2", F::PositiveExp, Triple{2, 2, 0}, "", kPQ, false,
         "2 t^{-1} exp(-(p+q+c) t) K0(2 sqrt(pq) t)", "Macdonald kernels, (xy)^{-1}", false, "", positive_pq, k2,
         sample_pq<2, 2, 0>});
    add({"K3-400", "K3", F::PositiveExp, Triple{4, 0, 0}, "", kPQ, false,
         "2 sqrt(p/q) t^{-1} exp(-(p+q+c) t) K1(2 sqrt(pq) t)", "Macdonald kernels, x^{-2} alone", false,
         "mu_min = 1; mirror (0,4,0) by exchanging p and q", positive_pq, k3, sample_pq<4, 0, 0>});
    add({"K4-51m1", "K4", F::PositiveExp, Triple{5, 1, -1}, "", kPQ, false,
         "2 sqrt(p/q) t^{-3/2} exp(-(p+q+c) t) K1(2 sqrt(pq) t)", "Macdonald kernels, K1 with (x+y)^{1/2}", false,
         "", positive_pq, k4, sample_pq<5, 1, -1>});
    add({"K5-7m1m1", "K5", F::PositiveExp, Triple{7, -1, -1}, "", kPQ, false,
         "2 (p/q) t^{-3/2} exp(-(p+q+c) t) K2(2 sqrt(pq) t)", "Macdonald kernels, K2 for extreme powers", false, "",
         positive_pq, k5, sample_pq<7, -1, -1>});
    add({"K6-m111", "K6", F::PositiveExp, Triple{-1, 1, 1}, "", kPQ, false,
         "(2/sqrt p) t^{1/2} exp(-(p+q+c) t) (sqrt p K0 + sqrt q K1)(2 sqrt(pq) t)",
         "Macdonald kernels, mixed K0/K1 combination", false, "", positive_pq, k6, sample_pq<-1, 1, 1>});
    add({"K7-m311", "K7", F::PositiveExp, Triple{-3, 1, 1}, "", kPQ, false,
         "(2/p^{3/2}) t^{1/2} exp(-(p+q+c) t) (sqrt p (p+q) t K0 + sqrt q (2pt+1) K1)(2 sqrt(pq) t)",
         "Macdonald kernels, p-derivative of the K6 case", false, "equals -d/dp of the K6 value", positive_pq, k7,
         sample_pq<-3, 1, 1>});

    add({"N1-133", "N1", F::InverseExp, Triple{1, 3, 3}, "", kAB, false,
         "(a-b)^{-2} t^{-3/2} exp(-ct) (t e^{-a/t} - (t-a+b) e^{-b/t})", "inverse exponents, erf-free case (1,3,3)",
         false, "evaluated via exp remainders; a<b allowed", distinct_ab, n1, sample_ab<1, 3, 3, false>});
    add({"N2-333", "N2", F::InverseExp, Triple{3, 3, 3}, "", kAB, false,
         "(a-b)^{-3} t^{-3/2} exp(-ct) ((a-b-2t) e^{-b/t} + (a-b+2t) e^{-a/t})",
         "inverse exponents, n=m=nu=3", false, "a<b allowed", distinct_ab, n2, sample_ab<3, 3, 3, false>});
    add({"N3-033", "N3", F::InverseExp, Triple{0, 3, 3}, "", kAB, false,
         "(a-b)^{-3/2} t^{-3/2} exp(-ct) ((sqrt pi/2)(2(a-b)-t) e^{-b/t} erf(sqrt((a-b)/t)) + sqrt(t(a-b)) e^{-a/t})",
         "inverse exponents, erf kernel with (0,3,3)", false, "", a_above_b, n3, sample_ab<0, 3, 3, true>});
    add({"N4-122", "N4", F::InverseExp, Triple{1, 2, 2}, "", kAB, false,
         "sqrt(pi/(a-b)) t^{-1} exp(-ct - b/t) erf(sqrt((a-b)/t))", "inverse exponents, erf kernel with (1,2,2)",
         false, "", a_above_b, n4, sample_ab<1, 2, 2, true>});
    add({"N5-222", "N5", F::InverseExp, Triple{2, 2, 2}, "", kAB, false,
         "(a-b)^{-1} t^{-1} exp(-ct) (e^{-b/t} - e^{-a/t})", "inverse exponents, 1/(xy(x+y))", false,
         "a<b allowed", distinct_ab, n5, sample_ab<2, 2, 2, false>});
    add({"N6-aeqb", "N6", F::InverseExp, std::nullopt, "a=b, m+nu>2, n+nu>2", kAB, false,
         "G((m+nu-2)/2) G((n+nu-2)/2)/G((m+n+2nu-4)/2) t^{(2-m-n-nu)/2} exp(-ct - b/t)",
         "inverse exponents, coincident a=b", false, "", equal_ab, n6, sample_n6});

    struct TildeSpec {
        const char* code;
        int n0, m0;
        Kernel (*builder)(const Params&);
        const char* kernel;
        const char* anchor;
    };
    const TildeSpec tildes[] = {
        {"T1", 3, 4, t1, "t^{-m/2-1/2} exp(-ct-b/t) L_{-3/2}(d/t)", "mixed exponents, erfc kernel (3-nu,4-nu,nu)"},
        {"T2", 1, 4, t2, "t^{-m/2+1/2} exp(-ct-b/t) L_{-1/2}(d/t)", "mixed exponents, erfc kernel (1-nu,4-nu,nu)"},
        {"T3", 1, 6, t3, "t^{-m/2+1/2} exp(-ct-b/t) (L_{-1/2}-L_{-3/2})(d/t)",
         "mixed exponents, erfc kernel (1-nu,6-nu,nu)"},
        {"T4", 1, 8, t4, "t^{-m/2+1/2} exp(-ct-b/t) (L_{-1/2}-2L_{-3/2}+L_{-5/2})(d/t)",
         "mixed exponents, second-order erfc moment (1-nu,8-nu,nu)"},
        {"T5", -1, 6, t5, "t^{-m/2+3/2} exp(-ct-b/t) (L_{1/2}-L_{-1/2})(d/t)",
         "mixed exponents, erfc kernel (-1-nu,6-nu,nu)"},
    };
    using Sampler = Params (*)(Rng&, int);
    const Sampler tilde_samplers[5][3] = {
        {sample_tilde<0, 3, 4>, sample_tilde<1, 3, 4>, sample_tilde<2, 3, 4>},
        {sample_tilde<0, 1, 4>, sample_tilde<1, 1, 4>, sample_tilde<2, 1, 4>},
        {sample_tilde<0, 1, 6>, sample_tilde<1, 1, 6>, sample_tilde<2, 1, 6>},
        {sample_tilde<0, 1, 8>, sample_tilde<1, 1, 8>, sample_tilde<2, 1, 8>},
        {sample_tilde<0, -1, 6>, sample_tilde<1, -1, 6>, sample_tilde<2, -1, 6>},
    };
    for (int k = 0; k < 5; ++k) {
        for (int nu = 0; nu <= 2; ++nu) {
            const TildeSpec& s = tildes[k];
            add({std::string(s.code) + "-nu" + std::to_string(nu), s.code, F::MixedTilde,
                 Triple{s.n0 - nu, s.m0 - nu, nu}, "", kAB, true, s.kernel, s.anchor, false,
                 "d=a-b; L_k(d/t) are erfc moments of the tilde factor", a_above_b, s.builder, tilde_samplers[k][nu]});
        }
    }

    add({"G1", "G1", F::GeneralH, std::nullopt, "m+nu>2, n+nu>2", "a,b,c,h", false,
         "G((m+nu-2)/2) G((n+nu-2)/2)/G((m+n+2nu-4)/2) t^{(2-m-n-nu)/2} exp(-ct-b/t) "
         "1F1((n+nu-2)/2; (m+n+2nu-4)/2; -(a-b+ht)/t)",
         "general result with the h y/(x+y) term", false, "h real, a>=b", general_h, g1, sample_g1});
    add({"R1", "R1", F::RIntegral, std::nullopt, "m+nu>2, n+nu>2", "a,b,c,h,j", false,
         "t^{1-(n+m+nu)/2} exp(-ct) int_0^1 w^{(n+nu)/2-2} (1-w)^{(m+nu)/2-2} exp(-(b+w(a-b)+jw(1-w))/t - hw) dw",
         "semi-numeric reduction with a finite inner integral", false, "a,b>0; complex h allowed", r_integral, r1,
         sample_r1});

    // Known-wrong forms, kept runnable so the corrections stay demonstrable.
    add({"E1-uncorrected-pbm", "E1", F::PositiveExp, Triple{0, 0, 1}, "", kPQ, false,
         "sqrt(pi)/sqrt(pq(p+q)) exp(-((sqrt p+sqrt q)^2+c) t)", "positive exponents, base case as tabulated", true,
         "off by 1/((sqrt p+sqrt q) sqrt(p+q))", positive_pq, e1_uncorrected, sample_pq<0, 0, 1>});
    add({"E3-as-printed", "E3", F::PositiveExp, Triple{-1, 1, 0}, "", kPQ, false,
         "E3 kernel without its t^{-1/2}", "positive exponents, unlike powers, uncorrected display", true,
         "missing t^{-1/2}", positive_pq, e3_as_printed, sample_pq<-1, 1, 0>});
    add({"N5-as-printed", "N5", F::InverseExp, Triple{2, 2, 2}, "", kAB, false,
         "(a-b)^{-1} t^{-3/2} exp(-ct) (e^{-b/t} - e^{-a/t})", "inverse exponents, uncorrected display", true,
         "power t^{-3/2} should be t^{-1}", distinct_ab, n5_as_printed, sample_ab<2, 2, 2, false>});
    add({"T2-as-printed-nu0", "T2", F::MixedTilde, Triple{1, 4, 0}, "", kAB, true, "twice the T2 kernel",
         "mixed exponents, uncorrected display", true, "extra factor 2", a_above_b, t2_as_printed,
         sample_tilde<0, 1, 4>});
    add({"T3-as-printed-nu0", "T3", F::MixedTilde, Triple{1, 6, 0}, "", kAB, true,
         "T3 kernel with exp(-4(a-b)/t) in place of exp(0)", "mixed exponents, uncorrected display", true,
         "exponent sign of the 2(a-b)/t term flipped", a_above_b, t3_as_printed, sample_tilde<0, 1, 6>});
    return R;
}

bool pattern_allows(const std::string& pattern, std::string_view name) {
    std::istringstream in(pattern);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item == name) return true;
    }
    return false;
}

}  // namespace

const std::vector<Rule>& all_rules() {
    static const std::vector<Rule> rules = make_rules();
    return rules;
}

const Rule* find_rule(std::string_view id) {
    for (const Rule& r : all_rules()) {
        if (r.id == id) return &r;
    }
    return nullptr;
}

std::vector<const Rule*> select_rules(std::string_view selector) {
    std::vector<const Rule*> out;
    auto push = [&](const Rule* r) {
        if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
    };
    std::string s(selector);
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        if (item == "all") {
            for (const Rule& r : all_rules()) {
                if (!r.erratum) push(&r);
            }
            continue;
        }
        if (const Rule* r = find_rule(item)) {
            push(r);
            continue;
        }
        bool any = false;
        for (const Rule& r : all_rules()) {
            if (!r.erratum && r.code == item) {
                push(&r);
                any = true;
            }
        }
        if (!any) throw DomainError("unknown rule '" + item + "'");
    }
    return out;
}

bool accepts_triple(const Rule& rule, const Triple& triple) {
    return !rule.triple || *rule.triple == triple;
}

const Rule* lookup_rule(const Triple& triple, Family family) {
    const Rule* general = nullptr;
    for (const Rule& r : all_rules()) {
        if (r.erratum || r.family != family) continue;
        if (r.triple && *r.triple == triple) return &r;
        if (!r.triple && !general) general = &r;
    }
    // A general rule matches only if its triple condition holds.
    if (general) {
        const Triple& T = triple;
        if (T.m + T.nu > 2 && T.n + T.nu > 2) return general;
    }
    return nullptr;
}

void check_applicable(const Rule& rule, const Params& P) {
    if (rule.triple && !(*rule.triple == P.triple)) {
        const Triple& T = *rule.triple;
        fail("triple (" + std::to_string(T.n) + "," + std::to_string(T.m) + "," + std::to_string(T.nu) + ")");
    }
    const struct {
        const char* name;
        double value;
    } reals[] = {{"a", P.a}, {"b", P.b}, {"c", P.c}, {"j", P.j}, {"p", P.p}, {"q", P.q}};
    for (const auto& r : reals) {
        if (!std::isfinite(r.value)) fail(std::string(r.name) + " finite");
        if (r.value < 0.0) fail(std::string(r.name) + ">=0");
        if (r.value != 0.0 && !pattern_allows(rule.coefficient_pattern, r.name)) fail(std::string(r.name) + "=0");
    }
    if (!std::isfinite(P.h.real()) || !std::isfinite(P.h.imag())) fail("h finite");
    if (P.h != Complex(0.0, 0.0) && !pattern_allows(rule.coefficient_pattern, "h")) fail("h=0");
    if (rule.tilde && !P.tilde) fail("tilde integrand");
    if (!rule.tilde && P.tilde) fail("plain (non-tilde) integrand");
    if (rule.predicate) rule.predicate(P);
}

Kernel build_kernel(const Rule& rule, const Params& params) {
    check_applicable(rule, params);
    return rule.builder(params);
}

Complex kernel_weight(const Rule& rule, const Params& params, double t) {
    if (!(t > 0.0)) throw DomainError("kernel_weight: requires t>0");
    return build_kernel(rule, params).weight(t);
}

double mu_min(const Rule& rule, const Params& params) { return build_kernel(rule, params).mu_min(); }

Complex general_h_weight_closed_form(const Params& P, double t) {
    general_h(P);
    const Triple& T = P.triple;
    if ((T.m - T.n) % 2 != 0) throw DomainError("closed form needs m-n even");
    const double A = 0.5 * (T.n + T.nu - 2);
    const int offset = (T.m - T.n) / 2;  // B - 2A
    const double z = -((P.a - P.b) / t + P.h.real());
    Complex kummer;
    if (offset < 0) {
        kummer = specfun::kummer_bessel_minus(A, -offset, z);
    } else if (offset == 0) {
        kummer = specfun::kummer_bessel_equal(A, z);
    } else {
        kummer = specfun::kummer_bessel_plus(A, offset, z);
    }
    const double log_mag = general_power(T) * std::log(t) - P.c * t - P.b / t;
    return gamma_ratio(T) * kummer * std::exp(log_mag);
}

}  // namespace r2
