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
#pragma once

// The reduction catalog. Each rule maps a two-dimensional quadrant integral
//
//   R(n,m,nu; a,b,c,h,j,p,q) = int int x^{-n/2} y^{-m/2} (x+y)^{-nu/2} f(xy/(x+y))
//       exp(-a/x - b/y - c xy/(x+y) - h y/(x+y) - j/(x+y) - p x - q y) dx dy
//
// onto int_0^inf f(t) w(t) dt with a closed-form weight w built from KernelTerms.

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "r2/error.hpp"
#include "r2/quadrature.hpp"

namespace r2 {

/// Exponent triple; each entry is twice the literal exponent.
struct Triple {
    int n = 0, m = 0, nu = 0;
    bool operator==(const Triple&) const = default;
};

struct Params {
    Triple triple;
    double a = 0.0, b = 0.0, c = 0.0;
    Complex h{0.0, 0.0};
    double j = 0.0, p = 0.0, q = 0.0;
    /// Carries the extra factor exp(-(a-b)(x+y)^2/(x y^2)) of the mixed family.
    bool tilde = false;
};

/// f(t) = coeff * t^mu * exp(-sigma t).
struct TestIntegrand {
    double coeff = 1.0;
    double mu = 0.0;
    double sigma = 0.0;
    double operator()(double t) const;
};

// ---- special factors -------------------------------------------------------
// Each factor returns mantissa * exp(log_scale), so huge and tiny pieces can
// be combined with the term's exponentials before anything is exponentiated.

struct ScaledValue {
    Complex mantissa{1.0, 0.0};
    double log_scale = 0.0;
};

/// Small-t behaviour: |factor| ~ t^power * exp(-cutoff/t).
struct SmallTAsymptote {
    double power = 0.0;
    double cutoff = 0.0;
};

struct NoFactor {};
/// K_order(scale * t).
struct BesselKFactor {
    int order = 0;
    double scale = 0.0;
};
/// erf(sqrt(amount / t)).
struct ErfInvSqrtFactor {
    double amount = 0.0;
};
/// Scaled erfc moments of the mixed family, lambda = amount / t.
enum class TildeMoment { Lm32, Lm12, Diff, M4, M5 };
struct TildeMomentFactor {
    TildeMoment which = TildeMoment::Lm32;
    double amount = 0.0;
};
/// exp(z) - sum_{i<order} z^i/i! at z = -amount/t.
struct ExpRemainderFactor {
    int order = 1;
    double amount = 0.0;
};
/// (sqrt(pi)/2)(2L-1) erf(sqrt L)/sqrt L + exp(-L), L = amount/t.
struct N3BracketFactor {
    double amount = 0.0;
};
/// 1F1(A; B; -(shift + h t)/t).
struct KummerFactor {
    double A = 0.0, B = 0.0, shift = 0.0;
    Complex h{0.0, 0.0};
};
/// int_0^1 w^{alpha_w} (1-w)^{beta_w} exp(-phi(w)/t - h w) dw with
/// phi(w) = b + w(a-b) + j w(1-w). Inner solves that miss their tolerance are
/// counted in `failures`.
struct RInnerFactor {
    double alpha_w = 0.0, beta_w = 0.0, a = 0.0, b = 0.0, j = 0.0;
    Complex h{0.0, 0.0};
    Tolerance tol{1e-12, 0.0, 200000};
    std::shared_ptr<std::atomic<long>> failures;
};
/// Difference of two erfi terms in the momentum-space pair integral, written
/// through the Faddeeva function so the exp(z^2) growth cancels analytically.
struct ErfiAffineFactor {
    double k = 1.0, k_dot_x2 = 0.0, eta1_sq = 1.0, eta2_sq = 1.0;
};

using SpecialFactor = std::variant<NoFactor, BesselKFactor, ErfInvSqrtFactor, TildeMomentFactor,
                                   ExpRemainderFactor, N3BracketFactor, KummerFactor, RInnerFactor,
                                   ErfiAffineFactor>;

ScaledValue evaluate_factor(const SpecialFactor& factor, double t);
SmallTAsymptote factor_asymptote(const SpecialFactor& factor);

/// coeff * t^alpha * exp(-beta t - gamma/t) * special(t).
struct KernelTerm {
    Complex coeff{1.0, 0.0};
    double alpha = 0.0;
    Complex beta{0.0, 0.0};
    Complex gamma{0.0, 0.0};
    SpecialFactor special = NoFactor{};

    Complex value(double t) const;
};

struct Kernel {
    std::vector<KernelTerm> terms;
    /// Shared by all RInner factors of this kernel; null when there are none.
    std::shared_ptr<std::atomic<long>> inner_failures;

    Complex weight(double t) const;
    /// Convergence floor at t -> 0: f = t^mu is integrable against the kernel
    /// iff mu > mu_min. -infinity when every term has an exponential cutoff.
    double mu_min() const;
};

// ---- rules -------------------------------------------------------------------

enum class Family { PositiveExp, InverseExp, MixedTilde, GeneralH, RIntegral };

std::string family_name(Family f);
std::optional<Family> parse_family(std::string_view name);

using Rng = std::mt19937_64;
double uniform01(Rng& rng);
double log_uniform(Rng& rng, double lo, double hi);

struct Rule {
    std::string id;
    std::string code;  ///< short name shared by variants, e.g. "T1"
    Family family = Family::PositiveExp;
    std::optional<Triple> triple;   ///< empty for rules that accept a range of triples
    std::string triple_condition;   ///< human-readable condition when triple is empty
    std::string coefficient_pattern;  ///< comma list of coefficients that may be nonzero
    bool tilde = false;
    std::string kernel_text;
    std::string anchor;
    bool erratum = false;  ///< known-wrong form kept for demonstration; excluded from "all"
    std::string note;

    /// Extra predicate beyond triple, pattern and tilde; throws ApplicabilityError.
    void (*predicate)(const Params&) = nullptr;
    Kernel (*builder)(const Params&) = nullptr;
    /// Draws a member of the applicability set; `index` lets samplers cycle grids.
    Params (*sampler)(Rng&, int index) = nullptr;
};

const std::vector<Rule>& all_rules();
const Rule* find_rule(std::string_view id);
/// "all" (non-erratum rules), comma-separated ids, or short codes ("K1", "T3").
/// Throws DomainError on an unknown name.
std::vector<const Rule*> select_rules(std::string_view selector);
/// Non-erratum rule for an exact triple and family; fixed-triple rules win.
const Rule* lookup_rule(const Triple& triple, Family family);
bool accepts_triple(const Rule& rule, const Triple& triple);

/// Throws ApplicabilityError naming the first failed condition.
void check_applicable(const Rule& rule, const Params& params);
/// Applicability check, then the rule's kernel.
Kernel build_kernel(const Rule& rule, const Params& params);
Complex kernel_weight(const Rule& rule, const Params& params, double t);
double mu_min(const Rule& rule, const Params& params);

/// The general-h kernel with 1F1 replaced by its Bessel-I closed form, which
/// exists when m - n is even. Throws DomainError where no form applies.
Complex general_h_weight_closed_form(const Params& params, double t);

}  // namespace r2
