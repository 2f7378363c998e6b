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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "r2/catalog.hpp"

namespace r2 {

/// (n - 2 delta, m - 2 delta, nu + 2 delta). The integral is unchanged when f(t)
/// is replaced by t^{-delta} f(t). delta must be a multiple of 1/2.
Triple shift_power(const Triple& triple, double delta);

/// Exchange the roles of x and y: n<->m, a<->b, p<->q. Only value-preserving
/// when h = 0 and the integrand is not of tilde type.
Params mirror(const Params& params);

struct Normalized {
    const Rule* rule = nullptr;
    Params params;
    TestIntegrand f;
    double delta = 0.0;
    bool mirrored = false;
};

/// Search order: mirror off then on; for each, delta in
/// {0, 1/2, -1/2, 1, -1, 3/2, -3/2, 2, -2}; for each, non-erratum rules in
/// registry order. First rule that is applicable and convergent wins.
std::optional<Normalized> normalize(const Params& params, const TestIntegrand& f);

/// Throws DomainError when exponent accounting at the axes, the origin or
/// infinity shows the quadrant integral diverges.
void check_quadrant_convergence(const Params& params, const TestIntegrand& f);

/// Brute-force quadrant integral of the left-hand side.
QuadResult direct_2d(const Params& params, const TestIntegrand& f, const Tolerance& tol = {1e-9, 1e-18});

/// int_0^inf f(t) w(t) dt. Throws ApplicabilityError, or DomainError when
/// mu <= mu_min or some term does not decay at large t.
QuadResult reduce_to_1d(const Rule& rule, const Params& params, const TestIntegrand& f, const Tolerance& tol = {});

struct VerifyTolerances {
    Tolerance check{1e-6, 1e-15};        ///< pass/fail threshold on the difference
    Tolerance evaluator{1e-11, 1e-20};   ///< reduced 1D side
    Tolerance oracle{1e-9, 1e-18};       ///< 2D side
};

struct VerificationRecord {
    std::string rule_id;
    Params params;
    TestIntegrand f;
    QuadResult lhs;  ///< 2D oracle
    QuadResult rhs;  ///< reduced 1D form
    double abs_diff = 0.0;
    double rel_diff = 0.0;
    Tolerance tol;
    bool pass = false;
    std::string reason;  ///< empty on pass
    std::uint64_t seed = 0;
    std::int64_t case_index = -1;
};

VerificationRecord verify(const Rule& rule, const Params& params, const TestIntegrand& f,
                          const VerifyTolerances& tol = {});

std::uint64_t case_seed(std::uint64_t sweep_seed, std::uint64_t case_index);

/// mu uniform in [floor + 0.5, floor + 3] with floor = max(mu_min, -1),
/// sigma uniform in [0, 2], coeff 1.
TestIntegrand sample_integrand(Rng& rng, double mu_min);

struct SweepConfig {
    std::vector<const Rule*> rules;
    int samples = 20;
    std::uint64_t seed = 42;
    VerifyTolerances tol;
    int jobs = 1;
};

/// One record per (rule, sample), in case-index order whatever `jobs` is.
std::vector<VerificationRecord> run_sweep(const SweepConfig& config);

struct DerivativeReport {
    double p = 0.0, step = 0.0;
    double finite_difference = 0.0;  ///< d/dp of the K6 value
    double k7_value = 0.0;
    double residual_plus = 0.0;   ///< |fd - K7| / |K7|
    double residual_minus = 0.0;  ///< |fd + K7| / |K7|
    int sign = 0;                 ///< +1 or -1 when that relation holds within 1e-4, else 0
    double coarse_error = 0.0;    ///< error of the matched relation at step 0.1 p
    double halved_error = 0.0;    ///< same at step 0.05 p
    double halving_ratio = 0.0;   ///< ~4 for a second-order difference
    bool converged = false;
};

/// Compares a central difference in p of the K6 reduction with the K7 reduction.
/// params.triple is ignored; p, q, c are used. step defaults to 1e-4 p.
DerivativeReport derivative_check_K7(const Params& params, const TestIntegrand& f, double step = 0.0);

}  // namespace r2
