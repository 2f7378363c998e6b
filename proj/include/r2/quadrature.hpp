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
#include <functional>

#include "r2/error.hpp"

namespace r2 {

/// Requested accuracy. A result is accepted once the estimated absolute error
/// is at most max(abs, rel * |value|). max_evaluations bounds each 1D solve.
struct Tolerance {
    double rel = 1e-10;
    double abs = 1e-14;
    std::int64_t max_evaluations = 2'000'000;

    /// Throws DomainError unless rel >= 1e-14, abs >= 0 and max_evaluations > 0.
    void validate() const;
};

struct QuadResult {
    Complex value{0.0, 0.0};
    double abs_error_estimate = 0.0;
    std::int64_t evaluations = 0;
    bool converged = false;
};

using Integrand = std::function<Complex(double)>;
/// Receives x and hi - x, where the second argument is computed directly from
/// the quadrature node and stays accurate when x rounds to hi.
using IntegrandWithComplement = std::function<Complex(double, double)>;
using Integrand2D = std::function<Complex(double, double)>;

/// Double-exponential (exp-sinh) rule on (0, inf). Integrable algebraic
/// singularities at 0 are fine; the integrand is never evaluated at 0.
QuadResult integrate_half_line(const Integrand& f, const Tolerance& tol = {});

/// tanh-sinh rule on (lo, hi); endpoints are never evaluated.
QuadResult integrate_interval(const Integrand& f, double lo, double hi, const Tolerance& tol = {});
QuadResult integrate_complement(const IntegrandWithComplement& f, double lo, double hi,
                                const Tolerance& tol = {});

/// Iterated integral over (0, inf)^2: outer in x, inner in y split at y = x/(1+x).
/// Inner solves use a tolerance ten times tighter than the outer one.
QuadResult integrate_quadrant(const Integrand2D& g, const Tolerance& tol = {});

}  // namespace r2
