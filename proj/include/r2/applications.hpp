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

// Two-center integrals of Yukawa potentials e^{-eta r}/r and of a 1s orbital,
// in position space (separation x2) and momentum space (momentum k).

#include "r2/quadrature.hpp"

namespace r2 {

struct YukawaPairSpec {
    double eta1 = 1.0, eta2 = 1.0, x2 = 1.0;
};

/// k_dot_x2 is the scalar product of the momentum and the separation vector.
struct FourierSpec {
    double k = 0.0, k_dot_x2 = 0.0, eta1 = 1.0, eta2 = 1.0, x2 = 1.0;
};

/// 4 pi (e^{-x2 eta1} - e^{-x2 eta2}) / (x2 (eta2^2 - eta1^2)). Requires x2 > 0
/// and eta1 != eta2 (see yukawa_pair_equal).
double yukawa_pair(const YukawaPairSpec& spec);
/// 2 pi e^{-x2 eta}/eta, the eta1 = eta2 limit.
double yukawa_pair_equal(double eta, double x2);
/// sqrt(pi) R(4,4,0; eta1^2/4, eta2^2/4, x2^2) with f = t^{3/2}, through the catalog.
QuadResult yukawa_pair_catalog(const YukawaPairSpec& spec, const Tolerance& tol = {});
/// The same quadrant integral by the brute-force oracle.
QuadResult yukawa_pair_oracle(const YukawaPairSpec& spec, const Tolerance& tol = {1e-9, 1e-18});

/// 1s orbital of exponent eta1 against a Yukawa of exponent eta2; continuous
/// through eta1 = eta2.
double hydrogenic_pair(const YukawaPairSpec& spec);
/// sqrt(pi)(1 + x2 eta)/sqrt(eta) e^{-eta x2}.
double hydrogenic_pair_equal(double eta, double x2);

/// Momentum-space pair integral as a t-integral with the erfi-difference kernel.
/// Falls back to fourier_pair_tau when k < 1e-3 max(eta1, eta2) or x2 = 0.
QuadResult fourier_pair_erfi(const FourierSpec& spec, const Tolerance& tol = {});
/// 2 pi int_0^1 e^{-i k.x2 tau} e^{-x2 L}/L dtau, L^2 = (1-tau)(k^2 tau + eta2^2) + eta1^2 tau.
QuadResult fourier_pair_tau(const FourierSpec& spec, const Tolerance& tol = {});
/// The general r-integral rule with h = i k.x2 and j = k^2/4. Requires x2 > 0.
QuadResult fourier_pair_catalog(const FourierSpec& spec, const Tolerance& tol = {});

/// -d/d eta2 of the momentum-space pair integral at eta1 = 1, eta2 = 1/2,
/// k = k_fermi/2 (derivative taken under the tau integral).
QuadResult cheshire(double k_fermi, double k_dot_x2, double x2, const Tolerance& tol = {});

}  // namespace r2
