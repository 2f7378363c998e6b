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

#include "r2/error.hpp"

namespace r2::specfun {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrtPi = 1.77245385090551602730;

// Gamma family. Poles (non-positive integers) throw DomainError,
// except in rgamma where 1/Gamma is simply zero.
double gamma(double x);
double log_gamma(double x);  ///< log Gamma(x) for x > 0
double rgamma(double x);     ///< 1/Gamma(x), entire
double pochhammer(double a, int k);
double sin_pi(double x);  ///< sin(pi x) with exact zeros at integers

// Error functions on the real line (Cody rational approximations).
double erf(double x);
double erfc(double x);
double erfcx(double x);           ///< exp(x^2) erfc(x)
double one_minus_erfcx(double x); ///< 1 - erfcx(x) without cancellation at small x

// Faddeeva w(z) = exp(-z^2) erfc(-iz). OverflowError where exp(-z^2) overflows.
Complex faddeeva(Complex z);
Complex erfi(Complex z);
/// exp(-z^2) erfi(z), finite wherever w is.
Complex erfi_scaled(Complex z);

// Modified Bessel K of integer order >= 0, x > 0.
double bessel_k(int order, double x);
double bessel_k_scaled(int order, double x);  ///< exp(x) K_order(x)

/// Modified Bessel I_nu(z) of real order on the principal branch, by power series.
/// Intended for moderate |z| (the series is used as is).
Complex bessel_i(double nu, Complex z);

/// I_{two_order/2}(x) for odd two_order and x > 0, from the elementary
/// sinh/cosh forms by recurrence (power series when x is small against the order).
double bessel_i_half(int two_order, double x);

/// Confluent hypergeometric 1F1(a; b; z). Throws DomainError when b is a
/// non-positive integer.
Complex hyp1f1(double a, double b, Complex z);

/// Generalized Laguerre polynomial L_n^{(alpha)}(x) by three-term recurrence.
Complex laguerre(int n, double alpha, Complex x);

/// exp(z) - sum_{j<k} z^j/j!, accurate for small |z| (k >= 0).
double exp_remainder(int k, double z);

// Closed forms of 1F1(A; B; z) when B - 2A is an integer or B - A is a
// non-positive shift of A. Each throws DomainError where the form itself is
// undefined (a Gamma pole or a vanishing Pochhammer denominator).
Complex kummer_bessel_minus(double A, int M, double z);  ///< B = 2A - M
Complex kummer_bessel_equal(double A, double z);         ///< B = 2A
Complex kummer_bessel_plus(double A, int M, double z);   ///< B = 2A + M
Complex kummer_laguerre(double A, int M, double z);      ///< B = A - M

}  // namespace r2::specfun
