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

#include <complex>
#include <stdexcept>
#include <string>

namespace r2 {

using Complex = std::complex<double>;

/// Argument outside the mathematical domain (poles, invalid orders, x2 <= 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Result not representable in double precision.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// A rule's applicability predicate rejected the parameters.
/// The message names the failed predicate, e.g. "requires p>0".
class ApplicabilityError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// NaN produced inside a numerical routine (usually by a user integrand).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Division that refuses a zero denominator instead of producing inf/nan.
inline Complex checked_div(Complex num, Complex den) {
    if (den == Complex(0.0, 0.0)) throw DomainError("division by zero");
    return num / den;
}

inline double checked_div(double num, double den) {
    if (den == 0.0) throw DomainError("division by zero");
    return num / den;
}

}  // namespace r2
