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
#include "r2/applications.hpp"

#include <algorithm>
#include <cmath>

#include "r2/catalog.hpp"
#include "r2/reducer.hpp"
#include "r2/specfun.hpp"

namespace r2 {

using specfun::kPi;
using specfun::kSqrtPi;

namespace {

void check_pair(const YukawaPairSpec& s) {
    if (!(s.eta1 > 0.0) || !(s.eta2 > 0.0)) throw DomainError("requires eta1>0 and eta2>0");
    if (!(s.x2 > 0.0)) throw DomainError("requires x2>0");
}

void check_fourier(const FourierSpec& s) {
    if (!(s.eta1 > 0.0) || !(s.eta2 > 0.0)) throw DomainError("requires eta1>0 and eta2>0");
    if (!(s.x2 >= 0.0)) throw DomainError("requires x2>=0");
    if (!(s.k >= 0.0)) throw DomainError("requires k>=0");
    if (std::fabs(s.k_dot_x2) > s.k * s.x2 * (1.0 + 1e-12)) throw DomainError("requires |k.x2|<=k x2");
}

Params pair_params(double eta1, double eta2, double x2) {
    Params P;
    P.triple = {4, 4, 0};
    P.a = 0.25 * eta1 * eta1;
    P.b = 0.25 * eta2 * eta2;
    P.c = x2 * x2;
    return P;
}

TestIntegrand t_three_halves() {
    TestIntegrand f;
    f.mu = 1.5;
    return f;
}

QuadResult scaled(QuadResult r, double factor) {
    r.value *= factor;
    r.abs_error_estimate *= factor;
    return r;
}

}  // namespace

double yukawa_pair(const YukawaPairSpec& s) {
    check_pair(s);
    if (s.eta1 == s.eta2) throw DomainError("requires eta1!=eta2 (use yukawa_pair_equal)");
    // 4 pi e^{-x eta1} (1 - e^{-x d}) / (x d (eta1 + eta2)), d = eta2 - eta1.
    const double d = s.eta2 - s.eta1;
    return -4.0 * kPi * std::exp(-s.x2 * s.eta1) * std::expm1(-s.x2 * d) / (s.x2 * d * (s.eta1 + s.eta2));
}

double yukawa_pair_equal(double eta, double x2) {
    if (!(eta > 0.0)) throw DomainError("requires eta>0");
    if (!(x2 >= 0.0)) throw DomainError("requires x2>=0");
    return 2.0 * kPi * std::exp(-x2 * eta) / eta;
}

QuadResult yukawa_pair_catalog(const YukawaPairSpec& s, const Tolerance& tol) {
    check_pair(s);
    const auto hit = normalize(pair_params(s.eta1, s.eta2, s.x2), t_three_halves());
    if (!hit) throw DomainError("no catalog rule for the pair integral");
    return scaled(reduce_to_1d(*hit->rule, hit->params, hit->f, tol), kSqrtPi);
}

QuadResult yukawa_pair_oracle(const YukawaPairSpec& s, const Tolerance& tol) {
    check_pair(s);
    return scaled(direct_2d(pair_params(s.eta1, s.eta2, s.x2), t_three_halves(), tol), kSqrtPi);
}

double hydrogenic_pair(const YukawaPairSpec& s) {
    check_pair(s);
    // Closed form rearranged around d = eta1 - eta2 so that eta1 -> eta2 is smooth:
    // 8 sqrt(pi) eta1^{5/2}/(eta1+eta2)^2 e^{-eta1 x} [phi2(d x)/(d^2 x) + 1/(2 eta1)],
    // phi2(z) = e^z - 1 - z.
    const double d = s.eta1 - s.eta2, x = s.x2;
    const double z = d * x;
    const double ratio = std::fabs(z) < 1e-300 ? 0.5 * x : specfun::exp_remainder(2, z) / (d * d * x);
    const double sum = s.eta1 + s.eta2;
    return 8.0 * kSqrtPi * std::pow(s.eta1, 2.5) / (sum * sum) * std::exp(-s.eta1 * x) * (ratio + 0.5 / s.eta1);
}

double hydrogenic_pair_equal(double eta, double x2) {
    if (!(eta > 0.0)) throw DomainError("requires eta>0");
    if (!(x2 >= 0.0)) throw DomainError("requires x2>=0");
    return kSqrtPi * (1.0 + x2 * eta) / std::sqrt(eta) * std::exp(-eta * x2);
}

QuadResult fourier_pair_tau(const FourierSpec& s, const Tolerance& tol) {
    check_fourier(s);
    const double k2 = s.k * s.k, e1 = s.eta1 * s.eta1, e2 = s.eta2 * s.eta2;
    auto g = [&](double tau, double comp) -> Complex {
        const double L = std::sqrt(comp * (k2 * tau + e2) + e1 * tau);
        return std::exp(Complex(-s.x2 * L, -s.k_dot_x2 * tau)) / L;
    };
    return scaled(integrate_complement(g, 0.0, 1.0, tol), 2.0 * kPi);
}

QuadResult fourier_pair_erfi(const FourierSpec& s, const Tolerance& tol) {
    check_fourier(s);
    if (s.k < 1e-3 * std::max(s.eta1, s.eta2) || s.x2 == 0.0) return fourier_pair_tau(s, tol);
    Kernel kernel;
    ErfiAffineFactor factor{s.k, s.k_dot_x2, s.eta1 * s.eta1, s.eta2 * s.eta2};
    kernel.terms.push_back(KernelTerm{kPi / s.k, -1.0, s.x2 * s.x2, 0.0, factor});
    return integrate_half_line([&](double t) { return kernel.weight(t); }, tol);
}

QuadResult fourier_pair_catalog(const FourierSpec& s, const Tolerance& tol) {
    check_fourier(s);
    if (!(s.x2 > 0.0)) throw DomainError("requires x2>0");
    Params P = pair_params(s.eta1, s.eta2, s.x2);
    P.h = Complex(0.0, s.k_dot_x2);
    P.j = 0.25 * s.k * s.k;
    return scaled(reduce_to_1d(*find_rule("R1"), P, t_three_halves(), tol), kSqrtPi);
}

QuadResult cheshire(double k_fermi, double k_dot_x2, double x2, const Tolerance& tol) {
    FourierSpec s;
    s.k = 0.5 * k_fermi;
    s.k_dot_x2 = k_dot_x2;
    s.eta1 = 1.0;
    s.eta2 = 0.5;
    s.x2 = x2;
    check_fourier(s);
    const double k2 = s.k * s.k, e1 = s.eta1 * s.eta1, e2 = s.eta2 * s.eta2;
    // -d/d eta2 of e^{-x2 L}/L = e^{-x2 L}(1 + x2 L)(1 - tau) eta2 / L^3.
    auto g = [&](double tau, double comp) -> Complex {
        const double L = std::sqrt(comp * (k2 * tau + e2) + e1 * tau);
        return std::exp(Complex(-s.x2 * L, -s.k_dot_x2 * tau)) * (1.0 + s.x2 * L) * comp * s.eta2 / (L * L * L);
    };
    return scaled(integrate_complement(g, 0.0, 1.0, tol), 2.0 * kPi);
}

}  // namespace r2
