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
#include "r2/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace r2 {

void Tolerance::validate() const {
    if (!(rel >= 1e-14)) throw DomainError("tolerance: requires rel>=1e-14");
    if (!(abs >= 0.0)) throw DomainError("tolerance: requires abs>=0");
    if (max_evaluations <= 0) throw DomainError("tolerance: requires max_evaluations>0");
}

namespace {

constexpr double kHalfPi = 1.57079632679489661923;
constexpr double kStep0 = 0.5;        // level-0 spacing in the u variable
constexpr double kRangeFloor = 3.0;   // never truncate inside |u| < kRangeFloor
constexpr double kTruncation = 1e-18; // relative size of a negligible tail term
constexpr int kMinLevel = 2;
constexpr int kMaxLevel = 12;

struct Node {
    bool valid = false;
    double x = 0.0;
    double comp = 0.0;    // hi - x (interval rule only)
    double weight = 0.0;  // dx/du
};

// One trapezoid engine in the u variable; the map decides the rule.
template <class Map>
QuadResult run_engine(const IntegrandWithComplement& f, const Map& map, const Tolerance& tol) {
    tol.validate();
    QuadResult res;
    auto term = [&](double u, bool& ok) -> Complex {
        const Node nd = map(u);
        if (!nd.valid) {
            ok = false;
            return 0.0;
        }
        ok = true;
        const Complex v = f(nd.x, nd.comp);
        ++res.evaluations;
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            std::ostringstream msg;
            msg << "non-finite integrand value at x=" << nd.x;
            throw NumericalError(msg.str());
        }
        return v * nd.weight;
    };

    // Level 0: scan outward from u = 0 to fix the truncation range.
    bool ok = true;
    Complex sum = term(0.0, ok);
    double l1 = std::abs(sum);
    int kmax = 0, kmin = 0;
    for (int dir : {1, -1}) {
        int small = 0;
        for (int k = 1;; ++k) {
            const double u = dir * k * kStep0;
            const Complex t = term(u, ok);
            if (!ok) break;
            sum += t;
            l1 += std::abs(t);
            (dir > 0 ? kmax : kmin) = dir * k;
            if (std::fabs(u) >= kRangeFloor && std::abs(t) <= kTruncation * l1) {
                if (++small >= 2) break;
            } else {
                small = 0;
            }
        }
    }
    const double umin = kmin * kStep0, umax = kmax * kStep0;
    Complex estimate = sum * kStep0;
    double err = std::numeric_limits<double>::infinity();
    double h = kStep0;
    for (int level = 1; level <= kMaxLevel; ++level) {
        h *= 0.5;
        const long count = std::lround((umax - umin) / h);
        for (long j = 1; j < count; j += 2) {
            const Complex t = term(umin + j * h, ok);
            if (ok) sum += t;
        }
        const Complex next = sum * h;
        err = std::abs(next - estimate);
        estimate = next;
        const double target = std::max(tol.abs, tol.rel * std::abs(estimate));
        if (level >= kMinLevel && err <= target) {
            res.converged = true;
            break;
        }
        if (res.evaluations >= tol.max_evaluations) break;
    }
    res.value = estimate;
    res.abs_error_estimate = err;
    return res;
}

Node exp_sinh_node(double u) {
    Node nd;
    const double s = kHalfPi * std::sinh(u);
    if (s > 700.0 || s < -700.0) return nd;
    nd.x = std::exp(s);
    nd.weight = nd.x * kHalfPi * std::cosh(u);
    nd.comp = std::numeric_limits<double>::infinity();
    nd.valid = nd.x > 0.0 && std::isfinite(nd.weight) && nd.weight > 0.0;
    return nd;
}

struct TanhSinhMap {
    double lo, hi;
    bool accept_rounded_endpoint;  // the integrand uses the accurate complement
    Node operator()(double u) const {
        Node nd;
        const double hw = 0.5 * (hi - lo);
        const double s = kHalfPi * std::sinh(u);
        const double e = std::exp(-2.0 * std::fabs(s));
        const double dist = hw * 2.0 * e / (1.0 + e);  // distance to the nearer endpoint
        if (!(dist > 0.0)) return nd;
        nd.weight = hw * kHalfPi * std::cosh(u) * 4.0 * e / ((1.0 + e) * (1.0 + e));
        if (u >= 0.0) {
            nd.x = hi - dist;
            nd.comp = dist;
            if (nd.x >= hi && !accept_rounded_endpoint) return nd;
        } else {
            nd.x = lo + dist;
            nd.comp = (hi - lo) - dist;
            if (nd.x <= lo) return nd;
        }
        nd.valid = nd.weight > 0.0;
        return nd;
    }
};

}  // namespace

QuadResult integrate_half_line(const Integrand& f, const Tolerance& tol) {
    return run_engine([&](double x, double) { return f(x); }, exp_sinh_node, tol);
}

QuadResult integrate_interval(const Integrand& f, double lo, double hi, const Tolerance& tol) {
    if (!(hi > lo)) throw DomainError("integrate_interval: requires hi>lo");
    return run_engine([&](double x, double) { return f(x); }, TanhSinhMap{lo, hi, false}, tol);
}

QuadResult integrate_complement(const IntegrandWithComplement& f, double lo, double hi, const Tolerance& tol) {
    if (!(hi > lo)) throw DomainError("integrate_complement: requires hi>lo");
    return run_engine(f, TanhSinhMap{lo, hi, true}, tol);
}

QuadResult integrate_quadrant(const Integrand2D& g, const Tolerance& tol) {
    tol.validate();
    Tolerance inner = tol;
    inner.rel = std::max(1e-14, 0.1 * tol.rel);
    inner.abs = 0.1 * tol.abs;
    std::int64_t inner_evals = 0;
    int inner_failures = 0;
    auto slice = [&](double x) -> Complex {
        // Split at y0 = x/(1+x): follows x for small x but stays O(1) for large x,
        // where slowly decaying outer tails still carry mass concentrated at y ~ 1.
        const double y0 = x / (1.0 + x);
        const QuadResult near = integrate_interval([&](double v) { return g(x, y0 * v); }, 0.0, 1.0, inner);
        const QuadResult far = integrate_half_line([&](double s) { return g(x, y0 * (1.0 + s)); }, inner);
        inner_evals += near.evaluations + far.evaluations;
        if (!near.converged || !far.converged) ++inner_failures;
        return y0 * (near.value + far.value);
    };
    QuadResult res = integrate_half_line(slice, tol);
    res.evaluations = inner_evals;
    res.converged = res.converged && inner_failures == 0;
    return res;
}

}  // namespace r2
