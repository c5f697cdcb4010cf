// analytic_oracle.hpp — Closed-form solutions used as engine-independent references
//
// Two-qubit model, single excitation, main amplitude c_M:
//   c_M'' + (gamma/2) c_M' + c_M = 0,  c_M(0)=1, c_M'(0)=0  (g = 1)
// and p_g(t) = 1 - |c_M(t)|^2 exactly (every jump lands the pair in |g,g>).
#pragma once

#include <cmath>

namespace oracle {

inline double two_qubit_main_amplitude(double gamma, double t) {
    const double a = gamma / 4.0;
    if (a < 1.0) {
        const double w = std::sqrt(1.0 - a * a);
        return std::exp(-a * t) * (std::cos(w * t) + a / w * std::sin(w * t));
    }
    if (a == 1.0) {
        return std::exp(-t) * (1.0 + t);
    }
    const double w = std::sqrt(a * a - 1.0);
    return std::exp(-a * t) * (std::cosh(w * t) + a / w * std::sinh(w * t));
}

inline double two_qubit_pg(double gamma, double t) {
    const double c = two_qubit_main_amplitude(gamma, t);
    return 1.0 - c * c;
}

} // namespace oracle
