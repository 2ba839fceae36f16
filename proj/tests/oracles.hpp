#pragma once

// Reference values and closed forms that do not go through the library.
// The frozen constants come from tests/oracle_values.py (numpy/mpmath,
// logarithmic coordinates); rerun it to regenerate them.

#include <cmath>
#include <numbers>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTsirelson = 2.0 * std::numbers::sqrt2;
inline constexpr double kMixing = std::numbers::sqrt2 - 1.0;

// Rayleigh quotient of the undamped cutoff family under 1/(x+y).
inline constexpr double kCarlemanQuotient[3] = {
    1.90896945535808,  // eps = 1e-1
    2.43737676567716,  // eps = 1e-2
    2.65932034064725,  // eps = 1e-3
};

// Hankel form (m = 1) of the normalized damped family.
inline constexpr double kHankelQuotient[3] = {
    0.94201802296372,
    1.65297994915631,
    2.08700174126217,
};

inline constexpr double kEpsSweep[3] = {1e-1, 1e-2, 1e-3};

// mpmath.besselk at 50 digits.
inline constexpr double kK0At1 = 0.42102443824070833334;
inline constexpr double kK1At1 = 0.60190723019723457474;
inline constexpr double kK0At100 = 4.6566282291759020189e-45;
inline constexpr double kK1At100 = 4.6798537356369092866e-45;

// Hankel form of sqrt2 e^{-x} at m = 1: 2 int s e^{-s} K1(s) ds = 4/3.
inline constexpr double kHankelExponential = 4.0 / 3.0;

/// K_nu(u) = int_0^inf e^{-u cosh t} cosh(nu t) dt by the trapezoid rule.
/// The integrand is even and analytic, so the rule converges geometrically.
inline double bessel_k_integral(int nu, double u) {
    const long double h = 1.0L / 128.0L;
    long double sum = 0.5L * std::exp(-static_cast<long double>(u));
    for (int i = 1;; ++i) {
        const long double t = h * i;
        const long double arg = u * std::cosh(t);
        const long double term = std::exp(-arg) * std::cosh(nu * t);
        sum += term;
        if (arg > u + 80.0L && term < 1e-40L * sum) break;
    }
    return static_cast<double>(h * sum);
}

/// F(s) = s log s with F(0) = 0.
inline double s_log_s(double s) { return s > 0.0 ? s * std::log(s) : 0.0; }

/// Integral of 1/(x+y) over [a,b] x [c,d].
inline double carleman_box(double a, double b, double c, double d) {
    return s_log_s(b + d) - s_log_s(a + d) - s_log_s(b + c) + s_log_s(a + c);
}

/// 2(1 + 2c - c^2)/(1 + c^2)
inline double general_c_limit(double c) { return 2.0 * (1.0 + 2.0 * c - c * c) / (1.0 + c * c); }

/// CHSH of the ansatz quadruple from the half-line quotient.
inline double chsh_from_quotient(double c, double quotient) {
    return 4.0 * (1.0 - c * c) / (kPi * (1.0 + c * c)) * quotient;
}

/// |<f'|g>| = 2c Q / (pi (1+c^2)).
inline double cross_from_quotient(double c, double quotient) {
    return 2.0 * c / (kPi * (1.0 + c * c)) * quotient;
}

/// CHSH for any c >= 0: 2 (1 + 2c - c^2) Q / (pi (1+c^2)).
inline double chsh_general(double c, double quotient) {
    return general_c_limit(c) * quotient / kPi;
}

} // namespace oracle
