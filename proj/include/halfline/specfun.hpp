#pragma once

// Special functions used throughout the half-line operator code: the modified
// Bessel functions K0 and K1, the hyperbolic kernel that appears after the
// logarithmic change of variables, and the smooth step used by the cutoff
// families.
//
// All functions are pure and reentrant. NaN inputs propagate as NaN.

namespace halfline::specfun {

/// Accuracy contract of the K0/K1 implementation.
struct BesselAccuracy {
    double rel_tol;            // guaranteed relative error on [1e-8, 700]
    double series_limit;       // power series for u <= series_limit
    double asymptotic_limit;   // asymptotic expansion for u > asymptotic_limit
};

/// Between the two switch points the Steed/Temme continued fraction is used;
/// a pure two-regime split cannot reach rel_tol near u ~ 2.
inline constexpr BesselAccuracy kBesselAccuracy{1e-12, 2.0, 25.0};

struct BesselK01 {
    double k0;
    double k1;
};

/// K0(u) and K1(u) from one evaluation. Throws std::domain_error for u <= 0.
BesselK01 bessel_k01(double u);

double bessel_k0(double u);
double bessel_k1(double u);

/// h(r) = 1 / (2 cosh(r/2)); integrates to pi over the real line.
double cosh_kernel(double r);

/// Smooth step tau_eps(x): 0 for x <= 0, 1 for x >= eps and
/// [1 + exp(eps (2x - eps) / (x (x - eps)))]^{-1} in between. The exponent is
/// clamped to [-700, 700].
double smooth_step(double x, double eps);

} // namespace halfline::specfun
