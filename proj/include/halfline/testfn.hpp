#pragma once

// The explicit cutoff families on the half-line and the spinor quadruples
// built from them by the symmetry ansatz.

#include "halfline/function.hpp"
#include "halfline/quadrature.hpp"

#include <array>

namespace halfline::testfn {

/// The default mixing constant, the positive root of c^2 + 2c - 1 = 0.
inline constexpr double kTsirelsonMixing = 0.41421356237309504880;  // sqrt(2) - 1

/// Cutoff of x^{-1/2}: zero on [0, eps/2], equal to x^{-1/2} on [eps, 1/eps],
/// smooth transitions built from the smooth step, zero from 2/eps on.
/// Throws std::domain_error unless 0 < eps < 1.
TestFunction1D build_phi_tilde(double eps);

/// Returns phi / ||phi|| with the norm cached. Throws std::invalid_argument
/// for a function of zero norm.
TestFunction1D normalize(const TestFunction1D& phi, const quad::QuadratureSpec& spec);

/// x -> e^{-x} phi(x), same support.
TestFunction1D damp_exponential(const TestFunction1D& phi);

/// (U_m phi)(x) = m^{1/2} phi(m x). Throws std::domain_error for m <= 0.
TestFunction1D dilate(const TestFunction1D& phi, double m);

enum class Side { alice, bob };

/// A two-component real spatial test function. Components are stored as
/// half-line profiles; Alice's components are evaluated at -x.
struct SpinorFunction {
    TestFunction1D comp1;
    TestFunction1D comp2;
    Side side = Side::bob;

    /// Component j (1 or 2) at a point of the real line.
    double component(int j, double x) const;
    /// Component j as a function on the real line (mirrored for Alice).
    LineFunction component_on_line(int j) const;
    const TestFunction1D& profile(int j) const { return j == 1 ? comp1 : comp2; }
    /// The support on the real line, hull of both components.
    Interval line_support() const;
};

struct BellQuadruple {
    SpinorFunction f;
    SpinorFunction f_prime;
    SpinorFunction g;
    SpinorFunction g_prime;
    double c = kTsirelsonMixing;
    TestFunction1D profile;
};

/// The eight components of the explicit quadruple for a normalized profile:
/// Bob g = (phi, -c phi)/sqrt(1+c^2), g' = (c phi, phi)/sqrt(1+c^2), and
/// Alice f, f' by the ansatz f1(x) = -g1(-x), f2 = -c f1, f2' = f1, f1' = -f2.
BellQuadruple assemble_quadruple(const TestFunction1D& phi_normalized, double c);

/// Largest violation of the seven ansatz identities over a sample grid.
double ansatz_deviation(const BellQuadruple& q, int samples = 512);

} // namespace halfline::testfn
