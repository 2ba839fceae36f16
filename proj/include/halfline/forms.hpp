#pragma once

// Quadratic forms of the Carleman operator (kernel 1/(x+y)) and of the Bessel
// Hankel operator (kernel m K1(m(x+y))) on L^2([0, inf)).
//
// The direct route integrates the kernel in (x, y). Two independent routes
// serve as oracles: the logarithmic change of variables, which turns the
// Carleman form into an autocorrelation integrated against h(r), and the
// Laplace representation of the Bessel kernel, which writes the Hankel form
// as a weighted integral of |L phi(t)|^2 and is nonnegative by construction.

#include "halfline/function.hpp"
#include "halfline/quadrature.hpp"

#include <string>

namespace halfline::forms {

class KernelForm {
public:
    enum class Kind { carleman, hankel };

    static KernelForm carleman() { return KernelForm(Kind::carleman, 0.0); }
    /// Throws std::domain_error for m <= 0.
    static KernelForm hankel(double mass);

    Kind kind() const { return kind_; }
    double mass() const { return mass_; }

    /// Kernel as a function of the distance s > 0: 1/s or m K1(m s).
    double operator()(double s) const;

    std::string describe() const;

private:
    KernelForm(Kind kind, double mass) : kind_(kind), mass_(mass) {}
    Kind kind_;
    double mass_;
};

enum class Route { direct, log_autocorr, laplace };

std::string to_string(Route route);

struct FormValue {
    double value = 0.0;
    Route route = Route::direct;
    double error_estimate = 0.0;
};

/// Double integral of phi(x) phi(y) / (x + y). Throws std::invalid_argument
/// when phi is not square integrable at 0.
FormValue carleman_form(const TestFunction1D& phi, const quad::QuadratureSpec& spec);

/// W(r) for the log profile psi(s) = e^{s/2} phi(e^s).
double log_autocorrelation(const TestFunction1D& phi, double r, const quad::QuadratureSpec& spec);

/// The Carleman form as the integral of h(r) W(r) dr.
FormValue carleman_form_log(const TestFunction1D& phi, const quad::QuadratureSpec& spec);

/// Double integral of m K1(m(x + y)) phi(x) phi(y).
FormValue hankel_form(const TestFunction1D& phi, double mass, const quad::QuadratureSpec& spec);

/// m times the integral over theta >= 0 of cosh(theta) (L phi)(m cosh theta)^2,
/// the Laplace representation after t = cosh(theta).
FormValue hankel_form_laplace(const TestFunction1D& phi, double mass,
                              const quad::QuadratureSpec& spec);

/// Direct route for either kernel.
FormValue quadratic_form(const TestFunction1D& phi, const KernelForm& kernel,
                         const quad::QuadratureSpec& spec);

/// I_beta = (1/N) double integral of e^{-beta(x+y)}/(x+y) phi(x) phi(y), with
/// N = ||e^{-x} phi||^2; beta is 1 or 2. Brackets the Hankel form of the
/// normalized damped profile: I_2 <= Q_K <= I_1.
double weighted_carleman_bound(const TestFunction1D& phi_tilde, int beta,
                               const quad::QuadratureSpec& spec);

/// Form value divided by ||phi||^2. Throws std::invalid_argument for phi = 0.
double rayleigh_quotient(const TestFunction1D& phi, const KernelForm& kernel,
                         const quad::QuadratureSpec& spec);

} // namespace halfline::forms
