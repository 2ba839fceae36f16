#include "halfline/forms.hpp"

#include "halfline/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace halfline::forms {

namespace {

void require_half_line_l2(const TestFunction1D& phi) {
    if (phi.support().lo > 0.0) return;
    // x phi(x)^2 bounded below near 0 means phi^2 ~ 1/x: not square integrable.
    const double x = 1e-12;
    const double v = phi(x);
    if (!std::isfinite(v) || x * v * v > 1e-3) {
        throw std::invalid_argument(
            "quadratic form: profile is not square integrable at 0; support must avoid 0");
    }
}

// Nodes on [0, R] for the difference variable of the log route.
quad::NodeSet r_nodes(double radius, const quad::QuadratureSpec& spec) {
    const double width = std::min(0.8, spec.max_linear_width);
    const int n = std::max(spec.panels, static_cast<int>(std::ceil(radius / width)));
    std::vector<double> edges;
    for (int i = 0; i <= n; ++i) edges.push_back(radius * i / n);
    return quad::panel_nodes(edges, spec.nodes_per_panel, false);
}

double log_route_value(const TestFunction1D& phi, const quad::QuadratureSpec& spec) {
    const LineFunction psi = phi.log_profile();
    const double radius = psi.support().length();
    const quad::NodeSet rs = r_nodes(radius, spec);
    double sum = 0.0;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        sum += rs.w[i] * specfun::cosh_kernel(rs.x[i]) * quad::autocorrelation(psi, rs.x[i], spec);
    }
    return 2.0 * sum;  // W and h are even
}

double laplace_route_value(const TestFunction1D& phi, double mass,
                           const quad::QuadratureSpec& spec) {
    const quad::NodeSet xs = quad::function_nodes(phi, spec);
    std::vector<double> weighted(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) weighted[i] = xs.w[i] * phi(xs.x[i]);

    // e^{-m x_min cosh(theta_max)} < 1e-18
    const double lo = phi.support().lo;
    double theta_max = 45.0;
    if (lo > 0.0) {
        const double target = 18.0 * std::numbers::ln10 / (mass * lo);
        theta_max = std::min(theta_max, std::acosh(std::max(1.0, target)));
    }
    theta_max = std::max(theta_max, 1.0);
    const int panels = std::max(spec.panels, static_cast<int>(std::ceil(theta_max * spec.panels)));
    std::vector<double> edges;
    for (int i = 0; i <= panels; ++i) edges.push_back(theta_max * i / panels);
    const quad::NodeSet thetas = quad::panel_nodes(edges, spec.nodes_per_panel, false);

    double sum = 0.0;
    for (std::size_t k = 0; k < thetas.size(); ++k) {
        const double ch = std::cosh(thetas.x[k]);
        const double t = mass * ch;
        double lap = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) lap += weighted[i] * std::exp(-t * xs.x[i]);
        sum += thetas.w[k] * ch * lap * lap;
    }
    return mass * sum;
}

FormValue with_error(Route route, const quad::QuadratureSpec& spec,
                     const std::function<double(const quad::QuadratureSpec&)>& eval) {
    FormValue out;
    out.route = route;
    out.value = eval(spec);
    if (spec.estimate_error) out.error_estimate = std::abs(eval(spec.refined()) - out.value);
    return out;
}

} // namespace

KernelForm KernelForm::hankel(double mass) {
    if (!(mass > 0.0)) {
        throw std::domain_error("KernelForm::hankel: mass must be positive");
    }
    return KernelForm(Kind::hankel, mass);
}

double KernelForm::operator()(double s) const {
    if (kind_ == Kind::carleman) return 1.0 / s;
    return mass_ * specfun::bessel_k1(mass_ * s);
}

std::string KernelForm::describe() const {
    if (kind_ == Kind::carleman) return "carleman";
    std::ostringstream os;
    os.precision(17);
    os << "hankel(m=" << mass_ << ")";
    return os.str();
}

std::string to_string(Route route) {
    switch (route) {
    case Route::direct: return "direct";
    case Route::log_autocorr: return "log";
    case Route::laplace: return "laplace";
    }
    return "direct";
}

FormValue carleman_form(const TestFunction1D& phi, const quad::QuadratureSpec& spec) {
    require_half_line_l2(phi);
    const auto r = quad::integrate_2d_kernel([](double x, double y) { return 1.0 / (x + y); },
                                             phi, phi, spec);
    return FormValue{r.value, Route::direct, r.error_estimate};
}

double log_autocorrelation(const TestFunction1D& phi, double r, const quad::QuadratureSpec& spec) {
    return quad::autocorrelation(phi.log_profile(), r, spec);
}

FormValue carleman_form_log(const TestFunction1D& phi, const quad::QuadratureSpec& spec) {
    require_half_line_l2(phi);
    return with_error(Route::log_autocorr, spec,
                      [&](const quad::QuadratureSpec& s) { return log_route_value(phi, s); });
}

FormValue hankel_form(const TestFunction1D& phi, double mass, const quad::QuadratureSpec& spec) {
    const KernelForm kernel = KernelForm::hankel(mass);
    require_half_line_l2(phi);
    const auto r = quad::integrate_2d_kernel(
        [&kernel](double x, double y) { return kernel(x + y); }, phi, phi, spec);
    return FormValue{r.value, Route::direct, r.error_estimate};
}

FormValue hankel_form_laplace(const TestFunction1D& phi, double mass,
                              const quad::QuadratureSpec& spec) {
    if (!(mass > 0.0)) throw std::domain_error("hankel_form_laplace: mass must be positive");
    return with_error(Route::laplace, spec, [&](const quad::QuadratureSpec& s) {
        return laplace_route_value(phi, mass, s);
    });
}

FormValue quadratic_form(const TestFunction1D& phi, const KernelForm& kernel,
                         const quad::QuadratureSpec& spec) {
    if (kernel.kind() == KernelForm::Kind::carleman) return carleman_form(phi, spec);
    return hankel_form(phi, kernel.mass(), spec);
}

double weighted_carleman_bound(const TestFunction1D& phi_tilde, int beta,
                               const quad::QuadratureSpec& spec) {
    if (beta != 1 && beta != 2) {
        throw std::invalid_argument("weighted_carleman_bound: beta must be 1 or 2");
    }
    const LineFunction damped([phi_tilde](double x) { return std::exp(-x) * phi_tilde(x); },
                              phi_tilde.support(), phi_tilde.breakpoints());
    const double norm2 = quad::l2_norm_squared(damped, spec);
    const double b = static_cast<double>(beta);
    quad::QuadratureSpec s = spec;
    s.estimate_error = false;
    const auto r = quad::integrate_2d_kernel(
        [b](double x, double y) {
            const double sum = x + y;
            return std::exp(-b * sum) / sum;
        },
        phi_tilde, phi_tilde, s);
    return r.value / norm2;
}

double rayleigh_quotient(const TestFunction1D& phi, const KernelForm& kernel,
                         const quad::QuadratureSpec& spec) {
    const double norm2 = quad::l2_norm_squared(phi, spec);
    if (!(norm2 > 0.0)) throw std::invalid_argument("rayleigh_quotient: zero function");
    quad::QuadratureSpec s = spec;
    s.estimate_error = false;
    return quadratic_form(phi, kernel, s).value / norm2;
}

} // namespace halfline::forms
