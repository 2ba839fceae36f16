#pragma once

// Deterministic composite Gauss-Legendre quadrature in one and two dimensions.
//
// Panels are aligned with the breakpoints of the integrand's closed form.
// Segments spanning an octave or more are graded geometrically, and segments
// that start or end at 0 are graded toward 0. Every integral is computed with
// a fixed rule, so repeated runs are bit-identical.

#include "halfline/function.hpp"

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace halfline::quad {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1], ascending
    std::vector<double> weights;
};

/// Gauss-Legendre rule of the given order (>= 1), computed once and cached.
const GaussRule& gauss_legendre(int order);

enum class Substitution {
    none,           // nodes affine in x on every panel
    log_xy,         // nodes affine in log x on panels away from 0
    convolution_r,  // reduce x+y kernels to a difference variable in log coordinates
};

struct QuadratureSpec {
    /// Panels per linear segment, or per octave on geometrically graded segments.
    int panels = 4;
    int nodes_per_panel = 16;
    double abs_tol = 1e-10;
    Substitution substitution = Substitution::none;
    /// Linear segments are further split so no panel is wider than this.
    double max_linear_width = 1.0;
    /// When false, error_estimate is left at 0 and no refined pass is run.
    bool estimate_error = true;

    void validate() const;
    /// One refinement level: twice the panels.
    QuadratureSpec refined() const;
};

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;   // |refined - requested|
    std::size_t evaluations = 0;
    double truncation_radius = 0.0;  // 0 when the domain was not truncated
};

struct NodeSet {
    std::vector<double> x;
    std::vector<double> w;

    std::size_t size() const { return x.size(); }
};

/// Panel edges for consecutive segment edges (support endpoints and breakpoints).
std::vector<double> graded_edges(const std::vector<double>& segment_edges,
                                 const QuadratureSpec& spec);

/// Gauss nodes on the given panels; with log_map, panels with lo > 0 use
/// nodes affine in log x.
NodeSet panel_nodes(const std::vector<double>& edges, int order, bool log_map);

/// Quadrature nodes for integrating against f over its support.
NodeSet function_nodes(const LineFunction& f, const QuadratureSpec& spec);

/// Composite rule on [a, b]: uniform panels, or geometric ones when
/// spec.substitution == log_xy and a > 0. Throws std::runtime_error naming the
/// node when f is not finite there.
IntegralResult integrate_1d(const std::function<double(double)>& f, double a, double b,
                            const QuadratureSpec& spec);

/// Integral of f over its support.
IntegralResult integrate_function(const LineFunction& f, const QuadratureSpec& spec);

/// Integral of f^2 over its support.
double l2_norm_squared(const LineFunction& f, const QuadratureSpec& spec);

using Kernel2D = std::function<double(double, double)>;

/// Tensor-product value of the double integral of kernel(x, y) phi(x) psi(y)
/// over supp(phi) x supp(psi). Throws std::invalid_argument when the kernel is
/// not finite at a node, which happens when supports are not separated as the
/// kernel requires.
IntegralResult integrate_2d_kernel(const Kernel2D& kernel, const LineFunction& phi,
                                   const LineFunction& psi, const QuadratureSpec& spec);

/// W(r) = integral of psi(t + r) psi(t) dt.
double autocorrelation(const LineFunction& psi, double r, const QuadratureSpec& spec);

/// Integral of e^{-t x} phi(x) dx over supp(phi). Requires t >= 1.
double laplace_transform(const LineFunction& phi, double t, const QuadratureSpec& spec);

} // namespace halfline::quad
