#include "halfline/quadrature.hpp"

#include "halfline/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace halfline::quad {

namespace {

GaussRule compute_rule(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        // recompute derivative at the converged node
        double p0 = 1.0;
        double p1 = 0.0;
        for (int j = 0; j < n; ++j) {
            const double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
        }
        dp = n * (z * p0 - p1) / (z * z - 1.0);
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

constexpr int kZeroGradingLevels = 40;
constexpr int kZeroGradingFull = 4;   // octaves next to the far end get full panel count

void append_uniform(std::vector<double>& edges, double a, double b, int n) {
    for (int i = 1; i <= n; ++i) {
        edges.push_back(i == n ? b : a + (b - a) * static_cast<double>(i) / n);
    }
}

void append_geometric(std::vector<double>& edges, double a, double b, int n) {
    const double ratio = std::log(b / a);
    for (int i = 1; i <= n; ++i) {
        edges.push_back(i == n ? b : a * std::exp(ratio * static_cast<double>(i) / n));
    }
}

int linear_panel_count(double a, double b, const QuadratureSpec& spec) {
    int n = spec.panels;
    if (std::isfinite(spec.max_linear_width) && spec.max_linear_width > 0.0) {
        n = std::max(n, static_cast<int>(std::ceil((b - a) / spec.max_linear_width)));
    }
    return n;
}

// Octaves from |end| down to |end| 2^-levels, coarse far from 0 and fine next to it.
std::vector<double> zero_graded_magnitudes(double end, const QuadratureSpec& spec) {
    std::vector<double> mags;  // descending, starting below |end|
    double hi = end;
    for (int level = 0; level < kZeroGradingLevels; ++level) {
        const double lo = 0.5 * hi;
        const int n = level < kZeroGradingFull ? spec.panels : 1;
        std::vector<double> tmp{lo};
        append_geometric(tmp, lo, hi, n);
        // tmp = lo, ..., hi ; push interior + lo in descending order
        for (int i = static_cast<int>(tmp.size()) - 2; i >= 0; --i) mags.push_back(tmp[i]);
        hi = lo;
    }
    mags.push_back(0.0);
    return mags;
}

void check_finite(double value, double x, const char* where) {
    if (!std::isfinite(value)) {
        std::ostringstream os;
        os.precision(17);
        os << where << ": integrand not finite at node x = " << x;
        throw std::runtime_error(os.str());
    }
}

double dot(const NodeSet& nodes, const std::function<double(double)>& f, const char* where) {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double v = f(nodes.x[i]);
        check_finite(v, nodes.x[i], where);
        sum += nodes.w[i] * v;
    }
    return sum;
}

} // namespace

const GaussRule& gauss_legendre(int order) {
    if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<GaussRule>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[order];
    if (!slot) slot = std::make_unique<GaussRule>(compute_rule(order));
    return *slot;
}

void QuadratureSpec::validate() const {
    if (panels < 1) throw std::invalid_argument("QuadratureSpec: panels must be >= 1");
    if (nodes_per_panel < 2) {
        throw std::invalid_argument("QuadratureSpec: nodes_per_panel must be >= 2");
    }
    if (!(abs_tol >= 0.0)) throw std::invalid_argument("QuadratureSpec: abs_tol must be >= 0");
}

QuadratureSpec QuadratureSpec::refined() const {
    QuadratureSpec out = *this;
    out.panels *= 2;
    out.max_linear_width *= 0.5;
    return out;
}

std::vector<double> graded_edges(const std::vector<double>& segment_edges,
                                 const QuadratureSpec& spec) {
    spec.validate();
    if (segment_edges.size() < 2) throw std::invalid_argument("graded_edges: need >= 2 edges");
    std::vector<double> edges{segment_edges.front()};
    for (std::size_t s = 0; s + 1 < segment_edges.size(); ++s) {
        const double a = segment_edges[s];
        const double b = segment_edges[s + 1];
        if (!(b > a)) continue;
        if (a == 0.0) {
            auto mags = zero_graded_magnitudes(b, spec);
            for (auto it = mags.rbegin(); it != mags.rend(); ++it) {
                if (*it > 0.0) edges.push_back(*it);
            }
            edges.push_back(b);
        } else if (b == 0.0) {
            for (double m : zero_graded_magnitudes(-a, spec)) edges.push_back(-m);
        } else if (a > 0.0 && b / a >= 2.0) {
            const int octaves = static_cast<int>(std::ceil(std::log2(b / a) - 1e-12));
            append_geometric(edges, a, b, spec.panels * octaves);
        } else if (b < 0.0 && a / b >= 2.0) {
            const int octaves = static_cast<int>(std::ceil(std::log2(a / b) - 1e-12));
            std::vector<double> mags{-b};
            append_geometric(mags, -b, -a, spec.panels * octaves);
            for (auto it = mags.rbegin() + 1; it != mags.rend(); ++it) edges.push_back(-*it);
        } else {
            append_uniform(edges, a, b, linear_panel_count(a, b, spec));
        }
    }
    // guard against duplicated edges from rounding
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

NodeSet panel_nodes(const std::vector<double>& edges, int order, bool log_map) {
    const GaussRule& rule = gauss_legendre(order);
    NodeSet out;
    out.x.reserve((edges.size() - 1) * order);
    out.w.reserve((edges.size() - 1) * order);
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double a = edges[p];
        const double b = edges[p + 1];
        if (log_map && a > 0.0) {
            const double la = std::log(a);
            const double lb = std::log(b);
            const double half = 0.5 * (lb - la);
            const double mid = 0.5 * (lb + la);
            for (int i = 0; i < order; ++i) {
                const double x = std::exp(mid + half * rule.nodes[i]);
                out.x.push_back(x);
                out.w.push_back(half * rule.weights[i] * x);
            }
        } else {
            const double half = 0.5 * (b - a);
            const double mid = 0.5 * (b + a);
            for (int i = 0; i < order; ++i) {
                out.x.push_back(mid + half * rule.nodes[i]);
                out.w.push_back(half * rule.weights[i]);
            }
        }
    }
    return out;
}

NodeSet function_nodes(const LineFunction& f, const QuadratureSpec& spec) {
    const bool log_map = spec.substitution != Substitution::none;
    return panel_nodes(graded_edges(f.segment_edges(), spec), spec.nodes_per_panel, log_map);
}

IntegralResult integrate_1d(const std::function<double(double)>& f, double a, double b,
                            const QuadratureSpec& spec) {
    spec.validate();
    if (!(a < b)) throw std::invalid_argument("integrate_1d: requires a < b");
    auto rule_value = [&](const QuadratureSpec& s, std::size_t& evals) {
        std::vector<double> edges{a};
        if (s.substitution == Substitution::log_xy && a > 0.0) {
            const int octaves = std::max(1, static_cast<int>(std::ceil(std::log2(b / a))));
            append_geometric(edges, a, b, s.panels * octaves);
        } else {
            append_uniform(edges, a, b, linear_panel_count(a, b, s));
        }
        const NodeSet nodes = panel_nodes(edges, s.nodes_per_panel,
                                          s.substitution == Substitution::log_xy);
        evals += nodes.size();
        return dot(nodes, f, "integrate_1d");
    };
    IntegralResult out;
    out.value = rule_value(spec, out.evaluations);
    if (spec.estimate_error) {
        out.error_estimate = std::abs(rule_value(spec.refined(), out.evaluations) - out.value);
    }
    return out;
}

IntegralResult integrate_function(const LineFunction& f, const QuadratureSpec& spec) {
    spec.validate();
    IntegralResult out;
    const NodeSet nodes = function_nodes(f, spec);
    out.value = dot(nodes, [&](double x) { return f(x); }, "integrate_function");
    out.evaluations = nodes.size();
    if (spec.estimate_error) {
        const NodeSet fine = function_nodes(f, spec.refined());
        out.error_estimate =
            std::abs(dot(fine, [&](double x) { return f(x); }, "integrate_function") - out.value);
        out.evaluations += fine.size();
    }
    return out;
}

double l2_norm_squared(const LineFunction& f, const QuadratureSpec& spec) {
    const NodeSet nodes = function_nodes(f, spec);
    return dot(nodes, [&](double x) {
        const double v = f(x);
        return v * v;
    }, "l2_norm_squared");
}

namespace {

double tensor_value(const Kernel2D& kernel, const LineFunction& phi, const LineFunction& psi,
                    const QuadratureSpec& spec, std::size_t& evals) {
    if (spec.substitution == Substitution::convolution_r) {
        throw std::invalid_argument(
            "integrate_2d_kernel: convolution_r is handled by the autocorrelation route");
    }
    const NodeSet xs = function_nodes(phi, spec);
    const NodeSet ys = function_nodes(psi, spec);
    std::vector<double> fy(ys.size());
    for (std::size_t j = 0; j < ys.size(); ++j) fy[j] = ys.w[j] * psi(ys.x[j]);
    std::vector<double> rows(xs.size(), 0.0);
    parallel_for(xs.size(), [&](std::size_t i) {
        const double fx = phi(xs.x[i]);
        if (fx == 0.0) return;
        double row = 0.0;
        for (std::size_t j = 0; j < ys.size(); ++j) {
            if (fy[j] == 0.0) continue;
            const double k = kernel(xs.x[i], ys.x[j]);
            if (!std::isfinite(k)) {
                std::ostringstream os;
                os.precision(17);
                os << "integrate_2d_kernel: kernel not finite at (" << xs.x[i] << ", " << ys.x[j]
                   << "); supports must be separated as the kernel requires";
                throw std::invalid_argument(os.str());
            }
            row += k * fy[j];
        }
        rows[i] = xs.w[i] * fx * row;
    });
    evals += xs.size() * ys.size();
    double sum = 0.0;
    for (double r : rows) sum += r;
    return sum;
}

} // namespace

IntegralResult integrate_2d_kernel(const Kernel2D& kernel, const LineFunction& phi,
                                   const LineFunction& psi, const QuadratureSpec& spec) {
    spec.validate();
    if (spec.substitution == Substitution::log_xy &&
        (phi.support().lo <= 0.0 || psi.support().lo <= 0.0)) {
        throw std::invalid_argument("integrate_2d_kernel: log_xy needs supports away from 0");
    }
    IntegralResult out;
    out.value = tensor_value(kernel, phi, psi, spec, out.evaluations);
    if (spec.estimate_error) {
        out.error_estimate =
            std::abs(tensor_value(kernel, phi, psi, spec.refined(), out.evaluations) - out.value);
    }
    return out;
}

double autocorrelation(const LineFunction& psi, double r, const QuadratureSpec& spec) {
    spec.validate();
    const Interval sup = psi.support();
    const double lo = std::max(sup.lo, sup.lo - r);
    const double hi = std::min(sup.hi, sup.hi - r);
    if (!(hi > lo)) return 0.0;
    std::vector<double> seg{lo, hi};
    for (double b : psi.breakpoints()) {
        if (b > lo && b < hi) seg.push_back(b);
        if (b - r > lo && b - r < hi) seg.push_back(b - r);
    }
    std::sort(seg.begin(), seg.end());
    seg.erase(std::unique(seg.begin(), seg.end()), seg.end());
    QuadratureSpec linear = spec;
    linear.substitution = Substitution::none;
    std::vector<double> edges{seg.front()};
    for (std::size_t s = 0; s + 1 < seg.size(); ++s) {
        append_uniform(edges, seg[s], seg[s + 1], linear_panel_count(seg[s], seg[s + 1], linear));
    }
    const NodeSet nodes = panel_nodes(edges, spec.nodes_per_panel, false);
    return dot(nodes, [&](double t) { return psi(t + r) * psi(t); }, "autocorrelation");
}

double laplace_transform(const LineFunction& phi, double t, const QuadratureSpec& spec) {
    if (!(t >= 1.0)) throw std::invalid_argument("laplace_transform: requires t >= 1");
    const NodeSet nodes = function_nodes(phi, spec);
    return dot(nodes, [&](double x) { return std::exp(-t * x) * phi(x); }, "laplace_transform");
}

} // namespace halfline::quad
