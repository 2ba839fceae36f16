#include "halfline/function.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

namespace halfline {

LineFunction::LineFunction(Eval eval, Interval support, std::vector<double> breakpoints)
    : eval_(std::move(eval)), support_(support), shape_id_(next_shape_id()) {
    if (!(support_.lo < support_.hi)) {
        throw std::invalid_argument("LineFunction: support must satisfy lo < hi");
    }
    std::sort(breakpoints.begin(), breakpoints.end());
    for (double b : breakpoints) {
        if (b > support_.lo && b < support_.hi &&
            (breakpoints_.empty() || b > breakpoints_.back())) {
            breakpoints_.push_back(b);
        }
    }
}

std::vector<double> LineFunction::segment_edges() const {
    std::vector<double> edges;
    edges.reserve(breakpoints_.size() + 2);
    edges.push_back(support_.lo);
    edges.insert(edges.end(), breakpoints_.begin(), breakpoints_.end());
    edges.push_back(support_.hi);
    return edges;
}

std::uint64_t LineFunction::next_shape_id() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1, std::memory_order_relaxed);
}

LineFunction LineFunction::scaled(double factor) const {
    LineFunction out = *this;
    out.eval_ = [f = eval_, factor](double x) { return factor * f(x); };
    out.shape_scale_ = shape_scale_ * factor;
    return out;
}

LineFunction LineFunction::mirrored() const {
    std::vector<double> bps;
    for (double b : breakpoints_) bps.push_back(-b);
    return LineFunction([f = eval_](double x) { return f(-x); },
                        Interval{-support_.hi, -support_.lo}, std::move(bps));
}

std::string to_string(Family family) {
    switch (family) {
    case Family::phi_eps: return "phi_eps";
    case Family::phi_eps_damped: return "phi_eps_damped";
    case Family::dilated: return "dilated";
    case Family::custom: return "custom";
    }
    return "custom";
}

TestFunction1D::TestFunction1D(Eval eval, Interval support, std::vector<double> breakpoints,
                               FamilyTag tag)
    : LineFunction(std::move(eval), support, std::move(breakpoints)), tag_(tag) {
    if (support_.lo < 0.0) {
        throw std::invalid_argument("TestFunction1D: support must lie in [0, inf)");
    }
}

double TestFunction1D::feature_scale() const {
    if (feature_scale_) return *feature_scale_;
    const auto edges = segment_edges();
    double shortest = support_.length();
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        shortest = std::min(shortest, edges[i + 1] - edges[i]);
    }
    return shortest;
}

TestFunction1D TestFunction1D::scaled(double factor) const {
    TestFunction1D out = *this;
    out.eval_ = [f = eval_, factor](double x) { return factor * f(x); };
    out.shape_scale_ = shape_scale_ * factor;
    if (l2_norm_) out.l2_norm_ = std::abs(factor) * *l2_norm_;
    return out;
}

LineFunction TestFunction1D::log_profile() const {
    if (!(support_.lo > 0.0)) {
        throw std::invalid_argument("log_profile: support must be bounded away from 0");
    }
    std::vector<double> bps;
    for (double b : breakpoints_) bps.push_back(std::log(b));
    auto f = eval_;
    const Interval sup = support_;
    return LineFunction(
        [f, sup](double s) {
            const double x = std::exp(s);
            if (x < sup.lo || x > sup.hi) return 0.0;
            return std::exp(0.5 * s) * f(x);
        },
        Interval{std::log(support_.lo), std::log(support_.hi)}, std::move(bps));
}

} // namespace halfline
