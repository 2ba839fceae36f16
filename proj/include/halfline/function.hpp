#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace halfline {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }
};

/// A real function on the line with declared compact support. Evaluation
/// outside the support returns exactly 0. Breakpoints mark places where the
/// closed form changes; quadrature grids align panels with them.
class LineFunction {
public:
    using Eval = std::function<double(double)>;

    LineFunction() = default;
    LineFunction(Eval eval, Interval support, std::vector<double> breakpoints = {});

    double operator()(double x) const {
        if (!(x >= support_.lo && x <= support_.hi)) return 0.0;
        return eval_(x);
    }

    const Interval& support() const { return support_; }
    /// Sorted, deduplicated, strictly inside the support.
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    /// Support endpoints plus interior breakpoints.
    std::vector<double> segment_edges() const;

    /// Pointwise multiple; support and breakpoints unchanged.
    LineFunction scaled(double factor) const;
    /// x -> f(-x).
    LineFunction mirrored() const;

    /// Functions obtained from one another by scaled() share a shape id;
    /// f(x) = shape_scale() * g(x) for the common shape g.
    std::uint64_t shape_id() const { return shape_id_; }
    double shape_scale() const { return shape_scale_; }

protected:
    static std::uint64_t next_shape_id();

    Eval eval_;
    Interval support_;
    std::vector<double> breakpoints_;
    std::uint64_t shape_id_ = 0;
    double shape_scale_ = 1.0;
};

enum class Family { phi_eps, phi_eps_damped, dilated, custom };

struct FamilyTag {
    Family family = Family::custom;
    double eps = 0.0;
    double mass = 1.0;     // dilation parameter; 1 means undilated
    bool damped = false;   // carries the e^{-x} factor
};

std::string to_string(Family family);

/// A test function on the half-line [0, inf): support lo >= 0.
class TestFunction1D : public LineFunction {
public:
    TestFunction1D() = default;
    TestFunction1D(Eval eval, Interval support, std::vector<double> breakpoints = {},
                   FamilyTag tag = {});

    const FamilyTag& tag() const { return tag_; }

    /// Cached L2 norm, set by normalize() or explicitly.
    const std::optional<double>& l2_norm_cache() const { return l2_norm_; }
    void set_l2_norm_cache(double norm) { l2_norm_ = norm; }

    /// Smallest length scale on which the function varies; used to bound
    /// Fourier integration ranges. Defaults to the shortest segment.
    double feature_scale() const;
    void set_feature_scale(double scale) { feature_scale_ = scale; }

    TestFunction1D scaled(double factor) const;

    /// psi(s) = e^{s/2} phi(e^s). Requires lo > 0.
    LineFunction log_profile() const;

private:
    FamilyTag tag_;
    std::optional<double> l2_norm_;
    std::optional<double> feature_scale_;
};

} // namespace halfline
