#include "halfline/testfn.hpp"

#include "halfline/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace halfline::testfn {

namespace {

// c^2 + 2c - 1 = 0 for the frozen double; checked once at load time.
[[maybe_unused]] const bool kMixingChecked = [] {
    const double c = kTsirelsonMixing;
    if (std::abs(c * c + 2.0 * c - 1.0) > 1e-15) {
        throw std::logic_error("kTsirelsonMixing does not satisfy c^2 + 2c - 1 = 0");
    }
    return true;
}();

} // namespace

TestFunction1D build_phi_tilde(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::domain_error("build_phi_tilde: eps must lie in (0, 1), got " +
                                std::to_string(eps));
    }
    const double a = 0.5 * eps;
    const double b = eps;
    const double c = 1.0 / eps;
    const double d = 2.0 / eps;
    auto eval = [=](double x) {
        if (x <= a || x >= d) return 0.0;
        const double base = 1.0 / std::sqrt(x);
        if (x < b) return specfun::smooth_step(2.0 * x - eps, eps) * base;
        if (x <= c) return base;
        return specfun::smooth_step(2.0 * eps - eps * eps * x, eps) * base;
    };
    FamilyTag tag{Family::phi_eps, eps, 1.0, false};
    TestFunction1D phi(eval, Interval{a, d}, {b, c}, tag);
    phi.set_feature_scale(a);
    return phi;
}

TestFunction1D normalize(const TestFunction1D& phi, const quad::QuadratureSpec& spec) {
    const double norm2 = quad::l2_norm_squared(phi, spec);
    if (!(norm2 > 0.0)) throw std::invalid_argument("normalize: function has zero norm");
    const double norm = std::sqrt(norm2);
    TestFunction1D out = phi.scaled(1.0 / norm);
    out.set_l2_norm_cache(1.0);
    return out;
}

TestFunction1D damp_exponential(const TestFunction1D& phi) {
    FamilyTag tag = phi.tag();
    if (tag.family == Family::phi_eps) tag.family = Family::phi_eps_damped;
    tag.damped = true;
    TestFunction1D out([phi](double x) { return std::exp(-x) * phi(x); }, phi.support(),
                       phi.breakpoints(), tag);
    out.set_feature_scale(std::min(phi.feature_scale(), 1.0));
    return out;
}

TestFunction1D dilate(const TestFunction1D& phi, double m) {
    if (!(m > 0.0)) {
        throw std::domain_error("dilate: mass must be positive, got " + std::to_string(m));
    }
    if (m == 1.0) return phi;
    std::vector<double> bps;
    for (double b : phi.breakpoints()) bps.push_back(b / m);
    FamilyTag tag = phi.tag();
    tag.family = Family::dilated;
    tag.mass *= m;
    const double root = std::sqrt(m);
    TestFunction1D out([phi, m, root](double x) { return root * phi(m * x); },
                       Interval{phi.support().lo / m, phi.support().hi / m}, std::move(bps), tag);
    out.set_feature_scale(phi.feature_scale() / m);
    if (phi.l2_norm_cache()) out.set_l2_norm_cache(*phi.l2_norm_cache());
    return out;
}

double SpinorFunction::component(int j, double x) const {
    const TestFunction1D& p = profile(j);
    return side == Side::alice ? p(-x) : p(x);
}

LineFunction SpinorFunction::component_on_line(int j) const {
    const TestFunction1D& p = profile(j);
    if (side == Side::bob) return p;
    return static_cast<const LineFunction&>(p).mirrored();
}

Interval SpinorFunction::line_support() const {
    Interval s{std::min(comp1.support().lo, comp2.support().lo),
               std::max(comp1.support().hi, comp2.support().hi)};
    if (side == Side::alice) return Interval{-s.hi, -s.lo};
    return s;
}

BellQuadruple assemble_quadruple(const TestFunction1D& phi, double c) {
    if (!(c >= 0.0)) throw std::domain_error("assemble_quadruple: c must be >= 0");
    if (!(phi.support().lo > 0.0)) {
        throw std::invalid_argument("assemble_quadruple: profile support must start above 0");
    }
    const double s = 1.0 / std::sqrt(1.0 + c * c);
    BellQuadruple q;
    q.c = c;
    q.profile = phi;
    q.g = SpinorFunction{phi.scaled(s), phi.scaled(-c * s), Side::bob};
    q.g_prime = SpinorFunction{phi.scaled(c * s), phi.scaled(s), Side::bob};
    q.f = SpinorFunction{phi.scaled(-s), phi.scaled(c * s), Side::alice};
    q.f_prime = SpinorFunction{phi.scaled(-c * s), phi.scaled(-s), Side::alice};
    return q;
}

double ansatz_deviation(const BellQuadruple& q, int samples) {
    const Interval sup = q.profile.support();
    double worst = 0.0;
    auto track = [&](double a, double b) { worst = std::max(worst, std::abs(a - b)); };
    for (int i = 0; i <= samples; ++i) {
        // log-spaced over the support so both ends are sampled densely
        const double t = static_cast<double>(i) / samples;
        const double y = sup.lo * std::pow(sup.hi / sup.lo, t);
        const double x = -y;
        track(q.f_prime.component(2, x), q.f.component(1, x));
        track(q.f_prime.component(1, x), -q.f.component(2, x));
        track(q.g_prime.component(2, y), q.g.component(1, y));
        track(q.g_prime.component(1, y), -q.g.component(2, y));
        track(q.f.component(2, x), -q.c * q.f.component(1, x));
        track(q.g.component(2, y), -q.c * q.g.component(1, y));
        track(q.f.component(1, x), -q.g.component(1, -x));
    }
    return worst;
}

} // namespace halfline::testfn
