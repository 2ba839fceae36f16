#include "halfline/bell.hpp"

#include "halfline/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace halfline::bell {

using testfn::Side;
using testfn::SpinorFunction;

namespace {

// Node set covering both components of a spinor, in the half-line coordinate
// (u = -x for Alice).
quad::NodeSet spinor_nodes(const SpinorFunction& s, const quad::QuadratureSpec& spec) {
    const Interval a = s.comp1.support();
    const Interval b = s.comp2.support();
    const Interval hull{std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
    std::vector<double> bps;
    for (const TestFunction1D* p : {&s.comp1, &s.comp2}) {
        for (double e : p->segment_edges()) {
            if (e > hull.lo && e < hull.hi) bps.push_back(e);
        }
    }
    return quad::function_nodes(LineFunction([](double) { return 0.0; }, hull, bps), spec);
}

struct PairGrid {
    quad::NodeSet u;
    quad::NodeSet y;
    std::vector<double> kernel;  // row-major, u by y, weights folded in
};

PairGrid make_grid(const SpinorFunction& a, const SpinorFunction& b,
                   const forms::KernelForm& kernel, const quad::QuadratureSpec& spec) {
    PairGrid g;
    g.u = spinor_nodes(a, spec);
    g.y = spinor_nodes(b, spec);
    const std::size_t nu = g.u.size();
    const std::size_t ny = g.y.size();
    g.kernel.assign(nu * ny, 0.0);
    parallel_for(nu, [&](std::size_t i) {
        for (std::size_t j = 0; j < ny; ++j) {
            const double k = kernel(g.u.x[i] + g.y.x[j]);
            if (!std::isfinite(k)) {
                std::ostringstream os;
                os.precision(17);
                os << "spatial_pairing: kernel not finite at separation " << g.u.x[i] + g.y.x[j];
                throw std::invalid_argument(os.str());
            }
            g.kernel[i * ny + j] = g.u.w[i] * g.y.w[j] * k;
        }
    });
    return g;
}

double pairing_on_grid(const PairGrid& g, const SpinorFunction& a, const SpinorFunction& b) {
    const std::size_t nu = g.u.size();
    const std::size_t ny = g.y.size();
    std::vector<double> a1(nu), a2(nu), b1(ny), b2(ny);
    for (std::size_t i = 0; i < nu; ++i) {
        a1[i] = a.comp1(g.u.x[i]);
        a2[i] = a.comp2(g.u.x[i]);
    }
    for (std::size_t j = 0; j < ny; ++j) {
        b1[j] = b.comp1(g.y.x[j]);
        b2[j] = b.comp2(g.y.x[j]);
    }
    std::vector<double> rows(nu, 0.0);
    parallel_for(nu, [&](std::size_t i) {
        if (a1[i] == 0.0 && a2[i] == 0.0) return;
        const double* k = g.kernel.data() + i * ny;
        double s1 = 0.0;
        double s2 = 0.0;
        for (std::size_t j = 0; j < ny; ++j) {
            s1 += k[j] * b1[j];
            s2 += k[j] * b2[j];
        }
        rows[i] = a1[i] * s1 - a2[i] * s2;
    });
    double sum = 0.0;
    for (double r : rows) sum += r;
    return sum / std::numbers::pi;
}

void check_roles(const SpinorFunction& a, const SpinorFunction& b) {
    if (a.side != Side::alice || b.side != Side::bob) {
        throw std::invalid_argument("spatial_pairing: expects an Alice spinor and a Bob spinor");
    }
    const double gap = -a.line_support().hi + b.line_support().lo;
    if (!(gap > 0.0)) {
        throw std::invalid_argument("spatial_pairing: Alice and Bob supports overlap");
    }
}

} // namespace

PairingValue spatial_pairing(const SpinorFunction& a, const SpinorFunction& b,
                             const forms::KernelForm& kernel, const quad::QuadratureSpec& spec) {
    check_roles(a, b);
    PairingValue out;
    out.kernel = kernel;
    out.value = pairing_on_grid(make_grid(a, b, kernel, spec), a, b);
    if (spec.estimate_error) {
        const quad::QuadratureSpec fine = spec.refined();
        out.error_estimate =
            std::abs(pairing_on_grid(make_grid(a, b, kernel, fine), a, b) - out.value);
    }
    return out;
}

double local_norm(const SpinorFunction& s, const quad::QuadratureSpec& spec) {
    return quad::l2_norm_squared(s.comp1, spec) + quad::l2_norm_squared(s.comp2, spec);
}

CorrelatorReport bell_correlator(const testfn::BellQuadruple& q, const forms::KernelForm& kernel,
                                 const quad::QuadratureSpec& spec) {
    check_roles(q.f, q.g);
    check_roles(q.f_prime, q.g_prime);
    const std::array<std::pair<const SpinorFunction*, const SpinorFunction*>, 4> pairs{{
        {&q.f, &q.g}, {&q.f_prime, &q.g}, {&q.f, &q.g_prime}, {&q.f_prime, &q.g_prime}}};

    CorrelatorReport rep;
    rep.c = q.c;
    rep.eps = q.profile.tag().eps;
    rep.mass = kernel.kind() == forms::KernelForm::Kind::hankel ? kernel.mass() : 0.0;

    // Alice spinors share the profile hull, as do Bob's, so one grid serves all four.
    const PairGrid grid = make_grid(q.f, q.g, kernel, spec);
    for (std::size_t k = 0; k < 4; ++k) {
        rep.pairings[k].kernel = kernel;
        rep.pairings[k].value = pairing_on_grid(grid, *pairs[k].first, *pairs[k].second);
    }
    if (spec.estimate_error) {
        const PairGrid fine = make_grid(q.f, q.g, kernel, spec.refined());
        for (std::size_t k = 0; k < 4; ++k) {
            const double v = pairing_on_grid(fine, *pairs[k].first, *pairs[k].second);
            rep.pairings[k].error_estimate = std::abs(v - rep.pairings[k].value);
            rep.error_estimate = std::max(rep.error_estimate, rep.pairings[k].error_estimate);
        }
    }
    const auto& p = rep.pairings;
    rep.chsh_abs = std::abs(p[0].value + p[1].value + p[2].value - p[3].value);
    rep.collapse_value = 4.0 * std::abs(p[0].value);
    rep.norms = {local_norm(q.f, spec), local_norm(q.f_prime, spec), local_norm(q.g, spec),
                 local_norm(q.g_prime, spec)};
    return rep;
}

double limiting_value_general_c(double c) {
    if (!(c >= 0.0)) throw std::domain_error("limiting_value_general_c: c must be >= 0");
    return 2.0 * (1.0 + 2.0 * c - c * c) / (1.0 + c * c);
}

IdentityReport correlator_identity_check(const testfn::BellQuadruple& q,
                                         const forms::KernelForm& kernel,
                                         const quad::QuadratureSpec& spec) {
    quad::QuadratureSpec s = spec;
    s.estimate_error = false;
    const CorrelatorReport rep = bell_correlator(q, kernel, s);
    const double fg = rep.pairings[0].value;
    const double fpg = rep.pairings[1].value;
    const double fgp = rep.pairings[2].value;
    const double fpgp = rep.pairings[3].value;

    IdentityReport out;
    out.tsirelson_case = std::abs(q.c * q.c + 2.0 * q.c - 1.0) < 1e-12;
    out.max_deviation = std::max(std::abs(fpg - fgp), std::abs(fg + fpgp));
    if (out.tsirelson_case) {
        out.max_deviation = std::max({out.max_deviation, std::abs(fg - fpg), std::abs(fg - fgp)});
    }

    const forms::FormValue form = forms::quadratic_form(q.g.comp1, kernel, s);
    out.half_line_form = form.value;
    const double pi = std::numbers::pi;
    out.reduction_deviation_fg = std::abs(pi * std::abs(fg) - (1.0 - q.c * q.c) * form.value);
    out.reduction_deviation_fpg = std::abs(pi * std::abs(fpg) - 2.0 * q.c * form.value);
    return out;
}

testfn::BellQuadruple mirror_roles(const testfn::BellQuadruple& q) {
    auto flip = [](const SpinorFunction& s, Side side) {
        return SpinorFunction{s.comp1, s.comp2, side};
    };
    testfn::BellQuadruple out = q;
    out.f = flip(q.g, Side::alice);
    out.f_prime = flip(q.g_prime, Side::alice);
    out.g = flip(q.f, Side::bob);
    out.g_prime = flip(q.f_prime, Side::bob);
    return out;
}

} // namespace halfline::bell
