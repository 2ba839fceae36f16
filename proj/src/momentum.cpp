#include "halfline/momentum.hpp"

#include "halfline/bell.hpp"
#include "halfline/parallel.hpp"
#include "halfline/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace halfline::momentum {

using testfn::Side;
using testfn::SpinorFunction;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double bump(double t) {
    const double q = 1.0 - t * t;
    if (!(q > 0.0)) return 0.0;
    return std::exp(-1.0 / q);
}

// 2 * integral over [0, 1] of bump(t) cos(w t), before normalization.
double bump_cosine(double w) {
    const int panels = std::max(8, static_cast<int>(std::ceil(std::abs(w) / std::numbers::pi)));
    std::vector<double> edges;
    for (int i = 0; i <= panels; ++i) edges.push_back(static_cast<double>(i) / panels);
    const quad::NodeSet nodes = quad::panel_nodes(edges, 16, false);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        sum += nodes.w[i] * bump(nodes.x[i]) * std::cos(w * nodes.x[i]);
    }
    return 2.0 * sum;
}

// Splits every panel so that k times its width is at most 2 pi.
std::vector<double> phase_limited(const std::vector<double>& edges, double k) {
    std::vector<double> out{edges.front()};
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double a = edges[p];
        const double b = edges[p + 1];
        const int n = std::max(1, static_cast<int>(std::ceil(k * (b - a) / kTwoPi)));
        for (int i = 1; i < n; ++i) out.push_back(a + (b - a) * i / n);
        out.push_back(b);
    }
    return out;
}

// Profiles that are multiples of one shape are evaluated once per node.
struct ShapeGroup {
    const LineFunction* rep = nullptr;
    std::vector<std::size_t> members;
    std::vector<double> ratio;
};

std::vector<ShapeGroup> group_shapes(const std::vector<const TestFunction1D*>& profiles) {
    std::map<std::uint64_t, std::vector<std::size_t>> by_id;
    for (std::size_t i = 0; i < profiles.size(); ++i) by_id[profiles[i]->shape_id()].push_back(i);
    std::vector<ShapeGroup> groups;
    for (const auto& [id, idx] : by_id) {
        ShapeGroup g;
        std::size_t rep = idx.front();
        for (std::size_t i : idx) {
            if (profiles[i]->shape_scale() != 0.0) {
                rep = i;
                break;
            }
        }
        g.rep = profiles[rep];
        const double base = profiles[rep]->shape_scale();
        for (std::size_t i : idx) {
            g.members.push_back(i);
            g.ratio.push_back(base == 0.0 ? 0.0 : profiles[i]->shape_scale() / base);
        }
        groups.push_back(std::move(g));
    }
    return groups;
}

struct ProfileTable {
    std::vector<double> k;
    std::vector<double> w;
    std::vector<std::vector<Complex>> value;  // value[node][profile]
    double k_max = 0.0;
};

Interval hull_of(const std::vector<const TestFunction1D*>& profiles) {
    Interval h = profiles.front()->support();
    for (const TestFunction1D* p : profiles) {
        h.lo = std::min(h.lo, p->support().lo);
        h.hi = std::max(h.hi, p->support().hi);
    }
    return h;
}

// Transform of every profile at one k, with the smooth window past window/k.
std::vector<Complex> transforms_at(const std::vector<const TestFunction1D*>& profiles,
                                   const std::vector<ShapeGroup>& groups, double k,
                                   const quad::QuadratureSpec& spec,
                                   const MomentumOptions& options) {
    std::vector<Complex> out(profiles.size(), Complex{});
    const Interval hull = hull_of(profiles);
    const double x_window = options.window / k;
    const bool windowed = 2.0 * x_window < hull.hi;
    const double top = windowed ? 2.0 * x_window : hull.hi;
    if (!(top > hull.lo)) return out;

    std::vector<double> seg{hull.lo};
    for (const TestFunction1D* p : profiles) {
        for (double e : p->segment_edges()) {
            if (e > hull.lo && e < top) seg.push_back(e);
        }
    }
    if (windowed && x_window > hull.lo) seg.push_back(x_window);
    seg.push_back(top);
    std::sort(seg.begin(), seg.end());
    seg.erase(std::unique(seg.begin(), seg.end()), seg.end());

    const std::vector<double> edges = phase_limited(quad::graded_edges(seg, spec), k);
    const quad::NodeSet nodes = quad::panel_nodes(edges, spec.nodes_per_panel, false);
    for (std::size_t n = 0; n < nodes.size(); ++n) {
        const double x = nodes.x[n];
        double weight = nodes.w[n];
        if (windowed && x > x_window) weight *= specfun::smooth_step(2.0 * x_window - x, x_window);
        if (weight == 0.0) continue;
        const Complex phase = weight * Complex(std::cos(k * x), std::sin(k * x));
        for (const ShapeGroup& g : groups) {
            const double v = (*g.rep)(x);
            if (v == 0.0) continue;
            const Complex pv = v * phase;
            for (std::size_t m = 0; m < g.members.size(); ++m) out[g.members[m]] += g.ratio[m] * pv;
        }
    }
    return out;
}

double smallest_feature(const std::vector<const TestFunction1D*>& profiles) {
    double s = profiles.front()->feature_scale();
    for (const TestFunction1D* p : profiles) s = std::min(s, p->feature_scale());
    return s;
}

// k nodes on [0, k_max]: one panel up to 1e-3/D, geometric panels after,
// split so dk D <= 4 pi while k D stays below the oscillation limit.
quad::NodeSet k_grid(double k_max, double distance, const quad::QuadratureSpec& spec,
                     const MomentumOptions& options) {
    const double k_lo = std::min(1e-3 / distance, 0.5 * k_max);
    std::vector<double> seg{k_lo, k_max};
    std::vector<double> graded = quad::graded_edges(seg, spec);
    std::vector<double> edges{0.0, k_lo};
    const double k_osc = options.oscillation_limit / distance;
    const double dk_max = 4.0 * std::numbers::pi / distance;
    for (std::size_t p = 0; p + 1 < graded.size(); ++p) {
        const double a = graded[p];
        const double b = graded[p + 1];
        int n = 1;
        if (a < k_osc) n = std::max(1, static_cast<int>(std::ceil((b - a) / dk_max)));
        for (int i = 1; i < n; ++i) edges.push_back(a + (b - a) * i / n);
        edges.push_back(b);
    }
    return quad::panel_nodes(edges, spec.nodes_per_panel, false);
}

ProfileTable tabulate(const std::vector<const TestFunction1D*>& profiles, double eta,
                      double distance, const quad::QuadratureSpec& spec,
                      const MomentumOptions& options) {
    ProfileTable t;
    t.k_max = std::min(Mollifier::hat_cutoff() / eta,
                       options.feature_cut / smallest_feature(profiles));
    const quad::NodeSet ks = k_grid(t.k_max, distance, spec, options);
    t.k = ks.x;
    t.w = ks.w;
    t.value.resize(ks.size());
    const auto groups = group_shapes(profiles);
    parallel_for(ks.size(), [&](std::size_t i) {
        t.value[i] = transforms_at(profiles, groups, ks.x[i], spec, options);
    });
    return t;
}

// u^(-k) for a spinor component given the profile transform p^(k).
Complex at_minus_k(Side side, Complex p) { return side == Side::alice ? p : std::conj(p); }
// v^(k)
Complex at_plus_k(Side side, Complex p) { return side == Side::alice ? std::conj(p) : p; }

struct PairSums {
    double i1 = 0.0;
    double i2 = 0.0;
    double tail = 0.0;
};

PairSums fold(const ProfileTable& t, Side su, std::size_t u1, std::size_t u2, Side sv,
              std::size_t v1, std::size_t v2, double eta, double mass) {
    const Mollifier moll(eta);
    PairSums s;
    for (std::size_t n = 0; n < t.k.size(); ++n) {
        const auto& row = t.value[n];
        const Complex g1 = at_minus_k(su, row[u1]) * at_plus_k(sv, row[v1]);
        const Complex g2 = at_minus_k(su, row[u2]) * at_plus_k(sv, row[v2]);
        const double k = t.k[n];
        const double omega = std::sqrt(k * k + mass * mass);
        const double b = moll.hat(omega);
        const double b2 = b * b;
        s.i1 += t.w[n] * b2 * (g1 + g2).real();
        s.i2 += t.w[n] * b2 * (k / omega) * (g1 - g2).imag();
        if (n + 1 == t.k.size()) s.tail = t.k_max * b2 * (std::abs(g1) + std::abs(g2));
    }
    const double inv_pi = 1.0 / std::numbers::pi;
    s.i1 *= inv_pi;
    s.i2 *= inv_pi;
    s.tail *= inv_pi;
    return s;
}

double line_distance(const SpinorFunction& u, const SpinorFunction& v) {
    const Interval a = u.line_support();
    const Interval b = v.line_support();
    return std::max({std::abs(b.hi - a.lo), std::abs(a.hi - b.lo), a.length(), b.length()});
}

MomentumPairing pairing_once(const SpinorFunction& u, const SpinorFunction& v, double eta,
                             double mass, const quad::QuadratureSpec& spec,
                             const MomentumOptions& options) {
    const std::vector<const TestFunction1D*> profiles{&u.comp1, &u.comp2, &v.comp1, &v.comp2};
    const ProfileTable t = tabulate(profiles, eta, line_distance(u, v), spec, options);
    const PairSums s = fold(t, u.side, 0, 1, v.side, 2, 3, eta, mass);
    MomentumPairing out;
    out.i1 = s.i1;
    out.i2 = s.i2;
    out.k_max = t.k_max;
    out.tail_bound = s.tail;
    out.k_count = t.k.size();
    return out;
}

} // namespace

Mollifier::Mollifier(double eta) : eta_(eta) {
    if (!(eta > 0.0)) throw std::domain_error("Mollifier: eta must be positive");
}

double Mollifier::profile(double t) { return bump(t) / normalization(); }

double Mollifier::normalization() {
    static const double value = bump_cosine(0.0);
    return value;
}

double Mollifier::hat_cutoff() {
    static const double value = [] {
        const double norm = normalization();
        // the envelope decays like exp(-sqrt(2w)); scan for a window of small values
        double w = 10.0;
        for (;; w += 5.0) {
            double peak = 0.0;
            for (double s = w; s <= w + 50.0; s += 0.25) {
                peak = std::max(peak, std::abs(bump_cosine(s) / norm));
            }
            if (peak < 1e-9 || w > 5000.0) break;
        }
        return w;
    }();
    return value;
}

double Mollifier::operator()(double t) const { return profile(t / eta_) / eta_; }

double Mollifier::hat(double omega) const {
    const double w = eta_ * omega;
    if (std::abs(w) > hat_cutoff() + 50.0) return 0.0;
    return bump_cosine(w) / normalization();
}

double mollifier_hat(double eta, double omega) { return Mollifier(eta).hat(omega); }

Complex spatial_ft(const LineFunction& u, double k, const quad::QuadratureSpec& spec) {
    const std::vector<double> edges =
        phase_limited(quad::graded_edges(u.segment_edges(), spec), std::abs(k));
    const quad::NodeSet nodes = quad::panel_nodes(edges, spec.nodes_per_panel, false);
    Complex sum{};
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double x = nodes.x[i];
        sum += nodes.w[i] * u(x) * Complex(std::cos(k * x), std::sin(k * x));
    }
    return sum;
}

MomentumPairing momentum_pairing(const SpinorFunction& u, const SpinorFunction& v, double eta,
                                 double mass, const quad::QuadratureSpec& spec,
                                 const MomentumOptions& options) {
    if (!(eta > 0.0)) throw std::domain_error("momentum_pairing: eta must be positive");
    if (mass < 0.0) throw std::domain_error("momentum_pairing: mass must be >= 0");
    MomentumPairing out = pairing_once(u, v, eta, mass, spec, options);
    if (spec.estimate_error) {
        const MomentumPairing fine = pairing_once(u, v, eta, mass, spec.refined(), options);
        out.error_estimate = std::max(std::abs(fine.i1 - out.i1), std::abs(fine.i2 - out.i2));
    }
    return out;
}

double pairing_I1(const SpinorFunction& u, const SpinorFunction& v, double eta, double mass,
                  const quad::QuadratureSpec& spec) {
    quad::QuadratureSpec s = spec;
    s.estimate_error = false;
    return momentum_pairing(u, v, eta, mass, s).i1;
}

double pairing_I2(const SpinorFunction& u, const SpinorFunction& v, double eta, double mass,
                  const quad::QuadratureSpec& spec) {
    quad::QuadratureSpec s = spec;
    s.estimate_error = false;
    return momentum_pairing(u, v, eta, mass, s).i2;
}

MomentumCorrelator momentum_correlator(const testfn::BellQuadruple& q, double eta, double mass,
                                       const quad::QuadratureSpec& spec,
                                       const MomentumOptions& options) {
    if (!(eta > 0.0)) throw std::domain_error("momentum_correlator: eta must be positive");
    const std::vector<const TestFunction1D*> profiles{
        &q.f.comp1, &q.f.comp2, &q.f_prime.comp1, &q.f_prime.comp2,
        &q.g.comp1, &q.g.comp2, &q.g_prime.comp1, &q.g_prime.comp2};
    const double distance = std::max(line_distance(q.f, q.g), line_distance(q.f_prime, q.g_prime));
    const ProfileTable t = tabulate(profiles, eta, distance, spec, options);

    // <f|g>, <f'|g>, <f|g'>, <f'|g'> as (alice index, bob index) into the table
    const std::array<std::pair<std::size_t, std::size_t>, 4> pairs{{{0, 4}, {2, 4}, {0, 6}, {2, 6}}};
    MomentumCorrelator out;
    out.k_max = t.k_max;
    for (std::size_t p = 0; p < 4; ++p) {
        const auto [a, b] = pairs[p];
        const PairSums s = fold(t, Side::alice, a, a + 1, Side::bob, b, b + 1, eta, mass);
        out.pairings[p] = Complex(s.i1, s.i2);
        out.tail_bound = std::max(out.tail_bound, s.tail);
    }
    const auto& p = out.pairings;
    out.chsh_abs = std::abs(p[0] + p[1] + p[2] - p[3]);
    return out;
}

double fourier_bessel_identity_check(double k, double mass, const quad::QuadratureSpec& spec) {
    if (!(mass > 0.0)) throw std::domain_error("fourier_bessel_identity_check: m must be > 0");
    // K0(u) < 1e-18 for u >= 40
    const double radius = 40.0 / mass;
    const std::vector<double> edges =
        phase_limited(quad::graded_edges({0.0, radius}, spec), std::abs(k));
    const quad::NodeSet nodes = quad::panel_nodes(edges, spec.nodes_per_panel, false);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        sum += nodes.w[i] * specfun::bessel_k0(mass * nodes.x[i]) * std::cos(k * nodes.x[i]);
    }
    const double g_hat = 2.0 / std::numbers::pi * sum;
    return std::abs(g_hat * std::sqrt(k * k + mass * mass) - 1.0);
}

ScheduleResult eta_eps_schedule_check(double delta, const quad::QuadratureSpec& spec,
                                      const ScheduleOptions& options) {
    const double tsirelson = 2.0 * std::numbers::sqrt2;
    if (!(delta > 0.0 && delta < tsirelson)) {
        throw std::domain_error("eta_eps_schedule_check: delta must lie in (0, 2 sqrt 2)");
    }
    const double target = tsirelson - delta;
    quad::QuadratureSpec s = spec;
    s.estimate_error = false;

    const forms::KernelForm kernel = options.mass > 0.0 ? forms::KernelForm::hankel(options.mass)
                                                        : forms::KernelForm::carleman();
    ScheduleResult out;
    double best = 0.0;
    double eps = options.eps_start;
    for (int step = 0; step < options.max_eps_steps; ++step, eps /= options.eps_step) {
        TestFunction1D profile = testfn::build_phi_tilde(eps);
        if (options.mass > 0.0) {
            profile = testfn::dilate(testfn::damp_exponential(profile), options.mass);
        }
        const testfn::BellQuadruple q =
            testfn::assemble_quadruple(testfn::normalize(profile, s), options.c);
        const double spatial = bell::bell_correlator(q, kernel, s).chsh_abs;
        if (!(spatial > target)) {
            out.tried.push_back(ScheduleCandidate{eps, 0.0, spatial, 0.0});
            continue;
        }
        for (double divisor : options.eta_divisors) {
            const double eta = eps / divisor;
            if (!(eta < 0.5 * eps)) continue;
            const double mom = momentum_correlator(q, eta, options.mass, s).chsh_abs;
            out.tried.push_back(ScheduleCandidate{eps, eta, spatial, mom});
            best = std::max(best, mom);
            if (mom > target && mom <= tsirelson && std::abs(mom - spatial) < options.agreement) {
                out.success = true;
                out.eps = eps;
                out.eta = eta;
                out.chsh_spatial = spatial;
                out.chsh_momentum = mom;
                out.best_gap = tsirelson - mom;
                return out;
            }
        }
    }
    out.best_gap = tsirelson - best;
    return out;
}

} // namespace halfline::momentum
