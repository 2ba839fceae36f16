#pragma once

// Momentum-space pairings of temporally mollified spatial test functions and
// their zero-time limits.
//
// For spatial spinors u, v and the mollifier width eta,
//   I1 = (1/2pi) int dk  b(eta w_k)^2 (u1^(-k) v1^(k) + u2^(-k) v2^(k))
//   I2 = (1/2pi) int dk  b(eta w_k)^2 (k/w_k) (u1^(-k) v1^(k) - u2^(-k) v2^(k))
// with u^(k) = int u(x) e^{ikx} dx. For real inputs I1 is real and I2 is i
// times a real number; both are folded onto k >= 0.

#include "halfline/bell.hpp"
#include "halfline/quadrature.hpp"
#include "halfline/testfn.hpp"

#include <complex>
#include <vector>

namespace halfline::momentum {

using Complex = std::complex<double>;

/// beta(t) = C exp(-1/(1-t^2)) on (-1, 1), normalized to unit mass.
class Mollifier {
public:
    /// Throws std::domain_error for eta <= 0.
    explicit Mollifier(double eta);

    double eta() const { return eta_; }
    /// beta_eta(t) = beta(t/eta)/eta.
    double operator()(double t) const;
    /// hat(beta_eta)(w) = hat(beta)(eta w), real and even.
    double hat(double omega) const;

    /// The unit-width profile and its normalization constant.
    static double profile(double t);
    static double normalization();
    /// |hat(beta)(w)| < 1e-9 for all w beyond this.
    static double hat_cutoff();

private:
    double eta_;
};

/// hat(beta_eta)(omega). Throws std::domain_error for eta <= 0.
double mollifier_hat(double eta, double omega);

struct OnShellTransform {
    double mass = 0.0;
    double k_max = 0.0;
    quad::NodeSet k_nodes;  // on [0, k_max]

    double omega(double k) const { return std::sqrt(k * k + mass * mass); }
};

/// Integral of u(x) e^{ikx} over the support, by direct quadrature.
Complex spatial_ft(const LineFunction& u, double k, const quad::QuadratureSpec& spec);

struct MomentumPairing {
    double i1 = 0.0;
    /// Coefficient of i.
    double i2 = 0.0;
    double k_max = 0.0;
    /// Crude bound on the discarded tail beyond k_max.
    double tail_bound = 0.0;
    std::size_t k_count = 0;
    double error_estimate = 0.0;
};

/// Settings that are not part of QuadratureSpec.
struct MomentumOptions {
    /// Beyond k = window / x, the transform is taken over [0, 2x] with a smooth
    /// window; the dropped part is smaller than exp(-sqrt(window)).
    double window = 1000.0;
    /// k_max is at most this divided by the feature scale of the profiles.
    double feature_cut = 2000.0;
    /// k D below this gets panels with dk D <= 4 pi, D the largest distance.
    double oscillation_limit = 4000.0;
};

/// I1 and I2 together. u and v may be Alice or Bob spinors.
MomentumPairing momentum_pairing(const testfn::SpinorFunction& u,
                                 const testfn::SpinorFunction& v, double eta, double mass,
                                 const quad::QuadratureSpec& spec,
                                 const MomentumOptions& options = {});

double pairing_I1(const testfn::SpinorFunction& u, const testfn::SpinorFunction& v, double eta,
                  double mass, const quad::QuadratureSpec& spec);

double pairing_I2(const testfn::SpinorFunction& u, const testfn::SpinorFunction& v, double eta,
                  double mass, const quad::QuadratureSpec& spec);

/// The four Alice-Bob pairings I1 + i I2 of a quadruple and the CHSH modulus.
struct MomentumCorrelator {
    std::array<Complex, 4> pairings;
    double chsh_abs = 0.0;
    double k_max = 0.0;
    double tail_bound = 0.0;
};

MomentumCorrelator momentum_correlator(const testfn::BellQuadruple& q, double eta, double mass,
                                       const quad::QuadratureSpec& spec,
                                       const MomentumOptions& options = {});

/// |G^(k) w_k - 1| with G^(k) = (2/pi) int_0^inf K0(m x) cos(k x) dx.
/// Throws std::domain_error for m <= 0.
double fourier_bessel_identity_check(double k, double mass, const quad::QuadratureSpec& spec);

struct ScheduleCandidate {
    double eps = 0.0;
    double eta = 0.0;
    double chsh_spatial = 0.0;
    double chsh_momentum = 0.0;
};

struct ScheduleResult {
    bool success = false;
    double eps = 0.0;
    double eta = 0.0;
    double chsh_spatial = 0.0;
    double chsh_momentum = 0.0;
    /// 2 sqrt 2 minus the best momentum CHSH reached.
    double best_gap = 0.0;
    std::vector<ScheduleCandidate> tried;
};

struct ScheduleOptions {
    /// 0 selects the massless kernel and the phi family; otherwise the damped
    /// family dilated to this mass.
    double mass = 0.0;
    double c = testfn::kTsirelsonMixing;
    /// Largest eps tried; each further attempt divides by eps_step.
    double eps_start = 1e-2;
    double eps_step = 3.0;
    int max_eps_steps = 5;
    /// eta = eps / d for d in this list, in order.
    std::vector<double> eta_divisors{4.0, 8.0, 16.0, 32.0};
    /// Required agreement of momentum and spatial CHSH.
    double agreement = 5e-3;
};

/// First eps (descending) with spatial CHSH > 2 sqrt 2 - delta, then the first
/// eta < eps/2 with momentum CHSH > 2 sqrt 2 - delta within `agreement` of
/// the spatial value. Throws std::domain_error unless 0 < delta < 2 sqrt 2.
ScheduleResult eta_eps_schedule_check(double delta, const quad::QuadratureSpec& spec,
                                      const ScheduleOptions& options = {});

} // namespace halfline::momentum
