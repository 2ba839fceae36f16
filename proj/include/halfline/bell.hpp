#pragma once

// Spatial Bell pairings between an Alice spinor on the negative half-line and
// a Bob spinor on the positive half-line, and the CHSH combination of four
// such pairings.

#include "halfline/forms.hpp"
#include "halfline/testfn.hpp"

#include <array>

namespace halfline::bell {

/// A pairing of the form i * value. The imaginary unit is not stored; the
/// flag records the convention for consumers that print complex numbers.
struct PairingValue {
    double value = 0.0;
    bool times_i = true;
    /// Real part of the raw integral. Identically 0 for the spatial formula.
    double real_part = 0.0;
    double error_estimate = 0.0;
    forms::KernelForm kernel = forms::KernelForm::carleman();
};

struct CorrelatorReport {
    /// <f|g>, <f'|g>, <f|g'>, <f'|g'>
    std::array<PairingValue, 4> pairings;
    /// |p1 + p2 + p3 - p4|
    double chsh_abs = 0.0;
    /// 4 |<f|g>|, equal to chsh_abs when the four pairings collapse.
    double collapse_value = 0.0;
    /// <f|f>, <f'|f'>, <g|g>, <g'|g'>
    std::array<double, 4> norms{};
    double c = 0.0;
    double eps = 0.0;
    double mass = 0.0;
    /// Largest error estimate over the four pairings.
    double error_estimate = 0.0;
};

/// (i/pi) double integral of (a1(x) b1(y) - a2(x) b2(y)) kappa(y - x), with
/// kappa = 1/r or m K1(m r). Throws std::invalid_argument unless a is an
/// Alice spinor, b a Bob spinor, and their supports are separated.
PairingValue spatial_pairing(const testfn::SpinorFunction& a, const testfn::SpinorFunction& b,
                             const forms::KernelForm& kernel, const quad::QuadratureSpec& spec);

/// Sum of the component L2 norms squared.
double local_norm(const testfn::SpinorFunction& s, const quad::QuadratureSpec& spec);

/// All four pairings computed independently on a shared grid.
CorrelatorReport bell_correlator(const testfn::BellQuadruple& q, const forms::KernelForm& kernel,
                                 const quad::QuadratureSpec& spec);

/// 2(1 + 2c - c^2)/(1 + c^2). Throws std::domain_error for c < 0.
double limiting_value_general_c(double c);

struct IdentityReport {
    /// <f|g> = <f'|g> = <f|g'> = -<f'|g'> when c^2 + 2c = 1; otherwise
    /// <f'|g> = <f|g'> and <f|g> = -<f'|g'>.
    double max_deviation = 0.0;
    bool tsirelson_case = false;
    /// pi |<f|g>| and pi |<f'|g>| against (1 - c^2) Q and 2c Q, where Q is
    /// the half-line form of the first Bob component.
    double reduction_deviation_fg = 0.0;
    double reduction_deviation_fpg = 0.0;
    double half_line_form = 0.0;
};

IdentityReport correlator_identity_check(const testfn::BellQuadruple& q,
                                         const forms::KernelForm& kernel,
                                         const quad::QuadratureSpec& spec);

/// Alice and Bob exchanged by reflection x -> -x.
testfn::BellQuadruple mirror_roles(const testfn::BellQuadruple& q);

} // namespace halfline::bell
