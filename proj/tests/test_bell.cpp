#include "doctest.h"
#include "oracles.hpp"

#include "halfline/bell.hpp"

#include <cmath>
#include <stdexcept>

using namespace halfline;
using namespace halfline::bell;
using halfline::forms::KernelForm;

namespace {

testfn::BellQuadruple massless_quadruple(double eps, double c, const quad::QuadratureSpec& spec) {
    return testfn::assemble_quadruple(testfn::normalize(testfn::build_phi_tilde(eps), spec), c);
}

testfn::BellQuadruple massive_quadruple(double eps, double c, double m,
                                        const quad::QuadratureSpec& spec) {
    const auto damped =
        testfn::normalize(testfn::damp_exponential(testfn::build_phi_tilde(eps)), spec);
    return testfn::assemble_quadruple(testfn::dilate(damped, m), c);
}

} // namespace

TEST_SUITE("bell") {

TEST_CASE("general-c limit") {
    CHECK(limiting_value_general_c(0.0) == 2.0);
    CHECK(std::abs(limiting_value_general_c(oracle::kMixing) - oracle::kTsirelson) < 1e-15);
    CHECK(std::abs(limiting_value_general_c(0.2) - 2.0 * 1.36 / 1.04) < 1e-15);
    CHECK(limiting_value_general_c(0.2) == doctest::Approx(2.6153846153846154).epsilon(1e-15));
    CHECK_THROWS_AS(limiting_value_general_c(-0.5), std::domain_error);
}

TEST_CASE("c = 0.2 limit agrees with extrapolated correlators") {
    // the quotient approaches pi like 1/log(1/eps); fit A + B/log(1/eps)
    quad::QuadratureSpec spec;
    const double c = 0.2;
    double chsh[2], inv_log[2];
    const double eps[2] = {1e-3, 1e-4};
    for (int i = 0; i < 2; ++i) {
        const auto q = massless_quadruple(eps[i], c, spec);
        chsh[i] = bell_correlator(q, KernelForm::carleman(), spec).chsh_abs;
        inv_log[i] = 1.0 / std::log(1.0 / eps[i]);
    }
    const double slope = (chsh[1] - chsh[0]) / (inv_log[1] - inv_log[0]);
    const double intercept = chsh[1] - slope * inv_log[1];
    MESSAGE("extrapolated " << intercept << " from " << chsh[0] << ", " << chsh[1]);
    CHECK(chsh[1] > chsh[0]);
    CHECK(std::abs(intercept - limiting_value_general_c(c)) < 0.02);
}

TEST_CASE("local norm") {
    quad::QuadratureSpec spec;
    const auto q = massless_quadruple(0.1, oracle::kMixing, spec);
    CHECK(std::abs(local_norm(q.g, spec) - 1.0) < 1e-10);
    CHECK(std::abs(local_norm(q.f_prime, spec) - 1.0) < 1e-10);
    testfn::SpinorFunction doubled = q.g;
    doubled.comp1 = q.g.comp1.scaled(2.0);
    doubled.comp2 = q.g.comp2.scaled(2.0);
    CHECK(local_norm(doubled, spec) == doctest::Approx(4.0).epsilon(1e-13));
    testfn::SpinorFunction zero = q.g;
    zero.comp1 = q.g.comp1.scaled(0.0);
    zero.comp2 = q.g.comp2.scaled(0.0);
    CHECK(local_norm(zero, spec) == 0.0);
}

TEST_CASE("pairing roles and zero input") {
    quad::QuadratureSpec spec;
    const auto q = massless_quadruple(0.1, oracle::kMixing, spec);
    CHECK_THROWS_AS(spatial_pairing(q.g, q.f, KernelForm::carleman(), spec), std::invalid_argument);
    CHECK_THROWS_AS(spatial_pairing(q.f, q.f_prime, KernelForm::carleman(), spec),
                    std::invalid_argument);
    testfn::SpinorFunction zero = q.g;
    zero.comp1 = q.g.comp1.scaled(0.0);
    zero.comp2 = q.g.comp2.scaled(0.0);
    const PairingValue p = spatial_pairing(q.f, zero, KernelForm::carleman(), spec);
    CHECK(p.value == 0.0);
    CHECK(p.times_i);
    CHECK(p.real_part == 0.0);
}

TEST_CASE("overlapping supports are rejected") {
    quad::QuadratureSpec spec;
    const auto q = massless_quadruple(0.1, oracle::kMixing, spec);
    testfn::SpinorFunction touching = q.g;
    touching.comp1 = TestFunction1D([](double) { return 1.0; }, {0.0, 1.0});
    testfn::SpinorFunction alice = q.f;
    alice.comp1 = TestFunction1D([](double) { return 1.0; }, {0.0, 1.0});
    CHECK_THROWS_AS(spatial_pairing(alice, touching, KernelForm::carleman(), spec),
                    std::invalid_argument);
}

TEST_CASE("Tsirelson-c quadruple collapses to one form") {
    quad::QuadratureSpec spec;
    const double c = oracle::kMixing;
    const auto q = massless_quadruple(0.1, c, spec);
    const IdentityReport id = correlator_identity_check(q, KernelForm::carleman(), spec);
    CHECK(id.tsirelson_case);
    CHECK(id.max_deviation < 1e-8);
    CHECK(id.reduction_deviation_fg < 1e-8);

    const CorrelatorReport r = bell_correlator(q, KernelForm::carleman(), spec);
    CHECK(std::abs(r.chsh_abs - r.collapse_value) < 1e-8);
    CHECK(std::abs(r.chsh_abs - oracle::chsh_from_quotient(c, oracle::kCarlemanQuotient[0])) < 1e-8);
    for (double n : r.norms) CHECK(std::abs(n - 1.0) < 1e-10);
    CHECK(r.chsh_abs <= oracle::kTsirelson + 1e-6);
}

TEST_CASE("general c obeys the two-pair identities") {
    quad::QuadratureSpec spec;
    const double c = 0.3;
    const auto q = massless_quadruple(0.1, c, spec);
    const IdentityReport id = correlator_identity_check(q, KernelForm::carleman(), spec);
    CHECK_FALSE(id.tsirelson_case);
    CHECK(id.max_deviation < 1e-8);
    CHECK(id.reduction_deviation_fpg < 1e-8);
    CHECK(std::abs(id.half_line_form * 1.0 - oracle::kCarlemanQuotient[0] / (1.0 + c * c)) < 1e-8);

    const CorrelatorReport r = bell_correlator(q, KernelForm::carleman(), spec);
    CHECK(std::abs(std::abs(r.pairings[1].value) -
                   oracle::cross_from_quotient(c, oracle::kCarlemanQuotient[0])) < 1e-8);
    CHECK(std::abs(r.chsh_abs - oracle::chsh_general(c, oracle::kCarlemanQuotient[0])) < 1e-8);
}

TEST_CASE("massless CHSH increases along the cutoff sweep") {
    quad::QuadratureSpec spec;
    double prev = 0.0;
    for (int i = 0; i < 3; ++i) {
        const auto q = massless_quadruple(oracle::kEpsSweep[i], oracle::kMixing, spec);
        const CorrelatorReport r = bell_correlator(q, KernelForm::carleman(), spec);
        CHECK(r.chsh_abs > prev);
        CHECK(r.chsh_abs <= oracle::kTsirelson + 1e-6);
        CHECK(std::abs(r.chsh_abs -
                       oracle::chsh_from_quotient(oracle::kMixing, oracle::kCarlemanQuotient[i])) < 1e-6);
        prev = r.chsh_abs;
    }
    CHECK(prev > 2.0);
}

TEST_CASE("massless CHSH at the smallest default cutoff exceeds 2.7") {
    quad::QuadratureSpec spec;
    const auto q = massless_quadruple(1e-3, oracle::kMixing, spec);
    const CorrelatorReport r = bell_correlator(q, KernelForm::carleman(), spec);
    // the ansatz ties this value to the frozen quotient
    CHECK(std::abs(r.chsh_abs - oracle::chsh_from_quotient(oracle::kMixing, oracle::kCarlemanQuotient[2])) < 1e-8);
    CHECK(r.chsh_abs > 2.7);
}

TEST_CASE("massive CHSH at m = 1 and eps = 1e-3 exceeds 2") {
    quad::QuadratureSpec spec;
    const auto q = massive_quadruple(1e-3, oracle::kMixing, 1.0, spec);
    const CorrelatorReport r = bell_correlator(q, KernelForm::hankel(1.0), spec);
    CHECK(std::abs(r.chsh_abs - oracle::chsh_from_quotient(oracle::kMixing, oracle::kHankelQuotient[2])) < 1e-6);
    CHECK(r.chsh_abs <= oracle::kTsirelson + 1e-6);
    CHECK(r.chsh_abs > 2.0);
}

TEST_CASE("mirroring the roles leaves CHSH unchanged") {
    quad::QuadratureSpec spec;
    const auto q = massless_quadruple(0.1, 0.2, spec);
    const auto a = bell_correlator(q, KernelForm::carleman(), spec);
    const auto b = bell_correlator(mirror_roles(q), KernelForm::carleman(), spec);
    CHECK(std::abs(a.chsh_abs - b.chsh_abs) < 1e-10);
}

TEST_CASE("small mass reproduces the massless pairing") {
    quad::QuadratureSpec spec;
    const auto q = massless_quadruple(0.5, oracle::kMixing, spec);
    const double massless = spatial_pairing(q.f, q.g, KernelForm::carleman(), spec).value;
    const double light = spatial_pairing(q.f, q.g, KernelForm::hankel(1e-4), spec).value;
    CHECK(std::abs(light - massless) < 1e-3);
}

}
