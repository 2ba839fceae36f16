#include "doctest.h"
#include "oracles.hpp"

#include "halfline/testfn.hpp"

#include <cmath>
#include <stdexcept>

using namespace halfline;
using namespace halfline::testfn;

TEST_SUITE("testfn") {

TEST_CASE("cutoff family pieces") {
    const auto phi = build_phi_tilde(0.1);
    CHECK(phi(0.04) == 0.0);
    CHECK(phi(0.05) == 0.0);
    CHECK(phi(1.0) == 1.0);
    CHECK(phi(4.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(phi(0.1) == doctest::Approx(1.0 / std::sqrt(0.1)).epsilon(1e-15));
    CHECK(phi(10.0) == doctest::Approx(1.0 / std::sqrt(10.0)).epsilon(1e-15));
    CHECK(phi(20.0) == 0.0);
    CHECK(phi(25.0) == 0.0);
    CHECK(phi(-1.0) == 0.0);
    CHECK(phi.support().lo == doctest::Approx(0.05));
    CHECK(phi.support().hi == doctest::Approx(20.0));
    // transitions stay below the plateau envelope
    for (double x : {0.06, 0.075, 0.09, 11.0, 15.0, 19.0}) {
        CHECK(phi(x) >= 0.0);
        CHECK(phi(x) <= 1.0 / std::sqrt(x));
    }
    CHECK(phi.tag().family == Family::phi_eps);
    CHECK(phi.tag().eps == 0.1);
}

TEST_CASE("cutoff parameter outside (0,1) is a domain error") {
    CHECK_THROWS_AS(build_phi_tilde(0.0), std::domain_error);
    CHECK_THROWS_AS(build_phi_tilde(1.0), std::domain_error);
    CHECK_THROWS_AS(build_phi_tilde(-0.3), std::domain_error);
}

TEST_CASE("normalize") {
    quad::QuadratureSpec spec;
    const auto phi = normalize(build_phi_tilde(0.1), spec);
    CHECK(std::abs(quad::l2_norm_squared(phi, spec) - 1.0) < 1e-10);
    REQUIRE(phi.l2_norm_cache().has_value());

    const auto again = normalize(phi, spec);
    const auto seven = normalize(build_phi_tilde(0.1).scaled(7.0), spec);
    for (double x : {0.06, 0.3, 1.0, 9.0, 15.0}) {
        CHECK(std::abs(again(x) - phi(x)) < 1e-12);
        CHECK(std::abs(seven(x) - phi(x)) < 1e-12);
    }

    const TestFunction1D zero([](double) { return 0.0; }, {1.0, 2.0});
    CHECK_THROWS_AS(normalize(zero, spec), std::invalid_argument);
}

TEST_CASE("exponential damping") {
    const auto damped = damp_exponential(build_phi_tilde(0.1));
    CHECK(damped(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(damped(30.0) == 0.0);
    CHECK(damped(0.01) == 0.0);
    CHECK(damped.tag().damped);
}

TEST_CASE("dilation") {
    quad::QuadratureSpec spec;
    const auto phi = normalize(build_phi_tilde(0.1), spec);
    const auto same = dilate(phi, 1.0);
    const auto there_and_back = dilate(dilate(phi, 2.0), 0.5);
    for (double x : {0.07, 0.5, 3.0, 12.0}) {
        CHECK(same(x) == phi(x));
        CHECK(there_and_back(x) == doctest::Approx(phi(x)).epsilon(1e-14));
    }
    for (double m : {0.5, 3.0}) {
        CHECK(std::abs(quad::l2_norm_squared(dilate(phi, m), spec) - 1.0) < 1e-10);
        CHECK(dilate(phi, m).support().hi == doctest::Approx(phi.support().hi / m));
    }
    CHECK_THROWS_AS(dilate(phi, 0.0), std::domain_error);
    CHECK_THROWS_AS(dilate(phi, -2.0), std::domain_error);
}

TEST_CASE("quadruple components follow the ansatz") {
    quad::QuadratureSpec spec;
    const auto phi = normalize(build_phi_tilde(0.1), spec);
    const double c = oracle::kMixing;
    const auto q = assemble_quadruple(phi, c);
    CHECK(q.f.side == Side::alice);
    CHECK(q.g.side == Side::bob);
    for (double x : {0.06, 0.5, 2.0, 15.0}) {
        CHECK(q.g.component(2, x) == doctest::Approx(-c * q.g.component(1, x)).epsilon(1e-15));
        CHECK(q.f.component(1, -x) == doctest::Approx(-q.g.component(1, x)).epsilon(1e-15));
        CHECK(q.g.component(1, x) ==
              doctest::Approx(phi(x) / std::sqrt(1.0 + c * c)).epsilon(1e-15));
        // Alice lives on the negative half-line
        CHECK(q.f.component(1, x) == 0.0);
        CHECK(q.g.component(1, -x) == 0.0);
    }
    CHECK(ansatz_deviation(q) < 1e-14);
    CHECK(q.f.line_support().hi <= -phi.support().lo);
}

TEST_CASE("c = 0 leaves the profile in the first component") {
    quad::QuadratureSpec spec;
    const auto phi = normalize(build_phi_tilde(0.2), spec);
    const auto q = assemble_quadruple(phi, 0.0);
    for (double x : {0.2, 1.0, 4.0}) {
        CHECK(q.g.component(2, x) == 0.0);
        CHECK(q.g.component(1, x) == phi(x));
    }
    CHECK_THROWS(assemble_quadruple(phi, -0.1));
}

TEST_CASE("scaled functions share a shape") {
    const auto phi = build_phi_tilde(0.1);
    const auto three = phi.scaled(3.0);
    CHECK(three.shape_id() == phi.shape_id());
    CHECK(three.shape_scale() == 3.0 * phi.shape_scale());
    CHECK(build_phi_tilde(0.1).shape_id() != phi.shape_id());
}

TEST_CASE("log profile") {
    const auto phi = build_phi_tilde(0.1);
    const auto psi = phi.log_profile();
    // on the plateau e^{s/2} e^{-s/2} = 1
    CHECK(psi(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(psi(std::log(5.0)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(psi(std::log(0.01)) == 0.0);
}

}
