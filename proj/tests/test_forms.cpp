#include "doctest.h"
#include "oracles.hpp"

#include "halfline/forms.hpp"
#include "halfline/testfn.hpp"

#include <cmath>
#include <stdexcept>

using namespace halfline;
using namespace halfline::forms;

namespace {

TestFunction1D sqrt2_exponential() {
    return TestFunction1D([](double x) { return std::sqrt(2.0) * std::exp(-x); }, {0.0, 40.0});
}

TestFunction1D damped_profile(double eps, const quad::QuadratureSpec& spec) {
    return testfn::normalize(testfn::damp_exponential(testfn::build_phi_tilde(eps)), spec);
}

} // namespace

TEST_SUITE("forms") {

TEST_CASE("kernel objects") {
    CHECK(KernelForm::carleman()(2.0) == 0.5);
    CHECK(KernelForm::hankel(2.0).mass() == 2.0);
    CHECK_THROWS_AS(KernelForm::hankel(0.0), std::domain_error);
    CHECK_THROWS_AS(KernelForm::hankel(-1.0), std::domain_error);
    CHECK(to_string(Route::log_autocorr) != to_string(Route::direct));
}

TEST_CASE("Carleman form of the normalized exponential is 2") {
    quad::QuadratureSpec spec;
    CHECK(std::abs(carleman_form(sqrt2_exponential(), spec).value - 2.0) < 1e-7);
    CHECK(std::abs(rayleigh_quotient(sqrt2_exponential(), KernelForm::carleman(), spec) - 2.0) < 1e-7);
}

TEST_CASE("Carleman form is quadratic") {
    quad::QuadratureSpec spec;
    const auto phi = testfn::build_phi_tilde(0.1);
    const double one = carleman_form(phi, spec).value;
    CHECK(carleman_form(phi.scaled(3.0), spec).value == doctest::Approx(9.0 * one).epsilon(1e-13));
}

TEST_CASE("Carleman quotient matches the independent oracle") {
    quad::QuadratureSpec spec;
    for (int i = 0; i < 3; ++i) {
        const double eps = oracle::kEpsSweep[i];
        const auto phi = testfn::normalize(testfn::build_phi_tilde(eps), spec);
        const FormValue direct = carleman_form(phi, spec);
        const FormValue viaLog = carleman_form_log(phi, spec);
        CAPTURE(eps);
        CHECK(std::abs(direct.value - oracle::kCarlemanQuotient[i]) < 1e-9);
        CHECK(std::abs(viaLog.value - oracle::kCarlemanQuotient[i]) < 1e-9);
        CHECK(direct.value < oracle::kPi);
        CHECK(viaLog.route == Route::log_autocorr);
    }
}

TEST_CASE("the smallest cutoff is within the spectral edge window") {
    quad::QuadratureSpec spec;
    const auto phi = testfn::normalize(testfn::build_phi_tilde(1e-3), spec);
    const double q = carleman_form(phi, spec).value;
    CHECK(q > 2.6);
    CHECK(q < oracle::kPi);
}

TEST_CASE("log autocorrelation") {
    quad::QuadratureSpec spec;
    const auto phi = testfn::build_phi_tilde(0.1);
    const double norm2 = quad::l2_norm_squared(phi, spec);
    CHECK(std::abs(log_autocorrelation(phi, 0.0, spec) - norm2) < 1e-10);
    for (double r = -12.0; r <= 12.0; r += 0.5) {
        const double w = log_autocorrelation(phi, r, spec);
        CHECK(w >= 0.0);
        CHECK(w <= norm2 * (1.0 + 1e-10));
        CHECK(w == doctest::Approx(log_autocorrelation(phi, -r, spec)).epsilon(1e-12));
    }
}

TEST_CASE("square integrability at 0 is required") {
    quad::QuadratureSpec spec;
    const TestFunction1D singular([](double x) { return 1.0 / std::sqrt(x); }, {0.0, 1.0});
    CHECK_THROWS_AS(carleman_form(singular, spec), std::invalid_argument);
}

TEST_CASE("Hankel form of the normalized exponential") {
    quad::QuadratureSpec spec;
    const FormValue direct = hankel_form(sqrt2_exponential(), 1.0, spec);
    const FormValue laplace = hankel_form_laplace(sqrt2_exponential(), 1.0, spec);
    CHECK(direct.value > 0.0);
    CHECK(direct.value < 2.0);
    CHECK(std::abs(laplace.value - oracle::kHankelExponential) < 1e-9);
    CHECK(std::abs(direct.value - oracle::kHankelExponential) < 1e-9);
    CHECK_THROWS_AS(hankel_form(sqrt2_exponential(), 0.0, spec), std::domain_error);
}

TEST_CASE("Hankel quotient of the damped family matches the oracle on both routes") {
    quad::QuadratureSpec spec;
    for (int i = 0; i < 3; ++i) {
        const auto phi = damped_profile(oracle::kEpsSweep[i], spec);
        CAPTURE(oracle::kEpsSweep[i]);
        CHECK(std::abs(hankel_form(phi, 1.0, spec).value - oracle::kHankelQuotient[i]) < 1e-9);
        CHECK(std::abs(hankel_form_laplace(phi, 1.0, spec).value - oracle::kHankelQuotient[i]) < 1e-9);
    }
}

TEST_CASE("Laplace route is nonnegative for sign-changing profiles") {
    quad::QuadratureSpec spec;
    const TestFunction1D wave([](double x) { return std::sin(5.0 * x) * std::exp(-x); }, {0.1, 12.0});
    CHECK(hankel_form_laplace(wave, 1.0, spec).value >= 0.0);
    CHECK(hankel_form_laplace(wave, 1.0, spec).value ==
          doctest::Approx(hankel_form(wave, 1.0, spec).value).epsilon(1e-8));
}

TEST_CASE("Hankel form is dominated by the Carleman form") {
    quad::QuadratureSpec spec;
    const auto phi = damped_profile(0.1, spec);
    for (double m : {0.25, 1.0, 4.0}) {
        CHECK(hankel_form(phi, m, spec).value <= carleman_form(phi, spec).value);
    }
}

TEST_CASE("dilation conjugates the mass") {
    quad::QuadratureSpec spec;
    const auto phi = damped_profile(0.1, spec);
    const double base = hankel_form_laplace(phi, 1.0, spec).value;
    // 3 is not a power of two, so node positions do not scale exactly
    for (double m : {0.25, 3.0, 4.0}) {
        CHECK(std::abs(hankel_form_laplace(testfn::dilate(phi, m), m, spec).value - base) < 1e-8);
        CHECK(std::abs(hankel_form(testfn::dilate(phi, m), m, spec).value - base) < 1e-8);
    }
}

TEST_CASE("weighted Carleman bounds bracket the Hankel form") {
    quad::QuadratureSpec spec;
    double i1_first = 0.0, i2_first = 0.0, i1_last = 0.0, i2_last = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double eps = oracle::kEpsSweep[i];
        const auto tilde = testfn::build_phi_tilde(eps);
        const double i1 = weighted_carleman_bound(tilde, 1, spec);
        const double i2 = weighted_carleman_bound(tilde, 2, spec);
        CAPTURE(eps);
        CHECK(i2 <= oracle::kHankelQuotient[i]);
        CHECK(oracle::kHankelQuotient[i] <= i1);
        CHECK(i2 <= i1);
        if (i == 0) { i1_first = i1; i2_first = i2; }
        if (i == 2) { i1_last = i1; i2_last = i2; }
        if (i == 1) CHECK(i1 - i2 < 0.5);
    }
    CHECK(i1_last > i1_first);
    CHECK(i2_last > i2_first);
    CHECK_THROWS(weighted_carleman_bound(testfn::build_phi_tilde(0.1), 3, spec));
}

TEST_CASE("Rayleigh quotients stay below the operator norm") {
    quad::QuadratureSpec spec;
    const TestFunction1D bump([](double x) { return x * (3.0 - x); }, {0.0, 3.0});
    CHECK(rayleigh_quotient(bump, KernelForm::carleman(), spec) <= oracle::kPi + 1e-6);
    CHECK(rayleigh_quotient(bump, KernelForm::hankel(1.0), spec) <= oracle::kPi + 1e-6);
    const TestFunction1D zero([](double) { return 0.0; }, {1.0, 2.0});
    CHECK_THROWS_AS(rayleigh_quotient(zero, KernelForm::carleman(), spec), std::invalid_argument);
}

TEST_CASE("direct and log routes agree at eps = 0.1 within the stated tolerance") {
    quad::QuadratureSpec spec;
    const auto phi = testfn::build_phi_tilde(0.1);
    CHECK(std::abs(carleman_form(phi, spec).value - carleman_form_log(phi, spec).value) < 1e-6);
    const auto damped = damped_profile(0.1, spec);
    CHECK(std::abs(hankel_form(damped, 1.0, spec).value -
                   hankel_form_laplace(damped, 1.0, spec).value) < 1e-6);
}

}
