// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "oracles.hpp"

#include "halfline/bell.hpp"
#include "halfline/compress.hpp"
#include "halfline/forms.hpp"
#include "halfline/momentum.hpp"
#include "halfline/specfun.hpp"
#include "halfline/testfn.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace halfline;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, i / double(n - 1)));
    return out;
}

TestFunction1D massless_profile(double eps, const quad::QuadratureSpec& spec) {
    return testfn::normalize(testfn::build_phi_tilde(eps), spec);
}

TestFunction1D damped_profile(double eps, const quad::QuadratureSpec& spec) {
    return testfn::normalize(testfn::damp_exponential(testfn::build_phi_tilde(eps)), spec);
}

void carleman_edge(Verdict& v) {
    const auto t0 = std::chrono::steady_clock::now();
    quad::QuadratureSpec spec;
    double prev = 0.0;
    for (int i = 0; i < 3; ++i) {
        const auto phi = massless_profile(oracle::kEpsSweep[i], spec);
        const double direct = forms::carleman_form(phi, spec).value;
        const double viaLog = forms::carleman_form_log(phi, spec).value;
        v.detail << " Q(" << oracle::kEpsSweep[i] << ")=" << direct;
        v.require(direct > prev, "strictly increasing");
        v.require(direct <= oracle::kPi + 1e-6, "at most pi");
        v.require(std::abs(direct - viaLog) <= 1e-6, "direct vs log route");
        v.require(std::abs(direct - oracle::kCarlemanQuotient[i]) <= 1e-6, "frozen regression constant");
        prev = direct;
    }
    v.require(prev > 2.6, "eps=1e-3 value above 2.6");
    const double t = seconds_since(t0);
    v.detail << " time=" << t << "s";
    v.require(t < 30.0, "runtime under 30 s");
}

void massless_tsirelson(Verdict& v) {
    quad::QuadratureSpec spec;
    const double c = oracle::kMixing;
    double prev = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double eps = oracle::kEpsSweep[i];
        const auto phi = massless_profile(eps, spec);
        const auto report = bell::bell_correlator(testfn::assemble_quadruple(phi, c),
                                                  forms::KernelForm::carleman(), spec);
        const double q = forms::rayleigh_quotient(phi, forms::KernelForm::carleman(), spec);
        v.detail << " chsh(" << eps << ")=" << report.chsh_abs;
        v.require(std::abs(report.chsh_abs - oracle::chsh_from_quotient(c, q)) <= 1e-6,
                  "ratio to the quotient");
        v.require(report.chsh_abs > prev, "increasing along the sweep");
        v.require(report.chsh_abs <= oracle::kTsirelson + 1e-6, "Tsirelson bound");
        v.require(std::abs(report.chsh_abs - report.collapse_value) <= 1e-8, "collapse to 4|<f|g>|");
        prev = report.chsh_abs;
    }
}

void general_c(Verdict& v) {
    quad::QuadratureSpec spec;
    for (double c : {0.0, 0.1, 0.2, oracle::kMixing}) {
        const double limit = bell::limiting_value_general_c(c);
        double prev_gap = 1e9;
        for (double eps : oracle::kEpsSweep) {
            const auto q = testfn::assemble_quadruple(massless_profile(eps, spec), c);
            const double chsh = bell::bell_correlator(q, forms::KernelForm::carleman(), spec).chsh_abs;
            const double gap = std::abs(limit - chsh);
            v.require(gap < prev_gap, "gap shrinks with eps at c=" + std::to_string(c));
            prev_gap = gap;
        }
        v.detail << " gap(c=" << c << ")=" << prev_gap;
        v.require(prev_gap <= 0.15, "eps=1e-3 within 0.15 at c=" + std::to_string(c));
    }
}

void massive(Verdict& v) {
    quad::QuadratureSpec spec;
    for (double eps : oracle::kEpsSweep) {
        const auto tilde = testfn::build_phi_tilde(eps);
        const double q = forms::hankel_form(damped_profile(eps, spec), 1.0, spec).value;
        const double lower = forms::weighted_carleman_bound(tilde, 2, spec);
        const double upper = forms::weighted_carleman_bound(tilde, 1, spec);
        v.require(lower <= q && q <= upper, "sandwich at eps=" + std::to_string(eps));
    }
    const auto phi = damped_profile(1e-3, spec);
    const auto q = testfn::assemble_quadruple(phi, oracle::kMixing);
    const double chsh = bell::bell_correlator(q, forms::KernelForm::hankel(1.0), spec).chsh_abs;
    v.detail << " chsh(m=1,eps=1e-3)=" << chsh;
    v.require(chsh > 2.5, "massive CHSH above 2.5");
    v.require(chsh <= oracle::kTsirelson + 1e-6, "Tsirelson bound");
    const auto base = damped_profile(0.1, spec);
    const double k1 = forms::hankel_form(base, 1.0, spec).value;
    double worst = 0.0;
    for (double m : {0.25, 4.0}) {
        worst = std::max(worst, std::abs(forms::hankel_form(testfn::dilate(base, m), m, spec).value - k1));
    }
    v.detail << " dilation_dev=" << worst;
    v.require(worst <= 1e-8, "dilation invariance");
}

void bessel(Verdict& v) {
    for (double u : log_grid(1e-6, 50.0, 200)) {
        const double k1 = specfun::bessel_k1(u);
        v.require(std::exp(-u) / u <= k1 && k1 <= 1.0 / u, "bounds at u=" + std::to_string(u));
    }
    double worst_fd = 0.0;
    for (double u : log_grid(1e-3, 50.0, 200)) {
        const double h = 1e-3 * u;
        auto uk1 = [](double x) { return x * specfun::bessel_k1(x); };
        const double fd = (uk1(u - 2 * h) - 8 * uk1(u - h) + 8 * uk1(u + h) - uk1(u + 2 * h)) / (12 * h);
        const double exact = -u * specfun::bessel_k0(u);
        worst_fd = std::max(worst_fd, std::abs(fd - exact) / std::abs(exact));
    }
    double worst_dual = 0.0;
    for (double u : log_grid(0.01, 30.0, 200)) {
        worst_dual = std::max(worst_dual, std::abs(specfun::bessel_k0(u) / oracle::bessel_k_integral(0, u) - 1.0));
        worst_dual = std::max(worst_dual, std::abs(specfun::bessel_k1(u) / oracle::bessel_k_integral(1, u) - 1.0));
    }
    v.detail << " fd_rel=" << worst_fd << " dual_rel=" << worst_dual;
    v.require(worst_fd <= 1e-6, "derivative identity");
    v.require(worst_dual <= 1e-12, "dual-path agreement");
}

void compression(Verdict& v) {
    const auto t0 = std::chrono::steady_clock::now();
    const double base = compress::build_compression(0, 0).lambda_max;
    v.require(std::abs(base - 2.0 * std::log(2.0)) <= 1e-12, "1x1 case is 2 log 2");
    const int values[] = {2, 4, 6, 8};
    double lam[4][4];
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            lam[a][b] = compress::build_compression(values[a], values[b]).lambda_max;
            v.require(lam[a][b] <= oracle::kPi, "bounded by pi");
        }
    }
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            if (a + 1 < 4) v.require(lam[a + 1][b] >= lam[a][b], "nondecreasing in J");
            if (b + 1 < 4) v.require(lam[a][b + 1] >= lam[a][b], "nondecreasing in K");
        }
    }
    const double gap = oracle::kPi - lam[3][3];
    const double t = seconds_since(t0);
    v.detail << " gap(8,8)=" << gap << " time=" << t << "s";
    v.require(gap < 0.5, "gap below 0.5 at (8,8)");
    v.require(t < 120.0, "runtime under 2 min");
}

void appendix(Verdict& v) {
    quad::QuadratureSpec spec;
    const auto q = testfn::assemble_quadruple(testfn::normalize(testfn::build_phi_tilde(0.5), spec),
                                              oracle::kMixing);
    const double self = std::abs(momentum::pairing_I2(q.g, q.g, 1e-2, 1.0, spec));
    v.require(self < 1e-10, "I2 self-pairing");
    double worst_g = 0.0;
    for (double m : {0.5, 1.0, 2.0}) {
        for (double k : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0}) {
            worst_g = std::max(worst_g, momentum::fourier_bessel_identity_check(k, m, spec));
        }
    }
    v.require(worst_g <= 1e-8, "Fourier-Bessel identity");
    const double config = bell::spatial_pairing(q.f, q.g, forms::KernelForm::hankel(1.0), spec).value;
    double prev = 1e9, at_3e3 = 0.0;
    for (double eta : {1e-1, 3e-2, 1e-2, 3e-3}) {
        const double dev = std::abs(momentum::pairing_I2(q.f, q.g, eta, 1.0, spec) - config);
        v.require(dev < prev, "monotone in eta");
        prev = dev;
        at_3e3 = dev;
    }
    v.require(at_3e3 < 1e-3, "I2 vs configuration pairing at eta=3e-3");
    const double massless = bell::spatial_pairing(q.f, q.g, forms::KernelForm::carleman(), spec).value;
    const double light = bell::spatial_pairing(q.f, q.g, forms::KernelForm::hankel(1e-4), spec).value;
    v.detail << " self=" << self << " G_dev=" << worst_g << " I2_dev=" << at_3e3
             << " light_dev=" << std::abs(light - massless);
    v.require(std::abs(light - massless) < 1e-3, "massless-limit kernel");
}

void schedule(Verdict& v) {
    quad::QuadratureSpec spec;
    const auto r = momentum::eta_eps_schedule_check(0.5, spec);
    v.detail << " eps=" << r.eps << " eta=" << r.eta << " chsh_momentum=" << r.chsh_momentum;
    v.require(r.success, "witness found");
    v.require(r.chsh_momentum > oracle::kTsirelson - 0.5 && r.chsh_momentum <= oracle::kTsirelson,
              "momentum CHSH in (2 sqrt 2 - 0.5, 2 sqrt 2]");
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria{
        {"1 carleman spectral edge", carleman_edge},
        {"2 massless near-Tsirelson", massless_tsirelson},
        {"3 general-c family", general_c},
        {"4 massive case", massive},
        {"5 Bessel bounds and derivative", bessel},
        {"6 compression edge", compression},
        {"7 appendix equivalences", appendix},
        {"8 schedule witness", schedule},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Verdict v;
        v.detail.precision(10);
        try {
            check(v);
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail << " [exception: " << e.what() << "]";
        }
        std::printf("%s criterion %s:%s\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.str().c_str());
        std::fflush(stdout);
        if (!v.pass) ++failures;
    }
    return failures ? 1 : 0;
}
