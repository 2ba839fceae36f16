#include "halfline/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace halfline::specfun {

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kMachEps = std::numeric_limits<double>::epsilon();

// Power series about u = 0 (Abramowitz & Stegun 9.6.13 and 9.6.11).
BesselK01 series(double u) {
    const double t = 0.25 * u * u;
    const double log_half = std::log(0.5 * u);

    // K0 = -(log(u/2) + gamma) I0(u) + sum_k t^k/(k!)^2 H_k
    // K1 = 1/u + log(u/2) I1(u) - (u/4) sum_k t^k/(k!(k+1)!) (psi(k+1) + psi(k+2))
    double term0 = 1.0;          // t^k / (k!)^2
    double term1 = 1.0;          // t^k / (k! (k+1)!)
    double harmonic = 0.0;       // H_k
    double i0 = 1.0;
    double i1_sum = 1.0;
    double k0_sum = 0.0;
    double k1_sum = 2.0 * (-kEulerGamma) + 1.0;  // psi(1) + psi(2)
    for (int k = 1; k < 200; ++k) {
        term0 *= t / (static_cast<double>(k) * k);
        term1 *= t / (static_cast<double>(k) * (k + 1));
        harmonic += 1.0 / k;
        i0 += term0;
        i1_sum += term1;
        k0_sum += term0 * harmonic;
        // psi(k+1) + psi(k+2) = -2 gamma + 2 H_k + 1/(k+1)
        const double psi_pair = -2.0 * kEulerGamma + 2.0 * harmonic + 1.0 / (k + 1);
        k1_sum += term1 * psi_pair;
        if (term0 * (1.0 + harmonic) < kMachEps * 1e-3 * std::abs(i0)) break;
    }
    const double i1 = 0.5 * u * i1_sum;
    BesselK01 out;
    out.k0 = -(log_half + kEulerGamma) * i0 + k0_sum;
    out.k1 = 1.0 / u + log_half * i1 - 0.25 * u * k1_sum;
    return out;
}

// Steed's continued fraction (Temme's CF2) for K_nu and K_{nu+1}, nu = 0.
BesselK01 continued_fraction(double u) {
    const double a1 = 0.25;  // 1/4 - nu^2
    double b = 2.0 * (1.0 + u);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 1; i < 100000; ++i) {
        a -= 2.0 * i;
        c = -a * c / (i + 1.0);
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < kMachEps * 0.5) break;
    }
    h *= a1;
    BesselK01 out;
    out.k0 = std::sqrt(std::numbers::pi / (2.0 * u)) * std::exp(-u) / s;
    out.k1 = out.k0 * (u + 0.5 - h) / u;
    return out;
}

// Large-argument expansion K_nu(u) ~ sqrt(pi/2u) e^{-u} sum_k a_k(nu) / u^k.
double asymptotic(double u, double nu) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= 40; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = term * (mu - odd * odd) / (8.0 * k * u);
        if (std::abs(next) > std::abs(term)) break;  // past the smallest term
        term = next;
        sum += term;
        if (k >= 10 && std::abs(term) < kMachEps * 1e-2 * std::abs(sum)) break;
    }
    return std::sqrt(std::numbers::pi / (2.0 * u)) * std::exp(-u) * sum;
}

void check_domain(double u, const char* name) {
    if (u <= 0.0) {
        throw std::domain_error(std::string(name) + ": argument must be positive, got " +
                                std::to_string(u));
    }
}

} // namespace

BesselK01 bessel_k01(double u) {
    if (std::isnan(u)) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        return {nan, nan};
    }
    check_domain(u, "bessel_k01");
    if (u <= kBesselAccuracy.series_limit) return series(u);
    if (u <= kBesselAccuracy.asymptotic_limit) return continued_fraction(u);
    return {asymptotic(u, 0.0), asymptotic(u, 1.0)};
}

double bessel_k0(double u) {
    if (std::isnan(u)) return u;
    check_domain(u, "bessel_k0");
    return bessel_k01(u).k0;
}

double bessel_k1(double u) {
    if (std::isnan(u)) return u;
    check_domain(u, "bessel_k1");
    return bessel_k01(u).k1;
}

double cosh_kernel(double r) {
    // 1/(2 cosh(r/2)) = e^{-|r|/2} / (1 + e^{-|r|}); no overflow for large |r|.
    const double a = std::abs(r);
    const double e = std::exp(-0.5 * a);
    return e / (1.0 + e * e);
}

double smooth_step(double x, double eps) {
    if (x <= 0.0) return 0.0;
    if (x >= eps) return 1.0;
    double z = eps * (2.0 * x - eps) / (x * (x - eps));
    z = std::clamp(z, -700.0, 700.0);
    return 1.0 / (1.0 + std::exp(z));
}

} // namespace halfline::specfun
