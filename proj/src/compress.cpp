#include "halfline/compress.hpp"

#include "halfline/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace halfline::compress {

namespace {

double s_log_s(double s) { return s == 0.0 ? 0.0 : s * std::log(s); }

// Unbalanced Haar element on [a, m] and [m, b]: positive on the left,
// orthogonal to the indicator of [a, b], unit norm.
BasisElement split_element(double a, double m, double b) {
    const double left = m - a;
    const double right = b - m;
    const double total = b - a;
    BasisElement e;
    e.cells = {Cell{a, m}, Cell{m, b}};
    e.values = {std::sqrt(right / (left * total)), -std::sqrt(left / (right * total))};
    return e;
}

} // namespace

std::string DyadicBasis::describe() const {
    std::ostringstream os;
    os << "graded-haar(J=" << levels << ",K=" << span_exponent << ",r=" << octave_splits
       << ",N=" << size() << ")";
    return os.str();
}

std::size_t basis_dimension(int levels, int span_exponent, int octave_splits) {
    return 1 + static_cast<std::size_t>(levels + span_exponent) *
                   (std::size_t{1} << octave_splits);
}

DyadicBasis build_basis(int levels, int span_exponent, int octave_splits) {
    if (levels < 0 || span_exponent < 0 || octave_splits < 0 || octave_splits > 20) {
        throw std::invalid_argument("build_basis: J, K must be >= 0 and 0 <= r <= 20");
    }
    DyadicBasis basis;
    basis.levels = levels;
    basis.span_exponent = span_exponent;
    basis.octave_splits = octave_splits;

    const double top = std::ldexp(1.0, span_exponent);
    basis.elements.push_back(BasisElement{{Cell{0.0, top}}, {1.0 / std::sqrt(top)}});

    for (int p = span_exponent; p > -levels; --p) {
        const double hi = std::ldexp(1.0, p);
        basis.elements.push_back(split_element(0.0, 0.5 * hi, hi));
    }
    for (int i = -levels; i < span_exponent; ++i) {
        const double lo = std::ldexp(1.0, i);
        for (int l = 0; l < octave_splits; ++l) {
            const int pieces = 1 << l;
            const double width = lo / pieces;
            for (int k = 0; k < pieces; ++k) {
                const double a = lo + k * width;
                basis.elements.push_back(split_element(a, a + 0.5 * width, a + width));
            }
        }
    }
    return basis;
}

double inner_product(const BasisElement& a, const BasisElement& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.cells.size(); ++i) {
        for (std::size_t j = 0; j < b.cells.size(); ++j) {
            const double overlap = std::min(a.cells[i].hi, b.cells[j].hi) -
                                   std::max(a.cells[i].lo, b.cells[j].lo);
            if (overlap > 0.0) sum += a.values[i] * b.values[j] * overlap;
        }
    }
    return sum;
}

double carleman_entry_piecewise_constant(double a, double b, double c, double d) {
    if (b <= a || d <= c) return 0.0;
    return s_log_s(b + d) - s_log_s(a + d) - s_log_s(b + c) + s_log_s(a + c);
}

double carleman_entry(const BasisElement& a, const BasisElement& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.cells.size(); ++i) {
        for (std::size_t j = 0; j < b.cells.size(); ++j) {
            sum += a.values[i] * b.values[j] *
                   carleman_entry_piecewise_constant(a.cells[i].lo, a.cells[i].hi,
                                                     b.cells[j].lo, b.cells[j].hi);
        }
    }
    return sum;
}

EigenResult symmetric_eigensolve(const SymmetricMatrix& input, bool want_vectors) {
    const std::size_t n = input.n;
    if (input.data.size() != n * n) {
        throw std::invalid_argument("symmetric_eigensolve: data size does not match n");
    }
    SymmetricMatrix a = input;
    double frob = 0.0;
    for (double v : a.data) frob += v * v;
    frob = std::sqrt(frob);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(a(i, j) - a(j, i)) > 1e-12 * std::max(1.0, frob)) {
                throw std::invalid_argument("symmetric_eigensolve: matrix is not symmetric");
            }
            a(j, i) = a(i, j);
        }
    }
    std::vector<double> v;
    if (want_vectors) {
        v.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
    }
    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
        return std::sqrt(s);
    };

    EigenResult out;
    const double target = 1e-12 * frob;
    constexpr int kMaxSweeps = 100;
    while (off_norm() > target) {
        if (out.sweeps == kMaxSweeps) {
            throw std::runtime_error("symmetric_eigensolve: no convergence after 100 sweeps");
        }
        ++out.sweeps;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                if (want_vectors) {
                    for (std::size_t k = 0; k < n; ++k) {
                        const double vkp = v[k * n + p];
                        const double vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
    for (std::size_t k : order) {
        out.values.push_back(a(k, k));
        if (want_vectors) {
            std::vector<double> col(n);
            for (std::size_t i = 0; i < n; ++i) col[i] = v[i * n + k];
            out.vectors.push_back(std::move(col));
        }
    }
    return out;
}

CompressionResult build_compression(int levels, int span_exponent, int octave_splits) {
    if (levels < 0 || span_exponent < 0) {
        throw std::invalid_argument("build_compression: J and K must be >= 0");
    }
    const std::size_t n = basis_dimension(levels, span_exponent, octave_splits);
    if (n > kMaxDenseDimension) {
        std::ostringstream os;
        os << "build_compression: dimension " << n << " exceeds the dense limit "
           << kMaxDenseDimension;
        throw std::length_error(os.str());
    }
    const DyadicBasis basis = build_basis(levels, span_exponent, octave_splits);

    CompressionResult out;
    out.levels = levels;
    out.span_exponent = span_exponent;
    out.basis_descriptor = basis.describe();
    out.matrix.n = n;
    out.matrix.data.assign(n * n, 0.0);
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = i; j < n; ++j) {
            out.matrix(i, j) = carleman_entry(basis.elements[i], basis.elements[j]);
        }
    });
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) out.matrix(j, i) = out.matrix(i, j);

    out.spectrum = symmetric_eigensolve(out.matrix).values;
    out.lambda_max = out.spectrum.back();
    return out;
}

std::vector<EdgeGapRow> edge_gap_sweep(const std::vector<DepthSpan>& params, int octave_splits) {
    std::vector<EdgeGapRow> rows;
    for (const DepthSpan& p : params) {
        const CompressionResult r = build_compression(p.levels, p.span_exponent, octave_splits);
        rows.push_back(EdgeGapRow{p.levels, p.span_exponent, r.matrix.n, r.lambda_max,
                                  std::numbers::pi - r.lambda_max});
    }
    return rows;
}

} // namespace halfline::compress
