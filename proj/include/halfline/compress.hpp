#pragma once

// Galerkin compressions of the Carleman operator on nested piecewise-constant
// orthonormal families.
//
// The family at (J, K) lives on [0, 2^K]. Its partition has the cell
// [0, 2^-J], the octaves [2^i, 2^(i+1)] for -J <= i < K, and each octave cut
// into 2^r equal cells. The orthonormal elements form an unbalanced Haar tree
// on that partition: the normalized indicator of [0, 2^K], one split element
// per octave boundary, and the dyadic Haar elements inside each octave.
// N = 1 + (J + K) 2^r. Raising J or K refines the partition, so the spans
// are nested.

#include <cstddef>
#include <string>
#include <vector>

namespace halfline::compress {

struct Cell {
    double lo = 0.0;
    double hi = 0.0;
};

/// Piecewise-constant element: value[k] on cells[k].
struct BasisElement {
    std::vector<Cell> cells;
    std::vector<double> values;
};

struct DyadicBasis {
    int levels = 0;          // J
    int span_exponent = 0;   // K
    int octave_splits = 3;   // r
    std::vector<BasisElement> elements;

    std::size_t size() const { return elements.size(); }
    std::string describe() const;
};

/// Dimension 1 + (J + K) 2^r without building anything.
std::size_t basis_dimension(int levels, int span_exponent, int octave_splits = 3);

/// Throws std::invalid_argument for negative parameters.
DyadicBasis build_basis(int levels, int span_exponent, int octave_splits = 3);

/// L2 inner product of two elements, exact for piecewise constants.
double inner_product(const BasisElement& a, const BasisElement& b);

/// Double integral of 1/(x+y) over [a,b] x [c,d]:
/// F(b+d) - F(a+d) - F(b+c) + F(a+c), F(s) = s log s, F(0) = 0.
double carleman_entry_piecewise_constant(double a, double b, double c, double d);

/// <e_i, C e_j> in closed form.
double carleman_entry(const BasisElement& a, const BasisElement& b);

/// Dense symmetric matrix in row-major order.
struct SymmetricMatrix {
    std::size_t n = 0;
    std::vector<double> data;

    double& operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * n + j]; }
};

struct EigenResult {
    std::vector<double> values;                 // ascending
    std::vector<std::vector<double>> vectors;   // vectors[k] pairs with values[k]
    int sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm is below
/// 1e-12 ||A||_F. Throws std::invalid_argument when A is not symmetric to
/// 1e-12, std::runtime_error when it fails to converge.
EigenResult symmetric_eigensolve(const SymmetricMatrix& a, bool want_vectors = false);

struct CompressionResult {
    SymmetricMatrix matrix;
    std::vector<double> spectrum;  // ascending
    double lambda_max = 0.0;
    std::string basis_descriptor;
    int levels = 0;
    int span_exponent = 0;
};

inline constexpr std::size_t kMaxDenseDimension = 4096;

/// Assembles A_N and its spectrum. Throws std::length_error when N exceeds
/// kMaxDenseDimension.
CompressionResult build_compression(int levels, int span_exponent, int octave_splits = 3);

struct EdgeGapRow {
    int levels = 0;
    int span_exponent = 0;
    std::size_t dimension = 0;
    double lambda_max = 0.0;
    double pi_gap = 0.0;
};

struct DepthSpan {
    int levels = 0;
    int span_exponent = 0;
};

std::vector<EdgeGapRow> edge_gap_sweep(const std::vector<DepthSpan>& params,
                                       int octave_splits = 3);

} // namespace halfline::compress
