#pragma once

#include <vector>

#include "qtl/coeff_grid.hpp"

namespace qtl {

// Samples f(i/M, j/M), i, j in [0, M), row-major with i outer.
struct SampleGrid {
    int m = 0;
    std::vector<cplx> values;

    SampleGrid() = default;
    explicit SampleGrid(int samples_per_axis)
        : m(samples_per_axis), values(static_cast<std::size_t>(samples_per_axis) * samples_per_axis) {}

    cplx& operator()(int i, int j) { return values[static_cast<std::size_t>(i) * m + j]; }
    const cplx& operator()(int i, int j) const { return values[static_cast<std::size_t>(i) * m + j]; }
};

// Fourier coefficients of u = f + i g, held as the two real-field grids.
struct ComplexField {
    CoeffGrid re;
    CoeffGrid im;
};

// Operator C = A + iB with A, B Hermitian.
struct OperatorParts {
    CoeffGrid re;
    CoeffGrid im;
};

/// Rearranges point-symmetric Fourier data into a Hermitian matrix.
///
/// Off-diagonal: w(k,l) = z(k,l) above the diagonal, conj z(l,k) below.
/// Diagonal: w(k,k) = sqrt2 Im z(k,k) for k < 0, sqrt2 Re z(k,k) for k > 0,
/// w(0,0) = z(0,0). Every rotationally symmetric weighted l2 sum is kept.
/// Throws SymmetryError unless `z` is fourier-real.
CoeffGrid s_map(const CoeffGrid& z);

/// Inverse of s_map. Throws SymmetryError unless `w` is hermitian.
CoeffGrid s_inv(const CoeffGrid& w);

// Exact (2N+1)-point quadrature of the Fourier integral. M must equal 2N+1.
CoeffGrid analyze(const SampleGrid& samples, int band_limit);
// Infers N from an odd M.
CoeffGrid analyze(const SampleGrid& samples);
SampleGrid synthesize(const CoeffGrid& z);

// A = (C + C^dag)/2, B = (C - C^dag)/(2i).
OperatorParts hermitian_split(const CoeffGrid& c);

CoeffGrid q_transform(const CoeffGrid& f);
CoeffGrid q_transform(const CoeffGrid& f, const CoeffGrid& g);
CoeffGrid q_transform(const ComplexField& u);

ComplexField q_inverse(const CoeffGrid& c);

// Real/imaginary field split of the Fourier grid of a complex function u:
// f^(k,l) = (u^(k,l) + conj u^(-k,-l))/2, g^ = (u^(k,l) - conj u^(-k,-l))/(2i).
ComplexField split_field(const CoeffGrid& u_hat);
CoeffGrid combine_field(const ComplexField& u);

ComplexField operator*(cplx s, const ComplexField& u);

}  // namespace qtl
