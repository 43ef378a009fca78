#pragma once

#include <span>
#include <vector>

#include "qtl/coeff_grid.hpp"

namespace qtl {

// Arithmetic sequences are stored 1-based in spirit: element i holds the term
// of index i + 1.
using Sequence = std::vector<cplx>;

int moebius(long n);

// (a * b)_n = sum_{d | n} a_d b_{n/d}, n = 1..min(len a, len b)
Sequence dirichlet_convolve(std::span<const cplx> a, std::span<const cplx> b);

// b_1 = 1/a_1, b_n = -(1/a_1) sum_{d | n, d > 1} a_d b_{n/d}. Throws DomainError if a_1 = 0.
Sequence dirichlet_inverse(std::span<const cplx> a, std::size_t length);

/**
 * A sequence (a_l) together with its Dirichlet inverse (b_l), both truncated
 * to the same length. The inverse is computed once at construction.
 */
class ArithmeticSeq {
public:
    explicit ArithmeticSeq(Sequence a);

    static ArithmeticSeq unit(std::size_t length);
    // a_k = k^{-(sigma + i tau)}
    static ArithmeticSeq zeta(double sigma, double tau, std::size_t length);

    std::size_t length() const { return a_.size(); }
    // 1-based accessors
    cplx a(std::size_t l) const { return a_[l - 1]; }
    cplx b(std::size_t l) const { return b_[l - 1]; }
    const Sequence& coefficients() const { return a_; }
    const Sequence& inverse() const { return b_; }

private:
    Sequence a_;
    Sequence b_;
};

// Coefficient vector x_k, k in [-N, N].
class CoeffLine {
public:
    CoeffLine() : CoeffLine(0) {}
    explicit CoeffLine(int band_limit) : n_(band_limit), v_(static_cast<std::size_t>(2 * band_limit + 1)) {}

    int band_limit() const { return n_; }
    int side() const { return 2 * n_ + 1; }
    cplx& operator()(int k) { return v_[static_cast<std::size_t>(k + n_)]; }
    const cplx& operator()(int k) const { return v_[static_cast<std::size_t>(k + n_)]; }
    const std::vector<cplx>& values() const { return v_; }

private:
    int n_;
    std::vector<cplx> v_;
};

double l2_distance(const CoeffLine& x, const CoeffLine& y);

/// Change of basis e_m -> phi_m on a band-limited coefficient vector.
///
/// (Dx)_k = sum_{d | k} a_d x_{k/d} for k > 0, the same with conj(a_d) on the
/// negative cone, and x_0 passes through. The sequence must cover N terms.
CoeffLine apply_D(const ArithmeticSeq& seq, const CoeffLine& x);
// Same structure with b in place of a.
CoeffLine apply_D_inv(const ArithmeticSeq& seq, const CoeffLine& x);

// Dense (2N+1)^2 matrix of D (or D^-1), rows/columns indexed -N..N.
Matrix d_matrix(const ArithmeticSeq& seq, int band_limit, bool inverse = false);

// Z = D^-1 F (D^-1)^T, computed column-then-row with apply_D_inv.
CoeffGrid d_transform_2d(const ArithmeticSeq& seq, const CoeffGrid& fhat);
// z_{k,l} = sum_{d|k} sum_{r|l} b_{sgn(k) d} b_{sgn(l) r} f_{k/d, l/r}
CoeffGrid d_transform_2d_direct(const ArithmeticSeq& seq, const CoeffGrid& fhat);

// Generalized Q-transform S[D^-1 f (D^-1)^T].
CoeffGrid qd_transform(const ArithmeticSeq& seq, const CoeffGrid& f);
CoeffGrid qd_transform(const ArithmeticSeq& seq, const CoeffGrid& f, const CoeffGrid& g);

// max{1, sum |a_n|}; upper bound on the l2 operator norm of D.
double operator_norm_bound(std::span<const cplx> a);
double operator_norm_bound(const ArithmeticSeq& seq);

// Largest singular value of `m` by power iteration on m^dag m.
double operator_norm_estimate(const Matrix& m, int iterations = 500);

struct PartialSum {
    cplx value;
    double tail_bound;  // >= sum_{k > terms} k^{-Re s}
};

// F(s, t) = sum_{k >= 1} e^{2 pi i k t} k^{-s}, truncated. Requires Re s > 1.
PartialSum periodized_zeta(cplx s, double t, long terms);

}  // namespace qtl
