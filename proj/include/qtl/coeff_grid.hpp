#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qtl {

using cplx = std::complex<double>;
using Matrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Absolute tolerance for symmetry checks is this factor times the largest
// entry modulus of the grid under test.
inline constexpr double kSymmetryTol = 1e-12;

enum class GridTag { general, fourier_real, hermitian };

std::string_view to_string(GridTag tag);
GridTag parse_tag(std::string_view text);

/**
 * Square array of complex coefficients addressed by symmetric indices
 * (k, l) in [-N, N]^2.
 *
 * The same storage serves as the Fourier coefficient grid of a field on the
 * torus and as the matrix of an operator in the distinguished basis e_{-N..N}
 * (row k, column l). Entries are kept row-major with k outer, which is also
 * the order of the JSON entry list.
 */
class CoeffGrid {
public:
    CoeffGrid() : CoeffGrid(0) {}
    explicit CoeffGrid(int band_limit);
    CoeffGrid(int band_limit, Matrix entries);

    static CoeffGrid identity(int band_limit);

    int band_limit() const { return n_; }
    int side() const { return 2 * n_ + 1; }
    std::size_t entry_count() const { return static_cast<std::size_t>(side()) * side(); }

    bool contains(int k, int l) const { return k >= -n_ && k <= n_ && l >= -n_ && l <= n_; }

    cplx& operator()(int k, int l) { return m_(k + n_, l + n_); }
    const cplx& operator()(int k, int l) const { return m_(k + n_, l + n_); }

    const Matrix& matrix() const { return m_; }
    Matrix& matrix() { return m_; }

    double max_abs() const;
    CoeffGrid adjoint() const;
    CoeffGrid conj() const;

    CoeffGrid& operator+=(const CoeffGrid& other);
    CoeffGrid& operator-=(const CoeffGrid& other);
    CoeffGrid& operator*=(cplx s);

    friend CoeffGrid operator+(CoeffGrid a, const CoeffGrid& b) { return a += b; }
    friend CoeffGrid operator-(CoeffGrid a, const CoeffGrid& b) { return a -= b; }
    friend CoeffGrid operator*(cplx s, CoeffGrid a) { return a *= s; }
    friend CoeffGrid operator*(CoeffGrid a, cplx s) { return a *= s; }
    friend CoeffGrid operator-(CoeffGrid a) { return a *= -1.0; }

    // Operator (matrix) product over the index window.
    friend CoeffGrid operator*(const CoeffGrid& a, const CoeffGrid& b);

private:
    int n_ = 0;
    Matrix m_;
};

// Largest |z_{k,l} - conj(z_{-k,-l})|.
double point_symmetry_residual(const CoeffGrid& z);
// Largest |w_{k,l} - conj(w_{l,k})|.
double hermitian_residual(const CoeffGrid& w);

bool is_fourier_real(const CoeffGrid& z, double rel_tol = kSymmetryTol);
bool is_hermitian(const CoeffGrid& w, double rel_tol = kSymmetryTol);

// Throw SymmetryError naming `where` if the invariant fails.
void require_fourier_real(const CoeffGrid& z, std::string_view where);
void require_hermitian(const CoeffGrid& w, std::string_view where);
void require_same_size(const CoeffGrid& a, const CoeffGrid& b, std::string_view where);

// Max entrywise modulus of a - b.
double max_abs_diff(const CoeffGrid& a, const CoeffGrid& b);

}  // namespace qtl
