#include "qtl/coeff_grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qtl/error.hpp"

namespace qtl {

std::string_view to_string(GridTag tag) {
    switch (tag) {
        case GridTag::fourier_real: return "fourier-real";
        case GridTag::hermitian: return "hermitian";
        case GridTag::general: break;
    }
    return "general";
}

GridTag parse_tag(std::string_view text) {
    if (text == "fourier-real") return GridTag::fourier_real;
    if (text == "hermitian") return GridTag::hermitian;
    if (text == "general") return GridTag::general;
    throw ParseError("unknown grid tag '" + std::string(text) + "'");
}

CoeffGrid::CoeffGrid(int band_limit) : n_(band_limit) {
    if (band_limit < 0) throw DimensionError("band limit must be non-negative");
    m_ = Matrix::Zero(side(), side());
}

CoeffGrid::CoeffGrid(int band_limit, Matrix entries) : n_(band_limit), m_(std::move(entries)) {
    if (band_limit < 0) throw DimensionError("band limit must be non-negative");
    if (m_.rows() != side() || m_.cols() != side()) {
        std::ostringstream msg;
        msg << "grid of band limit " << band_limit << " needs " << side() << "x" << side()
            << " entries, got " << m_.rows() << "x" << m_.cols();
        throw DimensionError(msg.str());
    }
}

CoeffGrid CoeffGrid::identity(int band_limit) {
    CoeffGrid g(band_limit);
    g.m_.setIdentity();
    return g;
}

double CoeffGrid::max_abs() const {
    double best = 0.0;
    for (Eigen::Index i = 0; i < m_.size(); ++i) best = std::max(best, std::abs(m_.data()[i]));
    return best;
}

CoeffGrid CoeffGrid::adjoint() const { return CoeffGrid(n_, m_.adjoint()); }

CoeffGrid CoeffGrid::conj() const { return CoeffGrid(n_, m_.conjugate()); }

CoeffGrid& CoeffGrid::operator+=(const CoeffGrid& other) {
    require_same_size(*this, other, "grid addition");
    m_ += other.m_;
    return *this;
}

CoeffGrid& CoeffGrid::operator-=(const CoeffGrid& other) {
    require_same_size(*this, other, "grid subtraction");
    m_ -= other.m_;
    return *this;
}

CoeffGrid& CoeffGrid::operator*=(cplx s) {
    m_ *= s;
    return *this;
}

CoeffGrid operator*(const CoeffGrid& a, const CoeffGrid& b) {
    require_same_size(a, b, "operator product");
    return CoeffGrid(a.n_, a.m_ * b.m_);
}

double point_symmetry_residual(const CoeffGrid& z) {
    const int n = z.band_limit();
    double worst = 0.0;
    for (int k = -n; k <= n; ++k)
        for (int l = -n; l <= n; ++l)
            worst = std::max(worst, std::abs(z(k, l) - std::conj(z(-k, -l))));
    return worst;
}

double hermitian_residual(const CoeffGrid& w) {
    const int n = w.band_limit();
    double worst = 0.0;
    for (int k = -n; k <= n; ++k)
        for (int l = k; l <= n; ++l)
            worst = std::max(worst, std::abs(w(k, l) - std::conj(w(l, k))));
    return worst;
}

bool is_fourier_real(const CoeffGrid& z, double rel_tol) {
    return point_symmetry_residual(z) <= rel_tol * z.max_abs();
}

bool is_hermitian(const CoeffGrid& w, double rel_tol) {
    return hermitian_residual(w) <= rel_tol * w.max_abs();
}

void require_fourier_real(const CoeffGrid& z, std::string_view where) {
    const double res = point_symmetry_residual(z);
    if (res > kSymmetryTol * z.max_abs()) {
        std::ostringstream msg;
        msg << where << ": grid is not fourier-real (max |z(k,l) - conj z(-k,-l)| = " << res
            << ", scale " << z.max_abs() << ")";
        throw SymmetryError(msg.str());
    }
}

void require_hermitian(const CoeffGrid& w, std::string_view where) {
    const double res = hermitian_residual(w);
    if (res > kSymmetryTol * w.max_abs()) {
        std::ostringstream msg;
        msg << where << ": grid is not hermitian (max |w(k,l) - conj w(l,k)| = " << res
            << ", scale " << w.max_abs() << ")";
        throw SymmetryError(msg.str());
    }
}

void require_same_size(const CoeffGrid& a, const CoeffGrid& b, std::string_view where) {
    if (a.band_limit() != b.band_limit()) {
        std::ostringstream msg;
        msg << where << ": band limits differ (" << a.band_limit() << " vs " << b.band_limit() << ")";
        throw DimensionError(msg.str());
    }
}

double max_abs_diff(const CoeffGrid& a, const CoeffGrid& b) {
    require_same_size(a, b, "max_abs_diff");
    return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

}  // namespace qtl
