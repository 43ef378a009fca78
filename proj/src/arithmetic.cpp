#include "qtl/arithmetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qtl/error.hpp"
#include "qtl/spectral.hpp"

namespace qtl {

namespace {

// Term of the sequence at a signed index: b_{-k} = conj(b_k), b_0 = 1.
cplx signed_term(const Sequence& s, int index) {
    if (index == 0) return 1.0;
    if (index > 0) return s[static_cast<std::size_t>(index - 1)];
    return std::conj(s[static_cast<std::size_t>(-index - 1)]);
}

void require_cover(const ArithmeticSeq& seq, int band_limit, std::string_view where) {
    if (seq.length() < static_cast<std::size_t>(band_limit)) {
        std::ostringstream msg;
        msg << where << ": sequence has " << seq.length() << " terms, band limit " << band_limit
            << " needs " << band_limit;
        throw DimensionError(msg.str());
    }
}

CoeffLine apply_divisor_matrix(const Sequence& s, const CoeffLine& x) {
    const int n = x.band_limit();
    CoeffLine out(n);
    out(0) = x(0);
    for (int k = 1; k <= n; ++k) {
        cplx pos = 0.0, neg = 0.0;
        for (int d = 1; d <= k; ++d) {
            if (k % d != 0) continue;
            const cplx coef = s[static_cast<std::size_t>(d - 1)];
            pos += coef * x(k / d);
            neg += std::conj(coef) * x(-k / d);
        }
        out(k) = pos;
        out(-k) = neg;
    }
    return out;
}

}  // namespace

int moebius(long n) {
    if (n < 1) throw DomainError("moebius: argument must be positive");
    int sign = 1;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
    }
    if (n > 1) sign = -sign;
    return sign;
}

Sequence dirichlet_convolve(std::span<const cplx> a, std::span<const cplx> b) {
    const std::size_t len = std::min(a.size(), b.size());
    Sequence out(len, cplx(0.0));
    for (std::size_t d = 1; d <= len; ++d)
        for (std::size_t m = 1; d * m <= len; ++m) out[d * m - 1] += a[d - 1] * b[m - 1];
    return out;
}

Sequence dirichlet_inverse(std::span<const cplx> a, std::size_t length) {
    if (a.empty() || a[0] == cplx(0.0)) throw DomainError("dirichlet_inverse: a_1 must be nonzero");
    if (a.size() < length) throw DimensionError("dirichlet_inverse: sequence shorter than requested length");
    Sequence b(length, cplx(0.0));
    if (length == 0) return b;
    const cplx inv_a1 = 1.0 / a[0];
    // acc[n-1] collects sum_{d | n, d > 1} a_d b_{n/d}; every b_m it needs has m < n.
    Sequence acc(length, cplx(0.0));
    for (std::size_t m = 1; m <= length; ++m) {
        b[m - 1] = m == 1 ? inv_a1 : -inv_a1 * acc[m - 1];
        for (std::size_t d = 2; d * m <= length; ++d) acc[d * m - 1] += a[d - 1] * b[m - 1];
    }
    return b;
}

ArithmeticSeq::ArithmeticSeq(Sequence a) : a_(std::move(a)), b_(dirichlet_inverse(a_, a_.size())) {}

ArithmeticSeq ArithmeticSeq::unit(std::size_t length) {
    Sequence a(length, cplx(0.0));
    if (length > 0) a[0] = 1.0;
    return ArithmeticSeq(std::move(a));
}

ArithmeticSeq ArithmeticSeq::zeta(double sigma, double tau, std::size_t length) {
    Sequence a(length);
    for (std::size_t k = 1; k <= length; ++k) {
        const double logk = std::log(static_cast<double>(k));
        a[k - 1] = std::polar(std::exp(-sigma * logk), -tau * logk);
    }
    return ArithmeticSeq(std::move(a));
}

double l2_distance(const CoeffLine& x, const CoeffLine& y) {
    if (x.band_limit() != y.band_limit()) throw DimensionError("l2_distance: band limits differ");
    double acc = 0.0;
    for (int k = -x.band_limit(); k <= x.band_limit(); ++k) acc += std::norm(x(k) - y(k));
    return std::sqrt(acc);
}

CoeffLine apply_D(const ArithmeticSeq& seq, const CoeffLine& x) {
    require_cover(seq, x.band_limit(), "apply_D");
    return apply_divisor_matrix(seq.coefficients(), x);
}

CoeffLine apply_D_inv(const ArithmeticSeq& seq, const CoeffLine& x) {
    require_cover(seq, x.band_limit(), "apply_D_inv");
    return apply_divisor_matrix(seq.inverse(), x);
}

Matrix d_matrix(const ArithmeticSeq& seq, int band_limit, bool inverse) {
    require_cover(seq, band_limit, "d_matrix");
    const Sequence& s = inverse ? seq.inverse() : seq.coefficients();
    const int n = band_limit;
    Matrix m = Matrix::Zero(2 * n + 1, 2 * n + 1);
    m(n, n) = 1.0;
    for (int k = 1; k <= n; ++k) {
        for (int col = 1; col <= k; ++col) {
            if (k % col != 0) continue;
            m(k + n, col + n) = signed_term(s, k / col);
            m(-k + n, -col + n) = signed_term(s, -(k / col));
        }
    }
    return m;
}

CoeffGrid d_transform_2d(const ArithmeticSeq& seq, const CoeffGrid& fhat) {
    const int n = fhat.band_limit();
    require_cover(seq, n, "d_transform_2d");
    CoeffGrid half(n);
    CoeffLine line(n);
    for (int l = -n; l <= n; ++l) {
        for (int k = -n; k <= n; ++k) line(k) = fhat(k, l);
        const CoeffLine col = apply_D_inv(seq, line);
        for (int k = -n; k <= n; ++k) half(k, l) = col(k);
    }
    CoeffGrid z(n);
    for (int k = -n; k <= n; ++k) {
        for (int l = -n; l <= n; ++l) line(l) = half(k, l);
        const CoeffLine row = apply_D_inv(seq, line);
        for (int l = -n; l <= n; ++l) z(k, l) = row(l);
    }
    return z;
}

CoeffGrid d_transform_2d_direct(const ArithmeticSeq& seq, const CoeffGrid& fhat) {
    const int n = fhat.band_limit();
    require_cover(seq, n, "d_transform_2d_direct");
    const Sequence& b = seq.inverse();
    auto sgn = [](int v) { return (v > 0) - (v < 0); };
    CoeffGrid z(n);
    for (int k = -n; k <= n; ++k) {
        const int ak = std::abs(k);
        for (int l = -n; l <= n; ++l) {
            const int al = std::abs(l);
            cplx acc = 0.0;
            // d | 0 means d = 1
            for (int d = 1; d <= std::max(ak, 1); ++d) {
                if (ak != 0 && ak % d != 0) continue;
                const cplx bd = signed_term(b, sgn(k) * d);
                for (int r = 1; r <= std::max(al, 1); ++r) {
                    if (al != 0 && al % r != 0) continue;
                    acc += bd * signed_term(b, sgn(l) * r) * fhat(k / d, l / r);
                }
            }
            z(k, l) = acc;
        }
    }
    return z;
}

CoeffGrid qd_transform(const ArithmeticSeq& seq, const CoeffGrid& f) {
    require_fourier_real(f, "qd_transform");
    return s_map(d_transform_2d(seq, f));
}

CoeffGrid qd_transform(const ArithmeticSeq& seq, const CoeffGrid& f, const CoeffGrid& g) {
    return qd_transform(seq, f) + cplx(0.0, 1.0) * qd_transform(seq, g);
}

double operator_norm_bound(std::span<const cplx> a) {
    double sum = 0.0;
    for (const cplx& v : a) sum += std::abs(v);
    return std::max(1.0, sum);
}

double operator_norm_bound(const ArithmeticSeq& seq) { return operator_norm_bound(seq.coefficients()); }

double operator_norm_estimate(const Matrix& m, int iterations) {
    if (m.size() == 0) return 0.0;
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(m.cols()).normalized();
    const Matrix gram = m.adjoint() * m;
    double lambda = 0.0;
    for (int it = 0; it < iterations; ++it) {
        Eigen::VectorXcd w = gram * v;
        const double nw = w.norm();
        if (nw == 0.0) return 0.0;
        lambda = nw;
        v = w / nw;
    }
    // Rayleigh quotient of the converged vector, never above the true square norm.
    lambda = std::min(lambda, (v.adjoint() * gram * v)(0, 0).real());
    return std::sqrt(std::max(lambda, 0.0));
}

PartialSum periodized_zeta(cplx s, double t, long terms) {
    const double sigma = s.real();
    if (!(sigma > 1.0)) throw DomainError("periodized_zeta: requires Re s > 1");
    if (terms < 0) throw DomainError("periodized_zeta: terms must be non-negative");
    cplx acc = 0.0;
    for (long k = 1; k <= terms; ++k) {
        const double logk = std::log(static_cast<double>(k));
        const double phase = 2.0 * std::numbers::pi * std::remainder(static_cast<double>(k) * t, 1.0);
        acc += std::exp(-s * logk) * std::polar(1.0, phase);
    }
    // sum_{k > K} k^-sigma <= K^{1-sigma}/(sigma-1); for K = 0 add the k = 1 term.
    const double tail = terms == 0 ? 1.0 + 1.0 / (sigma - 1.0)
                                   : std::pow(static_cast<double>(terms), 1.0 - sigma) / (sigma - 1.0);
    return {acc, tail};
}

}  // namespace qtl
