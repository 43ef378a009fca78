#include "qtl/spectral.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qtl/error.hpp"

namespace qtl {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr cplx kI{0.0, 1.0};

// twiddle[p] = exp(sign * 2 pi i p / m)
std::vector<cplx> twiddles(int m, double sign) {
    std::vector<cplx> t(static_cast<std::size_t>(m));
    for (int p = 0; p < m; ++p) {
        const double angle = sign * 2.0 * std::numbers::pi * p / m;
        t[static_cast<std::size_t>(p)] = {std::cos(angle), std::sin(angle)};
    }
    return t;
}

int wrap(long long value, int m) {
    long long r = value % m;
    return static_cast<int>(r < 0 ? r + m : r);
}

}  // namespace

CoeffGrid s_map(const CoeffGrid& z) {
    require_fourier_real(z, "s_map");
    const int n = z.band_limit();
    CoeffGrid w(n);
    for (int k = -n; k <= n; ++k) {
        for (int l = -n; l <= n; ++l) {
            if (k < l) {
                w(k, l) = z(k, l);
            } else if (k > l) {
                w(k, l) = std::conj(z(l, k));
            } else if (k < 0) {
                w(k, k) = kSqrt2 * z(k, k).imag();
            } else if (k > 0) {
                w(k, k) = kSqrt2 * z(k, k).real();
            } else {
                w(0, 0) = z(0, 0).real();
            }
        }
    }
    return w;
}

CoeffGrid s_inv(const CoeffGrid& w) {
    require_hermitian(w, "s_inv");
    const int n = w.band_limit();
    CoeffGrid z(n);
    for (int k = -n; k <= n; ++k) {
        for (int l = k + 1; l <= n; ++l) {
            z(k, l) = w(k, l);
            z(-k, -l) = std::conj(w(k, l));
        }
    }
    for (int k = 1; k <= n; ++k) {
        const double pos = w(k, k).real();
        const double neg = w(-k, -k).real();
        z(k, k) = cplx(pos, -neg) / kSqrt2;
        z(-k, -k) = cplx(pos, neg) / kSqrt2;
    }
    z(0, 0) = w(0, 0).real();
    return z;
}

CoeffGrid analyze(const SampleGrid& samples, int band_limit) {
    const int m = 2 * band_limit + 1;
    if (samples.m != m || samples.values.size() != static_cast<std::size_t>(m) * m) {
        std::ostringstream msg;
        msg << "analyze: band limit " << band_limit << " needs " << m << "x" << m
            << " samples, got M = " << samples.m;
        throw DimensionError(msg.str());
    }
    const auto tw = twiddles(m, -1.0);
    const int n = band_limit;
    // Separable transform: first along j (the l axis), then along i.
    Matrix partial(m, m);
    for (int i = 0; i < m; ++i) {
        for (int l = -n; l <= n; ++l) {
            cplx acc = 0.0;
            for (int j = 0; j < m; ++j) acc += samples(i, j) * tw[wrap(1LL * l * j, m)];
            partial(i, l + n) = acc;
        }
    }
    CoeffGrid z(n);
    const double norm = 1.0 / (static_cast<double>(m) * m);
    for (int k = -n; k <= n; ++k) {
        for (int l = -n; l <= n; ++l) {
            cplx acc = 0.0;
            for (int i = 0; i < m; ++i) acc += partial(i, l + n) * tw[wrap(1LL * k * i, m)];
            z(k, l) = acc * norm;
        }
    }
    return z;
}

CoeffGrid analyze(const SampleGrid& samples) {
    if (samples.m <= 0 || samples.m % 2 == 0)
        throw DimensionError("analyze: samples per axis must be odd (M = 2N+1)");
    return analyze(samples, (samples.m - 1) / 2);
}

SampleGrid synthesize(const CoeffGrid& z) {
    const int n = z.band_limit();
    const int m = z.side();
    const auto tw = twiddles(m, 1.0);
    Matrix partial(m, m);  // (i, l)
    for (int i = 0; i < m; ++i) {
        for (int l = -n; l <= n; ++l) {
            cplx acc = 0.0;
            for (int k = -n; k <= n; ++k) acc += z(k, l) * tw[wrap(1LL * k * i, m)];
            partial(i, l + n) = acc;
        }
    }
    SampleGrid s(m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            cplx acc = 0.0;
            for (int l = -n; l <= n; ++l) acc += partial(i, l + n) * tw[wrap(1LL * l * j, m)];
            s(i, j) = acc;
        }
    }
    return s;
}

OperatorParts hermitian_split(const CoeffGrid& c) {
    const CoeffGrid adj = c.adjoint();
    return {0.5 * (c + adj), (c - adj) * (1.0 / (2.0 * kI))};
}

CoeffGrid q_transform(const CoeffGrid& f) { return s_map(f); }

CoeffGrid q_transform(const CoeffGrid& f, const CoeffGrid& g) {
    require_same_size(f, g, "q_transform");
    return s_map(f) + kI * s_map(g);
}

CoeffGrid q_transform(const ComplexField& u) { return q_transform(u.re, u.im); }

ComplexField q_inverse(const CoeffGrid& c) {
    const OperatorParts parts = hermitian_split(c);
    return {s_inv(parts.re), s_inv(parts.im)};
}

ComplexField split_field(const CoeffGrid& u_hat) {
    const int n = u_hat.band_limit();
    CoeffGrid f(n), g(n);
    for (int k = -n; k <= n; ++k) {
        for (int l = -n; l <= n; ++l) {
            const cplx mirror = std::conj(u_hat(-k, -l));
            f(k, l) = 0.5 * (u_hat(k, l) + mirror);
            g(k, l) = (u_hat(k, l) - mirror) / (2.0 * kI);
        }
    }
    return {f, g};
}

CoeffGrid combine_field(const ComplexField& u) { return u.re + kI * u.im; }

ComplexField operator*(cplx s, const ComplexField& u) {
    // s u = (x f - y g) + i (x g + y f) for s = x + iy
    return {s.real() * u.re - s.imag() * u.im, s.real() * u.im + s.imag() * u.re};
}

}  // namespace qtl
