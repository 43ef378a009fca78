#include "qtl/redundancy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>
#include <utility>

#include "qtl/error.hpp"
#include "qtl/sobolev.hpp"
#include "qtl/spectral.hpp"

namespace qtl {

namespace {

// Neumaier-compensated accumulator, one per component.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

std::span<const double> zeros_in_range(const ZeroTable& zeros, double t) {
    const std::size_t count = zeros.count_up_to(t);
    if (count == 0) throw EmptyRangeError("no zero ordinates in (0, T] for T = " + std::to_string(t));
    return zeros.first(count);
}

cplx phase_average(std::span<const double> taus, double x, unsigned workers) {
    if (x == 0.0) return 1.0;
    std::vector<cplx> terms(taus.size());
    auto fill = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) terms[i] = std::polar(1.0, -taus[i] * x);
    };
    const std::size_t nthreads = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(1, taus.size() / 1024));
    if (nthreads <= 1) {
        fill(0, taus.size());
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (taus.size() + nthreads - 1) / nthreads;
        for (std::size_t w = 0; w < nthreads; ++w) {
            const std::size_t lo = w * chunk, hi = std::min(taus.size(), lo + chunk);
            if (lo < hi) pool.emplace_back(fill, lo, hi);
        }
    }
    CompensatedSum re, im;
    for (const cplx& v : terms) {
        re.add(v.real());
        im.add(v.imag());
    }
    const double inv = 1.0 / static_cast<double>(taus.size());
    return {re.value() * inv, im.value() * inv};
}

void require_sigma(double sigma, std::string_view where) {
    if (!(sigma > 1.0)) throw DomainError(std::string(where) + ": sigma must exceed 1");
}

int sgn(int v) { return (v > 0) - (v < 0); }

// sgn(v) log|v|, with 0 for v = 0 (b_0 = 1 carries no phase)
double signed_log(int v) { return v == 0 ? 0.0 : sgn(v) * std::log(static_cast<double>(std::abs(v))); }

// Caches zero averages keyed by the signed pair (sgn(k) d, sgn(l) r). The
// canonical key has its first nonzero component positive; the mirrored key is
// the exact complex conjugate, which keeps outputs point-symmetric.
class PhaseCache {
public:
    PhaseCache(std::span<const double> taus, unsigned workers) : taus_(taus), workers_(workers) {}

    cplx get(int sd, int sr) {
        const bool flip = sd < 0 || (sd == 0 && sr < 0);
        const std::pair<int, int> key = flip ? std::pair{-sd, -sr} : std::pair{sd, sr};
        auto it = cache_.find(key);
        if (it == cache_.end()) {
            const double x = signed_log(key.first) + signed_log(key.second);
            it = cache_.emplace(key, phase_average(taus_, x, workers_)).first;
        }
        return flip ? std::conj(it->second) : it->second;
    }

private:
    std::span<const double> taus_;
    unsigned workers_;
    std::map<std::pair<int, int>, cplx> cache_;
};

}  // namespace

cplx zero_phase_average(const ZeroTable& zeros, double t, double x, const AveragingOptions& opts) {
    return phase_average(zeros_in_range(zeros, t), x, opts.workers);
}

double c_d(int d, double sigma, const ZeroTable& zeros, double t, const AveragingOptions& opts) {
    if (d < 2) throw DomainError("c_d: d must be at least 2");
    const auto taus = zeros_in_range(zeros, t);
    const double logd = std::log(static_cast<double>(d));
    return std::exp(-sigma * logd) * std::abs(phase_average(taus, logd, opts.workers));
}

CoeffLine broadband_average_1d(const CoeffLine& fhat, double sigma, const ZeroTable& zeros, double t,
                               const AveragingOptions& opts) {
    require_sigma(sigma, "broadband_average_1d");
    const auto taus = zeros_in_range(zeros, t);
    PhaseCache cache(taus, opts.workers);
    const int n = fhat.band_limit();
    CoeffLine z(n);
    z(0) = fhat(0);
    for (int k = 1; k <= n; ++k) {
        cplx pos = 0.0, neg = 0.0;
        for (int d = 1; d <= k; ++d) {
            if (k % d != 0) continue;
            const int mu = moebius(d);
            if (mu == 0) continue;
            const double scale = mu * std::pow(static_cast<double>(d), -sigma);
            pos += scale * cache.get(d, 0) * fhat(k / d);
            neg += scale * cache.get(-d, 0) * fhat(-k / d);
        }
        z(k) = pos;
        z(-k) = neg;
    }
    return z;
}

CoeffGrid broadband_average_2d(const CoeffGrid& fhat, double sigma, const ZeroTable& zeros, double t,
                               const AveragingOptions& opts) {
    require_sigma(sigma, "broadband_average_2d");
    const auto taus = zeros_in_range(zeros, t);
    PhaseCache cache(taus, opts.workers);
    const int n = fhat.band_limit();
    std::vector<double> mu_pow(static_cast<std::size_t>(n + 2), 0.0);  // mu(d) d^-sigma
    for (int d = 1; d <= std::max(n, 1); ++d)
        mu_pow[static_cast<std::size_t>(d)] = moebius(d) * std::pow(static_cast<double>(d), -sigma);

    CoeffGrid z(n);
    for (int k = -n; k <= n; ++k) {
        const int ak = std::abs(k);
        for (int l = -n; l <= n; ++l) {
            const int al = std::abs(l);
            cplx acc = 0.0;
            for (int d = 1; d <= std::max(ak, 1); ++d) {
                if (ak != 0 && ak % d != 0) continue;
                const double wd = mu_pow[static_cast<std::size_t>(d)];
                if (wd == 0.0) continue;
                for (int r = 1; r <= std::max(al, 1); ++r) {
                    if (al != 0 && al % r != 0) continue;
                    const double wr = mu_pow[static_cast<std::size_t>(r)];
                    if (wr == 0.0) continue;
                    acc += wd * wr * cache.get(sgn(k) * d, sgn(l) * r) * fhat(k / d, l / r);
                }
            }
            z(k, l) = acc;
        }
    }
    return z;
}

RedundancyPoint redundancy_point(const CoeffGrid& fhat, double sigma, const ZeroTable& zeros,
                                 std::size_t zero_count, double alpha, const AveragingOptions& opts) {
    if (zero_count == 0) throw EmptyRangeError("redundancy_point: zero count must be positive");
    const double t = zeros.first(zero_count).back();
    const CoeffGrid avg = broadband_average_2d(fhat, sigma, zeros, t, opts);
    RedundancyPoint p;
    p.zero_count = zero_count;
    p.t = t;
    p.l2_error_field = norm(avg - fhat, alpha);
    p.hs_error_operator = norm(s_map(avg) - q_transform(fhat), alpha);
    return p;
}

}  // namespace qtl
