#include "qtl/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qtl/error.hpp"
#include "qtl/sobolev.hpp"

namespace qtl {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_floor_support(const CoeffGrid& a0, const HarmonicSpec& h, std::string_view where) {
    if (!h.floor) return;
    const int n = a0.band_limit();
    const double tol = kSymmetryTol * a0.max_abs();
    for (int k = -n; k <= n; ++k) {
        for (int l = -n; l <= n; ++l) {
            if ((k < *h.floor || l < *h.floor) && std::abs(a0(k, l)) > tol) {
                std::ostringstream msg;
                msg << where << ": initial data must vanish below the spectral floor " << *h.floor
                    << " but entry (" << k << "," << l << ") is " << a0(k, l);
                throw DomainError(msg.str());
            }
        }
    }
}

void require_rates(const DiagonalRates& lambda, int band_limit, std::string_view where) {
    if (lambda.band_limit != band_limit ||
        lambda.values.size() != static_cast<std::size_t>(2 * band_limit + 1)) {
        std::ostringstream msg;
        msg << where << ": rate sequence covers band limit " << lambda.band_limit << ", grid has "
            << band_limit;
        throw DimensionError(msg.str());
    }
}

// Entrywise exponent of the diagonal dissipator.
Matrix diagonal_rate_matrix(const DiagonalRates& lambda, Picture picture) {
    const int n = lambda.band_limit;
    Matrix r(2 * n + 1, 2 * n + 1);
    for (int k = -n; k <= n; ++k) {
        for (int l = -n; l <= n; ++l) {
            const cplx lk = lambda(k), ll = lambda(l);
            const cplx cross = picture == Picture::heisenberg ? std::conj(lk) * ll : lk * std::conj(ll);
            r(k + n, l + n) = cross - 0.5 * std::norm(lk) - 0.5 * std::norm(ll);
        }
    }
    return r;
}

// The Lindblad generator split into the H0 phase part (entrywise) and the
// bounded remainder (C, L_j, diagonal rates).
class Generator {
public:
    Generator(int band_limit, const HarmonicSpec& h, const LindbladSet& set, Picture picture)
        : n_(band_limit), picture_(picture) {
        const int m = 2 * n_ + 1;
        const double sign = picture == Picture::heisenberg ? 1.0 : -1.0;
        phase_.resize(m, m);
        for (int k = -n_; k <= n_; ++k)
            for (int l = -n_; l <= n_; ++l)
                phase_(k + n_, l + n_) = sign * (h.energy(k) - h.energy(l));

        if (set.compact) {
            require_same_size(*set.compact, CoeffGrid(n_), "LindbladSet compact part");
            require_hermitian(*set.compact, "LindbladSet compact part");
            compact_ = set.compact->matrix();
        }
        anticomm_ = Matrix::Zero(m, m);
        for (const auto& l : set.jumps) {
            require_same_size(l, CoeffGrid(n_), "LindbladSet jump operator");
            jumps_.push_back(l.matrix());
            jumps_adj_.push_back(l.matrix().adjoint());
            anticomm_ += jumps_adj_.back() * jumps_.back();
        }
        if (set.lambda) {
            require_rates(*set.lambda, n_, "LindbladSet");
            rates_ = diagonal_rate_matrix(*set.lambda, picture);
        }
    }

    double max_gap() const { return phase_.cwiseAbs().maxCoeff(); }

    // entrywise exp(i * phase * t)
    Matrix propagator(double t) const {
        return phase_.unaryExpr([t](double p) { return std::polar(1.0, p * t); });
    }

    Matrix phase_part(const Matrix& a) const {
        return kI * phase_.cast<cplx>().cwiseProduct(a);
    }

    Matrix bounded_part(const Matrix& a) const {
        const int m = 2 * n_ + 1;
        Matrix out = Matrix::Zero(m, m);
        const bool heis = picture_ == Picture::heisenberg;
        if (compact_) {
            const Matrix comm = *compact_ * a - a * *compact_;
            out += (heis ? kI : -kI) * comm;
        }
        for (std::size_t j = 0; j < jumps_.size(); ++j) {
            out += heis ? Matrix(jumps_adj_[j] * a * jumps_[j]) : Matrix(jumps_[j] * a * jumps_adj_[j]);
        }
        if (!jumps_.empty()) out -= 0.5 * (anticomm_ * a + a * anticomm_);
        if (rates_) out += rates_->cwiseProduct(a);
        return out;
    }

    Matrix full(const Matrix& a) const { return phase_part(a) + bounded_part(a); }

private:
    int n_;
    Picture picture_;
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> phase_;
    std::optional<Matrix> compact_;
    std::vector<Matrix> jumps_;
    std::vector<Matrix> jumps_adj_;
    Matrix anticomm_;  // sum L^dag L
    std::optional<Matrix> rates_;
};

}  // namespace

double HarmonicSpec::max_gap(int band_limit) const {
    double lo = energy(-band_limit), hi = lo;
    for (int n = -band_limit; n <= band_limit; ++n) {
        lo = std::min(lo, energy(n));
        hi = std::max(hi, energy(n));
    }
    return hi - lo;
}

DiagonalRates DiagonalRates::linear(int band_limit, cplx c) {
    DiagonalRates r{band_limit, {}};
    for (int n = -band_limit; n <= band_limit; ++n) r.values.push_back(c * static_cast<double>(n));
    return r;
}

CoeffGrid DiagonalRates::as_operator() const {
    CoeffGrid g(band_limit);
    for (int n = -band_limit; n <= band_limit; ++n) g(n, n) = (*this)(n);
    return g;
}

double default_step(const HarmonicSpec& h, int band_limit) {
    const double gap = h.max_gap(band_limit);
    return gap > 0.0 ? std::min(1e-3, 0.5 / gap) : 1e-3;
}

CoeffGrid heisenberg_closed(const CoeffGrid& a0, const HarmonicSpec& h, double t) {
    require_floor_support(a0, h, "heisenberg_closed");
    const int n = a0.band_limit();
    CoeffGrid out(n);
    for (int k = -n; k <= n; ++k)
        for (int l = -n; l <= n; ++l)
            out(k, l) = a0(k, l) * std::polar(1.0, (h.energy(k) - h.energy(l)) * t);
    return out;
}

DriftVelocity drift_velocity(double a) {
    return {a / (2.0 * std::numbers::pi), -a / (2.0 * std::numbers::pi)};
}

CoeffGrid drift_oracle(const CoeffGrid& f0, double a, double t) {
    const auto v = drift_velocity(a);
    const int n = f0.band_limit();
    CoeffGrid out(n);
    for (int k = -n; k <= n; ++k)
        for (int l = -n; l <= n; ++l)
            out(k, l) = f0(k, l) * std::polar(1.0, 2.0 * std::numbers::pi * (k * v.vx + l * v.vy) * t);
    return out;
}

CoeffGrid diagonal_lindblad_closed(const CoeffGrid& a0, const DiagonalRates& lambda, double t) {
    if (t < 0.0) throw DomainError("diagonal_lindblad_closed: t must be non-negative");
    require_rates(lambda, a0.band_limit(), "diagonal_lindblad_closed");
    const Matrix rates = diagonal_rate_matrix(lambda, Picture::heisenberg);
    return CoeffGrid(a0.band_limit(),
                     a0.matrix().cwiseProduct(rates.unaryExpr([t](cplx r) { return std::exp(r * t); })));
}

CoeffGrid lindblad_rhs(const CoeffGrid& a, const HarmonicSpec& h, const LindbladSet& set, Picture picture) {
    const Generator gen(a.band_limit(), h, set, picture);
    return CoeffGrid(a.band_limit(), gen.full(a.matrix()));
}

Trajectory evolve_rk4(const CoeffGrid& a0, const HarmonicSpec& h, const LindbladSet& set,
                      const EvolveConfig& cfg) {
    if (!(cfg.dt > 0.0)) throw DomainError("evolve_rk4: dt must be positive");
    if (!(cfg.t_end >= 0.0)) throw DomainError("evolve_rk4: t_end must be non-negative");
    if (cfg.record_every < 1) throw DomainError("evolve_rk4: record_every must be at least 1");
    require_floor_support(a0, h, "evolve_rk4");

    const int n = a0.band_limit();
    const Generator gen(n, h, set, cfg.picture);
    const SobolevWeight weight(cfg.alpha);

    const long steps = cfg.t_end == 0.0 ? 0 : static_cast<long>(std::ceil(cfg.t_end / cfg.dt - 1e-9));
    const double step = steps > 0 ? cfg.t_end / static_cast<double>(steps) : 0.0;

    Trajectory traj;
    if (cfg.scheme == Scheme::classical && step * gen.max_gap() > 0.5) {
        std::ostringstream msg;
        msg << "dt * max|h_k - h_l| = " << step * gen.max_gap()
            << " exceeds 0.5; the fastest phase is under-resolved";
        traj.warnings.push_back(msg.str());
    }

    Matrix a = a0.matrix();
    auto record = [&](double t, bool last) {
        CoeffGrid g(n, a);
        const double nrm = norm(g, weight);
        traj.points.push_back({t, nrm, (cfg.keep_states || last) ? std::move(g) : CoeffGrid()});
    };
    record(0.0, steps == 0);

    const Matrix e_half = gen.propagator(0.5 * step);
    const Matrix e_full = gen.propagator(step);

    for (long s = 1; s <= steps; ++s) {
        if (cfg.scheme == Scheme::classical) {
            const Matrix k1 = gen.full(a);
            const Matrix k2 = gen.full(a + 0.5 * step * k1);
            const Matrix k3 = gen.full(a + 0.5 * step * k2);
            const Matrix k4 = gen.full(a + step * k3);
            a += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        } else {
            // RK4 in the frame rotating with H0 (integrating factor form).
            const Matrix k1 = gen.bounded_part(a);
            const Matrix k2 = gen.bounded_part(e_half.cwiseProduct(a + 0.5 * step * k1));
            const Matrix k3 = gen.bounded_part(e_half.cwiseProduct(a) + 0.5 * step * k2);
            const Matrix k4 = gen.bounded_part(e_full.cwiseProduct(a) + step * e_half.cwiseProduct(k3));
            a = e_full.cwiseProduct(a) +
                (step / 6.0) * (e_full.cwiseProduct(k1) + 2.0 * e_half.cwiseProduct(k2 + k3) + k4);
        }
        if (!a.allFinite()) {
            std::ostringstream msg;
            msg << "evolve_rk4: non-finite state at step " << s << " (t = " << s * step << ")";
            throw NumericalError(msg.str());
        }
        const bool last = s == steps;
        if (last || s % cfg.record_every == 0) record(static_cast<double>(s) * step, last);
    }
    return traj;
}

double dissipation_constant(double alpha, const LindbladSet& set) {
    const SobolevWeight w(alpha);
    double c = 0.0;
    if (set.compact) c += 4.0 * norm(*set.compact, w);
    for (const auto& l : set.jumps) c += 4.0 * std::pow(norm(l, w), 2);
    if (set.lambda) c += 4.0 * std::pow(norm(set.lambda->as_operator(), w), 2);
    return c;
}

GrowthBound growth_bound(double alpha, const LindbladSet& set, double t) {
    if (alpha < 0.0) throw DomainError("growth_bound: alpha must be non-negative");
    if (t < 0.0) throw DomainError("growth_bound: t must be non-negative");
    GrowthBound g;
    g.c = dissipation_constant(alpha, set);
    g.dissipative = std::exp(g.c * t);
    g.full = 1.0 + std::sqrt(g.c * t * std::expm1(2.0 * g.c * t)) / (2.0 * std::numbers::sqrt2);
    return g;
}

}  // namespace qtl
