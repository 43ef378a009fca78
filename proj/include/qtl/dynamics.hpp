#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qtl/coeff_grid.hpp"

namespace qtl {

/**
 * Affine spectrum h_n = a n + b of the diagonal Hamiltonian H0.
 *
 * With `floor` set to n0, h_n = 0 for n < n0 (spectrum bounded below);
 * initial data must then vanish on rows and columns below n0.
 */
struct HarmonicSpec {
    double a = 0.0;
    double b = 0.0;
    std::optional<int> floor;

    double energy(int n) const { return (floor && n < *floor) ? 0.0 : a * n + b; }
    // max |h_k - h_l| over the window
    double max_gap(int band_limit) const;
};

// Eigenvalues lambda_n, n in [-N, N], of a diagonal Lindblad operator.
struct DiagonalRates {
    int band_limit = 0;
    std::vector<cplx> values;

    cplx operator()(int n) const { return values[static_cast<std::size_t>(n + band_limit)]; }

    // lambda_n = c n
    static DiagonalRates linear(int band_limit, cplx c);
    CoeffGrid as_operator() const;
};

struct LindbladSet {
    std::optional<CoeffGrid> compact;  // Hermitian perturbation C of H0
    std::vector<CoeffGrid> jumps;      // L_j, arbitrary
    std::optional<DiagonalRates> lambda;
};

enum class Picture { heisenberg, schrodinger };

// interaction: H0 phases are applied exactly and RK4 integrates the rest in
// the rotating frame. classical: plain RK4 on the full entrywise system.
enum class Scheme { interaction, classical };

struct EvolveConfig {
    double t_end = 1.0;
    double dt = 1e-3;
    double alpha = 0.0;
    int record_every = 1;
    Scheme scheme = Scheme::interaction;
    Picture picture = Picture::heisenberg;
    bool keep_states = true;
};

struct TrajectoryPoint {
    double t = 0.0;
    double alpha_norm = 0.0;
    CoeffGrid state;  // empty (N = 0) when keep_states is off, except the last point
};

struct Trajectory {
    std::vector<TrajectoryPoint> points;
    std::vector<std::string> warnings;
};

// Default step min(1e-3, 0.5 / max|h_k - h_l|).
double default_step(const HarmonicSpec& h, int band_limit);

// a(k,l)(t) = a(k,l)(0) exp(i (h_k - h_l) t)
CoeffGrid heisenberg_closed(const CoeffGrid& a0, const HarmonicSpec& h, double t);

struct DriftVelocity {
    double vx;
    double vy;
};
// Transport velocity of Q^-1 of the harmonic flow: (a / 2pi, -a / 2pi).
DriftVelocity drift_velocity(double a);

// f_t(x, y) = f_0(x + vx t, y + vy t), applied as a coefficient phase.
CoeffGrid drift_oracle(const CoeffGrid& f0, double a, double t);

// a(k,l)(t) = a(k,l)(0) exp((conj(l_k) l_l - |l_k|^2/2 - |l_l|^2/2) t)
CoeffGrid diagonal_lindblad_closed(const CoeffGrid& a0, const DiagonalRates& lambda, double t);

CoeffGrid lindblad_rhs(const CoeffGrid& a, const HarmonicSpec& h, const LindbladSet& set,
                       Picture picture = Picture::heisenberg);

Trajectory evolve_rk4(const CoeffGrid& a0, const HarmonicSpec& h, const LindbladSet& set,
                      const EvolveConfig& cfg);

struct GrowthBound {
    double c = 0.0;            // 4 ||C||_a + 4 sum ||L_j||_a^2
    double dissipative = 1.0;  // exp(c t)
    double full = 1.0;         // 1 + sqrt(c t (exp(2ct) - 1)) / (2 sqrt 2)
};

// The diagonal operator of `set.lambda`, when present, counts as one more L_j.
double dissipation_constant(double alpha, const LindbladSet& set);
GrowthBound growth_bound(double alpha, const LindbladSet& set, double t);

}  // namespace qtl
