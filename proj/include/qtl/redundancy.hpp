#pragma once

#include "qtl/arithmetic.hpp"
#include "qtl/coeff_grid.hpp"
#include "qtl/zero_table.hpp"

namespace qtl {

struct AveragingOptions {
    // Threads for the per-zero map phase. The reduction is always one
    // sequential compensated sum in ascending tau, so results do not depend
    // on this value.
    unsigned workers = 1;
};

// (1/N(T)) sum_{tau_n <= T} exp(-i tau_n x). Throws EmptyRangeError if N(T) = 0.
cplx zero_phase_average(const ZeroTable& zeros, double t, double x, const AveragingOptions& opts = {});

// c_d(T) = |(1/N(T)) sum_{tau_n <= T} d^{-(sigma + i tau_n)}|
double c_d(int d, double sigma, const ZeroTable& zeros, double t, const AveragingOptions& opts = {});

/// Average over zero ordinates tau_n <= T of D^-1 applied with
/// b_k = mu(k) k^{-(sigma + i tau_n)}:
///   z_k = sum_{d | k} mu(d) (1/N(T)) sum_n d^{-(sigma + i tau_n)} f_{k/d},
/// conjugate parameters for k < 0, z_0 = f_0. Requires sigma > 1.
CoeffLine broadband_average_1d(const CoeffLine& fhat, double sigma, const ZeroTable& zeros, double t,
                               const AveragingOptions& opts = {});

/// Two-dimensional counterpart: the zero average of D^-1 F (D^-1)^T.
///
/// Each term b_{sgn(k) d} b_{sgn(l) r} is averaged as a whole, so in the
/// mixed-sign quadrants the phases d^{-i tau} r^{+i tau} combine to
/// (d/r)^{-i tau}; for d = r these do not cancel.
CoeffGrid broadband_average_2d(const CoeffGrid& fhat, double sigma, const ZeroTable& zeros, double t,
                               const AveragingOptions& opts = {});

struct RedundancyPoint {
    std::size_t zero_count = 0;
    double t = 0.0;                  // ordinate of the last zero used
    double l2_error_field = 0.0;     // || avg Z - f^ ||_alpha (l2 at alpha = 0)
    double hs_error_operator = 0.0;  // || S[avg Z] - Q f ||_alpha (Hilbert-Schmidt at alpha = 0)
};

// Averages over the first `zero_count` ordinates (T = tau_{zero_count}).
RedundancyPoint redundancy_point(const CoeffGrid& fhat, double sigma, const ZeroTable& zeros,
                                 std::size_t zero_count, double alpha = 0.0, const AveragingOptions& opts = {});

}  // namespace qtl
