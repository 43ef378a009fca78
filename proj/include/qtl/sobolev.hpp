#pragma once

#include <functional>
#include <optional>

#include "qtl/coeff_grid.hpp"

namespace qtl {

/**
 * Rotationally symmetric weight gamma(k, l) = profile(k^2 + l^2).
 *
 * The standard Sobolev weight is (1 + k^2 + l^2)^alpha for any real alpha;
 * radial() accepts an arbitrary non-negative profile of k^2 + l^2.
 */
class SobolevWeight {
public:
    explicit SobolevWeight(double alpha);
    static SobolevWeight radial(std::function<double(long)> profile);

    double operator()(int k, int l) const { return at_radius2(static_cast<long>(k) * k + static_cast<long>(l) * l); }
    double at_radius2(long r2) const;

    // Set for the power-law weight, empty for custom profiles.
    std::optional<double> alpha() const { return alpha_; }

    // weight for every r2 in [0, 2N^2]
    std::vector<double> table(int band_limit) const;

private:
    SobolevWeight() = default;
    std::optional<double> alpha_;
    std::function<double(long)> profile_;
};

// <A|B> = sum gamma(k,l) a(k,l) conj b(k,l)
cplx inner(const CoeffGrid& a, const CoeffGrid& b, const SobolevWeight& w);
double norm(const CoeffGrid& a, const SobolevWeight& w);
double norm(const CoeffGrid& a, double alpha);

// <[H, A] | A> for Hermitian H, A; purely imaginary up to round-off.
cplx commutator_pairing(const CoeffGrid& h, const CoeffGrid& a, const SobolevWeight& w);

}  // namespace qtl
