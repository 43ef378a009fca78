#include "qtl/sobolev.hpp"

#include <cmath>
#include <sstream>

#include "qtl/error.hpp"

namespace qtl {

SobolevWeight::SobolevWeight(double alpha) : alpha_(alpha) {}

SobolevWeight SobolevWeight::radial(std::function<double(long)> profile) {
    if (!profile) throw DomainError("radial weight needs a profile");
    SobolevWeight w;
    w.profile_ = std::move(profile);
    return w;
}

double SobolevWeight::at_radius2(long r2) const {
    if (alpha_) return std::pow(1.0 + static_cast<double>(r2), *alpha_);
    const double v = profile_(r2);
    if (!(v >= 0.0)) {
        std::ostringstream msg;
        msg << "radial weight profile is negative or NaN at k^2+l^2 = " << r2;
        throw DomainError(msg.str());
    }
    return v;
}

std::vector<double> SobolevWeight::table(int band_limit) const {
    const long max_r2 = 2L * band_limit * band_limit;
    std::vector<double> t(static_cast<std::size_t>(max_r2 + 1));
    for (long r2 = 0; r2 <= max_r2; ++r2) t[static_cast<std::size_t>(r2)] = at_radius2(r2);
    return t;
}

cplx inner(const CoeffGrid& a, const CoeffGrid& b, const SobolevWeight& w) {
    require_same_size(a, b, "inner");
    const int n = a.band_limit();
    const auto weights = w.table(n);
    cplx acc = 0.0;
    for (int k = -n; k <= n; ++k)
        for (int l = -n; l <= n; ++l)
            acc += weights[static_cast<std::size_t>(k * k + l * l)] * a(k, l) * std::conj(b(k, l));
    return acc;
}

double norm(const CoeffGrid& a, const SobolevWeight& w) {
    const int n = a.band_limit();
    const auto weights = w.table(n);
    double acc = 0.0;
    for (int k = -n; k <= n; ++k)
        for (int l = -n; l <= n; ++l)
            acc += weights[static_cast<std::size_t>(k * k + l * l)] * std::norm(a(k, l));
    return std::sqrt(acc);
}

double norm(const CoeffGrid& a, double alpha) { return norm(a, SobolevWeight(alpha)); }

cplx commutator_pairing(const CoeffGrid& h, const CoeffGrid& a, const SobolevWeight& w) {
    require_same_size(h, a, "commutator_pairing");
    require_hermitian(h, "commutator_pairing (H)");
    require_hermitian(a, "commutator_pairing (A)");
    return inner(h * a - a * h, a, w);
}

}  // namespace qtl
