#pragma once

#include <filesystem>
#include <istream>
#include <span>
#include <vector>

namespace qtl {

// Strictly increasing positive ordinates tau_1 < tau_2 < ... of zeta zeros.
class ZeroTable {
public:
    explicit ZeroTable(std::vector<double> ordinates);

    std::size_t size() const { return tau_.size(); }
    double operator[](std::size_t i) const { return tau_[i]; }
    std::span<const double> ordinates() const { return tau_; }

    // N(T): number of ordinates in (0, T]
    std::size_t count_up_to(double t) const;
    // First `count` ordinates.
    std::span<const double> first(std::size_t count) const;

private:
    std::vector<double> tau_;
};

// One ordinate per line; '#' lines and blank lines are skipped.
ZeroTable load_zero_table(std::istream& in);
ZeroTable load_zero_table(const std::filesystem::path& path);

}  // namespace qtl
