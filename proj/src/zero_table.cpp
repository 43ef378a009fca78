#include "qtl/zero_table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "qtl/error.hpp"

namespace qtl {

ZeroTable::ZeroTable(std::vector<double> ordinates) : tau_(std::move(ordinates)) {
    for (std::size_t i = 0; i < tau_.size(); ++i) {
        if (!(tau_[i] > 0.0) || !std::isfinite(tau_[i]))
            throw DomainError("zero table: ordinate " + std::to_string(i + 1) + " is not a positive number");
        if (i > 0 && !(tau_[i] > tau_[i - 1]))
            throw DomainError("zero table: ordinates not strictly increasing at entry " + std::to_string(i + 1));
    }
}

std::size_t ZeroTable::count_up_to(double t) const {
    return static_cast<std::size_t>(std::upper_bound(tau_.begin(), tau_.end(), t) - tau_.begin());
}

std::span<const double> ZeroTable::first(std::size_t count) const {
    if (count > tau_.size())
        throw DimensionError("zero table holds " + std::to_string(tau_.size()) + " ordinates, " +
                             std::to_string(count) + " requested");
    return std::span<const double>(tau_).first(count);
}

ZeroTable load_zero_table(std::istream& in) {
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    double prev = 0.0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto last = line.find_last_not_of(" \t\r");
        const char* begin = line.data() + first;
        const char* end = line.data() + last + 1;
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc() || ptr != end) {
            std::ostringstream msg;
            msg << "zero table line " << lineno << ": cannot parse '" << line.substr(first, last - first + 1) << "'";
            throw ParseError(msg.str());
        }
        if (!(v > 0.0)) {
            throw ParseError("zero table line " + std::to_string(lineno) + ": ordinate must be positive");
        }
        if (!values.empty() && !(v > prev)) {
            throw ParseError("zero table line " + std::to_string(lineno) + ": ordinates must be strictly increasing");
        }
        values.push_back(v);
        prev = v;
    }
    if (values.empty()) throw ParseError("zero table is empty");
    return ZeroTable(std::move(values));
}

ZeroTable load_zero_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open zero table '" + path.string() + "'");
    return load_zero_table(in);
}

}  // namespace qtl
