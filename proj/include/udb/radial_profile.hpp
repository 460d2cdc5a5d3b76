#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

namespace udb {

// Finitely supported nonnegative kappa~ on a frequency grid: the LP variable
// vector, kept as its nonzero support.
struct RadialProfile {
    std::vector<std::pair<double, double>> support;  // (t, value), t increasing

    double mass() const;
};

// Text format: one "t value" pair per line, '#' comments.
RadialProfile read_radial_profile(std::istream& in);
void write_radial_profile(std::ostream& out, const RadialProfile& profile);

}  // namespace udb
