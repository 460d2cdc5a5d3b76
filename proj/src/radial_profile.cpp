#include "udb/radial_profile.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace udb {

double RadialProfile::mass() const {
    double sum = 0.0;
    for (const auto& [t, v] : support) sum += v;
    return sum;
}

RadialProfile read_radial_profile(std::istream& in) {
    RadialProfile profile;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        double t, v;
        if (!(ls >> t >> v))
            throw std::runtime_error("radial profile: parse error at line " + std::to_string(lineno));
        if (!std::isfinite(t) || t < 0.0 || !std::isfinite(v) || v < 0.0)
            throw std::runtime_error("radial profile: t and value must be finite and >= 0 (line " +
                                     std::to_string(lineno) + ")");
        profile.support.emplace_back(t, v);
    }
    return profile;
}

void write_radial_profile(std::ostream& out, const RadialProfile& profile) {
    out.precision(17);
    for (const auto& [t, v] : profile.support) out << t << " " << v << "\n";
}

}  // namespace udb
