#include "udb/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace udb {

double distance(const Vec2& a, const Vec2& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

Mat2 rotation(double theta) {
    if (!std::isfinite(theta)) throw std::domain_error("rotation: non-finite angle");
    const double c = std::cos(theta), s = std::sin(theta);
    return {c, -s, s, c};
}

PointConfig moser_spindle(double t, double theta) {
    // Hinge at the origin; rhombus axes at +-psi around the bisector, where
    // 2 sqrt(3) sin(psi) = 1 puts the far tips at unit distance.
    const double psi = std::asin(1.0 / (2.0 * std::sqrt(3.0)));
    const double sixth = std::acos(-1.0) / 6.0;

    PointConfig g;
    g.points.push_back({0.0, 0.0});
    for (double side : {+1.0, -1.0}) {
        const double axis = kSpindleBaseAngle + side * psi;
        const Vec2 u{std::cos(axis + sixth), std::sin(axis + sixth)};
        const Vec2 v{std::cos(axis - sixth), std::sin(axis - sixth)};
        g.points.push_back(u);
        g.points.push_back(v);
        g.points.push_back({u.x + v.x, u.y + v.y});  // far tip
    }

    const Mat2 r = rotation(theta);
    for (Vec2& p : g.points) {
        p = r.apply(p);
        p.x += t;
    }
    std::ostringstream label;
    label << "spindle(" << t << "," << theta << ")";
    g.label = label.str();
    return g;
}

UnitDistanceGraph unit_distance_graph(const PointConfig& config, double tolerance) {
    if (!(tolerance >= 0.0 && tolerance <= 0.01))
        throw std::domain_error("unit_distance_graph: tolerance must be in [0, 0.01]");
    UnitDistanceGraph g;
    g.vertices = config;
    g.tolerance = tolerance;
    const int n = (int)config.points.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::fabs(distance(config.points[i], config.points[j]) - 1.0) <= tolerance)
                g.edges.emplace_back(i, j);
    return g;
}

namespace {

// Branch and bound on the adjacency bitmask: pick the lowest remaining
// vertex, branch on excluding/including it.
int mis_recurse(uint64_t candidates, const std::vector<uint64_t>& adj, int current, int best) {
    while (candidates != 0) {
        const int remaining = __builtin_popcountll(candidates);
        if (current + remaining <= best) return best;
        const int v = __builtin_ctzll(candidates);
        const uint64_t bit = 1ULL << v;
        // include v
        best = std::max(best, mis_recurse(candidates & ~(adj[v] | bit), adj, current + 1, best));
        // exclude v and continue in-place
        candidates &= ~bit;
    }
    return std::max(best, current);
}

}  // namespace

int independence_number(const UnitDistanceGraph& graph) {
    const int n = (int)graph.vertices.points.size();
    if (n > kIndependenceBudget)
        throw std::length_error("independence_number: vertex count exceeds search budget");
    if (n == 0) return 0;
    std::vector<uint64_t> adj(n, 0);
    for (auto [i, j] : graph.edges) {
        if (i < 0 || j < 0 || i >= n || j >= n || i == j)
            throw std::invalid_argument("independence_number: bad edge");
        adj[i] |= 1ULL << j;
        adj[j] |= 1ULL << i;
    }
    const uint64_t all = (n == 64) ? ~0ULL : ((1ULL << n) - 1);
    return mis_recurse(all, adj, 0, 0);
}

std::vector<PairDistance> pair_distances(const PointConfig& config) {
    std::vector<PairDistance> out;
    const int n = (int)config.points.size();
    out.reserve((size_t)n * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            out.push_back({i, j, distance(config.points[i], config.points[j])});
    return out;
}

PointConfig read_point_config(std::istream& in, std::string label) {
    PointConfig config;
    config.label = std::move(label);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        double x, y;
        if (!(ls >> x >> y))
            throw std::runtime_error("point config: parse error at line " + std::to_string(lineno));
        if (!std::isfinite(x) || !std::isfinite(y))
            throw std::runtime_error("point config: non-finite coordinate at line " +
                                     std::to_string(lineno));
        config.points.push_back({x, y});
    }
    return config;
}

void write_point_config(std::ostream& out, const PointConfig& config) {
    if (!config.label.empty()) out << "# " << config.label << "\n";
    out.precision(17);
    for (const Vec2& p : config.points) out << p.x << " " << p.y << "\n";
}

}  // namespace udb
