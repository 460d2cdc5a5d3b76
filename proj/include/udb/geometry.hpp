#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

// Planar point configurations, unit-distance graphs, and exact independence
// numbers for small graphs.

namespace udb {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

double distance(const Vec2& a, const Vec2& b);

// Column-action 2x2 matrix ((a, b), (c, d)).
struct Mat2 {
    double a = 1.0, b = 0.0;
    double c = 0.0, d = 1.0;
    Vec2 apply(const Vec2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
};

Mat2 rotation(double theta);

struct PointConfig {
    std::vector<Vec2> points;
    std::string label;
};

struct UnitDistanceGraph {
    PointConfig vertices;
    std::vector<std::pair<int, int>> edges;  // i < j, | dist - 1 | <= tolerance
    double tolerance = 1e-9;
};

constexpr double kEdgeTolerance = 1e-9;
constexpr int kIndependenceBudget = 30;

// The Moser spindle placed as (t, 0) + R(theta) G, where G is the canonical
// spindle: two unit rhombi (each a pair of unit equilateral triangles) hinged
// at the origin, opened so the far tips are at distance exactly 1, the whole
// frame rotated by kSpindleBaseAngle. The base angle is a convention of the
// (t, theta) graph parametrization used in certificate files; bundled
// certificates depend on it.
constexpr double kSpindleBaseAngle = 0.949929024770;
PointConfig moser_spindle(double t, double theta);

// Edges are exactly the pairs with | ||p_i-p_j|| - 1 | <= tolerance.
// tolerance must lie in [0, 0.01].
UnitDistanceGraph unit_distance_graph(const PointConfig& config, double tolerance = kEdgeTolerance);

// Exact alpha(G) by branch and bound; throws std::length_error above
// kIndependenceBudget vertices.
int independence_number(const UnitDistanceGraph& graph);

struct PairDistance {
    int i, j;
    double dist;
};

// All |C|(|C|-1)/2 unordered pairs with Euclidean distances.
std::vector<PairDistance> pair_distances(const PointConfig& config);

// Text format: one "x y" pair per line, '#' starts a comment line.
PointConfig read_point_config(std::istream& in, std::string label = "");
void write_point_config(std::ostream& out, const PointConfig& config);

}  // namespace udb
