#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "udb/geometry.hpp"

using namespace udb;

namespace {

// brute-force maximum independent set over all subsets
int naive_alpha(const UnitDistanceGraph& g) {
    const int n = (int)g.vertices.points.size();
    int best = 0;
    for (int mask = 0; mask < (1 << n); ++mask) {
        bool ok = true;
        for (auto [i, j] : g.edges)
            if ((mask >> i & 1) && (mask >> j & 1)) {
                ok = false;
                break;
            }
        if (ok) best = std::max(best, __builtin_popcount(mask));
    }
    return best;
}

PointConfig triangle() {
    PointConfig c;
    c.points = {{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}};
    c.label = "triangle";
    return c;
}

std::vector<double> sorted_norms(const PointConfig& c) {
    std::vector<double> out;
    for (const Vec2& p : c.points) out.push_back(std::hypot(p.x, p.y));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("rotation matrices") {
    const Mat2 id = rotation(0.0);
    CHECK(id.a == 1.0);
    CHECK(id.b == 0.0);
    const Mat2 quarter = rotation(std::acos(-1.0) / 2.0);
    CHECK(quarter.a == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(quarter.b == doctest::Approx(-1.0));
    CHECK(quarter.c == doctest::Approx(1.0));

    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    for (int i = 0; i < 100; ++i) {
        const Mat2 r = rotation(dist(rng));
        // R^T R = I
        CHECK(r.a * r.a + r.c * r.c == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(r.b * r.b + r.d * r.d == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(r.a * r.b + r.c * r.d == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(r.a * r.d - r.b * r.c == doctest::Approx(1.0).epsilon(1e-14));  // det 1
    }
}

TEST_CASE("moser spindle construction") {
    const PointConfig g0 = moser_spindle(0.0, 0.0);
    REQUIRE(g0.points.size() == 7);
    const UnitDistanceGraph graph = unit_distance_graph(g0, 1e-9);
    CHECK(graph.edges.size() == 11);
    CHECK(std::hypot(g0.points[0].x, g0.points[0].y) == 0.0);  // hinge at origin

    // congruence: pairwise distances invariant in (t, theta)
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    const auto base_pd = pair_distances(g0);
    for (int i = 0; i < 20; ++i) {
        const PointConfig moved = moser_spindle(dist(rng), dist(rng));
        const auto pd = pair_distances(moved);
        for (size_t k = 0; k < pd.size(); ++k)
            CHECK(pd[k].dist == doctest::Approx(base_pd[k].dist).epsilon(1e-12));
    }

    // the certificate's first graph: frozen vertex-norm multiset
    const PointConfig g1 = moser_spindle(0.4, 5.4);
    const std::vector<double> expect = {0.4,
                                        1.291415629022,
                                        1.321179717201,
                                        1.387392485232,
                                        1.396160480299,
                                        2.111165179144,
                                        2.123764053096};
    const std::vector<double> got = sorted_norms(g1);
    REQUIRE(got.size() == expect.size());
    for (size_t k = 0; k < got.size(); ++k)
        CHECK(got[k] == doctest::Approx(expect[k]).epsilon(1e-9));
}

TEST_CASE("unit distance graph edges") {
    CHECK(unit_distance_graph(triangle(), 1e-9).edges.size() == 3);

    PointConfig two;
    two.points = {{0.0, 0.0}, {2.0, 0.0}};
    CHECK(unit_distance_graph(two, 1e-9).edges.empty());

    PointConfig close;
    close.points = {{0.0, 0.0}, {1.0 + 5e-3, 0.0}};
    CHECK(unit_distance_graph(close, 1e-2).edges.size() == 1);
    CHECK(unit_distance_graph(close, 1e-9).edges.empty());

    CHECK_THROWS_AS(unit_distance_graph(two, 0.5), std::domain_error);
    CHECK_THROWS_AS(unit_distance_graph(two, -1e-3), std::domain_error);
}

TEST_CASE("independence numbers") {
    CHECK(independence_number(unit_distance_graph(triangle())) == 1);
    CHECK(independence_number(unit_distance_graph(moser_spindle(0.0, 0.0))) == 2);

    UnitDistanceGraph empty5;
    empty5.vertices.points.resize(5);
    CHECK(independence_number(empty5) == 5);

    UnitDistanceGraph big;
    big.vertices.points.resize(31);
    CHECK_THROWS_AS(independence_number(big), std::length_error);

    // against the subset scan on random graphs
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        std::uniform_int_distribution<int> nv(1, 12);
        const int n = nv(rng);
        UnitDistanceGraph g;
        g.vertices.points.resize(n);
        std::uniform_real_distribution<double> p(0.0, 1.0);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (p(rng) < 0.35) g.edges.emplace_back(i, j);
        CHECK(independence_number(g) == naive_alpha(g));
    }
}

TEST_CASE("alpha is additive over disjoint unions") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        std::uniform_real_distribution<double> shift(40.0, 80.0);
        const PointConfig a = moser_spindle(0.0, 0.0);
        PointConfig b = triangle();
        for (Vec2& p : b.points) p.x += shift(rng);  // far away: no cross edges
        PointConfig both = a;
        for (const Vec2& p : b.points) both.points.push_back(p);
        const int alpha_union = independence_number(unit_distance_graph(both));
        CHECK(alpha_union == independence_number(unit_distance_graph(a)) +
                                 independence_number(unit_distance_graph(b)));
    }
}

TEST_CASE("pair distances") {
    PointConfig six;
    six.points.resize(6);
    for (int i = 0; i < 6; ++i) six.points[i] = {(double)i, 0.5 * i * i};
    CHECK(pair_distances(six).size() == 15);

    PointConfig one;
    one.points = {{3.0, 4.0}};
    CHECK(pair_distances(one).empty());
}

TEST_CASE("point config text round trip") {
    PointConfig c;
    c.points = {{0.125, -3.5}, {1e-9, 2.0 / 3.0}};
    c.label = "sample";
    std::ostringstream out;
    write_point_config(out, c);
    std::istringstream in(out.str() + "# trailing comment\n");
    const PointConfig back = read_point_config(in, "sample");
    REQUIRE(back.points.size() == 2);
    CHECK(back.points[0].x == c.points[0].x);
    CHECK(back.points[1].y == c.points[1].y);

    std::istringstream bad("1.0 not-a-number\n");
    CHECK_THROWS(read_point_config(bad));
}
