#include "udb/constructions.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace udb {

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kSqrt3 = std::sqrt(3.0);

}  // namespace

double hex_disk_density() {
    return kPi / (8.0 * kSqrt3);
}

double tortoise_area(double x) {
    if (!(x > 0.0 && x < 1.0))
        throw std::domain_error("tortoise_area: x must lie in (0, 1)");
    const double r = 0.5;       // disk radius
    const double a = 0.5 * x;   // hexagon inradius
    if (x <= kSqrt3 / 2.0) {
        // hexagon circumradius x/sqrt3 <= r: hexagon inside the disk
        return 0.5 * kSqrt3 * x * x;
    }
    // Disk minus the six circular segments beyond the hexagon sides. The
    // segments are disjoint exactly when arccos(a/r) = arccos(x) <= pi/6,
    // i.e. x >= sqrt3/2, which holds on this branch.
    const double segment = r * r * std::acos(x) - a * std::sqrt(r * r - a * a);
    return kPi * r * r - 6.0 * segment;
}

double tortoise_density(double x) {
    // hexagonal lattice with minimal vectors 1+x; cell area (sqrt3/2)(1+x)^2
    return tortoise_area(x) / (0.5 * kSqrt3 * (1.0 + x) * (1.0 + x));
}

TortoiseOptimum optimize_tortoise(double tolerance) {
    if (!(tolerance >= 1e-14)) throw std::domain_error("optimize_tortoise: bad tolerance");
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 1e-9, hi = 1.0 - 1e-12;
    double c = hi - invphi * (hi - lo), d = lo + invphi * (hi - lo);
    double fc = tortoise_density(c), fd = tortoise_density(d);
    while (hi - lo > tolerance) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - invphi * (hi - lo);
            fc = tortoise_density(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + invphi * (hi - lo);
            fd = tortoise_density(d);
        }
    }
    const double x = 0.5 * (lo + hi);
    return {x, tortoise_density(x)};
}

double nonblock_lattice_density() {
    const double c = 2.0 * std::sqrt(2.0) - 2.0;
    const double r = (3.0 - 2.0 * std::sqrt(2.0)) / 2.0;
    return r * r * kPi / (c * c);
}

namespace {

struct Lattice {
    double ux, uy, vx, vy;  // basis vectors
};

// per-sample RNG stream: the audit result does not depend on how samples are
// partitioned across workers
std::mt19937_64 stream(std::uint64_t seed, long index) {
    std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (std::uint64_t)(index + 1));
    s ^= s >> 33;
    return std::mt19937_64(s);
}

struct BlockSampler {
    ConstructionKind kind;
    double x = 0.0;       // tortoise height
    double radius = 0.5;  // disk radius of the block shape

    bool inside(double px, double py) const {
        if (px * px + py * py >= radius * radius) return false;
        if (kind != ConstructionKind::Tortoise) return true;
        // open hexagon, flat sides perpendicular to the lattice directions
        for (int k = 0; k < 3; ++k) {
            const double ang = kPi * k / 3.0;
            const double proj = px * std::cos(ang) + py * std::sin(ang);
            if (std::fabs(proj) >= 0.5 * x) return false;
        }
        return true;
    }

    void sample(std::mt19937_64& rng, double& px, double& py) const {
        std::uniform_real_distribution<double> u(-radius, radius);
        do {
            px = u(rng);
            py = u(rng);
        } while (!inside(px, py));
    }
};

}  // namespace

AvoidanceReport avoidance_audit(ConstructionKind kind, double x, long samples,
                                std::uint64_t seed) {
    if (samples < 1000) throw std::domain_error("avoidance_audit: too few samples");

    AvoidanceReport report;
    report.kind = kind;
    report.parameter = x;
    report.samples = samples;

    Lattice lat{};
    BlockSampler block{kind, x, 0.5};
    switch (kind) {
        case ConstructionKind::Hex:
            lat = {2.0, 0.0, 1.0, kSqrt3};
            break;
        case ConstructionKind::Tortoise: {
            if (!(x > 0.0 && x < 1.0))
                throw std::domain_error("avoidance_audit: tortoise needs x in (0, 1)");
            const double s = 1.0 + x;
            lat = {s, 0.0, 0.5 * s, 0.5 * kSqrt3 * s};
            break;
        }
        case ConstructionKind::NonBlock: {
            const double c = 2.0 * std::sqrt(2.0) - 2.0;
            lat = {c, 0.0, 0.0, c};
            block.radius = (3.0 - 2.0 * std::sqrt(2.0)) / 2.0;
            break;
        }
    }

    double within_max = 0.0;
    double cross_min = 1e300;
    double adjacent_max = 0.0, adjacent_min = 1e300;
    double worst_pair[4] = {0, 0, 0, 0};

    for (long s = 0; s < samples; ++s) {
        auto rng = stream(seed, s);
        std::uniform_int_distribution<int> cell(-2, 2);
        const int i1 = cell(rng), j1 = cell(rng), i2 = cell(rng), j2 = cell(rng);
        double p1x, p1y, p2x, p2y;
        block.sample(rng, p1x, p1y);
        block.sample(rng, p2x, p2y);
        p1x += i1 * lat.ux + j1 * lat.vx;
        p1y += i1 * lat.uy + j1 * lat.vy;
        p2x += i2 * lat.ux + j2 * lat.vx;
        p2y += i2 * lat.uy + j2 * lat.vy;
        const double d = std::hypot(p1x - p2x, p1y - p2y);

        if (i1 == i2 && j1 == j2) {
            if (d > within_max) within_max = d;
            continue;
        }
        const int di = i1 - i2, dj = j1 - j2;
        if (kind == ConstructionKind::NonBlock && std::abs(di) + std::abs(dj) == 1) {
            // 4-neighbors of the integer lattice: the deliberately close pairs
            if (d > adjacent_max) adjacent_max = d;
            if (d < adjacent_min) adjacent_min = d;
            continue;
        }
        if (d < cross_min) {
            cross_min = d;
            worst_pair[0] = p1x;
            worst_pair[1] = p1y;
            worst_pair[2] = p2x;
            worst_pair[3] = p2y;
        }
    }

    report.within_max = within_max;
    report.cross_min = cross_min;
    report.adjacent_max = adjacent_max;
    report.adjacent_below_one = adjacent_max > 0.0 && adjacent_max < 1.0;

    std::ostringstream msg;
    const double slack = 1e-9;
    bool ok = within_max < 1.0 + slack && cross_min > 1.0 - slack;
    if (kind == ConstructionKind::NonBlock) {
        // the defining feature: adjacent disks DO come closer than 1
        ok = ok && adjacent_max < 1.0 + slack && adjacent_min < 1.0;
        msg << "nonblock: within_max " << within_max << ", adjacent range [" << adjacent_min
            << ", " << adjacent_max << "], nonadjacent min " << cross_min;
    } else {
        msg << (kind == ConstructionKind::Hex ? "hex" : "tortoise") << ": within_max "
            << within_max << ", cross_min " << cross_min;
    }
    report.message = msg.str();
    report.passed = ok;
    if (!ok) {
        std::ostringstream err;
        err << "avoidance_audit failed: " << report.message << "; offending pair ("
            << worst_pair[0] << ", " << worst_pair[1] << ") - (" << worst_pair[2] << ", "
            << worst_pair[3] << ")";
        throw std::runtime_error(err.str());
    }
    return report;
}

}  // namespace udb
