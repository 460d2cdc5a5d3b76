#pragma once

#include <cstdint>
#include <string>

// Lower-bound constructions: hexagonal disk packing, Croft's tortoise
// (disk of radius 1/2 meets a regular hexagon of height x, tiled with
// lattice scale 1+x), and the non-block scaled-integer-lattice example.

namespace udb {

// pi / (8 sqrt 3), the hexagonal packing of open unit-diameter disks.
double hex_disk_density();

// Area of the open disk of radius 1/2 intersected with the open regular
// hexagon of height x (inradius x/2) sharing its center. Requires 0 < x < 1.
double tortoise_area(double x);

// Density of the tortoise tiling at hexagon height x.
double tortoise_density(double x);

struct TortoiseOptimum {
    double x;
    double density;
};

// Golden-section maximization of tortoise_density over (0, 1).
TortoiseOptimum optimize_tortoise(double tolerance = 1e-10);

// Disks of radius (3-2 sqrt 2)/2 on the lattice (c Z)^2, c = 2 sqrt 2 - 2:
// adjacent disks come closer than 1, everything else stays farther than 1.
double nonblock_lattice_density();

enum class ConstructionKind { Hex, Tortoise, NonBlock };

struct AvoidanceReport {
    ConstructionKind kind;
    double parameter = 0.0;      // tortoise height when applicable
    long samples = 0;
    double within_max = 0.0;     // max sampled distance inside one block
    double cross_min = 0.0;      // min sampled distance across distinct blocks
    double adjacent_max = 0.0;   // nonblock only: max across adjacent disks
    bool adjacent_below_one = false;  // nonblock only
    bool passed = false;
    std::string message;
};

// Samples point pairs over a 5x5 patch of the lattice and checks the
// separation structure (strict inequalities with 1e-9 slack; the sets are
// open and samples are interior). Throws std::runtime_error naming the
// violating pair when a condition fails.
AvoidanceReport avoidance_audit(ConstructionKind kind, double x = 0.0, long samples = 100000,
                                std::uint64_t seed = 7);

}  // namespace udb
