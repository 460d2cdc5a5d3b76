#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "udb/geometry.hpp"

// Witness-function certificates W(t) = v0 + v1 Omega_n(t)
//   + sum_G w_G sum_{x in V(G)} Omega_n(t ||x||)
//   - sum_C z_C sum_{{x,y} in C choose 2} Omega_n(t ||x-y||)
// and the verification pipeline that turns one into a density bound delta.

namespace udb {

struct WeightedGraph {
    UnitDistanceGraph graph;
    double weight = 0.0;  // w_G >= 0
};

struct WeightedConfig {
    PointConfig config;   // contains the origin
    double weight = 0.0;  // z_C >= 0
};

struct Certificate {
    int dimension = 2;
    double v0 = 0.0;
    double v1 = 0.0;
    std::vector<WeightedGraph> graphs;
    std::vector<WeightedConfig> configs;
    int chung_m = 1;
};

// The witness collapsed to constant + sum_j coef_j * Omega_n(scale_j * t).
// Zero-scale terms (graph vertices at the origin) fold into the constant.
struct FlatWitness {
    int dimension = 2;
    double constant = 0.0;
    std::vector<double> coefs;
    std::vector<double> scales;

    static FlatWitness build(const Certificate& cert);
    double operator()(double t) const;
    double value_at_zero() const;  // long-double sum, exact Omega(0) = 1
};

double witness_value(const Certificate& cert, double t);

// (1/sqrt 2)(|v1| + sum_G w_G sum ||x|| + sum_C z_C sum ||x-y||); a global
// bound on |phi'| via |J1| <= 1/sqrt 2 and dJ0/dt = -J1. Dimension-2 only.
double derivative_bound(const Certificate& cert);

// Upper bound M on |phi(t) - constant| valid for all t >= L, summing
// |coef| * j0_envelope(L * scale) per term (bound 1 when the envelope is not
// available yet).
double tail_bound(const Certificate& cert, double L);

struct GridMinimum {
    double min_value;
    double argmin;
};

// Minimum of phi over the sample grid {k * epsilon/derivative_bound} on
// [0, L]. Plateau regions provably above the running minimum (by the
// Lipschitz bound) are skipped without evaluating their interior, which does
// not change the result: the true minimum of phi on [0, L] is always
// >= min_value - epsilon.
GridMinimum grid_minimum(const Certificate& cert, double L, double epsilon);

Certificate adjust_slack(const Certificate& cert, double slack);

// Positive root of delta^2 = delta A + B with
//   A = v0 + sum w_G alpha(G) - sum z_C m |C|,  B = sum z_C m(m+1)/2.
// alpha(G) is recomputed here, never trusted from input data.
double solve_delta(const Certificate& cert);

struct CheckRecord {
    std::string stage;
    bool passed = false;
    double value = 0.0;
    std::string detail;
};

struct VerifiedBound {
    double delta = 0.0;
    double tail_start = 0.0;   // L
    double tail_margin = 0.0;  // v0_eff - M
    double grid_step = 0.0;
    double grid_min = 0.0;
    double v0_slack = 0.0;
    std::vector<CheckRecord> transcript;
};

// Thrown when a verification stage fails; names the stage.
struct VerificationError : std::runtime_error {
    explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

constexpr double kMaxSlack = 0.01;

// Pipeline: phi(0) >= 1, tail bound at L, grid minimum on [0, L], slack
// adjustment (capped at kMaxSlack), quadratic root. Throws VerificationError
// naming the failed stage; on success every transcript record passed.
VerifiedBound verify(const Certificate& cert, double L = 780.0, double epsilon = 1e-4);

// JSON certificate files. Graph entries are either {"t","theta","weight"}
// spindle placements or {"points",...}; configs get an implicit origin when
// none of their points is at it. Parse or validation problems throw
// CertificateFormatError.
struct CertificateFormatError : std::runtime_error {
    explicit CertificateFormatError(const std::string& what) : std::runtime_error(what) {}
};

Certificate read_certificate(std::istream& in);
Certificate load_certificate(const std::string& path);
void write_certificate(std::ostream& out, const Certificate& cert);

}  // namespace udb
