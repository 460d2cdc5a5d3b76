#pragma once

#include <string>
#include <vector>

#include "udb/certificate.hpp"
#include "udb/geometry.hpp"
#include "udb/radial_profile.hpp"

// Discretized linear program for the normalized autocorrelation variables:
//   max  kappa~(0)
//   s.t. sum_t kappa~(t)                     = 1
//        sum_t kappa~(t) J0(t)               = 0
//        sum_t kappa~(t) sum_x J0(t ||x||)  <= alpha(G)        per graph
//        sum_t kappa~(t) sum_p J0(t ||x-y||) >= m|C| - C(m+1,2)/delta  per config
//        kappa~ >= 0  on the grid {k eps : 0 <= k eps <= L}.

namespace udb {

enum class RowKind { Equal, LessEqual, GreaterEqual };

struct LPRow {
    RowKind kind;
    double rhs;
    std::string label;
};

struct DiscretizedLP {
    std::vector<double> grid;    // column t values, grid[0] == 0 carries the objective
    std::vector<LPRow> rows;     // 2 + |graphs| + |configs|
    std::vector<double> matrix;  // rows x grid, row-major
    double delta = 0.0;
    int chung_m = 1;
    int n_graphs = 0;
    int n_configs = 0;
    std::vector<int> config_sizes;

    double coeff(int r, std::size_t c) const { return matrix[(std::size_t)r * grid.size() + c]; }
};

DiscretizedLP build_lp(double delta, const std::vector<UnitDistanceGraph>& graphs,
                       const std::vector<PointConfig>& configs, double L, double epsilon,
                       int chung_m = 1);

// Config right-hand sides depend on delta only; everything else is reused.
void set_lp_delta(DiscretizedLP& lp, double delta);

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPSolution {
    LPStatus status = LPStatus::Infeasible;
    double objective_value = 0.0;
    RadialProfile primal;              // nonzero kappa~ entries
    std::vector<double> duals;         // one multiplier per row
    double max_primal_residual = 0.0;
    double duality_gap = 0.0;
};

// Dense two-phase revised simplex; the per-iteration pricing pass scans every
// grid column. Infeasible/unbounded come back as status, not exceptions.
LPSolution solve_lp(const DiscretizedLP& lp);

struct FixedPointResult {
    double delta = 0.0;
    LPSolution solution;
};

// Bisection for sup kappa~(0) = delta. The map is non-increasing in delta
// (config rows tighten as delta grows; past some threshold the LP may become
// infeasible, which counts as sup = -inf). With no configs the map is
// constant and a single solve decides. Throws std::runtime_error when 60
// bisection steps cannot reach `tolerance`.
FixedPointResult fixed_point_delta(const std::vector<UnitDistanceGraph>& graphs,
                                   const std::vector<PointConfig>& configs, double L,
                                   double epsilon, int chung_m, double tolerance);

// Dual multipliers as a witness certificate: mass row -> v0, J0 row -> v1,
// graph rows -> w_G, config rows -> z_C. Signs outside solver tolerance
// indicate a convention bug and throw std::runtime_error.
Certificate extract_certificate(const DiscretizedLP& lp, const LPSolution& solution,
                                const std::vector<UnitDistanceGraph>& graphs,
                                const std::vector<PointConfig>& configs);

}  // namespace udb
