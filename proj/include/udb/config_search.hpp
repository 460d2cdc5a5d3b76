#pragma once

#include <cstdint>

#include "udb/geometry.hpp"
#include "udb/radial_profile.hpp"

// Cut generation: search for N-point configurations (origin pinned) that
// minimize sum_t kappa~(t) sum_{pairs} J0(t ||x-y||), the left-hand side of
// the inclusion-exclusion row.

namespace udb {

// The double sum over the profile support and all point pairs.
double ie_objective(const RadialProfile& kappa, const PointConfig& config);

namespace detail {
// Analytic gradient with respect to the free points (all but index 0),
// via dJ0(u)/du = -J1(u). grad has 2*(n-1) entries: x1, y1, x2, y2, ...
void ie_gradient(const RadialProfile& kappa, const PointConfig& config, double* grad);
}  // namespace detail

struct SearchResult {
    PointConfig config;   // exactly n points, first is the origin
    double objective = 0.0;
    bool violated = false;
    int restarts_used = 0;
};

// Multistart gradient descent with Armijo backtracking. Restarts draw the
// free points uniformly from the disk of radius 2; runs are independent and
// deterministic in (seed, restart index); ties pick the lowest restart index.
// When delta > 0 the result is flagged against the inclusion-exclusion
// right-hand side at that delta.
SearchResult minimize_config(const RadialProfile& kappa, int n_points, int restarts,
                             std::uint64_t seed, double delta = 0.0, int chung_m = 1);

// true iff ie_objective < m|C| - C(m+1,2)/delta - 1e-9
bool violation_check(const RadialProfile& kappa, const PointConfig& config, double delta,
                     int chung_m = 1);

}  // namespace udb
