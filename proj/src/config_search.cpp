#include "udb/config_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "udb/bessel.hpp"

namespace udb {

double ie_objective(const RadialProfile& kappa, const PointConfig& config) {
    double total = 0.0;
    for (const auto& [t, k] : kappa.support) {
        if (!(k >= 0.0)) throw std::domain_error("ie_objective: kappa must be nonnegative");
        double inner = 0.0;
        for (const PairDistance& pd : pair_distances(config))
            inner += bessel_j0(t * pd.dist).value;
        total += k * inner;
    }
    return total;
}

namespace detail {

void ie_gradient(const RadialProfile& kappa, const PointConfig& config, double* grad) {
    const int n = (int)config.points.size();
    std::fill(grad, grad + 2 * (n - 1), 0.0);
    for (const auto& [t, k] : kappa.support) {
        if (k == 0.0) continue;
        for (int i = 1; i < n; ++i) {
            double gx = 0.0, gy = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                const double dx = config.points[i].x - config.points[j].x;
                const double dy = config.points[i].y - config.points[j].y;
                const double d = std::hypot(dx, dy);
                if (d == 0.0) continue;  // J1(0) = 0 limit
                const double f = -t * bessel_j1(t * d).value / d;
                gx += f * dx;
                gy += f * dy;
            }
            grad[2 * (i - 1)] += k * gx;
            grad[2 * (i - 1) + 1] += k * gy;
        }
    }
}

}  // namespace detail

namespace {

double descend(const RadialProfile& kappa, PointConfig& config) {
    const int n = (int)config.points.size();
    const int dims = 2 * (n - 1);
    std::vector<double> grad(dims);
    double value = ie_objective(kappa, config);
    double step = 0.1;
    for (int iter = 0; iter < 500; ++iter) {
        detail::ie_gradient(kappa, config, grad.data());
        double norm2 = 0.0;
        for (double g : grad) norm2 += g * g;
        if (std::sqrt(norm2) <= 1e-7) break;

        // Armijo backtracking along -grad
        bool moved = false;
        for (int bt = 0; bt < 40; ++bt) {
            PointConfig trial = config;
            for (int i = 1; i < n; ++i) {
                trial.points[i].x -= step * grad[2 * (i - 1)];
                trial.points[i].y -= step * grad[2 * (i - 1) + 1];
            }
            const double trial_value = ie_objective(kappa, trial);
            if (trial_value <= value - 1e-4 * step * norm2) {
                config = std::move(trial);
                value = trial_value;
                step *= 2.0;  // be greedier next time
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
    }
    return value;
}

}  // namespace

SearchResult minimize_config(const RadialProfile& kappa, int n_points, int restarts,
                             std::uint64_t seed, double delta, int chung_m) {
    if (n_points < 2) throw std::domain_error("minimize_config: need at least 2 points");
    if (restarts < 1) throw std::domain_error("minimize_config: need at least 1 restart");

    SearchResult best;
    best.objective = std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
        std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (std::uint64_t)(r + 1));
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        PointConfig config;
        config.points.push_back({0.0, 0.0});
        while ((int)config.points.size() < n_points) {
            const double x = 2.0 * unit(rng), y = 2.0 * unit(rng);
            if (x * x + y * y <= 4.0) config.points.push_back({x, y});
        }
        const double value = descend(kappa, config);
        if (value < best.objective) {  // ties keep the earlier restart
            best.objective = value;
            best.config = std::move(config);
            best.restarts_used = r + 1;
        }
    }
    best.config.label = "search";
    best.violated = delta > 0.0 && violation_check(kappa, best.config, delta, chung_m);
    return best;
}

bool violation_check(const RadialProfile& kappa, const PointConfig& config, double delta,
                     int chung_m) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::domain_error("violation_check: delta must lie in (0, 1)");
    if (chung_m < 1) throw std::domain_error("violation_check: chung_m must be >= 1");
    const double rhs = (double)chung_m * config.points.size() -
                       0.5 * chung_m * (chung_m + 1) / delta;
    return ie_objective(kappa, config) < rhs - 1e-9;
}

}  // namespace udb
