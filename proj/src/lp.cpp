#include "udb/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "udb/bessel.hpp"
#include "udb/parallel.hpp"

namespace udb {

namespace {

constexpr double kReducedCostTol = 1e-9;
constexpr double kPivotTol = 1e-11;
constexpr double kPhase1Tol = 1e-7;
constexpr int kRefactorEvery = 64;
constexpr int kStallLimit = 200;
constexpr int kMaxIters = 50000;

double config_rhs(int m, int csize, double delta) {
    return (double)m * csize - 0.5 * m * (m + 1) / delta;
}

// Dense two-phase revised simplex on
//   max c.x  s.t.  A x {<=,=,>=} b,  x >= 0,
// with rows pre-negated so b >= 0. Basis inverse kept explicitly (row count
// is tiny); pricing scans all structural columns.
class Simplex {
public:
    explicit Simplex(const DiscretizedLP& lp) : lp_(lp) {
        m_ = (int)lp.rows.size();
        nstruct_ = (int)lp.grid.size();
        a_.assign((size_t)m_ * nstruct_, 0.0);
        b_.resize(m_);
        flip_.resize(m_);
        kind_.resize(m_);
        for (int i = 0; i < m_; ++i) {
            const double rhs = lp.rows[i].rhs;
            const bool neg = rhs < 0.0;
            flip_[i] = neg ? -1.0 : 1.0;
            b_[i] = neg ? -rhs : rhs;
            RowKind k = lp.rows[i].kind;
            if (neg) {
                if (k == RowKind::LessEqual) k = RowKind::GreaterEqual;
                else if (k == RowKind::GreaterEqual) k = RowKind::LessEqual;
            }
            kind_[i] = k;
            const double* src = &lp.matrix[(size_t)i * nstruct_];
            double* dst = &a_[(size_t)i * nstruct_];
            for (int j = 0; j < nstruct_; ++j) dst[j] = flip_[i] * src[j];
        }
        // slack/surplus variables
        slack_row_.clear();
        slack_sign_.clear();
        row_slack_.assign(m_, -1);
        for (int i = 0; i < m_; ++i) {
            if (kind_[i] == RowKind::Equal) continue;
            row_slack_[i] = nstruct_ + (int)slack_row_.size();
            slack_row_.push_back(i);
            slack_sign_.push_back(kind_[i] == RowKind::LessEqual ? 1.0 : -1.0);
        }
        nslack_ = (int)slack_row_.size();
        // artificials where the slack cannot start basic
        art_row_.clear();
        row_art_.assign(m_, -1);
        for (int i = 0; i < m_; ++i) {
            if (kind_[i] == RowKind::LessEqual) continue;
            row_art_[i] = nstruct_ + nslack_ + (int)art_row_.size();
            art_row_.push_back(i);
        }
        nart_ = (int)art_row_.size();
        ntotal_ = nstruct_ + nslack_ + nart_;
    }

    LPSolution run() {
        LPSolution out;
        basis_.resize(m_);
        is_basic_.assign(ntotal_, 0);
        for (int i = 0; i < m_; ++i) {
            basis_[i] = (kind_[i] == RowKind::LessEqual) ? row_slack_[i] : row_art_[i];
            is_basic_[basis_[i]] = 1;
        }
        binv_.assign((size_t)m_ * m_, 0.0);
        for (int i = 0; i < m_; ++i) binv_[(size_t)i * m_ + i] = 1.0;
        xb_ = b_;

        if (nart_ > 0) {
            cost_.assign(ntotal_, 0.0);
            for (int k = 0; k < nart_; ++k) cost_[nstruct_ + nslack_ + k] = -1.0;
            if (!iterate()) throw std::runtime_error("solve_lp: phase 1 did not terminate");
            double art_level = 0.0;
            for (int i = 0; i < m_; ++i)
                if (basis_[i] >= nstruct_ + nslack_) art_level += xb_[i];
            if (art_level > kPhase1Tol) {
                out.status = LPStatus::Infeasible;
                return out;
            }
            drive_out_artificials();
        }

        cost_.assign(ntotal_, 0.0);
        cost_[0] = 1.0;  // kappa~(0): grid[0] == 0
        if (!iterate()) {
            out.status = LPStatus::Unbounded;
            return out;
        }
        refactorize();
        finish(out);
        return out;
    }

private:
    void column(int j, double* out) const {
        std::fill(out, out + m_, 0.0);
        if (j < nstruct_) {
            for (int i = 0; i < m_; ++i) out[i] = a_[(size_t)i * nstruct_ + j];
        } else if (j < nstruct_ + nslack_) {
            out[slack_row_[j - nstruct_]] = slack_sign_[j - nstruct_];
        } else {
            out[art_row_[j - nstruct_ - nslack_]] = 1.0;
        }
    }

    void refactorize() {
        // rebuild binv from the basis columns (Gauss-Jordan, partial pivoting)
        std::vector<double> mat((size_t)m_ * m_);
        std::vector<double> col(m_);
        for (int k = 0; k < m_; ++k) {
            column(basis_[k], col.data());
            for (int i = 0; i < m_; ++i) mat[(size_t)i * m_ + k] = col[i];
        }
        std::vector<double> inv((size_t)m_ * m_, 0.0);
        for (int i = 0; i < m_; ++i) inv[(size_t)i * m_ + i] = 1.0;
        for (int c = 0; c < m_; ++c) {
            int piv = c;
            for (int r = c + 1; r < m_; ++r)
                if (std::fabs(mat[(size_t)r * m_ + c]) > std::fabs(mat[(size_t)piv * m_ + c]))
                    piv = r;
            if (std::fabs(mat[(size_t)piv * m_ + c]) < 1e-14)
                throw std::runtime_error("solve_lp: singular basis");
            if (piv != c)
                for (int j = 0; j < m_; ++j) {
                    std::swap(mat[(size_t)piv * m_ + j], mat[(size_t)c * m_ + j]);
                    std::swap(inv[(size_t)piv * m_ + j], inv[(size_t)c * m_ + j]);
                }
            const double p = mat[(size_t)c * m_ + c];
            for (int j = 0; j < m_; ++j) {
                mat[(size_t)c * m_ + j] /= p;
                inv[(size_t)c * m_ + j] /= p;
            }
            for (int r = 0; r < m_; ++r) {
                if (r == c) continue;
                const double f = mat[(size_t)r * m_ + c];
                if (f == 0.0) continue;
                for (int j = 0; j < m_; ++j) {
                    mat[(size_t)r * m_ + j] -= f * mat[(size_t)c * m_ + j];
                    inv[(size_t)r * m_ + j] -= f * inv[(size_t)c * m_ + j];
                }
            }
        }
        binv_ = std::move(inv);
        // xb = binv b
        for (int i = 0; i < m_; ++i) {
            double s = 0.0;
            for (int k = 0; k < m_; ++k) s += binv_[(size_t)i * m_ + k] * b_[k];
            xb_[i] = s;
        }
    }

    double objective() const {
        double z = 0.0;
        for (int i = 0; i < m_; ++i) z += cost_[basis_[i]] * xb_[i];
        return z;
    }

    // one simplex phase; returns false on unboundedness
    bool iterate() {
        std::vector<double> y(m_), d(m_), zrow(nstruct_);
        int since_refactor = 0, stall = 0, iters = 0;
        bool bland = false;
        double best_obj = objective();
        while (true) {
            if (++iters > kMaxIters) throw std::runtime_error("solve_lp: iteration limit");
            // y = c_B binv
            for (int jj = 0; jj < m_; ++jj) {
                double s = 0.0;
                for (int i = 0; i < m_; ++i) s += cost_[basis_[i]] * binv_[(size_t)i * m_ + jj];
                y[jj] = s;
            }
            // reduced costs of structural columns: c_j - y.A_j
            for (int j = 0; j < nstruct_; ++j) zrow[j] = cost_[j];
            for (int i = 0; i < m_; ++i) {
                const double yi = y[i];
                if (yi == 0.0) continue;
                const double* row = &a_[(size_t)i * nstruct_];
                for (int j = 0; j < nstruct_; ++j) zrow[j] -= yi * row[j];
            }
            // entering column: Dantzig, or smallest improving index in Bland mode
            int enter = -1;
            double best_rc = kReducedCostTol;
            for (int j = 0; j < nstruct_ && !(bland && enter >= 0); ++j) {
                if (is_basic_[j]) continue;
                const double rc = zrow[j];
                if (rc > best_rc) {
                    best_rc = rc;
                    enter = j;
                }
            }
            for (int k = 0; k < nslack_ && !(bland && enter >= 0); ++k) {
                const int j = nstruct_ + k;
                if (is_basic_[j]) continue;
                const double rc = cost_[j] - slack_sign_[k] * y[slack_row_[k]];
                if (rc > best_rc) {
                    best_rc = rc;
                    enter = j;
                }
            }
            if (enter < 0) return true;  // optimal for this phase

            column(enter, d.data());
            // d = binv * a_enter
            {
                std::vector<double> tmp(m_, 0.0);
                for (int i = 0; i < m_; ++i) {
                    double s = 0.0;
                    const double* bi = &binv_[(size_t)i * m_];
                    for (int k = 0; k < m_; ++k) s += bi[k] * d[k];
                    tmp[i] = s;
                }
                d = std::move(tmp);
            }

            // ratio test; basic artificials also block so they can never rise
            int leave = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m_; ++i) {
                const bool art = basis_[i] >= nstruct_ + nslack_;
                double den = 0.0;
                if (d[i] > kPivotTol) den = d[i];
                else if (art && d[i] < -kPivotTol) den = -d[i];
                else continue;
                const double ratio = std::max(xb_[i], 0.0) / den;
                if (ratio < best_ratio - 1e-12 ||
                    (ratio < best_ratio + 1e-12 && leave >= 0 && basis_[i] < basis_[leave])) {
                    best_ratio = ratio;
                    leave = i;
                }
            }
            if (leave < 0) return false;  // unbounded direction

            // pivot
            const double piv = d[leave];
            double* br = &binv_[(size_t)leave * m_];
            for (int j = 0; j < m_; ++j) br[j] /= piv;
            xb_[leave] /= piv;
            for (int i = 0; i < m_; ++i) {
                if (i == leave || d[i] == 0.0) continue;
                const double f = d[i];
                double* bi = &binv_[(size_t)i * m_];
                for (int j = 0; j < m_; ++j) bi[j] -= f * br[j];
                xb_[i] -= f * xb_[leave];
            }
            is_basic_[basis_[leave]] = 0;
            basis_[leave] = enter;
            is_basic_[enter] = 1;

            if (++since_refactor >= kRefactorEvery) {
                refactorize();
                since_refactor = 0;
            }
            const double z = objective();
            if (z > best_obj + 1e-12) {
                best_obj = z;
                stall = 0;
            } else if (++stall > kStallLimit) {
                bland = true;  // anti-cycling from here on
            }
        }
    }

    void drive_out_artificials() {
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] < nstruct_ + nslack_) continue;
            // find any usable non-artificial column with nonzero transformed
            // entry in row i; the pivot happens at level ~0
            std::vector<double> col(m_), d(m_);
            int found = -1;
            for (int j = 0; j < nstruct_ + nslack_ && found < 0; ++j) {
                if (is_basic_[j]) continue;
                column(j, col.data());
                double s = 0.0;
                const double* bi = &binv_[(size_t)i * m_];
                for (int k = 0; k < m_; ++k) s += bi[k] * col[k];
                if (std::fabs(s) > 1e-9) found = j;
            }
            if (found < 0) continue;  // redundant row; artificial stays at zero
            column(found, col.data());
            for (int r = 0; r < m_; ++r) {
                double s = 0.0;
                const double* br = &binv_[(size_t)r * m_];
                for (int k = 0; k < m_; ++k) s += br[k] * col[k];
                d[r] = s;
            }
            const double piv = d[i];
            double* br = &binv_[(size_t)i * m_];
            for (int j = 0; j < m_; ++j) br[j] /= piv;
            xb_[i] /= piv;
            for (int r = 0; r < m_; ++r) {
                if (r == i || d[r] == 0.0) continue;
                const double f = d[r];
                double* b2 = &binv_[(size_t)r * m_];
                for (int j = 0; j < m_; ++j) b2[j] -= f * br[j];
                xb_[r] -= f * xb_[i];
            }
            is_basic_[basis_[i]] = 0;
            basis_[i] = found;
            is_basic_[found] = 1;
        }
    }

    void finish(LPSolution& out) const {
        std::vector<double> x(nstruct_, 0.0);
        for (int i = 0; i < m_; ++i)
            if (basis_[i] < nstruct_) x[basis_[i]] = std::max(xb_[i], 0.0);
        out.status = LPStatus::Optimal;
        out.objective_value = x[0];
        for (int j = 0; j < nstruct_; ++j)
            if (x[j] > 1e-12) out.primal.support.emplace_back(lp_.grid[j], x[j]);

        // duals in the original row orientation
        out.duals.assign(m_, 0.0);
        for (int jj = 0; jj < m_; ++jj) {
            double s = 0.0;
            for (int i = 0; i < m_; ++i) s += cost_[basis_[i]] * binv_[(size_t)i * m_ + jj];
            out.duals[jj] = flip_[jj] * s;
        }

        // primal residuals against the original rows
        double max_resid = 0.0;
        for (int i = 0; i < m_; ++i) {
            double ax = 0.0;
            const double* row = &lp_.matrix[(size_t)i * nstruct_];
            for (int j = 0; j < nstruct_; ++j) ax += row[j] * x[j];
            const double rhs = lp_.rows[i].rhs;
            double r = 0.0;
            switch (lp_.rows[i].kind) {
                case RowKind::Equal: r = std::fabs(ax - rhs); break;
                case RowKind::LessEqual: r = std::max(0.0, ax - rhs); break;
                case RowKind::GreaterEqual: r = std::max(0.0, rhs - ax); break;
            }
            max_resid = std::max(max_resid, r);
        }
        out.max_primal_residual = max_resid;
        double dual_obj = 0.0;
        for (int i = 0; i < m_; ++i) dual_obj += out.duals[i] * lp_.rows[i].rhs;
        out.duality_gap = std::fabs(dual_obj - out.objective_value);
    }

    const DiscretizedLP& lp_;
    int m_ = 0, nstruct_ = 0, nslack_ = 0, nart_ = 0, ntotal_ = 0;
    std::vector<double> a_, b_, flip_;
    std::vector<RowKind> kind_;
    std::vector<int> slack_row_, art_row_, row_slack_, row_art_;
    std::vector<double> slack_sign_;
    std::vector<int> basis_;
    std::vector<char> is_basic_;
    std::vector<double> binv_, xb_, cost_;
};

}  // namespace

DiscretizedLP build_lp(double delta, const std::vector<UnitDistanceGraph>& graphs,
                       const std::vector<PointConfig>& configs, double L, double epsilon,
                       int chung_m) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::domain_error("build_lp: delta must lie in (0, 1)");
    if (!(epsilon > 0.0 && epsilon <= L))
        throw std::domain_error("build_lp: need 0 < epsilon <= L");
    if (chung_m < 1) throw std::domain_error("build_lp: chung_m must be >= 1");

    DiscretizedLP lp;
    lp.delta = delta;
    lp.chung_m = chung_m;
    lp.n_graphs = (int)graphs.size();
    lp.n_configs = (int)configs.size();

    const auto cols = (std::size_t)std::floor(L / epsilon + 1e-9) + 1;
    lp.grid.resize(cols);
    for (std::size_t k = 0; k < cols; ++k) lp.grid[k] = (double)k * epsilon;

    lp.rows.push_back({RowKind::Equal, 1.0, "mass"});
    lp.rows.push_back({RowKind::Equal, 0.0, "omega"});
    for (const auto& g : graphs)
        lp.rows.push_back({RowKind::LessEqual, (double)independence_number(g),
                           g.vertices.label.empty() ? "graph" : g.vertices.label});
    for (const auto& c : configs) {
        const int size = (int)c.points.size();
        lp.config_sizes.push_back(size);
        lp.rows.push_back({RowKind::GreaterEqual, config_rhs(chung_m, size, delta),
                           c.label.empty() ? "config" : c.label});
    }

    const int m = (int)lp.rows.size();
    lp.matrix.assign((std::size_t)m * cols, 0.0);

    // scale lists per row: mass row scale "1" handled separately
    std::vector<std::vector<double>> row_scales(m);
    for (int i = 0; i < lp.n_graphs; ++i)
        for (const Vec2& p : graphs[i].vertices.points)
            row_scales[2 + i].push_back(std::hypot(p.x, p.y));
    for (int i = 0; i < lp.n_configs; ++i)
        for (const PairDistance& pd : pair_distances(configs[i]))
            row_scales[2 + lp.n_graphs + i].push_back(pd.dist);

    parallel_chunks((std::int64_t)cols, [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t k = lo; k < hi; ++k) {
            const double t = lp.grid[k];
            lp.matrix[k] = 1.0;  // mass row
            lp.matrix[cols + k] = bessel_j0(t).value;
            for (int r = 2; r < m; ++r) {
                double s = 0.0;
                for (double scale : row_scales[r]) s += bessel_j0(scale * t).value;
                lp.matrix[(std::size_t)r * cols + k] = s;
            }
        }
    });
    return lp;
}

void set_lp_delta(DiscretizedLP& lp, double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::domain_error("set_lp_delta: delta must lie in (0, 1)");
    lp.delta = delta;
    for (int i = 0; i < lp.n_configs; ++i)
        lp.rows[2 + lp.n_graphs + i].rhs = config_rhs(lp.chung_m, lp.config_sizes[i], delta);
}

LPSolution solve_lp(const DiscretizedLP& lp) {
    Simplex solver(lp);
    LPSolution sol = solver.run();
    if (sol.status == LPStatus::Optimal) {
        if (sol.max_primal_residual > 1e-8)
            throw std::runtime_error("solve_lp: primal residual above contract");
        if (sol.duality_gap > 1e-7)
            throw std::runtime_error("solve_lp: duality gap above contract");
    }
    return sol;
}

FixedPointResult fixed_point_delta(const std::vector<UnitDistanceGraph>& graphs,
                                   const std::vector<PointConfig>& configs, double L,
                                   double epsilon, int chung_m, double tolerance) {
    if (tolerance < 1e-7)
        throw std::domain_error("fixed_point_delta: tolerance must be >= 1e-7");
    DiscretizedLP lp = build_lp(0.25, graphs, configs, L, epsilon, chung_m);

    if (configs.empty()) {
        LPSolution sol = solve_lp(lp);
        if (sol.status != LPStatus::Optimal)
            throw std::runtime_error("fixed_point_delta: base LP not optimal");
        if (!(sol.objective_value > 0.0 && sol.objective_value < 1.0))
            throw std::runtime_error("fixed_point_delta: optimum not in (0, 1)");
        return {sol.objective_value, std::move(sol)};
    }

    // sup kappa~(0) as a function of delta; infeasible counts as -inf
    auto sup_at = [&lp](double delta) -> LPSolution {
        set_lp_delta(lp, delta);
        return solve_lp(lp);
    };
    auto g_of = [](const LPSolution& s, double delta) {
        if (s.status != LPStatus::Optimal) return -std::numeric_limits<double>::infinity();
        return s.objective_value - delta;
    };

    double lo = 0.2, hi = 0.3;
    LPSolution sol_lo = sup_at(lo);
    if (g_of(sol_lo, lo) <= 0.0) {
        lo = 1e-6;
        sol_lo = sup_at(lo);
        if (g_of(sol_lo, lo) <= 0.0)
            throw std::runtime_error("fixed_point_delta: no positive fixed point");
    }
    {
        LPSolution sol_hi = sup_at(hi);
        if (g_of(sol_hi, hi) >= 0.0) hi = 1.0 - 1e-9;
    }

    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        LPSolution sol = sup_at(mid);
        const double g = g_of(sol, mid);
        if (sol.status == LPStatus::Optimal && std::fabs(g) <= tolerance)
            return {mid, std::move(sol)};
        if (g > 0.0) lo = mid;
        else hi = mid;
    }
    throw std::runtime_error("fixed_point_delta: no convergence within 60 bisection steps");
}

Certificate extract_certificate(const DiscretizedLP& lp, const LPSolution& solution,
                                const std::vector<UnitDistanceGraph>& graphs,
                                const std::vector<PointConfig>& configs) {
    if (solution.status != LPStatus::Optimal)
        throw std::runtime_error("extract_certificate: solution not optimal");
    if ((int)solution.duals.size() != (int)lp.rows.size())
        throw std::runtime_error("extract_certificate: dual size mismatch");
    if ((int)graphs.size() != lp.n_graphs || (int)configs.size() != lp.n_configs)
        throw std::runtime_error("extract_certificate: graph/config count mismatch");

    constexpr double kSignTol = 1e-7;
    Certificate cert;
    cert.dimension = 2;
    cert.chung_m = lp.chung_m;
    cert.v0 = solution.duals[0];
    cert.v1 = solution.duals[1];
    for (int i = 0; i < lp.n_graphs; ++i) {
        const double w = solution.duals[2 + i];
        if (w < -kSignTol)
            throw std::runtime_error("extract_certificate: negative graph multiplier");
        cert.graphs.push_back({graphs[i], std::max(w, 0.0)});
    }
    for (int i = 0; i < lp.n_configs; ++i) {
        const double z = -solution.duals[2 + lp.n_graphs + i];
        if (z < -kSignTol)
            throw std::runtime_error("extract_certificate: config multiplier has wrong sign");
        cert.configs.push_back({configs[i], std::max(z, 0.0)});
    }
    return cert;
}

}  // namespace udb
