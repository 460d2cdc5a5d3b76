#include "udb/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "udb/bessel.hpp"
#include "udb/parallel.hpp"

namespace udb {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void validate_certificate(const Certificate& cert) {
    if (cert.dimension < 2)
        throw CertificateFormatError("certificate: dimension must be >= 2");
    if (cert.chung_m < 1)
        throw CertificateFormatError("certificate: chung_m must be >= 1");
    if (!std::isfinite(cert.v0) || !std::isfinite(cert.v1))
        throw CertificateFormatError("certificate: non-finite v0/v1");
    for (const auto& g : cert.graphs)
        if (!(g.weight >= 0.0) || !std::isfinite(g.weight))
            throw CertificateFormatError("certificate: graph weight must be >= 0");
    for (const auto& c : cert.configs) {
        if (!(c.weight >= 0.0) || !std::isfinite(c.weight))
            throw CertificateFormatError("certificate: config weight must be >= 0");
        bool has_origin = false;
        for (const Vec2& p : c.config.points)
            if (std::hypot(p.x, p.y) <= 1e-12) has_origin = true;
        if (!has_origin)
            throw CertificateFormatError("certificate: config must contain the origin");
    }
}

}  // namespace

FlatWitness FlatWitness::build(const Certificate& cert) {
    FlatWitness flat;
    flat.dimension = cert.dimension;
    flat.constant = cert.v0;
    auto add = [&flat](double coef, double scale) {
        if (scale == 0.0) {
            flat.constant += coef;  // Omega_n(0) = 1 for every t
        } else {
            flat.coefs.push_back(coef);
            flat.scales.push_back(scale);
        }
    };
    add(cert.v1, 1.0);
    for (const auto& [graph, w] : cert.graphs)
        for (const Vec2& p : graph.vertices.points) add(w, std::hypot(p.x, p.y));
    for (const auto& [config, z] : cert.configs)
        for (const PairDistance& pd : pair_distances(config)) add(-z, pd.dist);
    return flat;
}

double FlatWitness::operator()(double t) const {
    double sum = constant;
    const size_t n = coefs.size();
    if (dimension == 2) {
        for (size_t j = 0; j < n; ++j) sum += coefs[j] * bessel_j0(scales[j] * t).value;
    } else {
        for (size_t j = 0; j < n; ++j) sum += coefs[j] * omega(dimension, scales[j] * t);
    }
    return sum;
}

double FlatWitness::value_at_zero() const {
    long double sum = constant;
    for (double c : coefs) sum += (long double)c;
    return (double)sum;
}

double witness_value(const Certificate& cert, double t) {
    if (!(t >= 0.0))
        throw std::domain_error("witness_value: t must be >= 0");
    return FlatWitness::build(cert)(t);
}

double derivative_bound(const Certificate& cert) {
    // |Omega_2'| = |J1| <= 1/sqrt2; for other n fall back to |Omega_n'| <= 1.
    const double factor = (cert.dimension == 2) ? kInvSqrt2 : 1.0;
    double sum = std::fabs(cert.v1);
    for (const auto& [graph, w] : cert.graphs)
        for (const Vec2& p : graph.vertices.points) sum += w * std::hypot(p.x, p.y);
    for (const auto& [config, z] : cert.configs)
        for (const PairDistance& pd : pair_distances(config)) sum += z * pd.dist;
    return factor * sum;
}

double tail_bound(const Certificate& cert, double L) {
    if (!(L > 0.0)) throw std::domain_error("tail_bound: L must be > 0");
    const FlatWitness flat = FlatWitness::build(cert);
    const double first = j1_zero(1);
    double bound = 0.0;
    for (size_t j = 0; j < flat.coefs.size(); ++j) {
        const double u = L * flat.scales[j];
        double env = 1.0;
        if (flat.dimension == 2) {
            if (u > first) env = j0_envelope(u);
        } else if (flat.dimension == 3) {
            env = std::min(1.0, 1.0 / u);  // |sin(s)/s| <= 1/s
        }
        bound += std::fabs(flat.coefs[j]) * env;
    }
    return bound;
}

namespace {

struct BestSample {
    double value = std::numeric_limits<double>::infinity();
    std::int64_t index = -1;

    void consider(double v, std::int64_t i) {
        if (v < value || (v == value && (index < 0 || i < index))) {
            value = v;
            index = i;
        }
    }
};

struct Interval {
    std::int64_t lo, hi;  // fine-grid indices, lo < hi
    double flo, fhi;
};

// Evaluates phi at the fine-grid indices in `pts` (deterministically, in
// parallel chunks) and folds them into `best`.
void evaluate_points(const FlatWitness& flat, double fine, const std::vector<std::int64_t>& pts,
                     std::vector<double>& vals, BestSample& best) {
    vals.assign(pts.size(), 0.0);
    parallel_chunks((std::int64_t)pts.size(), [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t k = lo; k < hi; ++k) vals[k] = flat(pts[k] * fine);
    });
    for (size_t k = 0; k < pts.size(); ++k) best.consider(vals[k], pts[k]);
}

}  // namespace

GridMinimum grid_minimum(const Certificate& cert, double L, double epsilon) {
    if (!(L > 0.0) || !(epsilon > 0.0))
        throw std::domain_error("grid_minimum: L and epsilon must be > 0");
    const FlatWitness flat = FlatWitness::build(cert);
    const double lip = derivative_bound(cert);
    if (lip == 0.0) return {flat(0.0), 0.0};

    const double fine = epsilon / lip;
    const std::int64_t last = (std::int64_t)std::floor(L / fine);

    // Level strides over the fine grid. An interval [a, b] can be skipped
    // once (f(a)+f(b))/2 - lip*(b-a)*fine/2 is no better than the running
    // sampled minimum; the bound certifies phi >= that minimum inside it.
    std::vector<std::int64_t> strides;
    for (std::int64_t s = 512; s > 1; s /= 8)
        if (s <= last) strides.push_back(s);
    strides.push_back(1);

    BestSample best;
    std::vector<std::int64_t> pts;
    std::vector<double> vals;

    // top level scan
    const std::int64_t s0 = strides.front();
    for (std::int64_t i = 0; i <= last; i += s0) pts.push_back(i);
    if (pts.back() != last) pts.push_back(last);
    evaluate_points(flat, fine, pts, vals, best);

    std::vector<Interval> intervals;
    for (size_t k = 0; k + 1 < pts.size(); ++k)
        intervals.push_back({pts[k], pts[k + 1], vals[k], vals[k + 1]});

    for (size_t level = 1; level < strides.size(); ++level) {
        const std::int64_t s = strides[level];
        std::vector<Interval> selected;
        for (const Interval& iv : intervals) {
            const double lb = 0.5 * (iv.flo + iv.fhi) - 0.5 * lip * (iv.hi - iv.lo) * fine;
            if (lb < best.value) selected.push_back(iv);
        }
        pts.clear();
        std::vector<size_t> first_new(selected.size());
        for (size_t k = 0; k < selected.size(); ++k) {
            first_new[k] = pts.size();
            for (std::int64_t i = selected[k].lo + s; i < selected[k].hi; i += s)
                pts.push_back(i);
        }
        evaluate_points(flat, fine, pts, vals, best);

        intervals.clear();
        for (size_t k = 0; k < selected.size(); ++k) {
            const size_t end = (k + 1 < selected.size()) ? first_new[k + 1] : pts.size();
            std::int64_t prev = selected[k].lo;
            double fprev = selected[k].flo;
            for (size_t q = first_new[k]; q < end; ++q) {
                intervals.push_back({prev, pts[q], fprev, vals[q]});
                prev = pts[q];
                fprev = vals[q];
            }
            intervals.push_back({prev, selected[k].hi, fprev, selected[k].fhi});
        }
    }

    return {best.value, best.index * fine};
}

Certificate adjust_slack(const Certificate& cert, double slack) {
    if (!(slack >= 0.0) || !std::isfinite(slack))
        throw std::domain_error("adjust_slack: slack must be >= 0");
    Certificate out = cert;
    out.v0 += slack;
    return out;
}

double solve_delta(const Certificate& cert) {
    const int m = cert.chung_m;
    if (m < 1) throw std::domain_error("solve_delta: chung_m must be >= 1");
    double a = cert.v0;
    for (const auto& [graph, w] : cert.graphs) {
        if (!(w >= 0.0)) throw std::domain_error("solve_delta: negative graph weight");
        a += w * independence_number(graph);
    }
    double b = 0.0;
    for (const auto& [config, z] : cert.configs) {
        if (!(z >= 0.0)) throw std::domain_error("solve_delta: negative config weight");
        a -= z * m * (double)config.points.size();
        b += z * 0.5 * m * (m + 1);
    }
    if (b <= 0.0 && a <= 0.0)
        throw std::domain_error("solve_delta: no positive root (infeasible certificate)");
    return 0.5 * (a + std::sqrt(a * a + 4.0 * b));
}

VerifiedBound verify(const Certificate& cert, double L, double epsilon) {
    validate_certificate(cert);
    if (!(L > 0.0) || !(epsilon > 0.0))
        throw std::domain_error("verify: L and epsilon must be > 0");

    VerifiedBound out;
    out.tail_start = L;
    auto record = [&out](const std::string& stage, bool passed, double value,
                         const std::string& detail) {
        out.transcript.push_back({stage, passed, value, detail});
        if (!passed) throw VerificationError("verification failed at stage '" + stage + "': " + detail);
    };

    const FlatWitness flat = FlatWitness::build(cert);

    // 1. W(0) >= 1
    {
        const double w0 = flat.value_at_zero();
        std::ostringstream d;
        d.precision(17);
        d << "phi(0) = " << w0;
        record("witness_at_zero", w0 >= 1.0, w0, d.str());
    }

    // 2. oscillating part bounded by the constant beyond L
    {
        const double m = tail_bound(cert, L);
        out.tail_margin = flat.constant - m;
        std::ostringstream d;
        d << "tail bound " << m << " vs constant " << flat.constant;
        record("tail_bound", m <= flat.constant, m, d.str());
    }

    // 3. sampled minimum on [0, L]
    const GridMinimum gm = grid_minimum(cert, L, epsilon);
    out.grid_min = gm.min_value;
    out.grid_step = epsilon / derivative_bound(cert);
    {
        std::ostringstream d;
        d << "sampled min " << gm.min_value << " at t = " << gm.argmin;
        record("grid_minimum", true, gm.min_value, d.str());
    }

    // 4. slack so that phi >= 0 holds on [0, L] with the grid guarantee
    Certificate adjusted = cert;
    if (gm.min_value - epsilon < 0.0) {
        const double slack = epsilon - gm.min_value;
        {
            std::ostringstream d;
            d << "v0 slack " << slack << " (cap " << kMaxSlack << ") for min at t = " << gm.argmin;
            record("slack", slack <= kMaxSlack, slack, d.str());
        }
        adjusted = adjust_slack(cert, slack);
        out.v0_slack = slack;
        const double w0 = FlatWitness::build(adjusted).value_at_zero();
        record("witness_at_zero_after_slack", w0 >= 1.0, w0, "phi(0) after slack");
    } else {
        record("slack", true, 0.0, "no slack needed");
    }

    // 5. quadratic bound
    out.delta = solve_delta(adjusted);
    {
        std::ostringstream d;
        d.precision(17);
        d << "delta = " << out.delta;
        record("delta", out.delta > 0.0 && out.delta < 1.0, out.delta, d.str());
    }
    return out;
}

// ---------------------------------------------------------------------------
// JSON input/output

namespace {

using nlohmann::json;

double require_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        throw CertificateFormatError(std::string("certificate: missing number '") + key + "'");
    return j[key].get<double>();
}

PointConfig points_from_json(const json& arr, const std::string& label) {
    if (!arr.is_array() || arr.empty())
        throw CertificateFormatError("certificate: 'points' must be a non-empty array");
    PointConfig config;
    config.label = label;
    for (const auto& p : arr) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw CertificateFormatError("certificate: each point must be [x, y]");
        config.points.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    return config;
}

}  // namespace

Certificate read_certificate(std::istream& in) {
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw CertificateFormatError(std::string("certificate: JSON parse error: ") + e.what());
    }
    try {
        Certificate cert;
        cert.dimension = j.value("dimension", 2);
        cert.v0 = require_number(j, "v0");
        cert.v1 = require_number(j, "v1");
        cert.chung_m = j.value("chung_m", 1);

        int idx = 0;
        for (const auto& g : j.value("graphs", json::array())) {
            ++idx;
            WeightedGraph wg;
            wg.weight = require_number(g, "weight");
            if (g.contains("points")) {
                wg.graph = unit_distance_graph(
                    points_from_json(g["points"], "graph" + std::to_string(idx)));
            } else if (g.contains("t") && g.contains("theta")) {
                wg.graph = unit_distance_graph(
                    moser_spindle(require_number(g, "t"), require_number(g, "theta")));
            } else {
                throw CertificateFormatError(
                    "certificate: graph entry needs either 'points' or 't'/'theta'");
            }
            cert.graphs.push_back(std::move(wg));
        }
        idx = 0;
        for (const auto& c : j.value("configs", json::array())) {
            ++idx;
            WeightedConfig wc;
            wc.weight = require_number(c, "weight");
            if (!c.contains("points"))
                throw CertificateFormatError("certificate: config entry needs 'points'");
            wc.config = points_from_json(c["points"], "config" + std::to_string(idx));
            bool has_origin = false;
            for (const Vec2& p : wc.config.points)
                if (std::hypot(p.x, p.y) <= 1e-12) has_origin = true;
            if (!has_origin)
                wc.config.points.insert(wc.config.points.begin(), Vec2{0.0, 0.0});
            cert.configs.push_back(std::move(wc));
        }
        validate_certificate(cert);
        return cert;
    } catch (const json::exception& e) {
        throw CertificateFormatError(std::string("certificate: malformed document: ") + e.what());
    }
}

Certificate load_certificate(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CertificateFormatError("certificate: cannot open '" + path + "'");
    return read_certificate(in);
}

void write_certificate(std::ostream& out, const Certificate& cert) {
    json j;
    j["dimension"] = cert.dimension;
    j["v0"] = cert.v0;
    j["v1"] = cert.v1;
    j["chung_m"] = cert.chung_m;
    j["graphs"] = json::array();
    for (const auto& [graph, w] : cert.graphs) {
        json g;
        g["weight"] = w;
        json pts = json::array();
        for (const Vec2& p : graph.vertices.points) pts.push_back({p.x, p.y});
        g["points"] = pts;
        j["graphs"].push_back(g);
    }
    j["configs"] = json::array();
    for (const auto& [config, z] : cert.configs) {
        json c;
        c["weight"] = z;
        json pts = json::array();
        for (const Vec2& p : config.points) pts.push_back({p.x, p.y});
        c["points"] = pts;
        j["configs"].push_back(c);
    }
    out << j.dump(2) << "\n";
}

}  // namespace udb
