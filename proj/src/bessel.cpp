#include "udb/bessel.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace udb {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSeriesCut = 12.0;        // Taylor below, Hankel above
constexpr double kSeriesErr = 1e-12;       // conservative per-regime bounds
constexpr double kAsymErr = 1e-11;

// Taylor series around 0, accumulated in long double. The largest term at
// t = 12 is ~4.2e3, so double accumulation would lose ~1e-11 to cancellation;
// long double keeps it below 1e-13.
long double j0_series(double t) {
    const long double q = (long double)t * t / 4.0L;
    long double term = 1.0L, sum = 1.0L;
    for (int k = 1; k < 64; ++k) {
        term *= -q / ((long double)k * k);
        sum += term;
        if (fabsl(term) < 1e-22L) break;
    }
    return sum;
}

long double j1_series(double t) {
    const long double q = (long double)t * t / 4.0L;
    long double term = 1.0L, sum = 1.0L;
    for (int k = 1; k < 64; ++k) {
        term *= -q / ((long double)k * (k + 1));
        sum += term;
        if (fabsl(term) < 1e-22L) break;
    }
    return (long double)t / 2.0L * sum;
}

// Hankel asymptotic coefficients a_k(nu) = prod_{j<=k} (4nu^2-(2j-1)^2)/(8j).
constexpr int kHankelTerms = 26;
constexpr std::array<double, kHankelTerms> hankel_coeffs(int nu) {
    std::array<double, kHankelTerms> a{};
    a[0] = 1.0;
    const double mu = 4.0 * nu * nu;
    for (int k = 1; k < kHankelTerms; ++k) {
        const double odd = 2.0 * k - 1.0;
        a[k] = a[k - 1] * (mu - odd * odd) / (8.0 * k);
    }
    return a;
}

// J_nu(t) ~ sqrt(2/(pi t)) (P cos chi - Q sin chi), chi = t - nu pi/2 - pi/4,
// with P, Q the alternating even/odd a_k sums truncated at the smallest term.
// chi trig is computed from sin t / cos t directly so no precision is lost to
// subtracting the phase from a large argument.
double j_asymptotic(int nu, double t) {
    static const std::array<double, kHankelTerms> a0 = hankel_coeffs(0);
    static const std::array<double, kHankelTerms> a1 = hankel_coeffs(1);
    const std::array<double, kHankelTerms>& a = (nu == 0) ? a0 : a1;

    double P = 0.0, Q = 0.0;
    double tp = 1.0;  // t^{-k}
    double prev = 1e300;
    for (int k = 0; k < kHankelTerms; ++k) {
        const double term = a[k] * tp;
        if (std::fabs(term) > prev) break;  // optimal truncation
        prev = std::fabs(term);
        if (k % 2 == 0) {
            P += ((k / 2) % 2 ? -term : term);
        } else {
            Q += (((k - 1) / 2) % 2 ? -term : term);
        }
        tp /= t;
    }

    const double s = std::sin(t), c = std::cos(t);
    const double inv_sqrt2 = 0.70710678118654752440;
    double cos_chi, sin_chi;
    if (nu == 0) {  // chi = t - pi/4
        cos_chi = (c + s) * inv_sqrt2;
        sin_chi = (s - c) * inv_sqrt2;
    } else {        // chi = t - 3pi/4
        cos_chi = (s - c) * inv_sqrt2;
        sin_chi = -(s + c) * inv_sqrt2;
    }
    return std::sqrt(2.0 / (kPi * t)) * (P * cos_chi - Q * sin_chi);
}

void require_finite(double t, const char* who) {
    if (!std::isfinite(t)) throw std::domain_error(std::string(who) + ": non-finite argument");
}

// Integer-order J_m by recurrence: upward from J0, J1 when t > m (stable),
// otherwise Miller's downward recurrence normalized with
// J0 + 2 sum_k J_{2k} = 1.
double bessel_jn(int m, double t) {
    if (m == 0) return bessel_j0(t).value;
    if (m == 1) return bessel_j1(t).value;
    if (t == 0.0) return 0.0;
    if (t > m) {
        double jm1 = bessel_j0(t).value, j = bessel_j1(t).value;
        for (int k = 1; k < m; ++k) {
            const double next = 2.0 * k / t * j - jm1;
            jm1 = j;
            j = next;
        }
        return j;
    }
    const int start = m + 16 + (int)std::sqrt(40.0 * m);
    double jp = 0.0, j = 1e-30, result = 0.0, norm = 0.0;
    for (int k = start; k >= 0; --k) {
        const double jm = 2.0 * (k + 1) / t * j - jp;
        jp = j;
        j = jm;
        if (k + 1 == m) result = jp;
        if ((k + 1) % 2 == 0) norm += 2.0 * jp;
        if (std::fabs(j) > 1e100) {  // rescale to avoid overflow
            j *= 1e-100;
            jp *= 1e-100;
            result *= 1e-100;
            norm *= 1e-100;
        }
    }
    norm += j;  // J0 contribution
    return result / norm;
}

// Spherical j_m: upward recurrence from j0, j1 when t > m (stable there),
// otherwise downward Miller normalized against j0 = sin t / t (or j1 when t
// sits near a zero of sin).
double sph_jn(int m, double t) {
    const double j0v = std::sin(t) / t;
    if (m == 0) return j0v;
    const double j1v = j0v / t - std::cos(t) / t;
    if (m == 1) return j1v;
    if (t > m) {
        double jm1 = j0v, j = j1v;
        for (int k = 1; k < m; ++k) {
            const double next = (2.0 * k + 1.0) / t * j - jm1;
            jm1 = j;
            j = next;
        }
        return j;
    }
    const int start = m + 16 + (int)std::sqrt(40.0 * m);
    double jp = 0.0, j = 1e-30, result = 0.0, r0 = 0.0, r1 = 0.0;
    for (int k = start; k >= 1; --k) {
        const double jm = (2.0 * k + 1.0) / t * j - jp;
        jp = j;
        j = jm;
        if (k == m) result = jp;
        if (k == 1) r1 = jp;
        if (std::fabs(j) > 1e100) {
            j *= 1e-100;
            jp *= 1e-100;
            result *= 1e-100;
            r1 *= 1e-100;
        }
    }
    r0 = j;
    const double scale = (std::fabs(r0) > std::fabs(r1)) ? j0v / r0 : j1v / r1;
    return result * scale;
}

double lgamma_half_int(int twice) {
    // log Gamma(twice/2) for twice >= 1
    return std::lgamma(0.5 * twice);
}

}  // namespace

BesselEval bessel_j0(double t) {
    require_finite(t, "bessel_j0");
    t = std::fabs(t);
    if (t <= kSeriesCut) return {(double)j0_series(t), kSeriesErr};
    return {j_asymptotic(0, t), kAsymErr};
}

BesselEval bessel_j1(double t) {
    require_finite(t, "bessel_j1");
    const double sign = (t < 0) ? -1.0 : 1.0;
    t = std::fabs(t);
    if (t <= kSeriesCut) return {sign * (double)j1_series(t), kSeriesErr};
    return {sign * j_asymptotic(1, t), kAsymErr};
}

double omega(int n, double t) {
    if (n < 2) throw std::domain_error("omega: dimension n must be >= 2");
    require_finite(t, "omega");
    if (t < 0) throw std::domain_error("omega: t must be >= 0");
    if (t == 0.0) return 1.0;
    switch (n) {
        case 2: return bessel_j0(t).value;
        case 3: return std::sin(t) / t;
        case 4: return 2.0 * bessel_j1(t).value / t;
        default: break;
    }
    if (n % 2 == 0) {
        const int m = (n - 2) / 2;
        // Gamma(n/2) = m!
        double fact = 1.0;
        for (int k = 2; k <= m; ++k) fact *= k;
        return fact * std::pow(2.0 / t, m) * bessel_jn(m, t);
    }
    const int m = (n - 3) / 2;
    // Gamma(m + 3/2) * 2^{m+1} / (sqrt(pi) t^m) * j_m(t)
    const double lg = lgamma_half_int(2 * m + 3);
    const double pref = std::exp(lg + (m + 1) * std::log(2.0) - 0.5 * std::log(kPi) -
                                 m * std::log(t));
    return pref * sph_jn(m, t);
}

double j1_zero(int k) {
    if (k < 1) throw std::domain_error("j1_zero: k must be >= 1");
    const double beta = (k + 0.25) * kPi;          // McMahon
    const double est = beta - 3.0 / (8.0 * beta);
    double lo = est - 0.3, hi = est + 0.3;
    if (k == 1) lo = std::max(lo, 1.0);            // J1 > 0 on (0, j_1)
    double flo = bessel_j1(lo).value;
    double fhi = bessel_j1(hi).value;
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0))
        throw std::runtime_error("j1_zero: bracket failed");
    for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = bessel_j1(mid).value;
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

ZeroTable j1_zeros(int count) {
    if (count < 1) throw std::domain_error("j1_zeros: count must be >= 1");
    ZeroTable table;
    table.zeros.reserve(count);
    for (int k = 1; k <= count; ++k) table.zeros.push_back(j1_zero(k));
    return table;
}

double j0_envelope(double u) {
    if (!std::isfinite(u)) throw std::domain_error("j0_envelope: non-finite argument");
    const double first = j1_zero(1);
    if (!(u > first))
        throw std::domain_error("j0_envelope: u below first J1 zero; no envelope available");
    int k = std::max(1, (int)std::floor(u / kPi - 0.25));
    while (k > 1 && j1_zero(k) > u) --k;
    while (j1_zero(k + 1) <= u) ++k;
    return std::fabs(bessel_j0(j1_zero(k)).value);
}

}  // namespace udb
