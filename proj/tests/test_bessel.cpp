#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "udb/bessel.hpp"

using namespace udb;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Independent oracle: N-point trapezoid sum of the periodic integral
// J_n(t) = (1/2pi) int_0^{2pi} cos(n theta - t sin theta) dtheta.
// The sum equals J_n(t) plus aliasing terms J_{n +- N}(t), which are
// astronomically small once N comfortably exceeds t.
double j_oracle(int n, double t) {
    int N = 64;
    while (N < 1.5 * t + 64.0) N *= 2;
    double sum = 0.0, comp = 0.0;  // Kahan
    for (int k = 0; k < N; ++k) {
        const double theta = 2.0 * kPi * k / N;
        const double val = std::cos(n * theta - t * std::sin(theta));
        const double y = val - comp;
        const double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    return sum / N;
}

}  // namespace

TEST_CASE("J0/J1 basics and frozen values") {
    CHECK(bessel_j0(0.0).value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::fabs(bessel_j0(2.404825557695773).value) <= 1e-10);  // first J0 zero
    CHECK(bessel_j0(5.0).value == doctest::Approx(-0.1775967713143383).epsilon(1e-12));
    CHECK(bessel_j1(0.0).value == 0.0);
    CHECK(std::fabs(bessel_j1(3.8317059702075123).value) <= 1e-10);  // first J1 zero
    CHECK(bessel_j0(-5.0).value == bessel_j0(5.0).value);            // even
    CHECK(bessel_j1(-5.0).value == -bessel_j1(5.0).value);           // odd
    CHECK_THROWS_AS(bessel_j0(std::nan("")), std::domain_error);
    CHECK_THROWS_AS(bessel_j1(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("oracle agreement on [0, 1000] and error-bound honesty") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> dist(0.0, 1000.0);
    for (int i = 0; i < 10000; ++i) {
        const double t = dist(rng);
        const BesselEval e0 = bessel_j0(t);
        const BesselEval e1 = bessel_j1(t);
        const double o0 = j_oracle(0, t);
        const double o1 = j_oracle(1, t);
        REQUIRE(std::fabs(e0.value - o0) <= 1e-10);
        REQUIRE(std::fabs(e1.value - o1) <= 1e-10);
        REQUIRE(std::fabs(e0.value - o0) <= e0.abs_error_bound + 1e-12);
        REQUIRE(std::fabs(e1.value - o1) <= e1.abs_error_bound + 1e-12);
        REQUIRE(e0.abs_error_bound <= 1e-10);
        REQUIRE(std::fabs(e1.value) <= 1.0 / std::sqrt(2.0) + 1e-12);  // Watson bound
    }
}

TEST_CASE("error bound holds out to 1e6") {
    for (double t : {1.2e4, 3.3e5, 1.0e6}) {
        const BesselEval e = bessel_j0(t);
        CHECK(e.abs_error_bound <= 1e-10);
        CHECK(std::fabs(e.value - j_oracle(0, t)) <= e.abs_error_bound + 1e-11);
    }
}

TEST_CASE("derivative identity J0' = -J1") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> dist(0.1, 200.0);
    const double h = 1e-5;
    for (int i = 0; i < 500; ++i) {
        const double t = dist(rng);
        const double diff = (bessel_j0(t + h).value - bessel_j0(t - h).value) / (2.0 * h);
        CHECK(std::fabs(diff + bessel_j1(t).value) <= 1e-6);
    }
}

TEST_CASE("omega") {
    for (double t : {0.0, 0.3, 1.0, 4.7, 25.0, 313.0}) {
        CHECK(omega(2, t) == bessel_j0(t).value);
        if (t > 0) CHECK(omega(3, t) == doctest::Approx(std::sin(t) / t).epsilon(1e-14));
    }
    CHECK(omega(2, 0.0) == 1.0);
    CHECK(omega(5, 0.0) == 1.0);
    CHECK(omega(17, 0.0) == 1.0);
    CHECK(std::fabs(omega(3, kPi)) <= 1e-10);
    CHECK_THROWS_AS(omega(1, 1.0), std::domain_error);
    CHECK_THROWS_AS(omega(2, -1.0), std::domain_error);

    // n = 4 and 6 against the recurrence identity J2 = 2 J1/t - J0
    for (double t : {0.4, 1.5, 7.0, 40.0}) {
        const double j2 = 2.0 * bessel_j1(t).value / t - bessel_j0(t).value;
        CHECK(omega(4, t) == doctest::Approx(2.0 * bessel_j1(t).value / t).epsilon(1e-13));
        CHECK(omega(6, t) == doctest::Approx(8.0 * j2 / (t * t)).epsilon(2e-10));
    }
    // n = 5 and 7 against spherical closed forms
    for (double t : {0.7, 2.0, 9.0, 33.0}) {
        const double j1s = std::sin(t) / (t * t) - std::cos(t) / t;
        const double j2s = (3.0 / (t * t * t) - 1.0 / t) * std::sin(t) - 3.0 * std::cos(t) / (t * t);
        CHECK(omega(5, t) == doctest::Approx(3.0 * j1s / t).epsilon(1e-10));
        CHECK(omega(7, t) ==
              doctest::Approx(15.0 * j2s / (t * t)).epsilon(1e-9));
    }
}

TEST_CASE("J1 zero table") {
    const ZeroTable table = j1_zeros(248);
    REQUIRE(table.zeros.size() == 248);
    CHECK(table.zeros[0] == doctest::Approx(3.8317059702075123).epsilon(1e-11));
    CHECK(table.zeros[1] == doctest::Approx(7.015586669815619).epsilon(1e-11));
    CHECK(table.zeros[247] == doctest::Approx(779.899895423071825).epsilon(1e-11));
    for (size_t k = 0; k < table.zeros.size(); ++k) {
        CHECK(std::fabs(bessel_j1(table.zeros[k]).value) <= 1e-12);
        if (k > 0) {
            REQUIRE(table.zeros[k] > table.zeros[k - 1]);
            const double gap = table.zeros[k] - table.zeros[k - 1];
            if (k >= 3) {
                CHECK(gap > kPi - 0.5);
                CHECK(gap < kPi + 0.5);
            }
            // J1 zeros interleave with J0 zeros: J0 alternates sign at them
            CHECK(bessel_j0(table.zeros[k]).value * bessel_j0(table.zeros[k - 1]).value < 0.0);
        }
    }
    CHECK_THROWS_AS(j1_zeros(0), std::domain_error);
}

TEST_CASE("J0 envelope") {
    CHECK(j0_envelope(3.84) == doctest::Approx(0.402759395702553).epsilon(1e-10));
    CHECK(j0_envelope(779.8999) <= 0.0286);
    CHECK(j0_envelope(779.8999) == doctest::Approx(0.02857067470873411).epsilon(1e-8));
    CHECK_THROWS_AS(j0_envelope(3.0), std::domain_error);

    // non-increasing in u
    double prev = 1.0;
    for (double u = 4.0; u < 500.0; u += 3.7) {
        const double e = j0_envelope(u);
        CHECK(e <= prev + 1e-15);
        prev = e;
    }

    // dominates |J0(s)| for s >= u
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> du(4.0, 400.0);
    for (int i = 0; i < 1000; ++i) {
        const double u = du(rng);
        const double env = j0_envelope(u);
        std::uniform_real_distribution<double> ds(u, u + 300.0);
        const double s = ds(rng);
        CHECK(std::fabs(bessel_j0(s).value) <= env + 1e-11);
    }
}
