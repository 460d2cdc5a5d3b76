#pragma once

#include <vector>

// Bessel kernel: J0, J1, the radial positive-definite kernels Omega_n,
// positive zeros of J1, and the decreasing-extrema envelope of J0.
// Everything here is a pure function; no global state.

namespace udb {

// Function value together with a conservative absolute error bound for the
// evaluation scheme that produced it.
struct BesselEval {
    double value;
    double abs_error_bound;
};

// J0(t), J1(t). Even/odd extensions are used for negative arguments.
// Throws std::domain_error on non-finite input.
BesselEval bessel_j0(double t);
BesselEval bessel_j1(double t);

// Omega_n(t): the spherical average of exp(i x.xi) over the unit sphere in
// R^n at ||x|| = t. Omega_2 = J0, Omega_3 = sin(t)/t, Omega_n(0) = 1.
// Throws std::domain_error for n < 2 or invalid t.
double omega(int n, double t);

// First `count` positive zeros of J1, strictly increasing, each refined so
// that |J1(zero)| <= 1e-12.
struct ZeroTable {
    std::vector<double> zeros;
};
ZeroTable j1_zeros(int count);

// k-th positive zero of J1 (k >= 1), bracketed by a McMahon estimate and
// refined by bisection to interval width ~1e-13.
double j1_zero(int k);

// |J0| at the largest J1-zero not exceeding u. Since the local extrema of J0
// decrease in absolute value, this bounds |J0(s)| for every s >= that zero,
// in particular for all s >= u. Throws std::domain_error if u is not above
// the first J1 zero (callers must fall back to the global bound 1).
double j0_envelope(double u);

}  // namespace udb
