#pragma once

#include "gibbspart/extval.hpp"

namespace gibbspart {

struct SignedLog {
    int sign;
    double log_abs;
    double value() const;
};

inline constexpr double kEulerGamma = 0.57721566490153286061;

// sin(pi*x) with exact range reduction (accurate near integers).
double sin_pi(double x);

// ln|Gamma(x)| with sign; x < 0 goes through the reflection identity
// ln|Gamma(x)| = ln(pi) - ln|sin(pi x)| - lnGamma(1-x), sign (-1)^ceil(-x).
// PoleError at x = 0, -1, -2, ...
SignedLog log_gamma_signed(double x);

// ln(n!)
double log_factorial(int n);

// ln C(n, k); zero outside 0 <= k <= n treated as error by caller.
double log_binomial(int n, int k);

enum class FactKind { Rising, Falling };

// Generalized factorial polynomial with step a:
//   Rising:  (x)_{i;a} = x (x+a) ... (x+(i-1)a)
//   Falling: [x]_{i;a} = x (x-a) ... (x-(i-1)a)
// i = 0 gives 1.  Computed as an explicit product; Exact mode carries the
// rational payload (x and a interpreted as exact binary rationals).
ExtVal factorial_poly(double x, int i, double a, FactKind kind,
                      Mode mode = Mode::Float);

// h_r = sum_{k=1}^r 1/k, h_0 = 0.
double harmonic_number(int r);

// Regularized upper incomplete gamma Q(s, x); used for chi-square survival
// probabilities in the statistical verifiers.
double gamma_q(double s, double x);

double chi_square_sf(double stat, int dof);

} // namespace gibbspart
