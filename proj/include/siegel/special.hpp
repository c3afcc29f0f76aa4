#pragma once

#include "siegel/types.hpp"

namespace siegel::special {

// log Gamma on the complex plane (principal branch, continuous off the negative axis).
// Lanczos approximation (g = 7, 9 terms) with reflection for Re z < 1/2.
cplx lgamma(cplx z);
cplx gamma(cplx z);

// Regularized incomplete gamma functions for a > 0, x >= 0.
// Series for x < a + 1, Lentz continued fraction otherwise; relative accuracy ~1e-14.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// P(a, y) - P(a, x) for 0 <= x <= y without cancellation in the upper tail.
double gamma_p_diff(double a, double x, double y);

}  // namespace siegel::special
