#pragma once

#include <functional>

#include "siegel/types.hpp"

namespace siegel::quad {

struct Rule {
    RVec x;
    RVec w;
    std::size_t size() const { return x.size(); }
};

// Gauss rules. Legendre by Newton iteration; the others by Golub-Welsch on the
// Jacobi matrix of the three-term recurrence.
Rule gauss_legendre(int n);                             // [-1,1], weight 1
Rule gauss_jacobi(int n, double alpha, double beta);    // [-1,1], (1-x)^alpha (1+x)^beta
Rule gauss_laguerre(int n, double alpha);               // [0,inf), x^alpha e^{-x}
Rule gauss_hermite(int n);                              // R, e^{-x^2}

// Memoized versions; the cache is shared across threads behind a mutex.
const Rule& legendre(int n);
const Rule& jacobi(int n, double alpha, double beta);
const Rule& laguerre(int n, double alpha);
const Rule& hermite(int n);

struct Result {
    cplx value{};
    double error = 0.0;
    int intervals = 0;
};

using CFun = std::function<cplx(double)>;

// Globally adaptive integration on [a, b]: each panel is integrated with an
// n-point and a 2n-point Gauss-Legendre rule; the worst panel is bisected until
// the summed error drops below max(rel_tol*|I|, abs_tol).
Result adaptive(const CFun& f, double a, double b, double rel_tol, double abs_tol = 0.0,
                int max_intervals = 2000, int n = 10);

// Same, but starting from the given sorted break points (a and b included).
Result adaptive(const CFun& f, const RVec& breaks, double rel_tol, double abs_tol = 0.0,
                int max_intervals = 2000, int n = 10);

// I = int_0^inf h(s) s^lambda e^{-s} ds for lambda > -1, h bounded and piecewise
// smooth with jumps only at `breaks` (s-values). Pieces near zero carry the s^lambda
// weight in a Gauss-Jacobi rule; the tail uses shifted Gauss-Laguerre.
Result gamma_weighted(const CFun& h, double lambda, RVec breaks, double rel_tol,
                      double abs_tol = 1e-300, int max_pieces = 4000);

// Composite Gauss-Legendre on [a, b] with `panels` equal panels of `order` nodes.
void composite_nodes(double a, double b, int panels, int order, RVec& x, RVec& w);

// Runs body(i) for i in [0, count). Work is split into contiguous blocks; callers
// store per-index results and reduce in index order, so outputs do not depend on
// the thread count. threads <= 0 means hardware concurrency.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace siegel::quad
