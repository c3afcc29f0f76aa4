#pragma once

// Quadrature grids shared by the Bergman-space integrators (not installed).

#include <vector>

#include "siegel/types.hpp"

namespace siegel::detail {

struct WNode {
    CVec w;
    double weight;
};

// Rule for int_{C^n} g(w) dw. Radial mode samples w = (sqrt(s), 0, ...) and is exact
// only for g depending on |w| alone; otherwise each coordinate is integrated in
// polar form with Gauss-Laguerre in |w_j|^2 (at the given rate, with e^{x} folded
// into the weights) and `angles` trapezoid nodes in arg w_j.
std::vector<WNode> wprime_rule(std::size_t n, bool radial, int nodes, int angles, double rate);

}  // namespace siegel::detail
