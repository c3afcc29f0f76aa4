#pragma once

#include <vector>

#include "siegel/config.hpp"
#include "siegel/coordinates.hpp"
#include "siegel/spectral.hpp"

namespace siegel {

// K(z, w) = ((z_{n+1} - conj w_{n+1})/(2i) - z'.conj w')^{-(lambda+n+2)}, principal branch.
// Throws DomainError when the base is not in the open right half-plane.
cplx bergman_kernel(const WeightContext& ctx, const SiegelPoint& z, const SiegelPoint& w);

// f_b(z) = e^{i b z_{n+1}}.
cplx plane_wave_value(double b, const SiegelPoint& z);
DomainFn plane_wave(double b);

struct ToeplitzResult {
    cplx value{};
    double error = 0.0;     // |full - half-resolution|
    std::size_t nodes = 0;  // integrand evaluations at full resolution
};

// (T_a f)(z) = int a(w) f(w) K(z, w) dv_lambda(w) in the coordinates (w', t, u = 1/r),
// where a(kappa(w', t, 1/u)) = a~(u) and dv_lambda = (c_lambda/4) u^lambda dw' dt du.
// f must make the integrand absolutely integrable (plane waves qualify). Radial
// w'-mode assumes the integrand depends on w' only through |w'|; it is only used
// when requested explicitly or by verify_multiplier at points with z' = 0.
ToeplitzResult toeplitz_apply(const WeightContext& ctx, const RadialSymbol& sym, const DomainFn& f,
                              const SiegelPoint& z, const QuadratureSpec& q);

struct MultiplierReport {
    double b = 0.0;
    cplx gamma{};                 // gamma(b) from the spectral function
    std::vector<cplx> ratios;     // (T_a f_b)(z) / f_b(z) per sample
    std::vector<double> errors;   // quadrature estimates relative to |f_b(z)|
    double max_rel_deviation = 0.0;
    double spread = 0.0;          // max pairwise |ratio_i - ratio_j| / max(|gamma|, 1e-300)
};

// Applies T_a to the plane wave f_b at each sample and compares with gamma(b).
MultiplierReport verify_multiplier(const WeightContext& ctx, const RadialSymbol& sym, double b,
                                   const std::vector<SiegelPoint>& samples, QuadratureSpec q);

}  // namespace siegel
