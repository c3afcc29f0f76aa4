#pragma once

#include <optional>

#include "siegel/heisenberg.hpp"

namespace siegel {

// H(z) = 1 / (Im z_{n+1} - |z'|^2).
double height(const SiegelPoint& z);

struct KahlerValue {
    double g;
    double omega;
};

// Hermitian form h(u, v) of the invariant Kaehler structure at z, with the
// conventions dz_j(u) = u_j, dzbar_j(u) = conj(u_j). g = 2 Re h, omega = -2 Im h,
// so that omega(u, v) = g(i u, v).
cplx kahler_hermitian(const SiegelPoint& z, const TangentVector& u, const TangentVector& v);

// Evaluates the metric and the symplectic form term by term from their tensor
// expressions, checks that both come out real, and returns them.
KahlerValue kahler_eval(const SiegelPoint& z, const TangentVector& u, const TangentVector& v);

// X#_z = (w', t + 2i z'.conj w').
TangentVector sharp_field(const LieElement& X, const SiegelPoint& z);

// mu(z) = -(4i z', 1) / (2 (Im z_{n+1} - |z'|^2)).
LieElement moment_map_hn(const SiegelPoint& z);

// Projection of moment_map_hn onto the subalgebra.
LieElement moment_map_subgroup(const SubgroupSpec& spec, const SiegelPoint& z);

// Closed-form moment maps for the named subgroups (Full, Center, HR, HiR, HlR, HliR).
// Throws UnsupportedError for ProductVxR / GraphVf.
LieElement moment_map_closed_form(const SubgroupSpec& spec, const SiegelPoint& z);

struct MomentIdentityReport {
    double max_rel_residual = 0.0;
    double max_abs_residual = 0.0;
    double step_used = 0.0;
    bool step_shrunk = false;
};

// Compares central differences of z -> <mu(z), X> along the 2(n+1) real coordinate
// directions with omega(X#, e_dir).
MomentIdentityReport verify_moment_identity(const LieElement& X, const SiegelPoint& z,
                                            double step = 1e-5);

// h with h.w = z when both lie on the same orbit (equal heights within 1e-10 relative).
std::optional<HeisenbergElement> orbit_transporter(const SiegelPoint& z, const SiegelPoint& w);

}  // namespace siegel
