#include "siegel/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace siegel {

double height(const SiegelPoint& z) { return 1.0 / z.defining(); }

namespace {

// The bracketed tensor of the metric evaluated on (u, v) with
// (alpha (x) beta)(u, v) = alpha(u) beta(v).
cplx metric_bracket(const SiegelPoint& z, const CVec& u, const CVec& v) {
    const std::size_t n = z.dim();
    const CVec& zp = z.zp();
    const double D = z.defining();
    cplx s{};
    for (std::size_t j = 0; j < n; ++j) s += D * u[j] * std::conj(v[j]);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            s += std::conj(zp[j]) * zp[k] * u[j] * std::conj(v[k]);
    cplx mixed{};
    for (std::size_t j = 0; j < n; ++j)
        mixed += std::conj(zp[j]) * u[j] * std::conj(v[n]) - zp[j] * u[n] * std::conj(v[j]);
    s += mixed / cplx(0.0, 2.0);
    s += 0.25 * u[n] * std::conj(v[n]);
    return s / (D * D);
}

// The bracketed form of omega with (alpha ^ beta)(u, v) = alpha(u) beta(v) - alpha(v) beta(u),
// multiplied by the leading i.
cplx symplectic_literal(const SiegelPoint& z, const CVec& u, const CVec& v) {
    const std::size_t n = z.dim();
    const CVec& zp = z.zp();
    const double D = z.defining();
    auto wedge = [&](std::size_t a, std::size_t b) {  // dz_a ^ dzbar_b
        return u[a] * std::conj(v[b]) - v[a] * std::conj(u[b]);
    };
    cplx s{};
    for (std::size_t j = 0; j < n; ++j) s += D * wedge(j, j);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) s += std::conj(zp[j]) * zp[k] * wedge(j, k);
    cplx mixed{};
    for (std::size_t j = 0; j < n; ++j)
        mixed += std::conj(zp[j]) * wedge(j, n) - zp[j] * wedge(n, j);
    s += mixed / cplx(0.0, 2.0);
    s += 0.25 * wedge(n, n);
    return cplx(0.0, 1.0) * s / (D * D);
}

void check_tangent(const SiegelPoint& z, const TangentVector& u, const char* where) {
    require_same_dim(u.size(), z.dim() + 1, where);
}

}  // namespace

cplx kahler_hermitian(const SiegelPoint& z, const TangentVector& u, const TangentVector& v) {
    check_tangent(z, u, "kahler_hermitian");
    check_tangent(z, v, "kahler_hermitian");
    return metric_bracket(z, u.c, v.c);
}

KahlerValue kahler_eval(const SiegelPoint& z, const TangentVector& u, const TangentVector& v) {
    check_tangent(z, u, "kahler_eval");
    check_tangent(z, v, "kahler_eval");
    // The listed dz (x) dzbar terms lack their mirrored dzbar (x) dz partners;
    // adding the swapped evaluation supplies them and makes g real and symmetric.
    cplx g = metric_bracket(z, u.c, v.c) + metric_bracket(z, v.c, u.c);
    cplx om = symplectic_literal(z, u.c, v.c);
    double scale = std::max({std::abs(g), std::abs(om), 1e-300});
    double scale_uv = std::sqrt(norm2(u.c) * norm2(v.c)) / (z.defining() * z.defining());
    scale = std::max(scale, scale_uv);
    if (std::abs(g.imag()) > 1e-12 * scale || std::abs(om.imag()) > 1e-12 * scale) {
        std::ostringstream os;
        os << "kahler_eval: tensor convention produced a non-real value (Im g = " << g.imag()
           << ", Im omega = " << om.imag() << ")";
        throw ContractError(os.str());
    }
    return {g.real(), om.real()};
}

TangentVector sharp_field(const LieElement& X, const SiegelPoint& z) {
    require_same_dim(X.dim(), z.dim(), "sharp_field");
    CVec c = X.w;
    c.push_back(X.t + cplx(0.0, 2.0) * dot_conj(z.zp(), X.w));
    return {std::move(c)};
}

LieElement moment_map_hn(const SiegelPoint& z) {
    const double D = z.defining();
    CVec w(z.dim());
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = -cplx(0.0, 4.0) * z.zp()[j] / (2.0 * D);
    return {std::move(w), -1.0 / (2.0 * D)};
}

LieElement moment_map_subgroup(const SubgroupSpec& spec, const SiegelPoint& z) {
    require_same_dim(spec.n, z.dim(), "moment_map_subgroup");
    return subgroup_project(spec, moment_map_hn(z));
}

LieElement moment_map_closed_form(const SubgroupSpec& spec, const SiegelPoint& z) {
    require_same_dim(spec.n, z.dim(), "moment_map_closed_form");
    Validation v = subgroup_validate(spec);
    if (!v.ok) throw ContractError("moment_map_closed_form: invalid subgroup spec");
    const std::size_t n = z.dim();
    const double two_d = 2.0 * z.defining();
    const CVec& zp = z.zp();
    const double t = -1.0 / two_d;
    CVec w(n);
    switch (spec.kind) {
        case SubgroupKind::Full:
            for (std::size_t j = 0; j < n; ++j) w[j] = -cplx(0.0, 4.0) * zp[j] / two_d;
            break;
        case SubgroupKind::Center: break;
        case SubgroupKind::HR:
            for (std::size_t j = 0; j < n; ++j) w[j] = -(-4.0 * zp[j].imag()) / two_d;
            break;
        case SubgroupKind::HiR:
            for (std::size_t j = 0; j < n; ++j) w[j] = cplx(0.0, -(4.0 * zp[j].real()) / two_d);
            break;
        case SubgroupKind::HlR:
        case SubgroupKind::HliR: {
            const std::size_t split = n - std::size_t(spec.ell);
            for (std::size_t j = 0; j < split; ++j) w[j] = -cplx(0.0, 4.0) * zp[j] / two_d;
            for (std::size_t j = split; j < n; ++j) {
                if (spec.kind == SubgroupKind::HlR) w[j] = -(-4.0 * zp[j].imag()) / two_d;
                else w[j] = cplx(0.0, -(4.0 * zp[j].real()) / two_d);
            }
            break;
        }
        default:
            throw UnsupportedError("no closed-form moment map for subgroup kind " +
                                   to_string(spec.kind));
    }
    return {std::move(w), t};
}

MomentIdentityReport verify_moment_identity(const LieElement& X, const SiegelPoint& z,
                                            double step) {
    require_same_dim(X.dim(), z.dim(), "verify_moment_identity");
    if (!(step > 0.0) || step > 1e-3) throw ContractError("verify_moment_identity: step must be in (0, 1e-3]");
    const std::size_t n = z.dim(), dims = 2 * (n + 1);
    const CVec base = z.coords();
    const double D = z.defining();

    auto shifted = [&](std::size_t d, double h) {
        CVec c = base;
        c[d / 2] += (d % 2 == 0) ? cplx(h, 0.0) : cplx(0.0, h);
        return c;
    };
    auto defining_of = [&](const CVec& c) {
        CVec zp(c.begin(), c.end() - 1);
        return c.back().imag() - norm2(zp);
    };

    MomentIdentityReport rep;
    double h = step;
    for (;;) {
        bool ok = true;
        for (std::size_t d = 0; d < dims && ok; ++d)
            for (double sgn : {-1.0, 1.0})
                if (!(defining_of(shifted(d, sgn * h)) > 0.5 * D)) ok = false;
        if (ok) break;
        h *= 0.5;
        rep.step_shrunk = true;
        if (h < 1e-14) throw DomainError("verify_moment_identity: point too close to the boundary");
    }
    rep.step_used = h;

    auto muX = [&](const CVec& c) { return lie_inner(moment_map_hn(SiegelPoint::from_coords(c)), X); };
    const TangentVector sharp = sharp_field(X, z);
    double max_om = 0.0, max_diff = 0.0;
    for (std::size_t d = 0; d < dims; ++d) {
        double fd = (muX(shifted(d, h)) - muX(shifted(d, -h))) / (2.0 * h);
        TangentVector e{CVec(n + 1)};
        e.c[d / 2] = (d % 2 == 0) ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
        double om = kahler_eval(z, sharp, e).omega;
        max_om = std::max(max_om, std::abs(om));
        max_diff = std::max(max_diff, std::abs(fd - om));
    }
    rep.max_abs_residual = max_diff;
    rep.max_rel_residual = max_om > 0.0 ? max_diff / max_om : max_diff;
    return rep;
}

std::optional<HeisenbergElement> orbit_transporter(const SiegelPoint& z, const SiegelPoint& w) {
    require_same_dim(z.dim(), w.dim(), "orbit_transporter");
    double hz = height(z), hw = height(w);
    if (std::abs(hz - hw) > 1e-10 * std::max(hz, hw)) return std::nullopt;
    CVec zeta(z.dim());
    for (std::size_t j = 0; j < zeta.size(); ++j) zeta[j] = z.zp()[j] - w.zp()[j];
    double t = z.zl().real() - w.zl().real() + 2.0 * dot_conj(w.zp(), zeta).imag();
    return HeisenbergElement{std::move(zeta), t};
}

}  // namespace siegel
