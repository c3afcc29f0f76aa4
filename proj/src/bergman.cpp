#include "siegel/bergman.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "siegel/quadrature.hpp"
#include "rules.hpp"

namespace siegel {

namespace {

cplx kernel_base(const SiegelPoint& z, const CVec& wp, cplx wl) {
    cplx base = (z.zl() - std::conj(wl)) / cplx(0.0, 2.0);
    for (std::size_t j = 0; j < wp.size(); ++j) base -= z.zp()[j] * std::conj(wp[j]);
    return base;
}

cplx kernel_from_base(cplx base, double p) {
    if (!(base.real() > 0.0)) {
        std::ostringstream os;
        os << "Bergman kernel base " << base << " is outside the right half-plane";
        throw DomainError(os.str());
    }
    return std::exp(-p * std::log(base));
}

struct Line {
    RVec x, w;
};

// Rule for int_0^inf G(u) u^lambda du.
Line u_rule(const RadialSymbol& sym, double lambda, int nodes, double scale) {
    RVec br;
    for (double b : sym.breaks)
        if (b > 0.0 && std::isfinite(b)) br.push_back(b);
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    Line L;
    if (br.empty()) {
        const quad::Rule& r = quad::laguerre(nodes, lambda);
        for (std::size_t i = 0; i < r.size(); ++i) {
            L.x.push_back(r.x[i] / scale);
            L.w.push_back(std::exp(std::log(r.w[i]) + r.x[i] - (lambda + 1.0) * std::log(scale)));
        }
        return L;
    }
    {
        const quad::Rule& r = quad::jacobi(nodes, 0.0, lambda);
        const double c = br.front();
        for (std::size_t i = 0; i < r.size(); ++i) {
            L.x.push_back(0.5 * c * (1.0 + r.x[i]));
            L.w.push_back(r.w[i] * std::pow(0.5 * c, lambda + 1.0));
        }
    }
    const quad::Rule& gl = quad::legendre(nodes);
    for (std::size_t k = 0; k + 1 < br.size(); ++k) {
        double mid = 0.5 * (br[k] + br[k + 1]), half = 0.5 * (br[k + 1] - br[k]);
        for (std::size_t i = 0; i < gl.size(); ++i) {
            double u = mid + half * gl.x[i];
            L.x.push_back(u);
            L.w.push_back(gl.w[i] * half * std::pow(u, lambda));
        }
    }
    {
        const quad::Rule& r = quad::laguerre(nodes, 0.0);
        const double a = br.back();
        for (std::size_t i = 0; i < r.size(); ++i) {
            double u = a + r.x[i] / scale;
            L.x.push_back(u);
            L.w.push_back(std::exp(std::log(r.w[i]) + r.x[i]) / scale * std::pow(u, lambda));
        }
    }
    return L;
}

struct Resolution {
    int t_panels;
    int r_nodes;
    int w_nodes;
};

cplx integrate(const WeightContext& ctx, const RadialSymbol& sym, const DomainFn& f,
               const SiegelPoint& z, const QuadratureSpec& q, bool radial, const Resolution& res,
               std::size_t* evals) {
    const double lambda = ctx.lambda;
    const double p = lambda + double(ctx.n) + 2.0;
    const double rs = q.r_scale > 0.0 ? q.r_scale : 1.0;
    const double ws = q.wprime_scale > 0.0 ? q.wprime_scale : 1.0;
    Line U = u_rule(sym, lambda, res.r_nodes, rs);
    std::vector<detail::WNode> W = detail::wprime_rule(ctx.n, radial, res.w_nodes, q.wprime_angles, ws);
    RVec tx, tw;
    quad::composite_nodes(-1.0, 1.0, res.t_panels, 8, tx, tw);

    const std::size_t NU = U.x.size(), NW = W.size();
    CVec partial(NU * NW);
    quad::parallel_for(NU * NW, q.threads, [&](std::size_t idx) {
        const std::size_t iu = idx % NU, iw = idx / NU;
        const double u = U.x[iu];
        const cplx a = sym(u);
        if (a == cplx(0.0)) {
            partial[idx] = 0.0;
            return;
        }
        const CVec& w = W[iw].w;
        const double w2 = norm2(w);
        const cplx zw = dot_conj(z.zp(), w);
        const double tc = z.zl().real() + 2.0 * zw.imag();
        const double B = 0.5 * (z.zl().imag() + u + w2) - zw.real();
        const double half = q.t_window * B;
        auto F = [&](double t) {
            const cplx wl(t, u + w2);
            return f(SiegelPoint(w, wl)) * kernel_from_base(kernel_base(z, w, wl), p);
        };
        cplx s{};
        for (std::size_t i = 0; i < tx.size(); ++i) s += tw[i] * F(tc + half * tx[i]);
        s *= half;
        // Tails beyond the window: int_T^inf F ~ -F(T)^2 / F'(T), exact for F = c e^{kt}.
        const double h = 1e-3 * B;
        for (double sgn : {-1.0, 1.0}) {
            const double T = tc + sgn * half;
            cplx f0 = F(T), fp = F(T + h), fm = F(T - h);
            cplx d = (fp - fm) / (2.0 * h);
            if (std::abs(d) > 0.0) s += -sgn * f0 * f0 / d;
        }
        partial[idx] = U.w[iu] * W[iw].weight * a * s;
    });
    cplx total{};
    for (const auto& v : partial) total += v;
    if (evals) *evals = NU * NW * (tx.size() + 6);
    return 0.25 * ctx.c_lambda * total;
}

}  // namespace

namespace detail {

std::vector<WNode> wprime_rule(std::size_t n, bool radial, int nodes, int angles, double scale) {
    std::vector<WNode> out;
    if (radial) {
        // int_{C^n} g(|w|^2) dw = pi^n / Gamma(n) int_0^inf g(s) s^{n-1} ds
        const quad::Rule& r = quad::laguerre(nodes, double(n) - 1.0);
        const double c = std::exp(double(n) * std::log(kPi) - std::lgamma(double(n)));
        for (std::size_t i = 0; i < r.size(); ++i) {
            double s = r.x[i] / scale;
            CVec w(n);
            w[0] = std::sqrt(s);
            out.push_back({std::move(w), c * std::exp(std::log(r.w[i]) + r.x[i] - double(n) * std::log(scale))});
        }
        return out;
    }
    // polar in each coordinate: dw_j = (1/2) ds_j dtheta_j with s_j = |w_j|^2
    const quad::Rule& r = quad::laguerre(nodes, 0.0);
    std::vector<std::pair<cplx, double>> one;
    for (std::size_t i = 0; i < r.size(); ++i) {
        double s = r.x[i] / scale, rho = std::sqrt(s);
        double wi = 0.5 * std::exp(std::log(r.w[i]) + r.x[i]) / scale * (2.0 * kPi / angles);
        for (int k = 0; k < angles; ++k) {
            double th = 2.0 * kPi * k / angles;
            one.push_back({std::polar(rho, th), wi});
        }
    }
    std::size_t total = 1;
    for (std::size_t j = 0; j < n; ++j) total *= one.size();
    out.reserve(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        CVec w(n);
        double wt = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            const auto& e = one[rem % one.size()];
            rem /= one.size();
            w[j] = e.first;
            wt *= e.second;
        }
        out.push_back({std::move(w), wt});
    }
    return out;
}

}  // namespace detail

cplx bergman_kernel(const WeightContext& ctx, const SiegelPoint& z, const SiegelPoint& w) {
    require_same_dim(ctx.n, z.dim(), "bergman_kernel");
    require_same_dim(ctx.n, w.dim(), "bergman_kernel");
    return kernel_from_base(kernel_base(z, w.zp(), w.zl()), ctx.lambda + double(ctx.n) + 2.0);
}

cplx plane_wave_value(double b, const SiegelPoint& z) {
    return std::exp(cplx(0.0, b) * z.zl());
}

DomainFn plane_wave(double b) {
    if (!(b > 0.0)) throw ContractError("plane_wave: b must be positive");
    return [b](const SiegelPoint& z) { return plane_wave_value(b, z); };
}

ToeplitzResult toeplitz_apply(const WeightContext& ctx, const RadialSymbol& sym, const DomainFn& f,
                              const SiegelPoint& z, const QuadratureSpec& q) {
    q.validate();
    require_same_dim(ctx.n, z.dim(), "toeplitz_apply");
    if (!std::isfinite(sym.sup_bound))
        throw ContractError("toeplitz_apply: symbol must be bounded");
    const bool radial = q.wprime_mode == WprimeMode::Radial;
    if (radial && norm2(z.zp()) != 0.0)
        throw ContractError("toeplitz_apply: radial w' quadrature needs z' = 0");
    const int panels = std::max(1, q.t_nodes / 8);
    Resolution full{panels, q.r_nodes, q.wprime_nodes};
    Resolution half{std::max(1, panels / 2), std::max(2, q.r_nodes / 2), std::max(2, q.wprime_nodes / 2)};
    ToeplitzResult out;
    out.value = integrate(ctx, sym, f, z, q, radial, full, &out.nodes);
    cplx coarse = integrate(ctx, sym, f, z, q, radial, half, nullptr);
    out.error = std::abs(out.value - coarse);
    if (out.error > q.tol * std::abs(out.value)) {
        std::ostringstream os;
        os << "toeplitz_apply: error estimate " << out.error << " exceeds tol " << q.tol
           << " x |value| = " << std::abs(out.value);
        throw ConvergenceError(os.str());
    }
    return out;
}

MultiplierReport verify_multiplier(const WeightContext& ctx, const RadialSymbol& sym, double b,
                                   const std::vector<SiegelPoint>& samples, QuadratureSpec q) {
    if (!(b > 0.0)) throw ContractError("verify_multiplier: b must be positive");
    if (samples.empty()) throw ContractError("verify_multiplier: need at least one sample");
    // f_b carries e^{-b(u + |w'|^2)} and the t integral contributes the same again.
    if (q.r_scale == 0.0) q.r_scale = 2.0 * b;
    if (q.wprime_scale == 0.0) q.wprime_scale = 2.0 * b;
    if (q.wprime_mode == WprimeMode::Auto) {
        bool all_axis = true;
        for (const auto& z : samples) all_axis = all_axis && norm2(z.zp()) == 0.0;
        q.wprime_mode = all_axis ? WprimeMode::Radial : WprimeMode::Full;
    }
    MultiplierReport rep;
    rep.b = b;
    SpectralFunction sf(sym, ctx.lambda);
    rep.gamma = sf(b);
    const double gscale = std::max(std::abs(rep.gamma), 1e-300);
    DomainFn fb = plane_wave(b);
    for (const auto& z : samples) {
        ToeplitzResult r = toeplitz_apply(ctx, sym, fb, z, q);
        cplx f0 = plane_wave_value(b, z);
        rep.ratios.push_back(r.value / f0);
        rep.errors.push_back(r.error / std::abs(f0));
        rep.max_rel_deviation = std::max(rep.max_rel_deviation, std::abs(r.value / f0 - rep.gamma) / gscale);
    }
    for (std::size_t i = 0; i < rep.ratios.size(); ++i)
        for (std::size_t j = i + 1; j < rep.ratios.size(); ++j)
            rep.spread = std::max(rep.spread, std::abs(rep.ratios[i] - rep.ratios[j]) / gscale);
    return rep;
}

}  // namespace siegel
