#include "siegel/coordinates.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "siegel/quadrature.hpp"

namespace siegel {

WeightContext WeightContext::make(double lambda, std::size_t n) {
    if (!(lambda > -1.0)) throw ContractError("weight parameter lambda must be > -1");
    if (n < 1) throw ContractError("dimension n must be >= 1");
    WeightContext c;
    c.lambda = lambda;
    c.n = n;
    c.c_lambda = std::exp(std::lgamma(lambda + double(n) + 2.0) - double(n + 1) * std::log(kPi) -
                          std::lgamma(lambda + 1.0));
    return c;
}

SiegelPoint sigma_section(double r, std::size_t n) {
    if (!(r > 0.0) || !std::isfinite(r)) throw ContractError("sigma_section: r must be positive");
    return SiegelPoint(CVec(n), cplx(0.0, 1.0 / r));
}

HeisenbergElement rho_coord(const SiegelPoint& z) { return {z.zp(), z.zl().real()}; }

SiegelPoint kappa(const GroupMomentPoint& p) {
    if (!(p.r > 0.0)) throw ContractError("kappa: r must be positive");
    return SiegelPoint(p.w, cplx(p.t, 1.0 / p.r + norm2(p.w)));
}

GroupMomentPoint tau(const SiegelPoint& z) { return {z.zp(), z.zl().real(), height(z)}; }

double nu_lambda_density(const WeightContext& ctx, const GroupMomentPoint& p) {
    require_same_dim(ctx.n, p.dim(), "nu_lambda_density");
    if (!(p.r > 0.0)) throw ContractError("nu_lambda_density: r must be positive");
    return ctx.c_lambda / (4.0 * std::pow(p.r, ctx.lambda + 2.0));
}

double v_lambda_density(const WeightContext& ctx, const SiegelPoint& z) {
    require_same_dim(ctx.n, z.dim(), "v_lambda_density");
    return 0.25 * ctx.c_lambda * std::pow(z.defining(), ctx.lambda);
}

double tau_jacobian_fd(const SiegelPoint& z, double step) {
    const std::size_t n = z.dim(), D = 2 * n + 2;
    const CVec base = z.coords();
    auto real_tau = [&](const CVec& c) {
        GroupMomentPoint p = tau(SiegelPoint::from_coords(c));
        RVec out;
        for (const auto& w : p.w) {
            out.push_back(w.real());
            out.push_back(w.imag());
        }
        out.push_back(p.t);
        out.push_back(p.r);
        return out;
    };
    double h = step;
    while (h > 1e-14) {
        bool ok = true;
        for (std::size_t d = 0; d < D && ok; ++d)
            for (double s : {-1.0, 1.0}) {
                CVec c = base;
                c[d / 2] += (d % 2 == 0) ? cplx(s * h, 0) : cplx(0, s * h);
                CVec zp(c.begin(), c.end() - 1);
                if (!(c.back().imag() - norm2(zp) > 0.5 * z.defining())) ok = false;
            }
        if (ok) break;
        h *= 0.5;
    }
    Eigen::MatrixXd J(D, D);
    for (std::size_t d = 0; d < D; ++d) {
        CVec cp = base, cm = base;
        cplx e = (d % 2 == 0) ? cplx(h, 0) : cplx(0, h);
        cp[d / 2] += e;
        cm[d / 2] -= e;
        RVec fp = real_tau(cp), fm = real_tau(cm);
        for (std::size_t i = 0; i < D; ++i) J(Eigen::Index(i), Eigen::Index(d)) = (fp[i] - fm[i]) / (2 * h);
    }
    return std::abs(J.determinant());
}

GroupMomentFn u0_pullback(DomainFn f) {
    return [f = std::move(f)](const GroupMomentPoint& p) { return f(kappa(p)); };
}

DomainFn u0_pushforward(GroupMomentFn F) {
    return [F = std::move(F)](const SiegelPoint& z) { return F(tau(z)); };
}

// ---------------------------------------------------------------------------

FourierT::FourierT(std::function<cplx(double)> phi, double t_window, int m) : window_(t_window) {
    if (!(t_window > 0.0)) throw ContractError("fourier_t: window must be positive");
    if (m < 2) throw ContractError("fourier_t: need at least 2 nodes");
    int panels = std::max(1, (m + 7) / 8);
    quad::composite_nodes(-t_window, t_window, panels, 8, x_, w_);
    samples_.resize(x_.size());
    for (std::size_t i = 0; i < x_.size(); ++i) samples_[i] = phi(x_[i]);
    edge_ = std::max(std::abs(phi(-t_window)), std::abs(phi(t_window)));
}

FourierValue FourierT::eval(double xi) const {
    cplx s{};
    for (std::size_t i = 0; i < x_.size(); ++i)
        s += w_[i] * samples_[i] * std::exp(cplx(0.0, -xi * x_[i]));
    const double norm = 1.0 / std::sqrt(2.0 * kPi);
    return {s * norm, edge_ * window_ * norm};
}

FourierT fourier_t(std::function<cplx(double)> phi, double t_window, int m) {
    return FourierT(std::move(phi), t_window, m);
}

// ---------------------------------------------------------------------------

namespace {

template <class F>
cplx central(const F& f, double h, bool richardson) {
    cplx d1 = (f(h) - f(-h)) / (2.0 * h);
    if (!richardson) return d1;
    cplx d2 = (f(0.5 * h) - f(-0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

}  // namespace

CrResidual cr_residual(const FiberFn& phi, const CVec& w, double xi, double r, double step,
                       bool richardson) {
    if (!(r > 0.0)) throw ContractError("cr_residual: r must be positive");
    if (!(step > 0.0)) throw ContractError("cr_residual: step must be positive");
    const std::size_t n = w.size();
    CrResidual out;
    double h = step;
    while (r - h <= 0.5 * r) {
        h *= 0.5;
        out.step_shrunk = true;
    }
    out.step_used = h;

    cplx dr = central([&](double e) { return phi(w, xi, r + e); }, h, richardson);
    cplx f0 = phi(w, xi, r);
    out.residual.resize(n + 1);
    for (std::size_t j = 0; j < n; ++j) {
        auto along = [&](cplx dir) {
            return [&, dir](double e) {
                CVec ww = w;
                ww[j] += e * dir;
                return phi(ww, xi, r);
            };
        };
        cplx dx = central(along(cplx(1, 0)), step, richardson);
        cplx dy = central(along(cplx(0, 1)), step, richardson);
        cplx dwbar = 0.5 * (dx + cplx(0, 1) * dy);
        out.residual[j] = dwbar + w[j] * r * r * dr;
    }
    out.residual[n] = r * r * dr - xi * f0;
    return out;
}

double holomorphy_defect(const SectionFn& psi, double xi, std::size_t n, double step) {
    static const cplx samples[] = {{0.3, 0.2}, {-0.7, 0.4}, {1.1, -0.9}, {0.05, -0.6}};
    double worst = 0.0;
    for (std::size_t s = 0; s < 4; ++s) {
        CVec w(n);
        for (std::size_t j = 0; j < n; ++j) w[j] = samples[(s + j) % 4] * (1.0 + 0.1 * double(j));
        double scale = std::max(1.0, std::abs(psi(w, xi)));
        for (std::size_t j = 0; j < n; ++j) {
            auto f = [&](cplx dir) {
                return [&, dir](double e) {
                    CVec ww = w;
                    ww[j] += e * dir;
                    return psi(ww, xi);
                };
            };
            cplx dx = central(f(cplx(1, 0)), step, false);
            cplx dy = central(f(cplx(0, 1)), step, false);
            worst = std::max(worst, std::abs(0.5 * (dx + cplx(0, 1) * dy)) / scale);
        }
    }
    return worst;
}

FiberFn cr_solution_form(SectionFn psi, double xi, std::size_t n, double holo_tol) {
    if (!(xi > 0.0)) throw ContractError("cr_solution_form: xi must be positive");
    double defect = holomorphy_defect(psi, xi, n);
    if (defect > holo_tol)
        throw ContractError("cr_solution_form: psi fails the holomorphy spot check (|dpsi/dwbar| = " +
                            std::to_string(defect) + ")");
    return [psi = std::move(psi)](const CVec& w, double x, double r) {
        return std::exp(-x * norm2(w) - x / r) * psi(w, x);
    };
}

}  // namespace siegel
