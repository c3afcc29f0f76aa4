#include "siegel/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "siegel/bergman.hpp"
#include "siegel/fock.hpp"
#include "siegel/quadrature.hpp"
#include "siegel/spectral.hpp"

namespace siegel {

namespace {

struct Sampler {
    std::mt19937_64 gen;
    std::normal_distribution<double> normal{0.0, 1.0};
    std::uniform_real_distribution<double> unif{0.0, 1.0};

    explicit Sampler(std::uint64_t seed) : gen(seed) {}
    double g() { return normal(gen); }
    double u(double a, double b) { return a + (b - a) * unif(gen); }
    CVec cvec(std::size_t n, double s = 1.0) {
        CVec v(n);
        for (auto& x : v) x = {s * g(), s * g()};
        return v;
    }
    HeisenbergElement elem(std::size_t n) { return {cvec(n), g()}; }
    LieElement lie(std::size_t n) { return {cvec(n), g()}; }
    SiegelPoint point(std::size_t n) {
        CVec zp = cvec(n, 0.5);
        return SiegelPoint(zp, cplx(g(), norm2(zp) + u(0.3, 2.0)));
    }
};

double lie_dist(const HnPair& a, const HnPair& b) {
    double d = std::abs(a.t - b.t);
    for (std::size_t i = 0; i < a.w.size(); ++i) d = std::max(d, std::abs(a.w[i] - b.w[i]));
    return d;
}

double vec_dist(const CVec& a, const CVec& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

class Runner {
public:
    Runner(const VerifyOptions& o) : opt(o) {}

    void run(const std::string& group, const std::string& name, double tol, bool heavy,
             const std::function<std::pair<double, std::string>()>& body) {
        if (opt.skip.count(group) || (heavy && opt.skip.count("heavy"))) return;
        CheckResult r;
        r.name = name;
        r.group = group;
        r.tolerance = tol;
        r.heavy = heavy;
        auto t0 = std::chrono::steady_clock::now();
        try {
            auto [res, detail] = body();
            r.residual = res;
            r.detail = detail;
            r.pass = std::isfinite(res) && res <= tol;
        } catch (const UnsupportedError& e) {
            r.applicable = false;
            r.pass = true;
            r.detail = std::string("not applicable: ") + e.what();
        } catch (const std::exception& e) {
            r.residual = std::numeric_limits<double>::infinity();
            r.detail = std::string("exception: ") + e.what();
            r.pass = false;
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(std::move(r));
    }

    const VerifyOptions& opt;
    std::vector<CheckResult> out;
};

// Fock-side grids: the w' integrands are polynomials of degree <= 2 deg in each w_j
// against the Gaussian the Laguerre rate is matched to, so deg + 2 radial nodes and
// 2 deg + 2 angles are exact and keep the (nodes * angles)^n product small.
QuadratureSpec fock_spec(QuadratureSpec q, int deg, int r_nodes) {
    q.r_nodes = r_nodes;
    q.wprime_nodes = deg + 2;
    q.wprime_angles = 2 * deg + 2;
    return q;
}

// Smooth bump (1 - s^2)^8 on [-1, 1].
double bump(double s) {
    if (std::abs(s) >= 1.0) return 0.0;
    double v = 1.0 - s * s;
    v *= v;
    v *= v;
    return v * v;
}

}  // namespace

std::vector<std::string> verify_groups() { return {"group", "moment", "coords", "spectral", "fock", "toeplitz"}; }

std::vector<CheckResult> run_verify(const VerifyOptions& opt) {
    if (opt.n < 1) throw ContractError("verify: n must be >= 1");
    if (!(opt.lambda >= kLambdaFloor)) throw ContractError("verify: lambda below the supported floor");
    opt.quad.validate();
    Runner R(opt);
    const std::size_t n = opt.n;
    const Tolerances& T = opt.tol;
    const int samples = 1000;

    // ---- group ---------------------------------------------------------------
    R.run("group", "group_axioms", T.group, false, [&] {
        Sampler s(opt.seed);
        double worst = 0.0;
        for (int i = 0; i < samples; ++i) {
            auto a = s.elem(n), b = s.elem(n), c = s.elem(n);
            worst = std::max(worst, lie_dist(hn_mul(hn_mul(a, b), c), hn_mul(a, hn_mul(b, c))));
            worst = std::max(worst, lie_dist(hn_mul(HeisenbergElement::identity(n), a), a));
            worst = std::max(worst, lie_dist(hn_mul(a, hn_inv(a)), HeisenbergElement::identity(n)));
            worst = std::max(worst, lie_dist(hn_mul(hn_inv(a), a), HeisenbergElement::identity(n)));
        }
        return std::make_pair(worst, std::string("associativity, identity, inverse"));
    });
    R.run("group", "nilpotency", T.group, false, [&] {
        Sampler s(opt.seed + 1);
        double worst = 0.0;
        for (int i = 0; i < samples; ++i) {
            auto X = s.lie(n), Y = s.lie(n), Z = s.lie(n);
            worst = std::max(worst, lie_dist(lie_bracket(lie_bracket(X, Y), Z), LieElement::zero(n)));
            auto XY = lie_bracket(X, Y), YX = lie_bracket(Y, X);
            worst = std::max(worst, std::abs(XY.t + YX.t));
        }
        return std::make_pair(worst, std::string("[[X,Y],Z] = 0 and antisymmetry"));
    });
    R.run("group", "ad_rho_transpose", T.group, false, [&] {
        Sampler s(opt.seed + 2);
        double worst = 0.0;
        for (int i = 0; i < samples; ++i) {
            auto h = s.elem(n), h2 = s.elem(n);
            auto X = s.lie(n), Y = s.lie(n);
            worst = std::max(worst, std::abs(lie_inner(rho_rep(h, X), Y) - lie_inner(X, adjoint(hn_inv(h), Y))));
            worst = std::max(worst, lie_dist(adjoint(hn_mul(h, h2), X), adjoint(h, adjoint(h2, X))));
            worst = std::max(worst, lie_dist(rho_rep(hn_mul(h, h2), X), rho_rep(h, rho_rep(h2, X))));
        }
        return std::make_pair(worst, std::string("<rho(h)X,Y> = <X,Ad(h^-1)Y>; both homomorphisms"));
    });
    R.run("group", "action_invariance", T.group, false, [&] {
        Sampler s(opt.seed + 3);
        double worst = 0.0;
        for (int i = 0; i < samples; ++i) {
            auto h = s.elem(n), h2 = s.elem(n);
            auto z = s.point(n);
            auto hz = act(h, z);
            worst = std::max(worst, std::abs(hz.defining() - z.defining()));
            worst = std::max(worst, vec_dist(act(h, act(h2, z)).coords(), act(hn_mul(h, h2), z).coords()));
            worst = std::max(worst, vec_dist(act(HeisenbergElement::identity(n), z).coords(), z.coords()));
        }
        return std::make_pair(worst, std::string("Im z_{n+1} - |z'|^2 preserved; action axioms"));
    });
    R.run("group", "action_free", T.group, false, [&] {
        Sampler s(opt.seed + 4);
        double worst = 0.0;
        for (int i = 0; i < samples; ++i) {
            auto h = s.elem(n);
            auto z = s.point(n);
            auto back = orbit_transporter(act(h, z), z);
            if (!back) return std::make_pair(std::numeric_limits<double>::infinity(), std::string("transporter missing"));
            worst = std::max(worst, lie_dist(*back, h));
            auto self = orbit_transporter(z, z);
            worst = std::max(worst, lie_dist(*self, HeisenbergElement::identity(n)));
        }
        return std::make_pair(worst, std::string("the element moving z to h.z is h itself"));
    });

    // ---- moment ----------------------------------------------------------------
    R.run("moment", "moment_identity_fd", T.moment_fd, false, [&] {
        Sampler s(opt.seed + 10);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            auto z = s.point(n);
            auto X = s.lie(n);
            worst = std::max(worst, verify_moment_identity(X, z, T.fd_step).max_rel_residual);
        }
        return std::make_pair(worst, std::string("d<mu,X> = omega(X#, .) by central differences"));
    });
    R.run("moment", "moment_equivariance", T.equivariance, false, [&] {
        Sampler s(opt.seed + 11);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            auto h = s.elem(n);
            auto z = s.point(n);
            worst = std::max(worst, lie_dist(moment_map_hn(act(h, z)), rho_rep(h, moment_map_hn(z))));
        }
        return std::make_pair(worst, std::string("mu(h.z) = rho(h) mu(z)"));
    });
    R.run("moment", "moment_closed_forms", T.closed_form_moment, false, [&] {
        Sampler s(opt.seed + 12);
        std::vector<SubgroupSpec> specs = {SubgroupSpec::full(n), SubgroupSpec::center(n), SubgroupSpec::hr(n),
                                           SubgroupSpec::hir(n)};
        for (int ell = 1; ell + 1 <= int(n); ++ell) {
            specs.push_back(SubgroupSpec::hlr(n, ell));
            specs.push_back(SubgroupSpec::hlir(n, ell));
        }
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            auto z = s.point(n);
            for (const auto& sp : specs)
                worst = std::max(worst, lie_dist(moment_map_closed_form(sp, z), moment_map_subgroup(sp, z)));
        }
        return std::make_pair(worst, std::string("named subgroups: closed form vs projection"));
    });
    R.run("moment", "kahler_compatibility", 1e-10, false, [&] {
        Sampler s(opt.seed + 13);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            auto z = s.point(n);
            TangentVector u{s.cvec(n + 1)}, v{s.cvec(n + 1)};
            TangentVector iu{u.c};
            for (auto& x : iu.c) x *= cplx(0.0, 1.0);
            auto kv = kahler_eval(z, u, v);
            double g_iu = kahler_eval(z, iu, v).g;
            worst = std::max(worst, std::abs(kv.omega - g_iu) / std::max(std::abs(kv.omega), 1e-300));
        }
        return std::make_pair(worst, std::string("omega(u,v) = g(iu, v), relative"));
    });

    // ---- coordinates ----------------------------------------------------------------
    R.run("coords", "kappa_tau_roundtrip", T.coord_roundtrip, false, [&] {
        Sampler s(opt.seed + 20);
        double worst = 0.0;
        for (int i = 0; i < samples; ++i) {
            auto z = s.point(n);
            worst = std::max(worst, vec_dist(kappa(tau(z)).coords(), z.coords()));
            GroupMomentPoint p{s.cvec(n), s.g(), s.u(0.1, 5.0)};
            GroupMomentPoint q = tau(kappa(p));
            double d = std::max(std::abs(q.t - p.t), std::abs(q.r - p.r) / p.r);
            for (std::size_t j = 0; j < n; ++j) d = std::max(d, std::abs(q.w[j] - p.w[j]));
            worst = std::max(worst, d);
        }
        return std::make_pair(worst, std::string("kappa(tau(z)) = z and tau(kappa(p)) = p"));
    });
    R.run("coords", "tau_jacobian", T.jacobian, false, [&] {
        Sampler s(opt.seed + 21);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            auto z = s.point(n);
            double H = height(z);
            worst = std::max(worst, std::abs(tau_jacobian_fd(z, T.fd_step) - H * H) / (H * H));
        }
        return std::make_pair(worst, std::string("|det d tau| = H(z)^2, relative"));
    });
    R.run("coords", "pushforward", T.pushforward, false, [&] {
        if (n > 2) throw UnsupportedError("pushforward check is implemented for n <= 2");
        WeightContext ctx = WeightContext::make(1.0, n);
        // test function supported in a box well inside D_{n+1}
        auto phi = [&](const CVec& zp, double x, double y) {
            double v = bump(x / 0.5) * bump((y - 2.0) / 0.5);
            for (const auto& c : zp) v *= bump(c.real() / 0.5) * bump(c.imag() / 0.5);
            return v;
        };
        const quad::Rule& g = quad::legendre(10);
        const std::size_t dim = 2 * n;
        std::size_t total = 1;
        for (std::size_t k = 0; k < dim; ++k) total *= g.size();
        auto zp_node = [&](std::size_t idx, CVec& zp, double& w) {
            w = 1.0;
            for (std::size_t k = 0; k < dim; ++k) {
                std::size_t i = idx % g.size();
                idx /= g.size();
                double c = 0.5 * g.x[i];
                w *= 0.5 * g.w[i];
                if (k % 2 == 0) zp[k / 2].real(c);
                else zp[k / 2].imag(c);
            }
        };
        // direct: dv_lambda in rectangular coordinates
        double direct = 0.0;
        for (std::size_t idx = 0; idx < total; ++idx) {
            CVec zp(n);
            double w;
            zp_node(idx, zp, w);
            for (std::size_t a = 0; a < g.size(); ++a)
                for (std::size_t b = 0; b < g.size(); ++b) {
                    double x = 0.5 * g.x[a], y = 2.0 + 0.5 * g.x[b];
                    double wt = w * 0.25 * g.w[a] * g.w[b];
                    direct += wt * phi(zp, x, y) * v_lambda_density(ctx, SiegelPoint(zp, cplx(x, y)));
                }
        }
        // pulled back: dnu_lambda in (w', t, r), r over the exact support for each w'
        const quad::Rule& gr = quad::legendre(32);
        double pulled = 0.0;
        for (std::size_t idx = 0; idx < total; ++idx) {
            CVec w(n);
            double ww;
            zp_node(idx, w, ww);
            double w2 = norm2(w);
            double r_lo = 1.0 / (2.5 - w2), r_hi = 1.0 / (1.5 - w2);
            double rm = 0.5 * (r_lo + r_hi), rh = 0.5 * (r_hi - r_lo);
            for (std::size_t a = 0; a < g.size(); ++a)
                for (std::size_t b = 0; b < gr.size(); ++b) {
                    double t = 0.5 * g.x[a], r = rm + rh * gr.x[b];
                    GroupMomentPoint p{w, t, r};
                    SiegelPoint z = kappa(p);
                    double wt = ww * 0.5 * g.w[a] * rh * gr.w[b];
                    pulled += wt * phi(z.zp(), z.zl().real(), z.zl().imag()) * nu_lambda_density(ctx, p);
                }
        }
        std::ostringstream os;
        os << "direct " << direct << ", pulled back " << pulled;
        return std::make_pair(std::abs(direct - pulled) / std::abs(direct), os.str());
    });
    R.run("coords", "cr_system", T.cr, false, [&] {
        Sampler s(opt.seed + 22);
        SectionFn psi = [](const CVec& w, double xi) {
            cplx v = 1.0 + xi * w[0] + 0.5 * w[0] * w[0];
            for (std::size_t j = 1; j < w.size(); ++j) v += cplx(0.3, -0.2) * w[j] * w[0];
            return v;
        };
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            double xi = s.u(0.2, 2.0);
            FiberFn phi = cr_solution_form(psi, xi, n);
            CVec w = s.cvec(n, 0.4);
            double r = s.u(0.3, 3.0);
            for (const auto& c : cr_residual(phi, w, xi, r, T.fd_step).residual) worst = std::max(worst, std::abs(c));
        }
        return std::make_pair(worst, std::string("polynomial psi, largest residual"));
    });

    // ---- spectral --------------------------------------------------------------------
    const RVec grid50 = log_grid(1e-3, 1e3, 50);
    R.run("spectral", "gamma_normalization", T.gamma_norm, false, [&] {
        double worst = 0.0;
        for (double lam : {-0.5, 0.0, 2.0, opt.lambda}) {
            SpectralFunction sf(RadialSymbol::constant(1.0), lam, GammaMode::Quadrature);
            for (double xi : grid50) worst = std::max(worst, std::abs(sf(xi) - 1.0));
        }
        return std::make_pair(worst, std::string("a~ = 1 through quadrature, absolute"));
    });
    R.run("spectral", "gamma_closed_vs_quadrature", T.gamma_closed, false, [&] {
        double worst = 0.0;
        std::string where;
        for (const char* tag : {"exp:0.5", "exp:2", "exp:10", "ind:0,1", "osclog:5", "pow:1.5"})
            for (double lam : {0.0, 1.7, opt.lambda}) {
                RadialSymbol sym = RadialSymbol::parse(tag);
                SpectralFunction sq(sym, lam, GammaMode::Quadrature);
                for (double xi : grid50) {
                    cplx c = gamma_closed_form(sym, lam, xi);
                    double e = std::abs(sq.eval(xi, 1e-11).value - c) / std::abs(c);
                    if (e > worst) {
                        worst = e;
                        where = std::string(tag) + " lambda=" + std::to_string(lam) + " xi=" + std::to_string(xi);
                    }
                }
            }
        return std::make_pair(worst, "worst at " + where);
    });
    R.run("spectral", "gamma_hat_equivalence", T.gamma_hat, false, [&] {
        double worst = 0.0;
        for (const char* tag : {"exp:2", "ind:0,1"}) {
            RadialSymbol sym = RadialSymbol::parse(tag);
            for (double xi : {0.5, 1.0, 5.0}) {
                cplx ref = gamma_closed_form(sym, opt.lambda, xi);
                for (RVec y : {RVec(n, 0.0), RVec(n, 3.0)})
                    worst = std::max(worst, std::abs(gamma_hat_eval(sym, opt.lambda, xi, y).value - ref) / std::abs(ref));
            }
        }
        return std::make_pair(worst, std::string("u'-t quadrature vs closed form, relative"));
    });
    R.run("spectral", "gamma_hat_y_spread", T.gamma_hat_spread, false, [&] {
        double worst = 0.0;
        RadialSymbol sym = RadialSymbol::exponential(2.0);
        for (double xi : {0.5, 1.0, 5.0}) {
            cplx a = gamma_hat_eval(sym, opt.lambda, xi, RVec(n, 0.0)).value;
            RVec y(n);
            for (std::size_t j = 0; j < n; ++j) y[j] = 3.0 - 1.7 * double(j);
            cplx b = gamma_hat_eval(sym, opt.lambda, xi, y).value;
            worst = std::max(worst, std::abs(a - b));
        }
        return std::make_pair(worst, std::string("max |gamma^(y1) - gamma^(y2)|"));
    });
    R.run("spectral", "dimension_independence", T.dimension, false, [&] {
        double worst = 0.0;
        for (const char* tag : {"exp:2", "ind:0,1"}) {
            RadialSymbol sym = RadialSymbol::parse(tag);
            for (double xi : {0.5, 1.0, 5.0}) {
                cplx a = gamma_hat_eval(sym, opt.lambda, xi, RVec(1, 0.5)).value;
                cplx b = gamma_hat_eval(sym, opt.lambda, xi, RVec{0.5, -0.25}).value;
                worst = std::max(worst, std::abs(a - b) / std::abs(a));
            }
        }
        return std::make_pair(worst, std::string("gamma^ for n = 1 vs n = 2"));
    });
    R.run("spectral", "vso_and_bounds", 0.0, false, [&] {
        RVec grid = log_grid(1e-3, 1e3, 2001);
        RVec deltas = {1.0, 0.1, 0.01, 0.001};
        double violation = 0.0;
        for (const char* tag : {"const:1", "exp:2", "ind:0,1", "osclog:5", "pow:1"}) {
            SpectralFunction sf(RadialSymbol::parse(tag), opt.lambda);
            RVec m = vso_modulus(sf, deltas, grid);
            for (std::size_t k = 1; k < m.size(); ++k) violation = std::max(violation, m[k] - m[k - 1]);
            BoundReport b = gamma_bound_check(sf, grid);
            violation = std::max(violation, b.max_ratio - 1.0 - 1e-13);
        }
        return std::make_pair(std::max(violation, 0.0), std::string("modulus increase as delta shrinks; excess of |gamma|/sup"));
    });

    // ---- Fock / isometry chain -----------------------------------------------------
    const XiGrid small = XiGrid::explicit_nodes({0.5, 1.0, 2.0}, {0.3, 0.5, 0.2});
    R.run("fock", "v_isometry", T.isometry, false, [&] {
        double worst = 0.0;
        const int deg = n > 2 ? 2 : 3;
        QuadratureSpec q = fock_spec(opt.quad, deg, 24);
        for (double lam : {0.0, 1.0, opt.lambda}) {
            WeightContext ctx = WeightContext::make(lam, n);
            FockSection s = FockSection::zero(n, deg, small);
            for (std::size_t m = 0; m < s.terms(); ++m) {
                for (auto& c : s.coeffs) std::fill(c.begin(), c.end(), cplx(0.0));
                s.coeffs[m % small.size()][m] = 1.0;
                double a = std::sqrt(nu_norm_sq(ctx, v_lambda_apply(ctx, s).as_function(), small, q));
                double b = fock_norm(s);
                worst = std::max(worst, std::abs(a - b) / b);
            }
        }
        return std::make_pair(worst, std::string("||V psi|| vs ||psi|| on monomial sections"));
    });
    R.run("fock", "v_adjoint_identity", T.isometry, false, [&] {
        double worst = 0.0;
        const int deg = n > 2 ? 2 : 3;
        QuadratureSpec q = fock_spec(opt.quad, deg, 24);
        for (double lam : {0.0, 1.0, opt.lambda}) {
            WeightContext ctx = WeightContext::make(lam, n);
            FockSection s = FockSection::zero(n, deg, small);
            for (std::size_t m = 0; m < s.terms(); ++m) {
                for (auto& c : s.coeffs) std::fill(c.begin(), c.end(), cplx(0.0));
                s.coeffs[m % small.size()][m] = 1.0;
                FockSection back = v_lambda_adjoint(ctx, v_lambda_apply(ctx, s).as_function(), small, deg, q);
                worst = std::max(worst, section_distance(back, s));
            }
        }
        return std::make_pair(worst, std::string("V* V psi = psi coefficientwise"));
    });
    R.run("fock", "r_roundtrip", T.roundtrip, false, [&] {
        double worst = 0.0;
        // the exact w' grid has ((deg + 2)(2 deg + 2))^n nodes, so drop to degree 1 above n = 2
        const int deg = n > 2 ? 1 : 2;
        QuadratureSpec q = fock_spec(opt.quad, deg, 16);
        Sampler smp(opt.seed + 30);
        for (double lam : {0.0, 1.0}) {
            WeightContext ctx = WeightContext::make(lam, n);
            FockSection s = FockSection::zero(n, deg, small);
            for (auto& c : s.coeffs)
                for (auto& x : c) x = {smp.g(), smp.g()};
            FockSection back = r_lambda_apply(ctx, r_lambda_adjoint(ctx, s), small, deg, q);
            worst = std::max(worst, section_distance(back, s));
        }
        return std::make_pair(worst, std::string("R R* psi = psi coefficientwise"));
    });

    // ---- Toeplitz (heavy) ------------------------------------------------------------
    R.run("toeplitz", "multiplier_diagonalization", T.multiplier, true, [&] {
        WeightContext ctx = WeightContext::make(opt.lambda, n);
        std::vector<SiegelPoint> zs = {SiegelPoint(CVec(n), cplx(0.0, 1.0)), SiegelPoint(CVec(n), cplx(0.7, 2.0)),
                                       SiegelPoint(CVec(n), cplx(-1.3, 0.5))};
        double worst = 0.0;
        std::ostringstream os;
        for (const char* tag : {"const:1", "exp:2", "ind:0,1"})
            for (double b : {0.5, 1.0, 2.0}) {
                auto rep = verify_multiplier(ctx, RadialSymbol::parse(tag), b, zs, opt.quad);
                worst = std::max({worst, rep.max_rel_deviation, rep.spread});
            }
        os << "T_a f_b / f_b vs gamma(b) on z' = 0 samples";
        return std::make_pair(worst, os.str());
    });

    return std::move(R.out);
}

}  // namespace siegel
