#include "siegel/fock.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "siegel/quadrature.hpp"
#include "rules.hpp"

namespace siegel {

// ---- multi-indices and grids -------------------------------------------------

std::vector<MultiIndex> multi_indices(std::size_t n, int degree) {
    if (n < 1) throw ContractError("multi_indices: n must be >= 1");
    if (degree < 0) throw ContractError("multi_indices: degree must be >= 0");
    std::vector<MultiIndex> out;
    for (int total = 0; total <= degree; ++total) {
        MultiIndex a(n, 0);
        // enumerate compositions of `total` into n parts, first coordinate largest first
        std::function<void(std::size_t, int)> rec = [&](std::size_t j, int left) {
            if (j + 1 == n) {
                a[j] = left;
                out.push_back(a);
                return;
            }
            for (int v = left; v >= 0; --v) {
                a[j] = v;
                rec(j + 1, left - v);
            }
        };
        rec(0, total);
    }
    return out;
}

namespace {

const std::vector<MultiIndex>& cached_indices(std::size_t n, int degree) {
    static std::mutex mu;
    static std::map<std::pair<std::size_t, int>, std::vector<MultiIndex>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, degree);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, multi_indices(n, degree)).first;
    return it->second;
}

cplx monomial(const MultiIndex& a, const CVec& w) {
    cplx v = 1.0;
    for (std::size_t j = 0; j < a.size(); ++j)
        for (int k = 0; k < a[j]; ++k) v *= w[j];
    return v;
}

cplx poly_eval(const CVec& coeffs, const std::vector<MultiIndex>& idx, const CVec& w) {
    cplx s{};
    for (std::size_t m = 0; m < idx.size(); ++m)
        if (coeffs[m] != cplx(0.0)) s += coeffs[m] * monomial(idx[m], w);
    return s;
}

}  // namespace

XiGrid XiGrid::laguerre(int count, double rate) {
    if (count < 1) throw ContractError("XiGrid: need at least one node");
    if (!(rate > 0.0)) throw ContractError("XiGrid: rate must be positive");
    const quad::Rule& r = quad::laguerre(count, 0.0);
    XiGrid g;
    for (std::size_t i = 0; i < r.size(); ++i) {
        g.nodes.push_back(r.x[i] / rate);
        g.weights.push_back(std::exp(std::log(r.w[i]) + r.x[i]) / rate);
    }
    return g;
}

XiGrid XiGrid::explicit_nodes(RVec nodes, RVec weights) {
    if (nodes.empty() || nodes.size() != weights.size())
        throw ContractError("XiGrid: need matching, nonempty node and weight lists");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!(nodes[i] > 0.0)) throw ContractError("XiGrid: nodes must be positive");
        if (!(weights[i] > 0.0)) throw ContractError("XiGrid: weights must be positive");
        if (i > 0 && !(nodes[i] > nodes[i - 1])) throw ContractError("XiGrid: nodes must increase");
    }
    return {std::move(nodes), std::move(weights)};
}

int XiGrid::find(double xi) const {
    for (std::size_t k = 0; k < nodes.size(); ++k)
        if (std::abs(nodes[k] - xi) <= 1e-12 * nodes[k]) return int(k);
    return -1;
}

double XiGrid::min_gap() const {
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < nodes.size(); ++k) g = std::min(g, nodes[k] - nodes[k - 1]);
    return g;
}

// ---- sections ----------------------------------------------------------------

FockSection FockSection::zero(std::size_t n, int degree, const XiGrid& grid) {
    FockSection s;
    s.n = n;
    s.degree = degree;
    s.grid = grid;
    s.coeffs.assign(grid.size(), CVec(cached_indices(n, degree).size()));
    return s;
}

std::size_t FockSection::terms() const { return cached_indices(n, degree).size(); }

const std::vector<MultiIndex>& FockSection::indices() const { return cached_indices(n, degree); }

cplx FockSection::eval(std::size_t node, const CVec& w) const {
    require_same_dim(w.size(), n, "FockSection::eval");
    return poly_eval(coeffs.at(node), indices(), w);
}

void FockSection::check() const {
    if (coeffs.size() != grid.size()) throw ContractError("FockSection: one coefficient vector per node");
    for (const auto& c : coeffs)
        if (c.size() != terms()) throw ContractError("FockSection: coefficient count does not match degree");
}

double monomial_norm_sq(const MultiIndex& alpha, double xi) {
    double lf = 0.0;
    int total = 0;
    for (int a : alpha) {
        lf += std::lgamma(a + 1.0);
        total += a;
    }
    return std::exp(lf - total * std::log(2.0 * xi));
}

double fock_node_norm_sq(const FockSection& s, std::size_t node) {
    s.check();
    const auto& idx = s.indices();
    const double xi = s.grid.nodes.at(node);
    double acc = 0.0;
    for (std::size_t m = 0; m < idx.size(); ++m) acc += std::norm(s.coeffs[node][m]) * monomial_norm_sq(idx[m], xi);
    return acc;
}

double fock_norm_sq(const FockSection& s) {
    double acc = 0.0;
    for (std::size_t k = 0; k < s.grid.size(); ++k) acc += s.grid.weights[k] * fock_node_norm_sq(s, k);
    return acc;
}

double fock_norm(const FockSection& s) { return std::sqrt(fock_norm_sq(s)); }

// ---- V and its adjoint -----------------------------------------------------------

double v_lambda_constant(const WeightContext& ctx, double xi) {
    const double a = ctx.lambda + double(ctx.n) + 1.0;
    return 2.0 * std::sqrt(std::exp(std::log(kPi) + a * std::log(2.0 * xi) - std::lgamma(a + 1.0)));
}

cplx VImage::operator()(const CVec& w, double xi, double r) const {
    int k = s_.grid.find(xi);
    if (k < 0) throw ContractError("VImage: xi is not a node of the section grid");
    if (!(r > 0.0)) throw ContractError("VImage: r must be positive");
    return v_lambda_constant(ctx_, xi) * std::exp(-xi * norm2(w) - xi / r) * s_.eval(std::size_t(k), w);
}

FiberFn VImage::as_function() const {
    return [self = *this](const CVec& w, double xi, double r) { return self(w, xi, r); };
}

VImage v_lambda_apply(const WeightContext& ctx, const FockSection& s) {
    s.check();
    require_same_dim(ctx.n, s.n, "v_lambda_apply");
    return VImage(ctx, s);
}

double nu_norm_sq(const WeightContext& ctx, const FiberFn& phi, const XiGrid& grid,
                  const QuadratureSpec& q) {
    q.validate();
    const quad::Rule& ur = quad::laguerre(q.r_nodes, ctx.lambda);
    double total = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double xi = grid.nodes[k], rate = 2.0 * xi;
        auto W = detail::wprime_rule(ctx.n, false, q.wprime_nodes, q.wprime_angles, rate);
        RVec part(W.size());
        quad::parallel_for(W.size(), q.threads, [&](std::size_t iw) {
            double acc = 0.0;
            for (std::size_t i = 0; i < ur.size(); ++i) {
                const double u = ur.x[i] / rate;
                const double wu = std::exp(std::log(ur.w[i]) + ur.x[i] - (ctx.lambda + 1.0) * std::log(rate));
                acc += wu * std::norm(phi(W[iw].w, xi, 1.0 / u));
            }
            part[iw] = W[iw].weight * acc;
        });
        double node = 0.0;
        for (double v : part) node += v;
        total += grid.weights[k] * 0.25 * ctx.c_lambda * node;
    }
    return total;
}

FockSection v_lambda_adjoint(const WeightContext& ctx, const FiberFn& phi, const XiGrid& grid,
                             int degree, const QuadratureSpec& q) {
    q.validate();
    FockSection out = FockSection::zero(ctx.n, degree, grid);
    const auto& idx = out.indices();
    const double lambda = ctx.lambda, n = double(ctx.n);
    const quad::Rule& sr = quad::laguerre(q.r_nodes, lambda);
    const int angles = std::max(q.wprime_angles, 2 * degree + 2);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double xi = grid.nodes[k], rate = 2.0 * xi;
        const double adj = std::exp(0.5 * (std::log(kPi) + (lambda - n + 1.0) * std::log(rate) +
                                            std::lgamma(lambda + n + 2.0)) -
                                    std::log(2.0 * kPi) - std::lgamma(lambda + 1.0));
        auto W = detail::wprime_rule(ctx.n, false, q.wprime_nodes, angles, rate);
        // g(w) e^{-2 xi |w|^2} at every w node, with g the unprojected adjoint
        CVec gw(W.size());
        quad::parallel_for(W.size(), q.threads, [&](std::size_t iw) {
            const CVec& w = W[iw].w;
            // int_0^inf phi(w, xi, r) e^{-xi/r} r^{-lambda-2} dr with s = 2 xi / r
            cplx I{};
            for (std::size_t i = 0; i < sr.size(); ++i) {
                const double s = sr.x[i];
                I += sr.w[i] * phi(w, xi, rate / s) * std::exp(0.5 * s);
            }
            I *= std::pow(rate, -(lambda + 1.0));
            gw[iw] = adj * I * std::exp(-xi * norm2(w));  // e^{xi|w|^2} e^{-2 xi |w|^2}
        });
        const double fock_weight = std::pow(rate / kPi, n);
        for (std::size_t m = 0; m < idx.size(); ++m) {
            cplx ip{};
            for (std::size_t iw = 0; iw < W.size(); ++iw)
                ip += W[iw].weight * gw[iw] * std::conj(monomial(idx[m], W[iw].w));
            out.coeffs[k][m] = fock_weight * ip / monomial_norm_sq(idx[m], xi);
        }
    }
    return out;
}

// ---- test class ------------------------------------------------------------------

cplx TestTerm::spectral_density(double xi) const {
    if (profile != Profile::Packet) throw ContractError("spectral_density: plane-wave terms are discrete");
    if (!(xi > 0.0)) return 0.0;
    return amp * std::exp(m * std::log(xi) - beta * xi);
}

void TestClassFunction::add_packet(CVec poly, int degree, cplx amp, int m, double beta) {
    if (poly.size() != cached_indices(n_, degree).size())
        throw ContractError("add_packet: polynomial coefficient count does not match degree");
    if (m < 0 || !(beta > 0.0)) throw ContractError("add_packet: need m >= 0 and beta > 0");
    TestTerm t;
    t.profile = TestTerm::Profile::Packet;
    t.degree = degree;
    t.poly = std::move(poly);
    t.amp = amp;
    t.m = m;
    t.beta = beta;
    terms_.push_back(std::move(t));
}

void TestClassFunction::add_plane_wave(CVec poly, int degree, cplx amp, double xi0) {
    if (poly.size() != cached_indices(n_, degree).size())
        throw ContractError("add_plane_wave: polynomial coefficient count does not match degree");
    if (!(xi0 > 0.0)) throw ContractError("add_plane_wave: frequency must be positive");
    TestTerm t;
    t.profile = TestTerm::Profile::PlaneWave;
    t.degree = degree;
    t.poly = std::move(poly);
    t.amp = amp;
    t.xi0 = xi0;
    terms_.push_back(std::move(t));
}

cplx TestClassFunction::term_value(std::size_t k, const SiegelPoint& z) const {
    const TestTerm& t = terms_.at(k);
    cplx p = poly_eval(t.poly, cached_indices(n_, t.degree), z.zp());
    if (p == cplx(0.0)) return 0.0;
    if (t.profile == TestTerm::Profile::PlaneWave) return p * t.amp * std::exp(cplx(0.0, t.xi0) * z.zl());
    cplx base = t.beta - cplx(0.0, 1.0) * z.zl();
    return p * t.amp * std::exp(std::lgamma(t.m + 1.0) - double(t.m + 1) * std::log(base));
}

cplx TestClassFunction::operator()(const SiegelPoint& z) const {
    require_same_dim(z.dim(), n_, "TestClassFunction");
    cplx s{};
    for (std::size_t k = 0; k < terms_.size(); ++k) s += term_value(k, z);
    return s;
}

DomainFn TestClassFunction::as_function() const {
    return [self = *this](const SiegelPoint& z) { return self(z); };
}

// ---- R and R* ----------------------------------------------------------------------

FockSection r_lambda_apply(const WeightContext& ctx, const TestClassFunction& f, const XiGrid& grid,
                           int degree, const QuadratureSpec& q) {
    q.validate();
    require_same_dim(ctx.n, f.dim(), "r_lambda_apply");
    std::vector<std::size_t> packets, waves;
    for (std::size_t k = 0; k < f.terms().size(); ++k) {
        const auto& t = f.terms()[k];
        if (t.degree > degree)
            throw UnsupportedError("r_lambda_apply: term degree exceeds the section degree");
        (t.profile == TestTerm::Profile::Packet ? packets : waves).push_back(k);
    }

    // Continuous part: windowed Fourier transform over t in [-W, W] with
    // W = t_window (beta + Y), Y = 1/r + |w'|^2 the imaginary part of z_{n+1}.
    double beta_max = 0.0;
    for (auto k : packets) beta_max = std::max(beta_max, f.terms()[k].beta);
    RVec px, pw;
    quad::composite_nodes(-1.0, 1.0, std::max(1, q.t_nodes / 8), 8, px, pw);

    // Discrete part: Gaussian-windowed mean (1/sqrt(2 pi) T) int g(t) e^{-i xi t}
    // e^{-t^2/(2T^2)} dt. Frequencies other than xi leak by e^{-(gap T)^2 / 2}.
    std::set<double> freqs(grid.nodes.begin(), grid.nodes.end());
    for (auto k : waves) freqs.insert(f.terms()[k].xi0);
    double gap = std::numeric_limits<double>::infinity();
    for (auto it = freqs.begin(); std::next(it) != freqs.end() && it != freqs.end(); ++it)
        gap = std::min(gap, *std::next(it) - *it);
    const double T = std::isfinite(gap) ? 8.0 / gap : 8.0;
    const double spread = freqs.empty() ? 0.0 : *freqs.rbegin() - *freqs.begin();
    const double panel = std::min(0.5 * T, kPi / std::max(spread, 1e-300));
    const int bohr_panels = std::max(8, int(std::ceil(16.0 * T / panel)));
    RVec bx, bw;
    quad::composite_nodes(-8.0 * T, 8.0 * T, bohr_panels, 8, bx, bw);
    const double gauss_norm = 1.0 / (std::sqrt(2.0 * kPi) * T);

    FiberFn phi = [&](const CVec& w, double xi, double r) -> cplx {
        const int node = grid.find(xi);
        if (node < 0) throw ContractError("r_lambda_apply: xi is not a grid node");
        const double Y = 1.0 / r + norm2(w);
        cplx out{};
        if (!packets.empty()) {
            const double half = q.t_window * (beta_max + Y);
            auto g = [&](double t) {
                SiegelPoint z(w, cplx(t, Y));
                cplx s{};
                for (auto k : packets) s += f.term_value(k, z);
                return s * std::exp(cplx(0.0, -xi * t));
            };
            cplx s{};
            for (std::size_t i = 0; i < px.size(); ++i) s += pw[i] * g(half * px[i]);
            s *= half;
            const double h = 1e-3 * (beta_max + Y);
            for (double sgn : {-1.0, 1.0}) {
                const double Te = sgn * half;
                cplx f0 = g(Te), d = (g(Te + h) - g(Te - h)) / (2.0 * h);
                if (std::abs(d) > 0.0) s += -sgn * f0 * f0 / d;
            }
            out += s / std::sqrt(2.0 * kPi);
        }
        if (!waves.empty()) {
            cplx s{};
            for (std::size_t i = 0; i < bx.size(); ++i) {
                const double t = bx[i];
                SiegelPoint z(w, cplx(t, Y));
                cplx v{};
                for (auto k : waves) v += f.term_value(k, z);
                s += bw[i] * v * std::exp(cplx(-0.5 * t * t / (T * T), -xi * t));
            }
            out += s * gauss_norm * std::sqrt(2.0 * kPi) / grid.weights[std::size_t(node)];
        }
        return out;
    };
    return v_lambda_adjoint(ctx, phi, grid, degree, q);
}

TestClassFunction r_lambda_adjoint(const WeightContext& ctx, const FockSection& s) {
    s.check();
    require_same_dim(ctx.n, s.n, "r_lambda_adjoint");
    TestClassFunction f(s.n);
    const double inv_sqrt = 1.0 / std::sqrt(2.0 * kPi);
    for (std::size_t k = 0; k < s.grid.size(); ++k) {
        bool any = false;
        for (const auto& c : s.coeffs[k]) any = any || c != cplx(0.0);
        if (!any) continue;
        const double xi = s.grid.nodes[k];
        f.add_plane_wave(s.coeffs[k], s.degree, s.grid.weights[k] * inv_sqrt * v_lambda_constant(ctx, xi), xi);
    }
    return f;
}

double section_distance(const FockSection& a, const FockSection& b) {
    a.check();
    b.check();
    if (a.grid.nodes != b.grid.nodes || a.degree != b.degree || a.n != b.n)
        throw ContractError("section_distance: sections live on different grids");
    double diff = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < a.coeffs.size(); ++k)
        for (std::size_t m = 0; m < a.coeffs[k].size(); ++m) {
            diff = std::max(diff, std::abs(a.coeffs[k][m] - b.coeffs[k][m]));
            scale = std::max(scale, std::abs(b.coeffs[k][m]));
        }
    return scale > 0.0 ? diff / scale : diff;
}

}  // namespace siegel
