#include "siegel/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "siegel/quadrature.hpp"
#include "siegel/special.hpp"

namespace siegel {

namespace {

const double kInf = std::numeric_limits<double>::infinity();

double parse_number(const std::string& s, const std::string& whole) {
    std::size_t used = 0;
    double v;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ContractError("bad number '" + s + "' in symbol spec '" + whole + "'");
    }
    while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
    if (used != s.size()) throw ContractError("bad number '" + s + "' in symbol spec '" + whole + "'");
    return v;
}

RVec parse_list(const std::string& s, const std::string& whole) {
    RVec out;
    std::size_t start = 0;
    while (true) {
        auto comma = s.find(',', start);
        out.push_back(parse_number(s.substr(start, comma - start), whole));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

void check_lambda(double lambda) {
    if (!(lambda >= kLambdaFloor)) {
        std::ostringstream os;
        os << "lambda must be >= " << kLambdaFloor << " (got " << lambda << ")";
        throw ContractError(os.str());
    }
}

void check_xi(double xi) {
    if (!(xi > 0.0) || !std::isfinite(xi)) throw ContractError("xi must be a positive finite number");
}

}  // namespace

// ---- catalog ----------------------------------------------------------------

RadialSymbol RadialSymbol::constant(cplx c) {
    RadialSymbol s;
    s.kind = SymbolKind::Constant;
    s.params = {};
    s.amplitude = c;
    s.fn = [](double) { return cplx(1.0); };
    s.sup_bound = std::abs(c);
    return s;
}

RadialSymbol RadialSymbol::exponential(double beta) {
    if (!(beta >= 0.0) || !std::isfinite(beta)) throw ContractError("exp symbol needs beta >= 0");
    RadialSymbol s;
    s.kind = SymbolKind::Exponential;
    s.params = {beta};
    s.fn = [beta](double r) { return cplx(std::exp(-beta * r)); };
    s.sup_bound = 1.0;
    if (beta > 0.0) s.scales = {1.0 / beta};
    return s;
}

RadialSymbol RadialSymbol::indicator(double a, double b) {
    if (!(a >= 0.0) || !(b > a) || std::isnan(b)) throw ContractError("ind symbol needs 0 <= a < b");
    RadialSymbol s;
    s.kind = SymbolKind::Indicator;
    s.params = {a, b};
    s.fn = [a, b](double r) { return cplx((r > a && r <= b) ? 1.0 : 0.0); };
    s.sup_bound = 1.0;
    if (a > 0.0) s.breaks.push_back(a);
    if (std::isfinite(b)) s.breaks.push_back(b);
    return s;
}

RadialSymbol RadialSymbol::power(double p, double cutoff) {
    if (!std::isfinite(p)) throw ContractError("pow symbol needs a finite exponent");
    if (!(cutoff > 0.0) || !std::isfinite(cutoff)) throw ContractError("pow symbol needs cutoff > 0");
    RadialSymbol s;
    s.kind = SymbolKind::Power;
    s.params = {p, cutoff};
    s.fn = [p, cutoff](double r) { return cplx(r <= cutoff ? std::pow(r, p) : 0.0); };
    s.sup_bound = p >= 0.0 ? std::pow(cutoff, p) : kInf;
    s.breaks = {cutoff};
    return s;
}

RadialSymbol RadialSymbol::osclog(double omega) {
    if (!std::isfinite(omega)) throw ContractError("osclog symbol needs finite omega");
    RadialSymbol s;
    s.kind = SymbolKind::OscLog;
    s.params = {omega};
    s.fn = [omega](double r) { return std::exp(cplx(0.0, omega * std::log(r))); };
    s.sup_bound = 1.0;
    return s;
}

RadialSymbol RadialSymbol::custom(std::function<cplx(double)> f, double sup_bound, RVec breaks,
                                  RVec scales, std::string tag) {
    if (!f) throw ContractError("custom symbol needs a callable");
    if (!(sup_bound > 0.0)) throw ContractError("custom symbol needs a positive sup bound");
    RadialSymbol s;
    s.kind = SymbolKind::Custom;
    s.fn = std::move(f);
    s.sup_bound = sup_bound;
    s.breaks = std::move(breaks);
    s.scales = std::move(scales);
    s.custom_tag = std::move(tag);
    return s;
}

RadialSymbol RadialSymbol::parse(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw ContractError("symbol spec '" + text + "' must look like kind:params");
    std::string kind = text.substr(0, colon), rest = text.substr(colon + 1);
    RVec v = parse_list(rest, text);
    auto need = [&](std::size_t lo, std::size_t hi) {
        if (v.size() < lo || v.size() > hi)
            throw ContractError("wrong number of parameters in symbol spec '" + text + "'");
    };
    if (kind == "const") {
        need(1, 1);
        return constant(v[0]);
    }
    if (kind == "exp") {
        need(1, 1);
        return exponential(v[0]);
    }
    if (kind == "ind") {
        need(2, 2);
        return indicator(v[0], v[1]);
    }
    if (kind == "pow") {
        need(1, 2);
        return v.size() == 2 ? power(v[0], v[1]) : power(v[0]);
    }
    if (kind == "osclog") {
        need(1, 1);
        return osclog(v[0]);
    }
    throw ContractError("unknown symbol kind '" + kind + "' (expected const, exp, ind, pow, osclog)");
}

RadialSymbol RadialSymbol::scaled(cplx c) const {
    RadialSymbol s = *this;
    s.amplitude *= c;
    s.sup_bound *= std::abs(c);
    return s;
}

std::string RadialSymbol::tag() const {
    std::string base;
    switch (kind) {
        case SymbolKind::Constant: base = "const:" + fmt(1.0); break;
        case SymbolKind::Exponential: base = "exp:" + fmt(params[0]); break;
        case SymbolKind::Indicator: base = "ind:" + fmt(params[0]) + "," + fmt(params[1]); break;
        case SymbolKind::Power: base = "pow:" + fmt(params[0]) + "," + fmt(params[1]); break;
        case SymbolKind::OscLog: base = "osclog:" + fmt(params[0]); break;
        case SymbolKind::Custom: base = custom_tag; break;
    }
    if (kind == SymbolKind::Constant && amplitude.imag() == 0.0) return "const:" + fmt(amplitude.real());
    if (amplitude != cplx(1.0)) {
        std::ostringstream os;
        os.precision(17);
        os << "(" << amplitude.real() << (amplitude.imag() < 0 ? "" : "+") << amplitude.imag()
           << "i)*" << base;
        return os.str();
    }
    return base;
}

bool RadialSymbol::spot_check_bound() const {
    for (double r : log_grid(1e-6, 1e6, 241))
        if (std::abs((*this)(r)) > sup_bound * (1.0 + 1e-12)) return false;
    return true;
}

std::string to_string(GammaMode m) {
    switch (m) {
        case GammaMode::Auto: return "auto";
        case GammaMode::ClosedForm: return "closed_form";
        case GammaMode::Quadrature: return "quadrature";
    }
    return "?";
}

GammaMode parse_gamma_mode(const std::string& s) {
    if (s == "auto") return GammaMode::Auto;
    if (s == "closed" || s == "closed_form") return GammaMode::ClosedForm;
    if (s == "quad" || s == "quadrature") return GammaMode::Quadrature;
    throw ContractError("unknown mode '" + s + "' (expected auto, closed_form, quadrature)");
}

// ---- gamma ------------------------------------------------------------------

bool has_closed_form(const RadialSymbol& sym, double lambda) {
    switch (sym.kind) {
        case SymbolKind::Constant:
        case SymbolKind::Exponential:
        case SymbolKind::Indicator:
        case SymbolKind::OscLog: return true;
        case SymbolKind::Power: return lambda + 1.0 + sym.params[0] > 0.0;
        case SymbolKind::Custom: return false;
    }
    return false;
}

cplx gamma_closed_form(const RadialSymbol& sym, double lambda, double xi) {
    check_lambda(lambda);
    check_xi(xi);
    const double a1 = lambda + 1.0;
    cplx v;
    switch (sym.kind) {
        case SymbolKind::Constant: v = 1.0; break;
        case SymbolKind::Exponential: {
            const double beta = sym.params[0];
            v = std::exp(a1 * (std::log(2.0 * xi) - std::log(2.0 * xi + beta)));
            break;
        }
        case SymbolKind::Indicator: {
            const double a = sym.params[0], b = sym.params[1];
            v = special::gamma_p_diff(a1, 2.0 * xi * a, std::isfinite(b) ? 2.0 * xi * b : kInf);
            break;
        }
        case SymbolKind::Power: {
            const double p = sym.params[0], R = sym.params[1];
            if (!(a1 + p > 0.0))
                throw UnsupportedError("pow symbol: r^p e^{-2 xi r} r^lambda is not integrable at 0");
            v = std::exp(std::lgamma(a1 + p) - std::lgamma(a1) - p * std::log(2.0 * xi)) *
                special::gamma_p(a1 + p, 2.0 * xi * R);
            break;
        }
        case SymbolKind::OscLog: {
            const double om = sym.params[0];
            cplx lg = special::lgamma(cplx(a1, om)) - std::lgamma(a1);
            v = std::exp(cplx(0.0, -om * std::log(2.0 * xi)) + lg);
            break;
        }
        case SymbolKind::Custom:
            throw UnsupportedError("no closed form for custom symbol '" + sym.custom_tag + "'");
    }
    return sym.amplitude * v;
}

GammaValue gamma_quadrature(const RadialSymbol& sym, double lambda, double xi, double tol) {
    check_lambda(lambda);
    check_xi(xi);
    if (!(tol > 0.0)) throw ContractError("gamma tolerance must be positive");
    if (sym.kind == SymbolKind::Power && !(lambda + 1.0 + sym.params[0] > 0.0))
        throw UnsupportedError("pow symbol: r^p e^{-2 xi r} r^lambda is not integrable at 0");
    const double two_xi = 2.0 * xi;
    RVec breaks;
    for (double r : sym.breaks) breaks.push_back(two_xi * r);
    for (double r : sym.scales) breaks.push_back(two_xi * r);
    auto h = [&](double s) { return sym(s / two_xi); };
    // The weight has mass Gamma(lambda+1), so sup|a~| * Gamma(lambda+1) bounds the L1 norm
    // of the integrand; a few hundred ulps of that is the roundoff floor, and no relative
    // target below it is reachable when the integrand oscillates or the value is tiny.
    const double g1 = std::tgamma(lambda + 1.0);
    const double floor = std::isfinite(sym.sup_bound) ? 256.0 * std::numeric_limits<double>::epsilon() * sym.sup_bound : 1e-300;
    quad::Result r = quad::gamma_weighted(h, lambda, breaks, tol, floor * g1);
    GammaValue out{r.value / g1, r.error / g1, GammaMode::Quadrature};
    if (!(out.error <= std::max(tol * std::abs(out.value), floor))) {
        std::ostringstream os;
        os << "gamma quadrature did not converge for " << sym.tag() << " at xi=" << xi
           << " (estimate " << out.error << ", value " << std::abs(out.value) << ", pieces "
           << r.intervals << ")";
        throw ConvergenceError(os.str());
    }
    return out;
}

SpectralFunction::SpectralFunction(RadialSymbol sym, double lambda, GammaMode mode)
    : sym_(std::move(sym)), lambda_(lambda), mode_(mode) {
    check_lambda(lambda);
    if (mode == GammaMode::ClosedForm && !has_closed_form(sym_, lambda))
        throw UnsupportedError("symbol " + sym_.tag() + " has no closed form");
}

GammaValue SpectralFunction::eval(double xi, double tol) const {
    check_xi(xi);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find({xi, tol});
        if (it != cache_.end()) return it->second;
    }
    GammaValue v;
    bool closed = mode_ == GammaMode::ClosedForm ||
                  (mode_ == GammaMode::Auto && has_closed_form(sym_, lambda_));
    if (closed) v = {gamma_closed_form(sym_, lambda_, xi), 0.0, GammaMode::ClosedForm};
    else v = gamma_quadrature(sym_, lambda_, xi, tol);
    std::lock_guard<std::mutex> lock(mutex_);
    cache_.emplace(std::make_pair(xi, tol), v);
    return v;
}

GammaValue gamma_eval(const SpectralFunction& sf, double xi, double tol) { return sf.eval(xi, tol); }

// ---- gamma through the (u', t) integral --------------------------------------

GammaValue gamma_hat_eval(const RadialSymbol& sym, double lambda, double xi, const RVec& y_prime,
                          const GammaHatOptions& opt) {
    check_lambda(lambda);
    check_xi(xi);
    const std::size_t n = y_prime.size();
    if (n < 1) throw ContractError("gamma_hat_eval: y' must have n >= 1 entries");
    if (opt.hermite_nodes < 1) throw ContractError("gamma_hat_eval: need hermite nodes >= 1");
    const quad::Rule& gh = quad::hermite(opt.hermite_nodes);
    const std::size_t m = gh.size();
    std::size_t total = 1;
    for (std::size_t k = 0; k < n; ++k) total *= m;

    const double sqrt_xi = std::sqrt(xi);
    // f(u', t) = a~(1/(2t)); the u' dependence is carried by the Gaussian only.
    auto f = [&](const RVec&, double t) { return sym(1.0 / (2.0 * t)); };

    // Integral over u' of f(u',t) exp(-|sqrt(xi) u'/(2t) - y'|^2): the Gaussian is
    // centred at u' = 2t y'/sqrt(xi) with width 2t/sqrt(xi).
    auto u_integral = [&](double t) {
        const double scale = 2.0 * t / sqrt_xi;
        cplx acc{};
        RVec u(n);
        for (std::size_t idx = 0; idx < total; ++idx) {
            std::size_t rem = idx;
            double w = 1.0;
            for (std::size_t k = 0; k < n; ++k) {
                std::size_t i = rem % m;
                rem /= m;
                u[k] = scale * (y_prime[k] + gh.x[i]);
                w *= gh.w[i];
            }
            acc += w * f(u, t);
        }
        return acc * std::pow(scale, double(n));
    };

    const double pref_log = (lambda + 0.5 * double(n) + 1.0) * std::log(xi) -
                            double(n) * std::log(2.0) - 0.5 * double(n) * std::log(kPi) -
                            std::lgamma(lambda + 1.0);
    const double pref = std::exp(pref_log);
    const double p = lambda + double(n) + 2.0;
    auto integrand_t = [&](double t) -> cplx {
        if (!(t > 0.0)) return 0.0;
        return u_integral(t) * std::exp(-xi / t - p * std::log(t));
    };

    RVec cuts;
    for (double r : sym.breaks)
        if (r > 0.0 && std::isfinite(r)) cuts.push_back(1.0 / (2.0 * r));
    for (double r : sym.scales)
        if (r > 0.0 && std::isfinite(r)) cuts.push_back(1.0 / (2.0 * r));
    cuts.push_back(xi / (lambda + 2.0));  // peak of e^{-xi/t} t^{-(lambda+2)}
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    RVec finite{0.0};
    finite.insert(finite.end(), cuts.begin(), cuts.end());
    const double tol = opt.tol;
    // |a~| <= sup and the weight has unit mass, so tol * sup is an absolute target that
    // stays reachable when oscillation (osclog) cancels the value well below the mass.
    const double mass = std::isfinite(sym.sup_bound) ? sym.sup_bound : 0.0;
    const double abs_raw = 0.5 * tol * mass / pref;
    quad::Result head = quad::adaptive(integrand_t, finite, tol, abs_raw, 4000);

    // Tail t in [T, inf): t = T v^{-1/(lambda+1)} turns t^{-(lambda+2)} dt into a flat
    // measure on v in (0, 1].
    const double T = cuts.back();
    const double e = 1.0 / (lambda + 1.0);
    auto tail = [&](double v) -> cplx {
        if (!(v > 0.0)) return 0.0;
        double t = T * std::pow(v, -e);
        // integrand_t(t) * |dt/dv| with the power of t absorbed analytically
        return u_integral(t) * std::exp(-xi / t - double(n) * std::log(t)) *
               (std::pow(T, -(lambda + 1.0)) * e);
    };
    quad::Result tl = quad::adaptive(tail, 0.0, 1.0, tol, abs_raw, 4000);

    cplx val = pref * (head.value + tl.value);
    double err = pref * (head.error + tl.error);
    if (!(err <= 10.0 * tol * std::max(std::abs(val), mass) + 1e-300)) {
        std::ostringstream os;
        os << "gamma_hat quadrature did not converge for " << sym.tag() << " at xi=" << xi
           << " (estimate " << err << ")";
        throw ConvergenceError(os.str());
    }
    return {val, err, GammaMode::Quadrature};
}

// ---- VSO diagnostics ----------------------------------------------------------

RVec log_grid(double a, double b, int count) {
    if (!(a > 0.0) || !(b >= a) || count < 1) throw ContractError("log_grid: need 0 < a <= b, count >= 1");
    RVec g(count);
    if (count == 1) {
        g[0] = a;
        return g;
    }
    const double la = std::log(a), lb = std::log(b);
    for (int i = 0; i < count; ++i) g[i] = std::exp(la + (lb - la) * i / (count - 1));
    g.front() = a;
    g.back() = b;
    return g;
}

RVec vso_modulus(const SpectralFunction& sf, const RVec& deltas, const RVec& grid) {
    for (double x : grid)
        if (!(x > 0.0)) throw ContractError("vso_modulus: grid must be positive");
    for (double d : deltas)
        if (!(d > 0.0)) throw ContractError("vso_modulus: deltas must be positive");
    RVec g = grid;
    std::sort(g.begin(), g.end());
    CVec vals(g.size());
    RVec logs(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        vals[i] = sf(g[i]);
        logs[i] = std::log(g[i]);
    }
    RVec out;
    for (double d : deltas) {
        double m = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = i + 1; j < g.size() && logs[j] - logs[i] <= d; ++j)
                m = std::max(m, std::abs(vals[i] - vals[j]));
        out.push_back(m);
    }
    return out;
}

BoundReport gamma_bound_check(const SpectralFunction& sf, const RVec& grid) {
    BoundReport rep;
    const double sup = sf.symbol().sup_bound;
    if (!std::isfinite(sup)) return rep;  // nothing to bound
    for (double xi : grid) {
        GammaValue v = sf.eval(xi);
        double ratio = sup > 0.0 ? std::abs(v.value) / sup : 0.0;
        if (ratio > rep.max_ratio) {
            rep.max_ratio = ratio;
            rep.worst_xi = xi;
        }
        double slack = sup * 1e-13 + v.error;
        if (std::abs(v.value) > sup + slack) {
            rep.ok = false;
            std::ostringstream os;
            os << "|gamma(" << xi << ")| = " << std::abs(v.value) << " exceeds sup|a~| = " << sup;
            throw InvariantError(os.str());
        }
    }
    return rep;
}

}  // namespace siegel
