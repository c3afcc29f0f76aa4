#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "siegel/types.hpp"

namespace siegel {

enum class SymbolKind { Constant, Exponential, Indicator, Power, OscLog, Custom };

// Profile r -> a~(r) of a symbol a(z) = a~(Im z_{n+1} - |z'|^2).
//
// Custom profiles must be bounded and piecewise continuous, with every jump listed
// in `breaks`; the quadrature relies on this.
struct RadialSymbol {
    SymbolKind kind = SymbolKind::Constant;
    RVec params;                 // catalog parameters, see the factories
    cplx amplitude{1.0, 0.0};    // overall factor
    std::function<cplx(double)> fn;
    double sup_bound = 1.0;      // sup |a~|; +inf for unbounded power profiles
    RVec breaks;                 // r-values where a~ may jump
    RVec scales;                 // r-values where a~ changes character (quadrature hints)
    std::string custom_tag;

    cplx operator()(double r) const { return amplitude * fn(r); }

    static RadialSymbol constant(cplx c);
    static RadialSymbol exponential(double beta);           // e^{-beta r}, beta >= 0
    static RadialSymbol indicator(double a, double b);      // 1 on (a, b], b may be +inf
    static RadialSymbol power(double p, double cutoff = 1.0);  // r^p on (0, cutoff], 0 beyond
    static RadialSymbol osclog(double omega);               // e^{i omega log r}
    static RadialSymbol custom(std::function<cplx(double)> f, double sup_bound, RVec breaks = {},
                               RVec scales = {}, std::string tag = "custom");

    // const:c, exp:beta, ind:a,b (b may be inf), pow:p[,cutoff], osclog:omega
    static RadialSymbol parse(const std::string& text);

    RadialSymbol scaled(cplx c) const;
    std::string tag() const;

    // Samples |a~| on a log grid over [1e-6, 1e6] and compares with sup_bound.
    bool spot_check_bound() const;
};

enum class GammaMode { Auto, ClosedForm, Quadrature };

std::string to_string(GammaMode m);
GammaMode parse_gamma_mode(const std::string& s);

struct GammaValue {
    cplx value{};
    double error = 0.0;
    GammaMode mode = GammaMode::ClosedForm;  // which route produced the value
};

// Lowest lambda accepted by the spectral routines.
inline constexpr double kLambdaFloor = -0.999;

bool has_closed_form(const RadialSymbol& sym, double lambda);

// Analytic value of gamma for catalog symbols; UnsupportedError otherwise.
cplx gamma_closed_form(const RadialSymbol& sym, double lambda, double xi);

// gamma(xi) = (2xi)^{lambda+1}/Gamma(lambda+1) int_0^inf a~(r) e^{-2 xi r} r^lambda dr,
// evaluated as int h(s) s^lambda e^{-s} ds / Gamma(lambda+1) with h(s) = a~(s/(2xi)).
GammaValue gamma_quadrature(const RadialSymbol& sym, double lambda, double xi, double tol);

class SpectralFunction {
public:
    SpectralFunction(RadialSymbol sym, double lambda, GammaMode mode = GammaMode::Auto);

    const RadialSymbol& symbol() const { return sym_; }
    double lambda() const { return lambda_; }
    GammaMode mode() const { return mode_; }

    GammaValue eval(double xi, double tol = 1e-12) const;
    cplx operator()(double xi) const { return eval(xi).value; }

private:
    RadialSymbol sym_;
    double lambda_;
    GammaMode mode_;
    mutable std::mutex mutex_;
    mutable std::map<std::pair<double, double>, GammaValue> cache_;
};

GammaValue gamma_eval(const SpectralFunction& sf, double xi, double tol = 1e-12);

struct GammaHatOptions {
    int hermite_nodes = 8;   // Gauss-Hermite nodes per u' coordinate
    double tol = 1e-10;      // t-integration tolerance, relative to max(|gamma|, sup|a~|)
};

// gamma^ through the integral over (u', t) in R^n x R_+ with f(u', t) = a~(1/(2t)).
GammaValue gamma_hat_eval(const RadialSymbol& sym, double lambda, double xi, const RVec& y_prime,
                          const GammaHatOptions& opt = {});

// Logarithmically spaced grid, count points from a to b inclusive.
RVec log_grid(double a, double b, int count);

// For each delta: max |gamma(x) - gamma(y)| over grid pairs with |log x - log y| <= delta.
RVec vso_modulus(const SpectralFunction& sf, const RVec& deltas, const RVec& grid);

struct BoundReport {
    double max_ratio = 0.0;  // max |gamma| / sup_bound
    double worst_xi = 0.0;
    bool ok = true;
};

// Checks |gamma(xi)| <= sup|a~| on the grid; throws InvariantError when the excess
// exceeds the quadrature error estimate.
BoundReport gamma_bound_check(const SpectralFunction& sf, const RVec& grid);

}  // namespace siegel
