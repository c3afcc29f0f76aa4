#pragma once

#include <functional>

#include "siegel/geometry.hpp"

namespace siegel {

struct WeightContext {
    double lambda = 0.0;
    std::size_t n = 1;
    double c_lambda = 0.0;  // Gamma(lambda+n+2) / (pi^{n+1} Gamma(lambda+1))

    static WeightContext make(double lambda, std::size_t n);
};

// sigma(r) = (0', i/r), so height(sigma(r)) = r.
SiegelPoint sigma_section(double r, std::size_t n);

// (z', Re z_{n+1}).
HeisenbergElement rho_coord(const SiegelPoint& z);

// kappa(w', t, r) = (w', t).sigma(r) = (w', t + i/r + i|w'|^2).
SiegelPoint kappa(const GroupMomentPoint& p);

// tau(z) = (rho_coord(z), height(z)).
GroupMomentPoint tau(const SiegelPoint& z);

// Density of nu_lambda against dw' dt dr: c_lambda / (4 r^{lambda+2}).
double nu_lambda_density(const WeightContext& ctx, const GroupMomentPoint& p);

// Density of v_lambda against Lebesgue measure: (c_lambda/4) (Im z_{n+1} - |z'|^2)^lambda.
double v_lambda_density(const WeightContext& ctx, const SiegelPoint& z);

// |det d tau| at z from central differences of tau in the 2n+2 real coordinates.
double tau_jacobian_fd(const SiegelPoint& z, double step = 1e-5);

using DomainFn = std::function<cplx(const SiegelPoint&)>;
using GroupMomentFn = std::function<cplx(const GroupMomentPoint&)>;

// f -> f o kappa, and back with F -> F o tau.
GroupMomentFn u0_pullback(DomainFn f);
DomainFn u0_pushforward(GroupMomentFn F);

struct FourierValue {
    cplx value;
    double tail_estimate;  // |phi| at the window edges times the window scale
};

// Windowed Fourier transform in t, (2 pi)^{-1/2} int phi(t) e^{-i xi t} dt over
// [-t_window, t_window] with composite 8-point Gauss-Legendre (about m nodes).
class FourierT {
public:
    FourierT(std::function<cplx(double)> phi, double t_window, int m);
    cplx operator()(double xi) const { return eval(xi).value; }
    FourierValue eval(double xi) const;

private:
    RVec x_, w_;
    CVec samples_;
    double window_;
    double edge_;
};

FourierT fourier_t(std::function<cplx(double)> phi, double t_window, int m);

// A function of (w', xi, r) on C^n x R_+ x R_+.
using FiberFn = std::function<cplx(const CVec& w, double xi, double r)>;
// A function of (w', xi), holomorphic in w'.
using SectionFn = std::function<cplx(const CVec& w, double xi)>;

struct CrResidual {
    CVec residual;  // n entries for d/dwbar_j + w_j r^2 d/dr, then r^2 d/dr - xi
    double step_used = 0.0;
    bool step_shrunk = false;
};

// Residuals of the Cauchy-Riemann system at (w', xi, r) by central differences;
// Wirtinger derivative d/dwbar = (d/dx + i d/dy)/2. With richardson = true each
// derivative is extrapolated from steps h and h/2.
CrResidual cr_residual(const FiberFn& phi, const CVec& w, double xi, double r, double step = 1e-5,
                       bool richardson = false);

// phi(w', xi, r) = e^{-xi |w'|^2} e^{-xi/r} psi(w', xi). psi is spot-checked for
// holomorphy at a few points for the given xi; failure throws ContractError.
FiberFn cr_solution_form(SectionFn psi, double xi, std::size_t n, double holo_tol = 1e-6);

// Largest |d psi / d wbar_j| (central differences) over a fixed set of sample points.
double holomorphy_defect(const SectionFn& psi, double xi, std::size_t n, double step = 1e-5);

}  // namespace siegel
