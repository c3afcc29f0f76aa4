#pragma once

#include <vector>

#include "siegel/bergman.hpp"

namespace siegel {

using MultiIndex = std::vector<int>;

// All multi-indices in N^n with |alpha| <= degree, graded then lexicographic.
std::vector<MultiIndex> multi_indices(std::size_t n, int degree);

// Nodes and weights of a finite quadrature on (0, inf) standing in for d xi.
struct XiGrid {
    RVec nodes;
    RVec weights;

    std::size_t size() const { return nodes.size(); }
    // Gauss-Laguerre nodes x_k / rate with weights w_k e^{x_k} / rate.
    static XiGrid laguerre(int count, double rate);
    static XiGrid explicit_nodes(RVec nodes, RVec weights);
    // Index of the node equal to xi (relative 1e-12), or -1.
    int find(double xi) const;
    double min_gap() const;
};

// A section xi -> psi(., xi) of the direct integral of Fock spaces F^2_{2 xi}(C^n),
// discretised on an XiGrid with polynomial fibres of total degree <= degree.
struct FockSection {
    std::size_t n = 1;
    int degree = 0;
    XiGrid grid;
    std::vector<CVec> coeffs;  // coeffs[k][m] multiplies w^{alpha_m} at node k

    static FockSection zero(std::size_t n, int degree, const XiGrid& grid);
    std::size_t terms() const;
    const std::vector<MultiIndex>& indices() const;
    cplx eval(std::size_t node, const CVec& w) const;
    void check() const;
};

// ||w^alpha||^2 in F^2_{2 xi} = alpha! / (2 xi)^{|alpha|}.
double monomial_norm_sq(const MultiIndex& alpha, double xi);

double fock_node_norm_sq(const FockSection& s, std::size_t node);
double fock_norm_sq(const FockSection& s);
double fock_norm(const FockSection& s);

// (V psi)(w', xi, r) = 2 sqrt(pi (2 xi)^{lambda+n+1} / Gamma(lambda+n+2)) e^{-xi|w'|^2 - xi/r} psi(w', xi).
double v_lambda_constant(const WeightContext& ctx, double xi);

// V psi as a function on C^n x grid x R_+. Evaluating at a xi that is not a grid
// node throws ContractError.
class VImage {
public:
    VImage(WeightContext ctx, FockSection s) : ctx_(ctx), s_(std::move(s)) {}
    cplx operator()(const CVec& w, double xi, double r) const;
    const FockSection& section() const { return s_; }
    FiberFn as_function() const;

private:
    WeightContext ctx_;
    FockSection s_;
};

VImage v_lambda_apply(const WeightContext& ctx, const FockSection& s);

// Squared L^2(nu_lambda) norm of phi over C^n x grid x R_+, with the xi integral
// replaced by the grid weights. r through u = 1/r with a Gauss-Laguerre rule at rate
// 2 xi, w' in polar coordinates with Gauss-Laguerre in |w_j|^2 and trapezoid angles.
double nu_norm_sq(const WeightContext& ctx, const FiberFn& phi, const XiGrid& grid,
                  const QuadratureSpec& q);

// Adjoint of V followed by the orthogonal projection of each fibre onto polynomials of
// degree <= degree in F^2_{2 xi}:
//   sqrt(pi (2xi)^{lambda-n+1} Gamma(lambda+n+2)) / (2 pi Gamma(lambda+1))
//     e^{xi|w'|^2} int_0^inf phi(w', xi, r) e^{-xi/r} r^{-lambda-2} dr.
FockSection v_lambda_adjoint(const WeightContext& ctx, const FiberFn& phi, const XiGrid& grid,
                             int degree, const QuadratureSpec& q);

// Holomorphic test functions on D_{n+1}: finite sums of P(z') E(z_{n+1}) with P a
// polynomial and E either a wave packet int_0^inf amp xi^m e^{-beta xi} e^{i xi z} dxi
// = amp Gamma(m+1) / (beta - i z)^{m+1}, or a plane wave amp e^{i xi0 z}.
struct TestTerm {
    enum class Profile { Packet, PlaneWave };
    Profile profile = Profile::Packet;
    int degree = 0;        // degree of P
    CVec poly;             // coefficients over multi_indices(n, degree)
    cplx amp{1.0, 0.0};
    int m = 0;             // packet: power of xi
    double beta = 1.0;     // packet: decay rate
    double xi0 = 1.0;      // plane wave: frequency

    // amp xi^m e^{-beta xi} for packets.
    cplx spectral_density(double xi) const;
};

class TestClassFunction {
public:
    explicit TestClassFunction(std::size_t n) : n_(n) {}
    std::size_t dim() const { return n_; }
    const std::vector<TestTerm>& terms() const { return terms_; }

    void add_packet(CVec poly, int degree, cplx amp, int m, double beta);
    void add_plane_wave(CVec poly, int degree, cplx amp, double xi0);

    cplx operator()(const SiegelPoint& z) const;
    cplx term_value(std::size_t k, const SiegelPoint& z) const;
    DomainFn as_function() const;

private:
    std::size_t n_;
    std::vector<TestTerm> terms_;
};

// R = W* U_1 U_0: pull back by kappa, Fourier transform in t at the grid nodes
// (ordinary windowed transform for packets, windowed Bohr mean scaled by
// sqrt(2 pi)/weight for plane-wave sums, which is the Fourier transform of the
// discrete model d xi ~ sum_k weight_k delta_{xi_k}), then v_lambda_adjoint.
FockSection r_lambda_apply(const WeightContext& ctx, const TestClassFunction& f, const XiGrid& grid,
                           int degree, const QuadratureSpec& q);

// R* psi = sum_k weight_k (2 pi)^{-1/2} V-constant(xi_k) psi_k(z') e^{i xi_k z_{n+1}}.
TestClassFunction r_lambda_adjoint(const WeightContext& ctx, const FockSection& s);

// Largest coefficientwise |a - b| relative to the largest coefficient of b.
double section_distance(const FockSection& a, const FockSection& b);

}  // namespace siegel
