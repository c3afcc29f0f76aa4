#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace siegel {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;
using RVec = std::vector<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Caller broke a precondition (dimension mismatch, bad parameter, malformed spec).
struct ContractError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A point lies outside the Siegel domain, or a complex power left its branch.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Quadrature could not reach the requested tolerance.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A checked mathematical invariant failed beyond its numerical tolerance.
struct InvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested closed form or input class is not available.
struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// (w', t) in C^n x R. Group elements and Lie algebra vectors share this layout;
// the two wrappers below keep call sites honest about which one they mean.
struct HnPair {
    CVec w;
    double t = 0.0;

    std::size_t dim() const { return w.size(); }
};

struct HeisenbergElement : HnPair {
    HeisenbergElement() = default;
    HeisenbergElement(CVec w_, double t_) : HnPair{std::move(w_), t_} {}
    static HeisenbergElement identity(std::size_t n) { return {CVec(n), 0.0}; }
};

struct LieElement : HnPair {
    LieElement() = default;
    LieElement(CVec w_, double t_) : HnPair{std::move(w_), t_} {}
    static LieElement zero(std::size_t n) { return {CVec(n), 0.0}; }
};

// exp is the identity on the underlying coordinates.
inline HeisenbergElement exp_map(const LieElement& X) { return {X.w, X.t}; }
inline LieElement log_map(const HeisenbergElement& h) { return {h.w, h.t}; }

// Tangent vector at a point of D_{n+1}, as n+1 complex components.
struct TangentVector {
    CVec c;
    std::size_t size() const { return c.size(); }
};

// Point z = (z', z_{n+1}) with Im z_{n+1} > |z'|^2. Construction rejects anything else.
class SiegelPoint {
public:
    SiegelPoint(CVec zp, cplx zl);

    const CVec& zp() const { return zp_; }
    cplx zl() const { return zl_; }
    std::size_t dim() const { return zp_.size(); }
    // Im z_{n+1} - |z'|^2, strictly positive.
    double defining() const { return delta_; }

    // All n+1 coordinates, z' first.
    CVec coords() const;
    static SiegelPoint from_coords(const CVec& c);

private:
    CVec zp_;
    cplx zl_;
    double delta_;
};

// (w', t, r) in H_n x R_+.
struct GroupMomentPoint {
    CVec w;
    double t = 0.0;
    double r = 1.0;
    std::size_t dim() const { return w.size(); }
};

void require_same_dim(std::size_t a, std::size_t b, const char* where);

double norm2(const CVec& v);
// sum_j a_j conj(b_j)
cplx dot_conj(const CVec& a, const CVec& b);

}  // namespace siegel
