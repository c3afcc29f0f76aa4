#pragma once

#include <optional>
#include <string>
#include <vector>

#include "siegel/types.hpp"

namespace siegel {

// Group law (z',s)(w',t) = (z'+w', s+t+2 Im(z'.conj w')).
HeisenbergElement hn_mul(const HeisenbergElement& a, const HeisenbergElement& b);
HeisenbergElement hn_inv(const HeisenbergElement& a);

// [(w',t),(z',s)] = (0, 4 Im(w'.conj z')).
LieElement lie_bracket(const LieElement& X, const LieElement& Y);

// Ad(w',t)(z',s) = (z', s + 4 Im(w'.conj z')).
LieElement adjoint(const HeisenbergElement& h, const LieElement& X);

// Transpose representation rho(w',t)(z',s) = (z' + 4 i s w', s), i.e. the transpose of
// Ad(h^{-1}) for lie_inner.
LieElement rho_rep(const HeisenbergElement& h, const LieElement& X);

// Euclidean inner product on R^{2n+1}.
double lie_inner(const LieElement& X, const LieElement& Y);

// (w',t).z = (z'+w', z_{n+1} + t + 2i z'.conj w' + i|w'|^2), on all of C^{n+1}.
CVec act(const HeisenbergElement& h, const CVec& z);
SiegelPoint act(const HeisenbergElement& h, const SiegelPoint& z);

// Connected subgroups of H_n, named cases first.
enum class SubgroupKind { Full, Center, ProductVxR, GraphVf, HR, HiR, HlR, HliR };

struct SubgroupSpec {
    SubgroupKind kind = SubgroupKind::Full;
    std::size_t n = 1;
    std::vector<CVec> V;  // real spanning set in C^n (ProductVxR, GraphVf)
    RVec f;               // f(V[k]) for GraphVf
    int ell = 0;          // HlR / HliR split: last ell coordinates restricted

    static SubgroupSpec full(std::size_t n) { return {SubgroupKind::Full, n, {}, {}, 0}; }
    static SubgroupSpec center(std::size_t n) { return {SubgroupKind::Center, n, {}, {}, 0}; }
    static SubgroupSpec hr(std::size_t n) { return {SubgroupKind::HR, n, {}, {}, 0}; }
    static SubgroupSpec hir(std::size_t n) { return {SubgroupKind::HiR, n, {}, {}, 0}; }
    static SubgroupSpec hlr(std::size_t n, int ell) { return {SubgroupKind::HlR, n, {}, {}, ell}; }
    static SubgroupSpec hlir(std::size_t n, int ell) { return {SubgroupKind::HliR, n, {}, {}, ell}; }
    static SubgroupSpec product(std::size_t n, std::vector<CVec> V) {
        return {SubgroupKind::ProductVxR, n, std::move(V), {}, 0};
    }
    static SubgroupSpec graph(std::size_t n, std::vector<CVec> V, RVec f) {
        return {SubgroupKind::GraphVf, n, std::move(V), std::move(f), 0};
    }

    // Parses full, center, hr, hir, hlr:L, hlir:L.
    static SubgroupSpec parse(const std::string& text, std::size_t n);
};

std::string to_string(SubgroupKind k);

struct Validation {
    bool ok = true;
    std::vector<std::string> diagnostics;
};

Validation subgroup_validate(const SubgroupSpec& spec);

// Orthonormal basis (in R^{2n+1}, as LieElements) of the subalgebra.
std::vector<LieElement> subgroup_basis(const SubgroupSpec& spec);

// Orthogonal projection onto the subalgebra. Throws ContractError on invalid specs.
LieElement subgroup_project(const SubgroupSpec& spec, const LieElement& X);

// Coordinates of a Lie element in R^{2n+1}: Re w_1, Im w_1, ..., t.
RVec to_real(const LieElement& X);
LieElement from_real(const RVec& v);

}  // namespace siegel
