#include "siegel/heisenberg.hpp"

#include <cmath>
#include <sstream>

namespace siegel {

// ---- shared helpers from types.hpp ----------------------------------------

void require_same_dim(std::size_t a, std::size_t b, const char* where) {
    if (a != b) {
        std::ostringstream os;
        os << where << ": dimension mismatch (" << a << " vs " << b << ")";
        throw ContractError(os.str());
    }
}

double norm2(const CVec& v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return s;
}

cplx dot_conj(const CVec& a, const CVec& b) {
    require_same_dim(a.size(), b.size(), "dot_conj");
    cplx s{};
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
    return s;
}

SiegelPoint::SiegelPoint(CVec zp, cplx zl) : zp_(std::move(zp)), zl_(zl) {
    if (zp_.empty()) throw ContractError("SiegelPoint: need n >= 1");
    for (const auto& x : zp_)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
            throw DomainError("SiegelPoint: non-finite coordinate");
    if (!std::isfinite(zl_.real()) || !std::isfinite(zl_.imag()))
        throw DomainError("SiegelPoint: non-finite coordinate");
    delta_ = zl_.imag() - norm2(zp_);
    if (!(delta_ > 0.0)) {
        std::ostringstream os;
        os << "point is not in the Siegel domain: Im z_{n+1} - |z'|^2 = " << delta_;
        throw DomainError(os.str());
    }
}

CVec SiegelPoint::coords() const {
    CVec c = zp_;
    c.push_back(zl_);
    return c;
}

SiegelPoint SiegelPoint::from_coords(const CVec& c) {
    if (c.size() < 2) throw ContractError("SiegelPoint: need n + 1 >= 2 coordinates");
    return SiegelPoint(CVec(c.begin(), c.end() - 1), c.back());
}

// ---- group and algebra ------------------------------------------------------

HeisenbergElement hn_mul(const HeisenbergElement& a, const HeisenbergElement& b) {
    require_same_dim(a.dim(), b.dim(), "hn_mul");
    CVec w(a.dim());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = a.w[i] + b.w[i];
    return {std::move(w), a.t + b.t + 2.0 * dot_conj(a.w, b.w).imag()};
}

HeisenbergElement hn_inv(const HeisenbergElement& a) {
    CVec w(a.dim());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = -a.w[i];
    return {std::move(w), -a.t};
}

LieElement lie_bracket(const LieElement& X, const LieElement& Y) {
    require_same_dim(X.dim(), Y.dim(), "lie_bracket");
    return {CVec(X.dim()), 4.0 * dot_conj(X.w, Y.w).imag()};
}

LieElement adjoint(const HeisenbergElement& h, const LieElement& X) {
    require_same_dim(h.dim(), X.dim(), "adjoint");
    return {X.w, X.t + 4.0 * dot_conj(h.w, X.w).imag()};
}

LieElement rho_rep(const HeisenbergElement& h, const LieElement& X) {
    require_same_dim(h.dim(), X.dim(), "rho_rep");
    CVec w(X.dim());
    const cplx four_i_s(0.0, 4.0 * X.t);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = X.w[i] + four_i_s * h.w[i];
    return {std::move(w), X.t};
}

double lie_inner(const LieElement& X, const LieElement& Y) {
    require_same_dim(X.dim(), Y.dim(), "lie_inner");
    return dot_conj(X.w, Y.w).real() + X.t * Y.t;
}

CVec act(const HeisenbergElement& h, const CVec& z) {
    if (z.size() != h.dim() + 1) require_same_dim(z.size(), h.dim() + 1, "act");
    const std::size_t n = h.dim();
    CVec out(n + 1);
    cplx zw{};
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = z[i] + h.w[i];
        zw += z[i] * std::conj(h.w[i]);
    }
    out[n] = z[n] + h.t + cplx(0.0, 2.0) * zw + cplx(0.0, norm2(h.w));
    return out;
}

SiegelPoint act(const HeisenbergElement& h, const SiegelPoint& z) {
    return SiegelPoint::from_coords(act(h, z.coords()));
}

// ---- subgroups --------------------------------------------------------------

std::string to_string(SubgroupKind k) {
    switch (k) {
        case SubgroupKind::Full: return "full";
        case SubgroupKind::Center: return "center";
        case SubgroupKind::ProductVxR: return "product";
        case SubgroupKind::GraphVf: return "graph";
        case SubgroupKind::HR: return "hr";
        case SubgroupKind::HiR: return "hir";
        case SubgroupKind::HlR: return "hlr";
        case SubgroupKind::HliR: return "hlir";
    }
    return "?";
}

SubgroupSpec SubgroupSpec::parse(const std::string& text, std::size_t n) {
    std::string name = text, arg;
    auto colon = text.find(':');
    if (colon != std::string::npos) {
        name = text.substr(0, colon);
        arg = text.substr(colon + 1);
    }
    for (auto& c : name) c = char(std::tolower(static_cast<unsigned char>(c)));
    auto need_ell = [&]() {
        if (arg.empty()) throw ContractError("subgroup '" + name + "' needs ':ell'");
        std::size_t used = 0;
        int ell = 0;
        try {
            ell = std::stoi(arg, &used);
        } catch (const std::logic_error&) {
            used = 0;
        }
        if (used == 0 || used != arg.size()) throw ContractError("bad ell in subgroup spec: " + arg);
        return ell;
    };
    SubgroupSpec s;
    if (name == "full") s = full(n);
    else if (name == "center") s = center(n);
    else if (name == "hr") s = hr(n);
    else if (name == "hir") s = hir(n);
    else if (name == "hlr") s = hlr(n, need_ell());
    else if (name == "hlir") s = hlir(n, need_ell());
    else throw ContractError("unknown subgroup '" + text + "'");
    if (!arg.empty() && s.kind != SubgroupKind::HlR && s.kind != SubgroupKind::HliR)
        throw ContractError("subgroup '" + name + "' takes no argument");
    return s;
}

RVec to_real(const LieElement& X) {
    RVec v;
    v.reserve(2 * X.dim() + 1);
    for (const auto& w : X.w) {
        v.push_back(w.real());
        v.push_back(w.imag());
    }
    v.push_back(X.t);
    return v;
}

LieElement from_real(const RVec& v) {
    if (v.size() % 2 != 1) throw ContractError("from_real: need odd length 2n+1");
    std::size_t n = v.size() / 2;
    CVec w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = {v[2 * i], v[2 * i + 1]};
    return {std::move(w), v.back()};
}

namespace {

double rdot(const RVec& a, const RVec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Modified Gram-Schmidt with one reorthogonalization pass. Returns false when a
// vector is (numerically) dependent on the previous ones.
bool orthonormalize(std::vector<RVec>& vs) {
    for (std::size_t k = 0; k < vs.size(); ++k) {
        double n0 = std::sqrt(rdot(vs[k], vs[k]));
        if (!(n0 > 0.0)) return false;
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t j = 0; j < k; ++j) {
                double c = rdot(vs[k], vs[j]);
                for (std::size_t i = 0; i < vs[k].size(); ++i) vs[k][i] -= c * vs[j][i];
            }
        double nk = std::sqrt(rdot(vs[k], vs[k]));
        if (nk <= 1e-12 * n0) return false;
        for (auto& x : vs[k]) x /= nk;
    }
    return true;
}

RVec unit(std::size_t dim, std::size_t i) {
    RVec v(dim, 0.0);
    v[i] = 1.0;
    return v;
}

std::vector<RVec> raw_basis(const SubgroupSpec& s) {
    const std::size_t n = s.n, D = 2 * n + 1;
    std::vector<RVec> b;
    auto re = [&](std::size_t j) { b.push_back(unit(D, 2 * j)); };
    auto im = [&](std::size_t j) { b.push_back(unit(D, 2 * j + 1)); };
    auto central = [&] { b.push_back(unit(D, 2 * n)); };
    switch (s.kind) {
        case SubgroupKind::Full:
            for (std::size_t j = 0; j < n; ++j) re(j), im(j);
            central();
            break;
        case SubgroupKind::Center: central(); break;
        case SubgroupKind::HR:
            for (std::size_t j = 0; j < n; ++j) re(j);
            central();
            break;
        case SubgroupKind::HiR:
            for (std::size_t j = 0; j < n; ++j) im(j);
            central();
            break;
        case SubgroupKind::HlR:
        case SubgroupKind::HliR: {
            std::size_t split = n - std::size_t(s.ell);
            for (std::size_t j = 0; j < split; ++j) re(j), im(j);
            for (std::size_t j = split; j < n; ++j) {
                if (s.kind == SubgroupKind::HlR) re(j);
                else im(j);
            }
            central();
            break;
        }
        case SubgroupKind::ProductVxR:
            for (const auto& v : s.V) b.push_back(to_real(LieElement{v, 0.0}));
            central();
            break;
        case SubgroupKind::GraphVf:
            for (std::size_t k = 0; k < s.V.size(); ++k)
                b.push_back(to_real(LieElement{s.V[k], s.f[k]}));
            break;
    }
    return b;
}

}  // namespace

Validation subgroup_validate(const SubgroupSpec& s) {
    Validation v;
    auto fail = [&](std::string msg) {
        v.ok = false;
        v.diagnostics.push_back(std::move(msg));
    };
    if (s.n < 1) fail("n must be at least 1");
    const bool uses_V = s.kind == SubgroupKind::ProductVxR || s.kind == SubgroupKind::GraphVf;
    if (!uses_V && (!s.V.empty() || !s.f.empty()))
        fail("V / f given for a named subgroup that does not use them");
    if (s.kind == SubgroupKind::HlR || s.kind == SubgroupKind::HliR) {
        if (s.ell < 1 || std::size_t(s.ell) + 1 > s.n)
            fail("ell must satisfy 1 <= ell <= n-1 (got ell=" + std::to_string(s.ell) +
                 ", n=" + std::to_string(s.n) + ")");
    }
    if (uses_V) {
        for (std::size_t k = 0; k < s.V.size(); ++k)
            if (s.V[k].size() != s.n) fail("V[" + std::to_string(k) + "] has wrong length");
        if (s.kind == SubgroupKind::GraphVf && s.f.size() != s.V.size())
            fail("f needs one value per basis vector of V");
        if (s.kind == SubgroupKind::GraphVf && s.V.empty()) fail("graph subgroup needs dim V >= 1");
    }
    if (!v.ok) return v;
    if (uses_V) {
        std::vector<RVec> vs;
        for (const auto& w : s.V) vs.push_back(to_real(LieElement{w, 0.0}));
        if (!orthonormalize(vs)) fail("V basis is not linearly independent over R");
    }
    if (s.kind == SubgroupKind::GraphVf) {
        for (std::size_t a = 0; a < s.V.size(); ++a)
            for (std::size_t b = a + 1; b < s.V.size(); ++b) {
                double om = dot_conj(s.V[a], s.V[b]).imag();
                double scale = std::sqrt(norm2(s.V[a]) * norm2(s.V[b]));
                if (std::abs(om) > 1e-12 * std::max(scale, 1.0)) {
                    std::ostringstream os;
                    os << "V is not isotropic: Im(v" << a << ".conj v" << b << ") = " << om;
                    fail(os.str());
                }
            }
    }
    return v;
}

std::vector<LieElement> subgroup_basis(const SubgroupSpec& spec) {
    Validation v = subgroup_validate(spec);
    if (!v.ok) {
        std::string msg = "invalid subgroup spec:";
        for (const auto& d : v.diagnostics) msg += " " + d + ";";
        throw ContractError(msg);
    }
    auto raw = raw_basis(spec);
    if (!orthonormalize(raw)) throw ContractError("subgroup basis is degenerate");
    std::vector<LieElement> out;
    for (const auto& r : raw) out.push_back(from_real(r));
    return out;
}

LieElement subgroup_project(const SubgroupSpec& spec, const LieElement& X) {
    require_same_dim(spec.n, X.dim(), "subgroup_project");
    auto basis = subgroup_basis(spec);
    RVec x = to_real(X), out(x.size(), 0.0);
    for (const auto& e : basis) {
        RVec er = to_real(e);
        double c = rdot(x, er);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * er[i];
    }
    return from_real(out);
}

}  // namespace siegel
