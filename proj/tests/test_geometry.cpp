#include <doctest.h>

#include "oracles.hpp"
#include "siegel/geometry.hpp"

using namespace siegel;

namespace {
double dist(const HnPair& a, const HnPair& b) {
    return std::max(oracle::max_abs_diff(a.w, b.w), std::abs(a.t - b.t));
}

// Differential of z -> h.z applied to u.
TangentVector push(const HeisenbergElement& h, const TangentVector& u) {
    TangentVector v = u;
    std::size_t n = h.dim();
    for (std::size_t j = 0; j < n; ++j) v.c[n] += cplx(0.0, 2.0) * u.c[j] * std::conj(h.w[j]);
    return v;
}
}  // namespace

TEST_CASE("moment map values at simple points") {
    SiegelPoint i1({cplx(0, 0)}, cplx(0, 1));
    auto mu = moment_map_hn(i1);
    CHECK(mu.t == doctest::Approx(-0.5));
    CHECK(std::abs(mu.w[0]) == 0.0);
    auto c = moment_map_closed_form(SubgroupSpec::center(1), i1);
    CHECK(c.t == doctest::Approx(-0.5));
    SiegelPoint z({cplx(1, 0)}, cplx(0, 2));
    auto f = moment_map_closed_form(SubgroupSpec::full(1), z);
    CHECK(std::abs(f.w[0] - cplx(0, -2)) < 1e-15);
    CHECK(f.t == doctest::Approx(-0.5));
    CHECK(height(z) == doctest::Approx(1.0));
}

TEST_CASE("closed-form subgroup moment maps against formulas written out here") {
    oracle::Gen g(201);
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 3;
        SiegelPoint z = g.point(n);
        const double D = z.defining();
        const int ell = 1;
        auto hr = moment_map_closed_form(SubgroupSpec::hr(n), z);
        auto hir = moment_map_closed_form(SubgroupSpec::hir(n), z);
        auto hlr = moment_map_closed_form(SubgroupSpec::hlr(n, ell), z);
        auto hlir = moment_map_closed_form(SubgroupSpec::hlir(n, ell), z);
        for (std::size_t j = 0; j < n; ++j) {
            cplx full = cplx(0, -4) * z.zp()[j] / (2 * D);
            CHECK(std::abs(hr.w[j] - cplx(full.real(), 0)) < 1e-14);
            CHECK(std::abs(hir.w[j] - cplx(0, full.imag())) < 1e-14);
            bool restricted = j >= n - ell;
            CHECK(std::abs(hlr.w[j] - (restricted ? cplx(full.real(), 0) : full)) < 1e-14);
            CHECK(std::abs(hlir.w[j] - (restricted ? cplx(0, full.imag()) : full)) < 1e-14);
        }
        for (const auto& m : {hr, hir, hlr, hlir}) CHECK(m.t == doctest::Approx(-1 / (2 * D)));
    }
}

TEST_CASE("closed forms are unavailable for general product and graph subgroups") {
    SiegelPoint z({cplx(0, 0), cplx(0, 0)}, cplx(0, 1));
    auto p = SubgroupSpec::product(2, {{cplx(1, 0), cplx(0, 0)}});
    CHECK_THROWS_AS(moment_map_closed_form(p, z), UnsupportedError);
    CHECK_THROWS_AS(moment_map_closed_form(SubgroupSpec::hlr(2, 5), z), ContractError);
    auto mp = moment_map_subgroup(p, z);
    CHECK(mp.t == doctest::Approx(-0.5));
}

TEST_CASE("Kaehler tensors: symmetry, positivity, compatibility and invariance") {
    oracle::Gen g(202);
    for (int i = 0; i < 200; ++i) {
        std::size_t n = std::size_t(g.integer(1, 3));
        SiegelPoint z = g.point(n);
        TangentVector u{g.cvec(n + 1)}, v{g.cvec(n + 1)};
        auto uv = kahler_eval(z, u, v), vu = kahler_eval(z, v, u), uu = kahler_eval(z, u, u);
        CHECK(uv.g == doctest::Approx(vu.g).epsilon(1e-12));
        CHECK(uv.omega == doctest::Approx(-vu.omega).epsilon(1e-12));
        CHECK(uu.g > 0.0);
        CHECK(std::abs(uu.omega) < 1e-12 * uu.g);
        TangentVector iu = u;
        for (auto& c : iu.c) c *= cplx(0, 1);
        CHECK(uv.omega == doctest::Approx(kahler_eval(z, iu, v).g).epsilon(1e-11));
        HeisenbergElement h(g.cvec(n), g.normal());
        auto moved = kahler_eval(act(h, z), push(h, u), push(h, v));
        CHECK(moved.g == doctest::Approx(uv.g).epsilon(1e-10));
        CHECK(moved.omega == doctest::Approx(uv.omega).epsilon(1e-10));
    }
}

TEST_CASE("fundamental vector field is the derivative of the action") {
    oracle::Gen g(203);
    for (int i = 0; i < 100; ++i) {
        std::size_t n = std::size_t(g.integer(1, 3));
        SiegelPoint z = g.point(n);
        LieElement X(g.cvec(n), g.normal());
        const double s = 1e-6;
        LieElement Xs = X, Xm = X;
        for (auto& c : Xs.w) c *= s;
        Xs.t *= s;
        for (auto& c : Xm.w) c *= -s;
        Xm.t *= -s;
        CVec a = act(exp_map(Xs), z.coords()), b = act(exp_map(Xm), z.coords());
        TangentVector sharp = sharp_field(X, z);
        for (std::size_t j = 0; j <= n; ++j) CHECK(std::abs((a[j] - b[j]) / (2 * s) - sharp.c[j]) < 1e-8);
    }
}

TEST_CASE("moment identity, equivariance and projection consistency") {
    oracle::Gen g(204);
    for (int i = 0; i < 100; ++i) {
        std::size_t n = std::size_t(g.integer(1, 3));
        SiegelPoint z = g.point(n);
        LieElement X(g.cvec(n), g.normal());
        CHECK(verify_moment_identity(X, z).max_rel_residual < 1e-6);
        HeisenbergElement h(g.cvec(n), g.normal());
        CHECK(dist(moment_map_hn(act(h, z)), rho_rep(h, moment_map_hn(z))) < 1e-11);
        CHECK(dist(moment_map_subgroup(SubgroupSpec::full(n), z), moment_map_hn(z)) < 1e-14);
    }
}

TEST_CASE("moment identity rejects bad steps and shrinks near the boundary") {
    SiegelPoint z({cplx(0, 0)}, cplx(0, 1));
    LieElement X({cplx(1, 0)}, 0.0);
    CHECK_THROWS_AS(verify_moment_identity(X, z, 0.0), ContractError);
    CHECK_THROWS_AS(verify_moment_identity(X, z, 1e-2), ContractError);
    SiegelPoint near({cplx(0, 0)}, cplx(0, 2e-5));
    auto rep = verify_moment_identity(X, near, 1e-5);
    CHECK(rep.step_shrunk);
    CHECK(rep.step_used < 1e-5);
}
