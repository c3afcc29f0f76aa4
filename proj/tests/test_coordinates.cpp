#include <doctest.h>

#include "oracles.hpp"
#include "siegel/coordinates.hpp"
#include "siegel/geometry.hpp"

using namespace siegel;

TEST_CASE("tau and kappa on hand-picked points") {
    auto p = tau(SiegelPoint({cplx(0, 0)}, cplx(0, 1)));
    CHECK(std::abs(p.w[0]) == 0.0);
    CHECK(p.t == 0.0);
    CHECK(p.r == doctest::Approx(1.0));
    p = tau(SiegelPoint({cplx(0, 0)}, cplx(2, 3)));
    CHECK(p.t == 2.0);
    CHECK(p.r == doctest::Approx(1.0 / 3.0));
    auto s = sigma_section(4.0, 2);
    CHECK(height(s) == doctest::Approx(4.0));
    CHECK(s.zl() == cplx(0, 0.25));
    CHECK_THROWS_AS(sigma_section(0.0, 1), ContractError);
    CHECK_THROWS_AS(kappa(GroupMomentPoint{{cplx(0, 0)}, 0.0, -1.0}), ContractError);
}

TEST_CASE("property: kappa and tau are inverse to each other") {
    oracle::Gen g(301);
    for (int i = 0; i < 1000; ++i) {
        std::size_t n = std::size_t(g.integer(1, 4));
        SiegelPoint z = g.point(n);
        CHECK(oracle::max_abs_diff(kappa(tau(z)).coords(), z.coords()) < 1e-13);
        GroupMomentPoint p{g.cvec(n), g.normal(3.0), g.uniform(0.05, 20.0)};
        GroupMomentPoint q = tau(kappa(p));
        CHECK(oracle::max_abs_diff(q.w, p.w) < 1e-13);
        CHECK(std::abs(q.t - p.t) < 1e-13);
        CHECK(q.r == doctest::Approx(p.r).epsilon(1e-13));
        // kappa is the orbit map through sigma(r)
        CHECK(oracle::max_abs_diff(kappa(p).coords(), act(HeisenbergElement(p.w, p.t), sigma_section(p.r, n)).coords()) < 1e-12);
    }
}

TEST_CASE("Jacobian of tau equals the squared height") {
    oracle::Gen g(302);
    for (int i = 0; i < 50; ++i) {
        std::size_t n = std::size_t(g.integer(1, 3));
        SiegelPoint z = g.point(n);
        double H = height(z);
        CHECK(tau_jacobian_fd(z) == doctest::Approx(H * H).epsilon(1e-6));
    }
}

TEST_CASE("the two measure densities differ by the Jacobian of kappa") {
    oracle::Gen g(303);
    for (double lambda : {-0.5, 0.0, 1.3}) {
        for (std::size_t n : {1u, 2u}) {
            WeightContext ctx = WeightContext::make(lambda, n);
            double want = std::tgamma(lambda + n + 2) / (std::pow(kPi, double(n + 1)) * std::tgamma(lambda + 1));
            CHECK(ctx.c_lambda == doctest::Approx(want).epsilon(1e-13));
            for (int i = 0; i < 20; ++i) {
                GroupMomentPoint p{g.cvec(n), g.normal(), g.uniform(0.1, 5.0)};
                double v = v_lambda_density(ctx, kappa(p));
                CHECK(nu_lambda_density(ctx, p) == doctest::Approx(v / (p.r * p.r)).epsilon(1e-12));
            }
        }
    }
    CHECK_THROWS_AS(WeightContext::make(-1.0, 1), ContractError);
    CHECK_THROWS_AS(WeightContext::make(0.0, 0), ContractError);
}

TEST_CASE("pullback and pushforward are mutually inverse") {
    DomainFn f = [](const SiegelPoint& z) { return std::exp(cplx(0, 1.5) * z.zl()) * (1.0 + z.zp()[0]); };
    DomainFn back = u0_pushforward(u0_pullback(f));
    oracle::Gen g(304);
    for (int i = 0; i < 50; ++i) {
        SiegelPoint z = g.point(1);
        CHECK(std::abs(back(z) - f(z)) < 1e-12 * std::max(1.0, std::abs(f(z))));
    }
}

TEST_CASE("windowed Fourier transform of a Gaussian") {
    FourierT F([](double t) { return cplx(std::exp(-0.5 * t * t)); }, 12.0, 512);
    for (double xi : {0.0, 0.5, 1.0, 3.0}) {
        auto v = F.eval(xi);
        CHECK(std::abs(v.value - std::exp(-0.5 * xi * xi)) < 1e-12);
        CHECK(v.tail_estimate < 1e-20);
    }
    FourierT G([](double t) { return cplx(1.0 / (1.0 + t * t)); }, 5.0, 256);
    CHECK(G.eval(1.0).tail_estimate > 1e-3);
}

TEST_CASE("CR residual of a known non-solution matches the analytic value") {
    // phi = r: (d/dwbar_j + w_j r^2 d/dr) phi = w_j r^2 and (r^2 d/dr - xi) phi = r^2 - xi r
    FiberFn phi = [](const CVec&, double, double r) { return cplx(r); };
    CVec w{cplx(0.3, -0.4), cplx(-1.0, 0.2)};
    double xi = 0.7, r = 1.9;
    auto res = cr_residual(phi, w, xi, r);
    REQUIRE(res.residual.size() == 3);
    for (std::size_t j = 0; j < 2; ++j) CHECK(std::abs(res.residual[j] - w[j] * r * r) < 1e-8);
    CHECK(std::abs(res.residual[2] - (r * r - xi * r)) < 1e-8);
}

TEST_CASE("solutions of the CR system built from holomorphic sections") {
    oracle::Gen g(305);
    SectionFn psi = [](const CVec& w, double xi) { return std::exp(w[0] * xi) + w[0] * w[0] * w[0]; };
    for (int i = 0; i < 30; ++i) {
        double xi = g.uniform(0.1, 2.0);
        FiberFn phi = cr_solution_form(psi, xi, 1);
        auto res = cr_residual(phi, g.cvec(1, 0.5), xi, g.uniform(0.2, 4.0), 1e-5, true);
        for (const auto& c : res.residual) CHECK(std::abs(c) < 1e-7);
    }
    SectionFn bad = [](const CVec& w, double) { return std::conj(w[0]); };
    CHECK(holomorphy_defect(bad, 1.0, 1) > 0.4);
    CHECK_THROWS_AS(cr_solution_form(bad, 1.0, 1), ContractError);
}
