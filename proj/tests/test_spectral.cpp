#include <doctest.h>

#include <thread>

#include "oracles.hpp"
#include "siegel/spectral.hpp"

using namespace siegel;

TEST_CASE("gamma on hand-computed values") {
    CHECK(std::abs(gamma_closed_form(RadialSymbol::exponential(2.0), 0.0, 1.0) - 0.5) < 1e-15);
    CHECK(gamma_closed_form(RadialSymbol::indicator(0.0, 1.0), 0.0, 1.0).real() ==
          doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-14));
    // a = r on (0,1], lambda = 0, xi = 1/2: int_0^1 r e^{-r} dr = 1 - 2/e
    CHECK(gamma_closed_form(RadialSymbol::power(1.0, 1.0), 0.0, 0.5).real() ==
          doctest::Approx(1.0 - 2.0 / std::exp(1.0)).epsilon(1e-14));
    SpectralFunction c(RadialSymbol::constant(cplx(2.0, -1.0)), 0.7);
    CHECK(std::abs(c(3.0) - cplx(2.0, -1.0)) < 1e-15);
}

TEST_CASE("closed forms against direct integration in r") {
    oracle::Gen g(401);
    for (int i = 0; i < 60; ++i) {
        double lambda = g.uniform(-0.5, 4.0), xi = std::exp(g.uniform(std::log(1e-2), std::log(1e2)));
        double beta = g.uniform(0.1, 10.0);
        auto e = [beta](double r) { return cplx(std::exp(-beta * r)); };
        cplx ref = oracle::gamma_direct(e, lambda, xi);
        CHECK(std::abs(gamma_closed_form(RadialSymbol::exponential(beta), lambda, xi) - ref) < 1e-10 * std::abs(ref));

        double a = g.uniform(0.0, 2.0), b = a + g.uniform(0.1, 3.0);
        auto ind = [a, b](double r) { return cplx(r > a && r <= b ? 1.0 : 0.0); };
        ref = oracle::gamma_direct(ind, lambda, xi, {a, b});
        CHECK(std::abs(gamma_closed_form(RadialSymbol::indicator(a, b), lambda, xi) - ref) < 1e-10 * std::max(std::abs(ref), 1e-6));

        double p = g.uniform(0.0, 3.0), R = g.uniform(0.5, 3.0);
        auto pw = [p, R](double r) { return cplx(r <= R ? std::pow(r, p) : 0.0); };
        ref = oracle::gamma_direct(pw, lambda, xi, {R});
        CHECK(std::abs(gamma_closed_form(RadialSymbol::power(p, R), lambda, xi) - ref) < 1e-10 * std::abs(ref));

        // osclog via the Stirling oracle instead of an oscillatory integral
        double om = g.uniform(-10.0, 10.0);
        cplx want = std::exp(cplx(0, -om * std::log(2 * xi)) + oracle::lgamma_stirling(cplx(lambda + 1, om)) -
                             oracle::lgamma_stirling(cplx(lambda + 1, 0)));
        CHECK(std::abs(gamma_closed_form(RadialSymbol::osclog(om), lambda, xi) - want) < 1e-11 * std::abs(want));
    }
}

TEST_CASE("quadrature route against closed forms over a wide xi range") {
    for (const char* tag : {"const:1", "exp:0.5", "exp:10", "ind:0,1", "ind:0.3,inf", "osclog:5", "pow:2,1.5"})
        for (double lambda : {-0.5, 0.0, 1.7, 5.0})
            for (double xi : log_grid(1e-3, 1e3, 25)) {
                RadialSymbol s = RadialSymbol::parse(tag);
                cplx c = gamma_closed_form(s, lambda, xi);
                GammaValue q = gamma_quadrature(s, lambda, xi, 1e-12);
                INFO(tag << " lambda=" << lambda << " xi=" << xi);
                // below the roundoff floor of about 6e-14 only absolute accuracy is promised
                CHECK(std::abs(q.value - c) <= 1e-9 * std::abs(c) + 1e-13);
                CHECK(q.mode == GammaMode::Quadrature);
            }
}

TEST_CASE("quadrature for custom profiles with declared jumps") {
    auto f = [](double r) { return cplx(r < 0.7 ? 2.0 : -1.0, 0.5 / (1.0 + r * r)); };
    RadialSymbol s = RadialSymbol::custom(f, std::sqrt(4.25), {0.7});
    for (double lambda : {0.0, 2.5})
        for (double xi : {0.01, 0.3, 1.0, 20.0}) {
            cplx ref = oracle::gamma_direct(f, lambda, xi, {0.7});
            SpectralFunction sf(s, lambda);
            GammaValue v = sf.eval(xi);
            CHECK(v.mode == GammaMode::Quadrature);
            CHECK(std::abs(v.value - ref) < 1e-10 * std::abs(ref));
        }
    CHECK_THROWS_AS(gamma_closed_form(s, 0.0, 1.0), UnsupportedError);
    CHECK_THROWS_AS(SpectralFunction(s, 0.0, GammaMode::ClosedForm), UnsupportedError);
}

TEST_CASE("property: gamma limits and bounds") {
    oracle::Gen g(402);
    for (int i = 0; i < 50; ++i) {
        double lambda = g.uniform(-0.5, 3.0), beta = g.uniform(0.1, 5.0);
        SpectralFunction sf(RadialSymbol::exponential(beta), lambda, GammaMode::Quadrature);
        // xi -> inf sees a~(0+) = 1; xi -> 0 decays like (2 xi / beta)^(lambda+1)
        CHECK(std::abs(sf(1e7) - 1.0) < 1e-5);
        CHECK(std::abs(sf(1e-7)) <= std::pow(2e-7 / beta, lambda + 1.0));
        double xi = g.uniform(0.01, 10.0);
        CHECK(std::abs(sf(xi)) <= 1.0 + 1e-12);
    }
}

TEST_CASE("symbol parsing") {
    CHECK(RadialSymbol::parse("pow:1.5").params == RVec{1.5, 1.0});
    CHECK(std::isinf(RadialSymbol::parse("ind:1,inf").params[1]));
    for (const char* bad : {"exp:-1", "ind:2,1", "ind:1", "wave:3", "const", "exp:abc", "osclog:", "pow:1,0"})
        CHECK_THROWS_AS(RadialSymbol::parse(bad), ContractError);
    for (const char* tag : {"const:1", "exp:2", "ind:0,1", "osclog:5", "pow:1,2"}) {
        RadialSymbol s = RadialSymbol::parse(tag);
        RadialSymbol t = RadialSymbol::parse(s.tag());
        CHECK(t.kind == s.kind);
        CHECK(t.params == s.params);
    }
}

TEST_CASE("parameter checks") {
    RadialSymbol s = RadialSymbol::exponential(1.0);
    CHECK_THROWS_AS(gamma_closed_form(s, -1.0, 1.0), ContractError);
    CHECK_THROWS_AS(gamma_closed_form(s, 0.0, 0.0), ContractError);
    CHECK_THROWS_AS(gamma_quadrature(s, 0.0, -2.0, 1e-10), ContractError);
    CHECK_THROWS_AS(gamma_closed_form(RadialSymbol::power(-2.0), 0.0, 1.0), UnsupportedError);
    CHECK(parse_gamma_mode("closed") == GammaMode::ClosedForm);
    CHECK_THROWS_AS(parse_gamma_mode("fast"), ContractError);
}

TEST_CASE("gamma through the (u', t) integral does not see y' or n") {
    for (const char* tag : {"exp:2", "ind:0,1", "osclog:3"})
        for (double lambda : {0.0, 1.5})
            for (double xi : {0.5, 1.0, 5.0}) {
                RadialSymbol s = RadialSymbol::parse(tag);
                cplx c = gamma_closed_form(s, lambda, xi);
                cplx a = gamma_hat_eval(s, lambda, xi, {0.0}).value;
                cplx b = gamma_hat_eval(s, lambda, xi, {3.0}).value;
                cplx d = gamma_hat_eval(s, lambda, xi, {1.5, -2.0}).value;
                cplx e = gamma_hat_eval(s, lambda, xi, {0.1, 0.2, 0.3}).value;
                INFO(tag << " " << lambda << " " << xi);
                CHECK(std::abs(a - c) < 1e-6 * std::abs(c));
                CHECK(std::abs(a - b) < 1e-8);
                CHECK(std::abs(d - a) < 1e-5 * std::abs(a));
                CHECK(std::abs(e - a) < 1e-5 * std::abs(a));
            }
    CHECK_THROWS_AS(gamma_hat_eval(RadialSymbol::exponential(1.0), 0.0, 1.0, {}), ContractError);
}

TEST_CASE("VSO moduli and the sup bound") {
    RVec grid = log_grid(1e-3, 1e3, 401);
    CHECK(grid.front() == doctest::Approx(1e-3));
    CHECK(grid.back() == doctest::Approx(1e3));
    SpectralFunction c(RadialSymbol::constant(1.0), 0.0);
    for (double m : vso_modulus(c, {1.0, 0.1}, grid)) CHECK(m < 1e-14);
    for (const char* tag : {"exp:2", "ind:0,1", "osclog:5"}) {
        SpectralFunction sf(RadialSymbol::parse(tag), 0.5);
        RVec m = vso_modulus(sf, {1.0, 0.1, 0.04}, grid);  // grid step is 0.0345 in log
        CHECK(m[0] >= m[1]);
        CHECK(m[1] >= m[2]);
        CHECK(m[2] > 0.0);
        CHECK(gamma_bound_check(sf, grid).ok);
    }
    // a wrong sup bound is caught
    auto lying = RadialSymbol::custom([](double) { return cplx(1.0); }, 0.5);
    CHECK_FALSE(lying.spot_check_bound());
    SpectralFunction sl(lying, 0.0);
    CHECK_THROWS_AS(gamma_bound_check(sl, grid), InvariantError);
}

TEST_CASE("spectral function is safe to share across threads") {
    SpectralFunction sf(RadialSymbol::osclog(2.0), 1.0, GammaMode::Quadrature);
    RVec xs = log_grid(0.01, 100.0, 64);
    std::vector<CVec> out(4, CVec(xs.size()));
    std::vector<std::thread> th;
    for (int k = 0; k < 4; ++k)
        th.emplace_back([&, k] {
            for (std::size_t i = 0; i < xs.size(); ++i) out[k][i] = sf(xs[(i + 16 * k) % xs.size()]);
        });
    for (auto& t : th) t.join();
    for (int k = 1; k < 4; ++k)
        for (std::size_t i = 0; i < xs.size(); ++i)
            CHECK(out[k][i] == out[0][(i + 16 * k) % 64]);
}
