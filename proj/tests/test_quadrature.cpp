#include <doctest.h>

#include <atomic>
#include <numeric>

#include "oracles.hpp"
#include "siegel/quadrature.hpp"
#include "siegel/special.hpp"

using namespace siegel;

namespace {
double moment(const quad::Rule& r, int k) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) s += r.w[i] * std::pow(r.x[i], k);
    return s;
}
}  // namespace

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
    for (int n : {1, 2, 5, 12, 40}) {
        const auto& r = quad::legendre(n);
        for (int k = 0; k < 2 * n; ++k) {
            double exact = (k % 2) ? 0.0 : 2.0 / (k + 1);
            CHECK(moment(r, k) == doctest::Approx(exact).epsilon(1e-13).scale(1.0));
        }
    }
}

TEST_CASE("Gauss-Laguerre moments are Gamma(k + alpha + 1)") {
    for (double alpha : {-0.5, 0.0, 1.7, 4.0})
        for (int n : {4, 12, 24}) {
            const auto& r = quad::laguerre(n, alpha);
            for (int k = 0; k < 2 * n && k < 30; ++k)
                CHECK(moment(r, k) == doctest::Approx(std::tgamma(k + alpha + 1.0)).epsilon(1e-10));
        }
}

TEST_CASE("Gauss-Jacobi moments against the integration-by-parts recurrence") {
    // (a + b + k + 2) m_{k+1} = (b - a) m_k + k m_{k-1}, m_0 = 2^{a+b+1} B(a+1, b+1)
    for (double a : {0.0, 0.5}) {
        for (double b : {-0.5, 0.0, 2.3}) {
            RVec m(20);
            m[0] = std::pow(2.0, a + b + 1) * std::tgamma(a + 1) * std::tgamma(b + 1) / std::tgamma(a + b + 2);
            m[1] = (b - a) * m[0] / (a + b + 2);
            for (int k = 1; k + 1 < 20; ++k) m[k + 1] = ((b - a) * m[k] + k * m[k - 1]) / (a + b + k + 2);
            const auto& r = quad::jacobi(10, a, b);
            for (int k = 0; k < 20; ++k) CHECK(std::abs(moment(r, k) - m[k]) <= 1e-12 * std::abs(m[k]) + 1e-15);
        }
    }
}

TEST_CASE("Gauss-Hermite even moments are Gamma(k + 1/2)") {
    const auto& r = quad::hermite(10);
    for (int k = 0; k < 10; ++k) {
        CHECK(moment(r, 2 * k) == doctest::Approx(std::tgamma(k + 0.5)).epsilon(1e-11));
        CHECK(std::abs(moment(r, 2 * k + 1)) < 1e-10 * std::tgamma(k + 1.0));
    }
}

TEST_CASE("rules reject bad parameters") {
    CHECK_THROWS_AS(quad::gauss_legendre(0), ContractError);
    CHECK_THROWS_AS(quad::gauss_laguerre(5, -1.0), ContractError);
    CHECK_THROWS_AS(quad::gauss_jacobi(5, -1.5, 0.0), ContractError);
}

TEST_CASE("adaptive integration of smooth, oscillatory and kinked integrands") {
    auto f1 = [](double x) { return cplx(std::cos(30 * x), std::sin(x * x)); };
    auto r1 = quad::adaptive(f1, 0.0, 3.0, 1e-12);
    CHECK(std::abs(r1.value - oracle::tanh_sinh(f1, 0.0, 3.0)) < 1e-11);

    auto f2 = [](double x) { return cplx(std::abs(x - 0.3)); };
    auto r2 = quad::adaptive(f2, RVec{0.0, 0.3, 1.0}, 1e-13);
    CHECK(r2.value.real() == doctest::Approx(0.5 * (0.09 + 0.49)).epsilon(1e-13));
    CHECK(r2.error <= 1e-12);
}

TEST_CASE("gamma-weighted integrals") {
    oracle::Gen g(11);
    for (int i = 0; i < 40; ++i) {
        double lambda = g.uniform(-0.9, 6.0);
        auto one = [](double) { return cplx(1.0); };
        auto r = quad::gamma_weighted(one, lambda, {}, 1e-13);
        CHECK(r.value.real() == doctest::Approx(std::tgamma(lambda + 1)).epsilon(1e-12));

        // int s^lambda e^{-s} e^{i s} ds = Gamma(lambda+1) (1 - i)^{-(lambda+1)}
        auto osc = [](double s) { return std::exp(cplx(0.0, s)); };
        cplx ref = std::tgamma(lambda + 1) * std::exp(-(lambda + 1.0) * std::log(cplx(1.0, -1.0)));
        CHECK(std::abs(quad::gamma_weighted(osc, lambda, {}, 1e-13).value - ref) < 1e-11 * std::abs(ref));

        double a = g.uniform(0.01, 3.0), b = a + g.uniform(0.01, 30.0);
        auto ind = [a, b](double s) { return cplx(s > a && s <= b ? 1.0 : 0.0); };
        double want = std::tgamma(lambda + 1) * (oracle::gamma_p(lambda + 1, b) - oracle::gamma_p(lambda + 1, a));
        CHECK(quad::gamma_weighted(ind, lambda, {a, b}, 1e-13).value.real() ==
              doctest::Approx(want).epsilon(1e-10).scale(1e-14));
    }
}

TEST_CASE("composite nodes integrate exactly per panel") {
    RVec x, w;
    quad::composite_nodes(-2.0, 5.0, 7, 4, x, w);
    CHECK(x.size() == 28);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * x[i] * x[i] * x[i];
    CHECK(s == doctest::Approx((625.0 - 16.0) / 4.0).epsilon(1e-13));
}

TEST_CASE("parallel_for covers every index once and rethrows") {
    std::vector<std::atomic<int>> hits(1000);
    quad::parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
    for (auto& h : hits) CHECK(h.load() == 1);
    CHECK_THROWS_AS(quad::parallel_for(100, 3, [](std::size_t i) {
                        if (i == 57) throw std::runtime_error("boom");
                    }),
                    std::runtime_error);
}
