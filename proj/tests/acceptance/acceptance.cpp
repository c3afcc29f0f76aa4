// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
// Tolerances and time budgets are fixed here and must not be relaxed.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "siegel/bergman.hpp"
#include "siegel/spectral.hpp"
#include "siegel/verify.hpp"

using namespace siegel;

namespace {

struct Outcome {
    bool pass = false;
    std::string what;
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = s < budget_s;
    bool ok = o.pass && in_time;
    if (!ok) ++failures;
    std::printf("%s  [%2d] %-34s %s  (%.2f s of %.0f s)%s\n", ok ? "PASS" : "FAIL", id, title, o.what.c_str(), s,
                budget_s, in_time ? "" : "  over time budget");
    std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

// Runs the selected groups of the library suite with the given tolerances; returns the
// worst residual / tolerance ratio and a list of failing checks.
Outcome suite(const std::vector<std::string>& keep, std::size_t n, double lambda, const Tolerances& tol,
              const std::vector<std::string>& only = {}) {
    VerifyOptions opt;
    opt.n = n;
    opt.lambda = lambda;
    opt.tol = tol;
    for (const auto& g : verify_groups())
        if (std::find(keep.begin(), keep.end(), g) == keep.end()) opt.skip.insert(g);
    Outcome o{true, ""};
    double worst = 0.0;
    int count = 0;
    for (const auto& r : run_verify(opt)) {
        if (!only.empty() && std::find(only.begin(), only.end(), r.name) == only.end()) continue;
        ++count;
        if (r.tolerance > 0) worst = std::max(worst, r.residual / r.tolerance);
        if (!r.pass) {
            o.pass = false;
            o.what += r.name + " residual " + std::to_string(r.residual) + " > " + std::to_string(r.tolerance) + "; ";
        }
    }
    if (count == 0) return {false, "no checks ran"};
    if (o.pass) o.what = fmt("%g checks, worst residual/tol %.3g", count, worst);
    return o;
}

}  // namespace

int main() {
    const RVec grid50 = log_grid(1e-3, 1e3, 50);

    criterion(1, "normalization", 1.0, [&] {
        double worst = 0.0;
        for (double lam : {-0.5, 0.0, 2.0}) {
            SpectralFunction sf(RadialSymbol::constant(1.0), lam, GammaMode::Quadrature);
            for (double xi : grid50) worst = std::max(worst, std::abs(sf(xi) - 1.0));
        }
        return Outcome{worst <= 1e-10, fmt("max |gamma - 1| = %.3g (tol %.0e)", worst, 1e-10)};
    });

    criterion(2, "Laplace closed forms", 10.0, [&] {
        double worst = 0.0;
        for (const char* tag : {"exp:0.5", "exp:2", "exp:10", "ind:0,1", "osclog:5"})
            for (double lam : {0.0, 1.7}) {
                RadialSymbol s = RadialSymbol::parse(tag);
                for (double xi : grid50) {
                    cplx c = gamma_closed_form(s, lam, xi);
                    cplx q = gamma_quadrature(s, lam, xi, 1e-12).value;
                    worst = std::max(worst, std::abs(q - c) / std::abs(c));
                }
            }
        return Outcome{worst <= 1e-8, fmt("max rel err %.3g (tol %.0e)", worst, 1e-8)};
    });

    criterion(3, "gamma-hat equivalence", 60.0, [&] {
        double worst = 0.0, spread = 0.0;
        for (const char* tag : {"exp:2", "ind:0,1"}) {
            RadialSymbol s = RadialSymbol::parse(tag);
            for (double xi : {0.5, 1.0, 5.0}) {
                cplx c = gamma_closed_form(s, 0.0, xi);
                for (const std::vector<RVec>& ys : {std::vector<RVec>{{0.0}, {3.0}},
                                                    std::vector<RVec>{{0.0, 0.0}, {1.5, -2.0}}}) {
                    cplx a = gamma_hat_eval(s, 0.0, xi, ys[0]).value;
                    cplx b = gamma_hat_eval(s, 0.0, xi, ys[1]).value;
                    worst = std::max({worst, std::abs(a - c) / std::abs(c), std::abs(b - c) / std::abs(c)});
                    spread = std::max(spread, std::abs(a - b));
                }
            }
        }
        return Outcome{worst <= 1e-6 && spread <= 1e-8,
                       fmt("max rel err %.3g (tol 1e-6), y'-spread %.3g (tol 1e-8)", worst, spread)};
    });

    Tolerances tol;
    tol.fd_step = 1e-5;
    tol.group = 1e-12;
    tol.moment_fd = 1e-6;
    tol.equivariance = 1e-12;
    tol.closed_form_moment = 1e-14;
    tol.coord_roundtrip = 1e-13;
    tol.jacobian = 1e-6;
    tol.pushforward = 1e-4;
    tol.cr = 1e-7;
    tol.isometry = 1e-6;
    tol.roundtrip = 1e-5;

    criterion(4, "group and action suite", 5.0, [&] { return suite({"group"}, 1, 0.0, tol); });

    criterion(5, "moment-map suite", 10.0, [&] {
        const std::vector<std::string> names{"moment_identity_fd", "moment_equivariance", "moment_closed_forms"};
        Outcome a = suite({"moment"}, 1, 0.0, tol, names);
        Outcome b = suite({"moment"}, 3, 0.0, tol, names);  // n = 3 exercises the split subgroups
        return Outcome{a.pass && b.pass, "n=1: " + a.what + " | n=3: " + b.what};
    });

    criterion(6, "coordinates suite", 30.0, [&] { return suite({"coords"}, 1, 0.0, tol); });

    criterion(7, "isometry chain", 60.0, [&] { return suite({"fock"}, 1, 0.0, tol); });

    criterion(8, "end-to-end diagonalization", 300.0, [&] {
        WeightContext ctx = WeightContext::make(0.0, 1);
        std::vector<SiegelPoint> zs = {SiegelPoint({cplx(0, 0)}, cplx(0.0, 1.0)),
                                       SiegelPoint({cplx(0, 0)}, cplx(0.7, 2.0)),
                                       SiegelPoint({cplx(0, 0)}, cplx(-1.3, 0.5))};
        double dev = 0.0, spread = 0.0;
        for (const char* tag : {"const:1", "exp:2", "ind:0,1"})
            for (double b : {0.5, 1.0, 2.0}) {
                auto rep = verify_multiplier(ctx, RadialSymbol::parse(tag), b, zs, QuadratureSpec{});
                dev = std::max(dev, rep.max_rel_deviation);
                spread = std::max(spread, rep.spread);
            }
        return Outcome{dev <= 1e-3 && spread <= 1e-3,
                       fmt("max rel deviation %.3g, z-spread %.3g (tol 1e-3 each)", dev, spread)};
    });

    criterion(9, "VSO diagnostics", 5.0, [&] {
        RVec grid = log_grid(1e-3, 1e3, 2001);
        RVec deltas = {1.0, 0.1, 0.01, 0.001};
        bool mono = true;
        double ratio = 0.0;
        for (const char* tag : {"const:1", "exp:2", "ind:0,1", "osclog:5", "pow:1"}) {
            SpectralFunction sf(RadialSymbol::parse(tag), 0.0);
            RVec m = vso_modulus(sf, deltas, grid);
            for (std::size_t k = 1; k < m.size(); ++k) mono = mono && m[k] <= m[k - 1];
            ratio = std::max(ratio, gamma_bound_check(sf, grid).max_ratio);
        }
        return Outcome{mono && ratio <= 1.0 + 1e-13,
                       std::string(mono ? "moduli nonincreasing" : "modulus increased") +
                           fmt(", max |gamma|/sup %.15g (limit 1 + %.0e)", ratio, 1e-13)};
    });

    criterion(10, "dimension independence", 60.0, [&] {
        double worst = 0.0;
        for (const char* tag : {"exp:2", "ind:0,1", "osclog:5", "pow:1"})
            for (double lam : {0.0, 1.7})
                for (double xi : {0.1, 1.0, 10.0}) {
                    RadialSymbol s = RadialSymbol::parse(tag);
                    cplx a = gamma_hat_eval(s, lam, xi, {0.5}).value;
                    cplx b = gamma_hat_eval(s, lam, xi, {0.5, -0.25}).value;
                    worst = std::max(worst, std::abs(a - b));
                }
        return Outcome{worst <= 1e-5, fmt("max |gamma(n=1) - gamma(n=2)| = %.3g (tol %.0e)", worst, 1e-5)};
    });

    std::printf("%s: %d criteria failed\n", failures ? "FAILED" : "ALL PASSED", failures);
    return failures ? 1 : 0;
}
