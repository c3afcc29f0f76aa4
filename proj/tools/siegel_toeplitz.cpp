// siegel-toeplitz: spectral-function tables, invariant suites, moment maps and
// group-moment coordinates from the command line.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <unistd.h>

#include "siegel/coordinates.hpp"
#include "siegel/geometry.hpp"
#include "siegel/spectral.hpp"
#include "siegel/verify.hpp"

using namespace siegel;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kDomain = 3, kNumerical = 4 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

// Writes to a sibling temp file and renames it into place; "-" or empty means stdout.
void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + tmp.string());
        out << text;
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

cplx parse_pair(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw UsageError("expected re,im but got '" + s + "'");
    try {
        std::size_t a = 0, b = 0;
        double re = std::stod(s.substr(0, comma), &a);
        double im = std::stod(s.substr(comma + 1), &b);
        if (a != comma || b != s.size() - comma - 1) throw std::invalid_argument(s);
        return {re, im};
    } catch (const std::logic_error&) {
        throw UsageError("bad complex number '" + s + "'");
    }
}

// re,im[;re,im...]:re,im
std::pair<CVec, cplx> parse_point(const std::string& s) {
    auto colon = s.rfind(':');
    if (colon == std::string::npos) throw UsageError("point needs the form re,im[;re,im...]:re,im");
    CVec zp;
    std::stringstream ss(s.substr(0, colon));
    std::string item;
    while (std::getline(ss, item, ';')) zp.push_back(parse_pair(item));
    if (zp.empty()) throw UsageError("point needs at least one z' entry");
    return {zp, parse_pair(s.substr(colon + 1))};
}

struct XiRange {
    double a, b;
    int count;
};

XiRange parse_xi(const std::string& s) {
    std::stringstream ss(s);
    std::string p[3];
    for (auto& x : p)
        if (!std::getline(ss, x, ':')) throw UsageError("--xi expects a:b:count");
    XiRange r{};
    try {
        r.a = std::stod(p[0]);
        r.b = std::stod(p[1]);
        r.count = std::stoi(p[2]);
    } catch (const std::logic_error&) {
        throw UsageError("--xi expects a:b:count");
    }
    if (!(r.a > 0.0) || !(r.b >= r.a) || r.count < 1 || !std::isfinite(r.b))
        throw UsageError("--xi needs 0 < a <= b and count >= 1");
    if (r.a == r.b && r.count != 1) throw UsageError("--xi with a == b needs count 1");
    return r;
}

json cvec_json(const CVec& v) {
    json a = json::array();
    for (const auto& c : v) a.push_back({c.real(), c.imag()});
    return a;
}

QuadratureSpec load_quad(const std::string& path) {
    std::string p = path;
    if (p.empty())
        if (const char* env = std::getenv(kConfigEnvVar)) p = env;
    QuadratureSpec q = p.empty() ? QuadratureSpec{} : QuadratureSpec::load(p);
    return q;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral functions and Toeplitz-operator checks on the Siegel domain"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "0.1.0");

    // gamma
    std::string g_symbol, g_xi = "1e-3:1e3:50", g_mode = "auto", g_out, g_format = "csv";
    double g_lambda = 0.0, g_tol = 1e-12;
    auto* gamma = app.add_subcommand("gamma", "Tabulate gamma(xi) on a log-spaced grid");
    gamma->add_option("--symbol", g_symbol,
                      "const:c | exp:beta | ind:a,b | pow:p[,cutoff] | osclog:omega")->required();
    gamma->add_option("--lambda", g_lambda, "Weight parameter, > -1")->capture_default_str();
    gamma->add_option("--xi", g_xi, "a:b:count, log-spaced")->capture_default_str();
    gamma->add_option("--mode", g_mode, "auto | closed | quadrature")->capture_default_str();
    gamma->add_option("--tol", g_tol, "Relative tolerance for the quadrature route")->capture_default_str();
    gamma->add_option("--format", g_format, "csv | json")->capture_default_str();
    gamma->add_option("-o,--output", g_out, "Output path (default stdout)");
    gamma->footer(
        "CSV columns: xi,re_gamma,im_gamma,err_estimate,mode\n"
        "JSON: {\"schema\":1, \"symbol\", \"lambda\", \"rows\":[{xi, re_gamma, im_gamma, err_estimate, mode}]}");

    // verify
    std::size_t v_n = 1;
    double v_lambda = 0.0, v_tol = -1.0;
    std::uint64_t v_seed = VerifyOptions{}.seed;
    std::vector<std::string> v_skip;
    std::string v_out, v_config;
    bool v_quiet = false;
    auto* verify = app.add_subcommand("verify", "Run the invariant suites and write a JSON report");
    verify->add_option("--n", v_n, "Complex dimension n of C^n")->capture_default_str();
    verify->add_option("--lambda", v_lambda, "Weight parameter, > -1")->capture_default_str();
    verify->add_option("--seed", v_seed, "Seed for the randomized suites")->capture_default_str();
    verify->add_option("--skip", v_skip, "Groups to skip (heavy, group, moment, coords, spectral, fock, toeplitz)");
    verify->add_option("--tol", v_tol, "Override the Toeplitz quadrature tolerance");
    verify->add_option("--config", v_config, std::string("Quadrature config file (default $") + kConfigEnvVar + ")");
    verify->add_option("-o,--output", v_out, "Report path (default stdout)");
    verify->add_flag("-q,--quiet", v_quiet, "No per-check lines on stderr");

    // moment
    std::string m_point, m_sub = "full", m_out;
    auto* moment = app.add_subcommand("moment", "Moment map of a Heisenberg subgroup at a point, as JSON");
    moment->add_option("--point", m_point, "re,im[;re,im...]:re,im (z' entries, then z_{n+1})")->required();
    moment->add_option("--subgroup", m_sub, "full | center | hr | hir | hlr:l | hlir:l")->capture_default_str();
    moment->add_option("-o,--output", m_out, "Output path (default stdout)");

    // coords
    std::string c_point, c_out;
    auto* coords = app.add_subcommand("coords", "tau(z), kappa(tau(z)) and the round-trip residual, as JSON");
    coords->add_option("--point", c_point, "re,im[;re,im...]:re,im")->required();
    coords->add_option("-o,--output", c_out, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*gamma) {
            if (!(g_lambda >= kLambdaFloor)) throw UsageError("--lambda must be >= -0.999");
            if (!(g_tol > 0.0)) throw UsageError("--tol must be positive");
            if (g_format != "csv" && g_format != "json") throw UsageError("--format must be csv or json");
            XiRange xr = parse_xi(g_xi);
            RadialSymbol sym;
            GammaMode mode;
            try {
                sym = RadialSymbol::parse(g_symbol);
                mode = parse_gamma_mode(g_mode);
            } catch (const ContractError& e) {
                throw UsageError(e.what());
            }
            SpectralFunction sf(sym, g_lambda, mode);
            RVec grid = xr.count == 1 ? RVec{xr.a} : log_grid(xr.a, xr.b, xr.count);
            std::ostringstream os;
            json rows = json::array();
            if (g_format == "csv") os << "xi,re_gamma,im_gamma,err_estimate,mode\n";
            for (double xi : grid) {
                GammaValue v = sf.eval(xi, g_tol);
                if (g_format == "csv") {
                    os << fmt(xi) << ',' << fmt(v.value.real()) << ',' << fmt(v.value.imag()) << ','
                       << fmt(v.error) << ',' << csv_field(to_string(v.mode)) << '\n';
                } else {
                    rows.push_back({{"xi", xi},
                                    {"re_gamma", v.value.real()},
                                    {"im_gamma", v.value.imag()},
                                    {"err_estimate", v.error},
                                    {"mode", to_string(v.mode)}});
                }
            }
            if (g_format == "json") {
                json doc{{"schema", 1}, {"symbol", g_symbol}, {"lambda", g_lambda}, {"rows", rows}};
                os << doc.dump(2) << '\n';
            }
            emit(g_out, os.str());
            return kOk;
        }

        if (*verify) {
            VerifyOptions opt;
            if (v_n < 1) throw UsageError("--n must be >= 1");
            if (!(v_lambda >= kLambdaFloor)) throw UsageError("--lambda must be >= -0.999");
            opt.n = v_n;
            opt.lambda = v_lambda;
            opt.seed = v_seed;
            const auto groups = verify_groups();
            for (const auto& s : v_skip) {
                if (s != "heavy" && std::find(groups.begin(), groups.end(), s) == groups.end())
                    throw UsageError("unknown --skip group '" + s + "'");
                opt.skip.insert(s);
            }
            try {
                opt.quad = load_quad(v_config);
                if (verify->count("--tol")) opt.quad.tol = v_tol;
                opt.quad.validate();
            } catch (const ContractError& e) {
                throw UsageError(e.what());
            }
            auto results = run_verify(opt);
            bool all = true;
            json checks = json::array();
            for (const auto& r : results) {
                all = all && r.pass;
                checks.push_back({{"name", r.name},
                                  {"group", r.group},
                                  {"tolerance", r.tolerance},
                                  {"residual", std::isfinite(r.residual) ? json(r.residual) : json(nullptr)},
                                  {"pass", r.pass},
                                  {"heavy", r.heavy},
                                  {"applicable", r.applicable},
                                  {"detail", r.detail}});
                if (!v_quiet)
                    std::cerr << (!r.applicable ? "N/A  " : r.pass ? "PASS " : "FAIL ") << r.group << '/' << r.name << "  residual "
                              << r.residual << "  tol " << r.tolerance << "  (" << std::fixed
                              << std::setprecision(2) << r.seconds << " s)" << std::defaultfloat
                              << std::setprecision(6) << '\n';
            }
            json skipped = json::array();
            for (const auto& s : opt.skip) skipped.push_back(s);
            json doc{{"schema", 1},
                     {"seed", opt.seed},
                     {"n", opt.n},
                     {"lambda", opt.lambda},
                     {"skip", skipped},
                     {"quadrature", opt.quad.serialize()},
                     {"all_pass", all},
                     {"checks", checks}};
            emit(v_out, doc.dump(2) + "\n");
            if (!all) {
                for (const auto& r : results)
                    if (!r.pass) std::cerr << "failed: " << r.name << " residual " << r.residual << " > " << r.tolerance
                                           << (r.detail.empty() ? "" : "  [" + r.detail + "]") << '\n';
            }
            return all ? kOk : kCheckFailed;
        }

        if (*moment) {
            auto [zp, zl] = parse_point(m_point);
            SiegelPoint z(zp, zl);
            SubgroupSpec spec;
            try {
                spec = SubgroupSpec::parse(m_sub, z.dim());
            } catch (const ContractError& e) {
                throw UsageError(e.what());
            }
            LieElement mu = moment_map_closed_form(spec, z);
            json doc{{"schema", 1}, {"subgroup", m_sub}};
            if (spec.kind != SubgroupKind::Center) doc["w_prime"] = cvec_json(mu.w);
            doc["t"] = mu.t;
            emit(m_out, doc.dump() + "\n");
            return kOk;
        }

        if (*coords) {
            auto [zp, zl] = parse_point(c_point);
            SiegelPoint z(zp, zl);
            GroupMomentPoint p = tau(z);
            SiegelPoint back = kappa(p);
            double res = std::abs(back.zl() - z.zl());
            for (std::size_t j = 0; j < z.dim(); ++j) res = std::max(res, std::abs(back.zp()[j] - z.zp()[j]));
            json doc{{"schema", 1},
                     {"tau", {{"w_prime", cvec_json(p.w)}, {"t", p.t}, {"r", p.r}}},
                     {"kappa_tau", {{"z_prime", cvec_json(back.zp())}, {"z_last", {back.zl().real(), back.zl().imag()}}}},
                     {"residual", res}};
            emit(c_out, doc.dump() + "\n");
            return kOk;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const ContractError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kDomain;
    } catch (const ConvergenceError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    }
    return kUsage;
}
