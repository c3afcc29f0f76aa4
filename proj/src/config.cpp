#include "siegel/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "siegel/types.hpp"

namespace siegel {

std::string to_string(WprimeMode m) {
    switch (m) {
        case WprimeMode::Auto: return "auto";
        case WprimeMode::Radial: return "radial";
        case WprimeMode::Full: return "full";
    }
    return "?";
}

void QuadratureSpec::validate() const {
    auto bad = [](const std::string& m) { throw ContractError("quadrature spec: " + m); };
    if (!(t_window > 0.0) || !std::isfinite(t_window)) bad("t_window must be positive");
    if (t_nodes < 2) bad("t_nodes must be >= 2");
    if (r_nodes < 2) bad("r_nodes must be >= 2");
    if (wprime_nodes < 2) bad("wprime_nodes must be >= 2");
    if (wprime_angles < 2) bad("wprime_angles must be >= 2");
    if (!(r_scale >= 0.0)) bad("r_scale must be >= 0");
    if (!(wprime_scale >= 0.0)) bad("wprime_scale must be >= 0");
    if (!(tol > 0.0) || !std::isfinite(tol)) bad("tol must be positive");
    if (degree < 0) bad("degree must be >= 0");
    if (xi_nodes < 1) bad("xi_nodes must be >= 1");
    if (threads < 0) bad("threads must be >= 0");
}

std::string QuadratureSpec::serialize() const {
    std::ostringstream os;
    os.precision(17);
    os << "t_window = " << t_window << "\n"
       << "t_nodes = " << t_nodes << "\n"
       << "r_nodes = " << r_nodes << "\n"
       << "wprime_nodes = " << wprime_nodes << "\n"
       << "wprime_angles = " << wprime_angles << "\n"
       << "wprime_mode = " << to_string(wprime_mode) << "\n"
       << "r_scale = " << r_scale << "\n"
       << "wprime_scale = " << wprime_scale << "\n"
       << "tol = " << tol << "\n"
       << "degree = " << degree << "\n"
       << "xi_nodes = " << xi_nodes << "\n"
       << "threads = " << threads << "\n";
    return os.str();
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double x;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        throw ContractError("quadrature spec: bad value for " + key + ": '" + v + "'");
    }
    if (used != v.size()) throw ContractError("quadrature spec: bad value for " + key + ": '" + v + "'");
    return x;
}

int to_int(const std::string& key, const std::string& v) {
    double x = to_double(key, v);
    if (x != std::floor(x) || std::abs(x) > 1e9)
        throw ContractError("quadrature spec: " + key + " must be an integer");
    return int(x);
}

}  // namespace

QuadratureSpec QuadratureSpec::parse(const std::string& text) {
    QuadratureSpec q;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ContractError("quadrature spec line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (key == "t_window") q.t_window = to_double(key, val);
        else if (key == "t_nodes") q.t_nodes = to_int(key, val);
        else if (key == "r_nodes") q.r_nodes = to_int(key, val);
        else if (key == "wprime_nodes") q.wprime_nodes = to_int(key, val);
        else if (key == "wprime_angles") q.wprime_angles = to_int(key, val);
        else if (key == "wprime_mode") {
            if (val == "auto") q.wprime_mode = WprimeMode::Auto;
            else if (val == "radial") q.wprime_mode = WprimeMode::Radial;
            else if (val == "full") q.wprime_mode = WprimeMode::Full;
            else throw ContractError("quadrature spec: wprime_mode must be auto, radial or full");
        } else if (key == "r_scale") q.r_scale = to_double(key, val);
        else if (key == "wprime_scale") q.wprime_scale = to_double(key, val);
        else if (key == "tol") q.tol = to_double(key, val);
        else if (key == "degree") q.degree = to_int(key, val);
        else if (key == "xi_nodes") q.xi_nodes = to_int(key, val);
        else if (key == "threads") q.threads = to_int(key, val);
        else throw ContractError("quadrature spec: unknown key '" + key + "'");
    }
    q.validate();
    return q;
}

QuadratureSpec QuadratureSpec::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ContractError("cannot open quadrature config '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return parse(os.str());
}

}  // namespace siegel
