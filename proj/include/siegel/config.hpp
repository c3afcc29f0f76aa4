#pragma once

#include <string>

namespace siegel {

enum class WprimeMode { Auto, Radial, Full };

// Discretisation parameters for the Bergman-space quadratures. Serialised as
// plain "key = value" lines; '#' starts a comment.
//
//   t_window       half-width of the t window, in units of the local kernel width
//   t_nodes        Gauss-Legendre nodes across the t window (8-point panels)
//   r_nodes        nodes for the radial variable u = 1/r
//   wprime_nodes   nodes per |w_j|^2 variable
//   wprime_angles  trapezoid nodes per arg(w_j) (Full mode)
//   wprime_mode    auto | radial | full
//   r_scale        rate of the Laguerre rule in u (0 = pick from the problem)
//   wprime_scale   rate of the Laguerre rule in |w_j|^2 (0 = pick from the problem)
//   tol            accepted relative error estimate
//   degree         polynomial degree kept per Fock fibre
//   xi_nodes       number of nodes of the xi grid
//   threads        worker threads (0 = hardware, 1 = sequential)
struct QuadratureSpec {
    double t_window = 200.0;
    int t_nodes = 4096;
    int r_nodes = 32;
    int wprime_nodes = 32;
    int wprime_angles = 16;
    WprimeMode wprime_mode = WprimeMode::Auto;
    double r_scale = 0.0;
    double wprime_scale = 0.0;
    double tol = 1e-3;
    int degree = 6;
    int xi_nodes = 24;
    int threads = 0;

    void validate() const;  // throws ContractError
    std::string serialize() const;
    static QuadratureSpec parse(const std::string& text);
    static QuadratureSpec load(const std::string& path);
};

std::string to_string(WprimeMode m);

// Environment variable naming a default QuadratureSpec file for the command line tool.
inline constexpr const char* kConfigEnvVar = "SIEGEL_TOEPLITZ_CONFIG";

// Shared numerical tolerances for the finite-difference and round-trip checks.
struct Tolerances {
    double fd_step = 1e-5;
    double group = 1e-12;
    double moment_fd = 1e-6;
    double equivariance = 1e-12;
    double closed_form_moment = 1e-14;
    double coord_roundtrip = 1e-13;
    double jacobian = 1e-6;
    double pushforward = 1e-4;
    double cr = 1e-7;
    double gamma_norm = 1e-10;
    double gamma_closed = 1e-8;
    double gamma_hat = 1e-6;
    double gamma_hat_spread = 1e-8;
    double dimension = 1e-5;
    double isometry = 1e-6;
    double roundtrip = 1e-5;
    double multiplier = 1e-3;
};

}  // namespace siegel
