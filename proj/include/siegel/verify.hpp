#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "siegel/config.hpp"

namespace siegel {

struct CheckResult {
    std::string name;
    std::string group;      // module the check belongs to
    double tolerance = 0.0;
    double residual = 0.0;
    bool pass = false;
    bool heavy = false;
    bool applicable = true;  // false when the check does not support this n
    double seconds = 0.0;
    std::string detail;
};

struct VerifyOptions {
    std::size_t n = 1;
    double lambda = 0.0;
    std::uint64_t seed = 20240611;
    std::set<std::string> skip;  // group names or "heavy"
    QuadratureSpec quad;
    Tolerances tol;
};

// Runs every invariant suite (group law, action, moment maps, coordinates, CR system,
// spectral function, isometry chain, Toeplitz diagonalisation). Exceptions inside a
// check turn into a failed CheckResult carrying the message.
std::vector<CheckResult> run_verify(const VerifyOptions& opt);

// Names of the check groups, in execution order.
std::vector<std::string> verify_groups();

}  // namespace siegel
