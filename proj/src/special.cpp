#include "siegel/special.hpp"

#include <cmath>
#include <limits>

namespace siegel::special {

namespace {

constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

const double kHalfLog2Pi = 0.5 * std::log(2.0 * kPi);

cplx lgamma_lanczos(cplx z) {
    // Valid for Re z >= 1/2.
    z -= 1.0;
    cplx x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + double(i));
    cplx t = z + kLanczosG + 0.5;
    return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

double series_p(double a, double x) {
    double term = 1.0 / a, sum = term;
    for (int k = 1; k < 100000; ++k) {
        term *= x / (a + k);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-17) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double cf_q(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 100000; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

void check_args(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0) || std::isnan(x))
        throw ContractError("incomplete gamma: need a > 0 and x >= 0");
}

}  // namespace

cplx lgamma(cplx z) {
    if (z.real() < 0.5) {
        // log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z)
        cplx s = std::sin(kPi * z);
        if (std::abs(s) == 0.0) throw DomainError("lgamma: pole at nonpositive integer");
        // 2 pi i k keeps the result on the branch that is continuous off the negative axis
        double k = z.imag() == 0.0 ? 0.0 : std::copysign(2.0 * kPi, z.imag()) * std::floor(0.5 * z.real() + 0.25);
        return cplx(std::log(kPi), k) - std::log(s) - lgamma_lanczos(1.0 - z);
    }
    return lgamma_lanczos(z);
}

cplx gamma(cplx z) {
    if (z.imag() == 0.0) return std::tgamma(z.real());
    return std::exp(lgamma(z));
}

double gamma_p(double a, double x) {
    check_args(a, x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < a + 1.0) return series_p(a, x);
    return 1.0 - cf_q(a, x);
}

double gamma_q(double a, double x) {
    check_args(a, x);
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < a + 1.0) return 1.0 - series_p(a, x);
    return cf_q(a, x);
}

double gamma_p_diff(double a, double x, double y) {
    check_args(a, x);
    check_args(a, y);
    if (y < x) throw ContractError("gamma_p_diff: need x <= y");
    if (x > a + 1.0) return gamma_q(a, x) - gamma_q(a, y);
    return gamma_p(a, y) - gamma_p(a, x);
}

}  // namespace siegel::special
