#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "siegel/bergman.hpp"
#include "siegel/coordinates.hpp"
#include "siegel/geometry.hpp"
#include "siegel/spectral.hpp"
#include "siegel/verify.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace siegel;

namespace {

QuadratureSpec quad_from_dict(const py::dict& d) {
    std::string text;
    for (auto item : d) text += py::str(item.first).cast<std::string>() + " = " + py::str(item.second).cast<std::string>() + "\n";
    return QuadratureSpec::parse(text);
}

py::tuple pair_out(const HnPair& p) { return py::make_tuple(p.w, p.t); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Heisenberg-invariant Toeplitz operators on the Siegel domain";

    static py::exception<DomainError> domain_exc(m, "DomainError", PyExc_ValueError);
    static py::exception<ConvergenceError> conv_exc(m, "ConvergenceError", PyExc_ArithmeticError);
    static py::exception<UnsupportedError> unsup_exc(m, "UnsupportedError", PyExc_NotImplementedError);
    static py::exception<InvariantError> inv_exc(m, "InvariantError", PyExc_AssertionError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const DomainError& e) {
            PyErr_SetString(domain_exc.ptr(), e.what());
        } catch (const ConvergenceError& e) {
            PyErr_SetString(conv_exc.ptr(), e.what());
        } catch (const UnsupportedError& e) {
            PyErr_SetString(unsup_exc.ptr(), e.what());
        } catch (const InvariantError& e) {
            PyErr_SetString(inv_exc.ptr(), e.what());
        }
    });

    py::class_<SiegelPoint>(m, "SiegelPoint")
        .def(py::init<CVec, cplx>(), "z_prime"_a, "z_last"_a)
        .def_property_readonly("z_prime", &SiegelPoint::zp)
        .def_property_readonly("z_last", &SiegelPoint::zl)
        .def_property_readonly("n", &SiegelPoint::dim)
        .def("defining", &SiegelPoint::defining)
        .def("__repr__", [](const SiegelPoint& z) {
            return "SiegelPoint(" + py::repr(py::cast(z.zp())).cast<std::string>() + ", " +
                   py::repr(py::cast(z.zl())).cast<std::string>() + ")";
        });

    // group
    m.def("hn_mul", [](CVec a, double s, CVec b, double t) {
        return pair_out(hn_mul(HeisenbergElement(std::move(a), s), HeisenbergElement(std::move(b), t)));
    }, "a_w"_a, "a_t"_a, "b_w"_a, "b_t"_a, "Product (a_w, a_t)(b_w, b_t) in the Heisenberg group");
    m.def("hn_inv", [](CVec a, double s) { return pair_out(hn_inv(HeisenbergElement(std::move(a), s))); });
    m.def("act", [](CVec w, double t, const SiegelPoint& z) { return act(HeisenbergElement(std::move(w), t), z); },
          "w"_a, "t"_a, "z"_a);
    m.def("height", &height);

    // moment maps
    m.def("moment_map", [](const SiegelPoint& z, const std::string& subgroup) {
        return pair_out(moment_map_closed_form(SubgroupSpec::parse(subgroup, z.dim()), z));
    }, "z"_a, "subgroup"_a = "full", "Closed-form moment map (w', t) of a named subgroup");
    m.def("moment_map_projected", [](const SiegelPoint& z, const std::string& subgroup) {
        return pair_out(moment_map_subgroup(SubgroupSpec::parse(subgroup, z.dim()), z));
    }, "z"_a, "subgroup"_a = "full", "Moment map of a subgroup by projecting the full one");
    m.def("moment_identity_residual", [](const SiegelPoint& z, CVec w, double t, double step) {
        return verify_moment_identity(LieElement(std::move(w), t), z, step).max_rel_residual;
    }, "z"_a, "w"_a, "t"_a, "step"_a = 1e-5);

    // coordinates
    m.def("tau", [](const SiegelPoint& z) {
        GroupMomentPoint p = tau(z);
        return py::make_tuple(p.w, p.t, p.r);
    }, "z"_a, "Group-moment coordinates (w', t, r) of z");
    m.def("kappa", [](CVec w, double t, double r) { return kappa(GroupMomentPoint{std::move(w), t, r}); },
          "w"_a, "t"_a, "r"_a);

    // spectral function
    m.def("gamma", [](const std::string& symbol, double lambda, double xi, const std::string& mode, double tol) {
        SpectralFunction sf(RadialSymbol::parse(symbol), lambda, parse_gamma_mode(mode));
        GammaValue v = sf.eval(xi, tol);
        return py::make_tuple(v.value, v.error, to_string(v.mode));
    }, "symbol"_a, "lam"_a, "xi"_a, "mode"_a = "auto", "tol"_a = 1e-12,
       "gamma(xi) for a radial symbol; returns (value, error estimate, route)");
    m.def("gamma_table", [](const std::string& symbol, double lambda, const std::vector<double>& xs,
                            const std::string& mode) {
        SpectralFunction sf(RadialSymbol::parse(symbol), lambda, parse_gamma_mode(mode));
        std::vector<cplx> out;
        for (double xi : xs) out.push_back(sf(xi));
        return out;
    }, "symbol"_a, "lam"_a, "xi"_a, "mode"_a = "auto");
    m.def("gamma_hat", [](const std::string& symbol, double lambda, double xi, const std::vector<double>& y) {
        return gamma_hat_eval(RadialSymbol::parse(symbol), lambda, xi, y).value;
    }, "symbol"_a, "lam"_a, "xi"_a, "y_prime"_a);
    m.def("log_grid", &log_grid, "a"_a, "b"_a, "count"_a);

    // Bergman space
    m.def("bergman_kernel", [](double lambda, const SiegelPoint& z, const SiegelPoint& w) {
        return bergman_kernel(WeightContext::make(lambda, z.dim()), z, w);
    }, "lam"_a, "z"_a, "w"_a);
    m.def("toeplitz_multiplier", [](const std::string& symbol, double lambda, double b,
                                    const std::vector<SiegelPoint>& points, const py::dict& quad) {
        if (points.empty()) throw ContractError("need at least one sample point");
        MultiplierReport r = verify_multiplier(WeightContext::make(lambda, points.front().dim()),
                                               RadialSymbol::parse(symbol), b, points, quad_from_dict(quad));
        py::dict d;
        d["gamma"] = r.gamma;
        d["ratios"] = r.ratios;
        d["errors"] = r.errors;
        d["max_rel_deviation"] = r.max_rel_deviation;
        d["spread"] = r.spread;
        return d;
    }, "symbol"_a, "lam"_a, "b"_a, "points"_a, "quad"_a = py::dict(),
       "Apply T_a to e^{i b z_{n+1}} by quadrature and compare with gamma(b)");

    // invariant suites
    m.def("verify", [](std::size_t n, double lambda, std::uint64_t seed, std::vector<std::string> skip) {
        VerifyOptions opt;
        opt.n = n;
        opt.lambda = lambda;
        opt.seed = seed;
        opt.skip.insert(skip.begin(), skip.end());
        py::list out;
        for (const auto& r : run_verify(opt)) {
            py::dict d;
            d["name"] = r.name;
            d["group"] = r.group;
            d["tolerance"] = r.tolerance;
            d["residual"] = r.residual;
            d["pass"] = r.pass;
            d["applicable"] = r.applicable;
            d["detail"] = r.detail;
            out.append(d);
        }
        return out;
    }, "n"_a = 1, "lam"_a = 0.0, "seed"_a = VerifyOptions{}.seed, "skip"_a = std::vector<std::string>{"heavy"});
}
