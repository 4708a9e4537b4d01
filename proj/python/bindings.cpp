#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "nicholson/bounds.hpp"
#include "nicholson/charroots.hpp"
#include "nicholson/errors.hpp"
#include "nicholson/iterate.hpp"
#include "nicholson/model.hpp"
#include "nicholson/profile.hpp"
#include "nicholson/verify.hpp"

namespace py = pybind11;
using namespace nicholson;

namespace {

py::array_t<double> to_array(std::span<const double> v) {
    py::array_t<double> a(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), a.mutable_data());
    return a;
}

py::array_t<double> node_times(const GridSpec& g) {
    py::array_t<double> a(static_cast<py::ssize_t>(g.size()));
    auto* d = a.mutable_data();
    for (std::size_t i = 0; i < g.size(); ++i) d[i] = g.time(i);
    return a;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = R"pbdoc(
        Monotone heteroclinic profiles of the delayed Nicholson equation with harvesting
        -------------------------------------------------------------------------------

        x'(t) = -delta x(t) - H x(t - sigma) + rho x(t - r) exp(-x(t - r))
    )pbdoc";

    PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> infeasible;
    PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> breach;
    infeasible.call_once_and_store_result([&]() {
        return py::exception<InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);
    });
    breach.call_once_and_store_result([&]() {
        return py::exception<MonotonicityBreach>(m, "MonotonicityBreach", PyExc_RuntimeError);
    });
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const InfeasibleError& e) {
            py::set_error(infeasible.get_stored(), (e.condition() + ": " + e.what()).c_str());
        } catch (const MonotonicityBreach& e) {
            py::set_error(breach.get_stored(), e.what());
        } catch (const KinkError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const DomainError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init(&ModelParams::make), py::arg("delta"), py::arg("harvest"), py::arg("rho"),
             py::arg("sigma"), py::arg("r"))
        .def_readonly("delta", &ModelParams::delta)
        .def_readonly("harvest", &ModelParams::harvest)
        .def_readonly("rho", &ModelParams::rho)
        .def_readonly("sigma", &ModelParams::sigma)
        .def_readonly("r", &ModelParams::r)
        .def("ratio", &ModelParams::ratio);

    py::class_<DerivedConstants>(m, "DerivedConstants")
        .def_readonly("kappa", &DerivedConstants::kappa)
        .def_readonly("lambda_", &DerivedConstants::lambda)
        .def_readonly("beta", &DerivedConstants::beta)
        .def_readonly("epsilon", &DerivedConstants::epsilon)
        .def_readonly("alpha", &DerivedConstants::alpha)
        .def_readonly("t0", &DerivedConstants::t0)
        .def_readonly("sigma0", &DerivedConstants::sigma0)
        .def_readonly("beta_lo", &DerivedConstants::beta_lo)
        .def_readonly("beta_hi", &DerivedConstants::beta_hi);

    py::class_<CheckItem>(m, "CheckItem")
        .def_readonly("name", &CheckItem::name)
        .def_readonly("passed", &CheckItem::pass)
        .def_readonly("margin", &CheckItem::margin)
        .def_readonly("formula", &CheckItem::formula)
        .def_readonly("advisory", &CheckItem::advisory);

    py::class_<CheckReport>(m, "CheckReport")
        .def_property_readonly("items", &CheckReport::items)
        .def("all_pass", &CheckReport::all_pass)
        .def("__getitem__", &CheckReport::at, py::return_value_policy::reference_internal)
        .def("__contains__", &CheckReport::contains);

    py::class_<RootResult>(m, "RootResult")
        .def_readonly("root", &RootResult::root)
        .def_readonly("residual", &RootResult::residual)
        .def_readonly("lo", &RootResult::lo)
        .def_readonly("hi", &RootResult::hi)
        .def_readonly("iterations", &RootResult::iterations)
        .def_readonly("sign_changes", &RootResult::sign_changes);

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init(&GridSpec::make), py::arg("t_min"), py::arg("t_max"), py::arg("h"))
        .def_readonly("t_min", &GridSpec::t_min)
        .def_readonly("t_max", &GridSpec::t_max)
        .def_readonly("h", &GridSpec::h)
        .def("__len__", &GridSpec::size)
        .def("times", &node_times);

    py::class_<Profile>(m, "Profile")
        .def_property_readonly("values", [](const Profile& p) { return to_array(p.values()); })
        .def_property_readonly("times", [](const Profile& p) { return node_times(p.grid()); })
        .def_property_readonly("grid", &Profile::grid)
        .def("eval", &Profile::eval)
        .def("__len__", &Profile::size);

    m.def("chi0", &chi0, py::arg("z"), py::arg("params"));
    m.def("find_lambda", &find_lambda, py::arg("params"), py::arg("tol") = kDefaultRootTol);
    m.def("positive_equilibrium", &positive_equilibrium);
    m.def("solve_sigma0", &solve_sigma0, py::arg("delta"), py::arg("harvest"));
    m.def("feasible_beta_interval", [](const ModelParams& p) {
        const auto iv = feasible_beta_interval(p);
        return py::make_tuple(iv.lo, iv.hi);
    });
    m.def("epsilon_window", [](const ModelParams& p, double lambda) {
        const auto w = epsilon_window(p, lambda);
        return py::make_tuple(w.lo, w.hi);
    });
    m.def(
        "alpha_bound",
        [](const ModelParams& p, double lambda, double eps, double kappa, double beta) {
            const auto b = alpha_bound(p, lambda, eps, kappa, beta);
            py::dict d;
            d["bound"] = b.bound;
            d["first"] = b.first;
            d["second"] = b.second;
            d["cap"] = b.cap;
            return d;
        },
        py::arg("params"), py::arg("lambda_"), py::arg("eps"), py::arg("kappa"), py::arg("beta"));

    m.def(
        "derive_constants",
        [](const ModelParams& p, std::optional<double> beta, std::optional<double> epsilon,
           std::optional<double> alpha, std::optional<double> t0) {
            ConstantOverrides ov;
            ov.beta = beta;
            ov.epsilon = epsilon;
            ov.alpha = alpha;
            ov.t0 = t0;
            return derive_constants(p, ov);
        },
        py::arg("params"), py::arg("beta") = py::none(), py::arg("epsilon") = py::none(),
        py::arg("alpha") = py::none(), py::arg("t0") = py::none());
    m.def("check_hypotheses", &check_hypotheses);

    py::class_<UpperSolution>(m, "UpperSolution")
        .def(py::init(&UpperSolution::from))
        .def("value", py::vectorize(&UpperSolution::value))
        .def("deriv", &UpperSolution::deriv)
        .def("junction", &UpperSolution::junction);
    py::class_<LowerSolution>(m, "LowerSolution")
        .def(py::init(&LowerSolution::from))
        .def("value", py::vectorize(&LowerSolution::value))
        .def("deriv", &LowerSolution::deriv);
    m.def("residual_upper", &residual_upper);
    m.def("residual_lower", &residual_lower);

    py::class_<BoundCertificate>(m, "BoundCertificate")
        .def_readonly("name", &BoundCertificate::name)
        .def_readonly("passed", &BoundCertificate::pass)
        .def_readonly("extreme", &BoundCertificate::extreme)
        .def_readonly("at", &BoundCertificate::at);
    m.def("verify_upper", &verify_upper, py::arg("upper"), py::arg("params"), py::arg("grid"),
          py::arg("tol") = kResidualTol);
    m.def("verify_lower", &verify_lower, py::arg("lower"), py::arg("params"), py::arg("grid"),
          py::arg("tol") = kResidualTol);
    m.def(
        "check_gamma_membership",
        [](const UpperSolution& u, double beta, std::vector<double> shifts, const GridSpec& g) {
            return check_gamma_membership(u, beta, shifts, g);
        },
        py::arg("upper"), py::arg("beta"), py::arg("shifts"), py::arg("grid"));
    m.def("check_compatibility", &check_compatibility, py::arg("upper"), py::arg("lower"),
          py::arg("beta"), py::arg("grid"), py::arg("rel_tol") = 1e-10);

    py::class_<IterationResult>(m, "IterationResult")
        .def_readonly("final", &IterationResult::final)
        .def_readonly("gaps", &IterationResult::gaps)
        .def_readonly("steps", &IterationResult::steps)
        .def_readonly("converged", &IterationResult::converged)
        .def_readonly("saved", &IterationResult::saved)
        .def_readonly("tail_budget", &IterationResult::tail_budget);
    m.def(
        "iterate",
        [](const ModelParams& p, const DerivedConstants& c, const GridSpec& g, double tol,
           std::size_t max_iter, std::size_t save_count, bool check_weighted) {
            IterateOptions opt;
            opt.tol = tol;
            opt.max_iter = max_iter;
            opt.save_count = save_count;
            opt.check_weighted = check_weighted;
            py::gil_scoped_release release;
            return iterate(p, c, g, opt);
        },
        py::arg("params"), py::arg("consts"), py::arg("grid"), py::arg("tol") = 1e-8,
        py::arg("max_iter") = 500, py::arg("save_count") = 4, py::arg("check_weighted") = false);

    m.def("dde_residual", [](const Profile& p, const ModelParams& params) {
        const auto r = dde_residual(p, params);
        py::dict d;
        d["sup_residual"] = r.sup_residual;
        d["argmax_t"] = r.argmax_t;
        d["left_error"] = r.left_error;
        d["right_error"] = r.right_error;
        return d;
    });
    m.def(
        "cross_check",
        [](const Profile& p, const ModelParams& params, double t_start, double t_end, double dt) {
            const auto c = cross_check(p, params, t_start, t_end, dt);
            py::dict d;
            d["max_deviation"] = c.max_deviation;
            d["at"] = c.at;
            return d;
        },
        py::arg("profile"), py::arg("params"), py::arg("t_start"), py::arg("t_end"), py::arg("dt"));

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif
}
