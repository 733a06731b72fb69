#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "weylab/budget.hpp"
#include "weylab/diophantine.hpp"
#include "weylab/expsum.hpp"
#include "weylab/fixedreal.hpp"
#include "weylab/fracsearch.hpp"
#include "weylab/kprofile.hpp"
#include "weylab/meanvalue.hpp"
#include "weylab/verify.hpp"

#include <sstream>

namespace py = pybind11;
using namespace weylab;

namespace {

py::int_ to_py_int(const mpz_class& z) {
    PyObject* obj = PyLong_FromString(z.get_str().c_str(), nullptr, 10);
    if (!obj) throw py::error_already_set();
    return py::reinterpret_steal<py::int_>(obj);
}

PhasePolynomial make_phase(const std::map<int, std::string>& coeffs) {
    PhasePolynomial p;
    for (const auto& [e, v] : coeffs) p.set(e, FixedReal::parse(v));
    return p;
}

CountBackend parse_backend(const std::string& name) {
    if (name == "hashed") return CountBackend::hashed;
    if (name == "brute") return CountBackend::brute;
    throw std::invalid_argument("backend must be 'hashed' or 'brute'");
}

}  // namespace

PYBIND11_MODULE(_weylab, m) {
    m.doc() = "exponential-sum and fractional-part laboratory";

    py::register_exception<BudgetExceeded>(m, "BudgetExceeded");

    m.def(
        "sigma",
        [](const std::vector<int>& exps) {
            const ExponentProfile profile(exps);
            const auto sig = sigma_exponent(profile);
            const auto th = thresholds(profile);
            py::dict d;
            d["sigma"] = sig.sigma.get_d();
            d["sigma_num"] = sig.sigma.get_num().get_si();
            d["sigma_den"] = sig.sigma.get_den().get_si();
            d["l"] = sig.l;
            d["missing"] = profile.missing_exponents();
            d["D"] = th.D;
            d["L"] = th.L;
            d["s_min_single"] = th.s_thm11;
            d["s_threshold_general"] = th.s_thm12;
            return d;
        },
        py::arg("profile"),
        "Exponent calculus for a decreasing exponent tuple.");

    m.def(
        "eval_sum",
        [](const std::map<int, std::string>& coeffs, long X) {
            return eval_sum(make_phase(coeffs), X);
        },
        py::arg("coeffs"), py::arg("X"),
        "sum_{x<=X} e(sum_j a_j x^j); coefficients as 'a/b', decimals, or "
        "sqrt2|pi|golden.");

    m.def(
        "vinogradov_count",
        [](long s, long k, long X, const std::string& backend) {
            return to_py_int(
                vinogradov_count(s, k, X, parse_backend(backend)).count);
        },
        py::arg("s"), py::arg("k"), py::arg("X"),
        py::arg("backend") = "hashed");

    m.def(
        "profile_count",
        [](const std::vector<int>& exps, long s, long X,
           const std::string& backend) {
            return to_py_int(profile_count(ExponentProfile(exps), s, X,
                                           parse_backend(backend))
                                 .count);
        },
        py::arg("profile"), py::arg("s"), py::arg("X"),
        py::arg("backend") = "hashed");

    m.def(
        "arc_mean_value",
        [](const std::vector<int>& exps, long s, long X,
           const std::string& arcs, int l) {
            const ExponentProfile profile(exps);
            const auto dist = solution_distribution(profile, s, X);
            ArcSet set = ArcSet::major_arcs(X, profile.k(), l);
            if (arcs == "minor")
                set = set.complement();
            else if (arcs == "full")
                set = ArcSet::full_circle();
            else if (arcs != "major")
                throw std::invalid_argument("arcs must be full|major|minor");
            return arc_meanvalue(dist, set);
        },
        py::arg("profile"), py::arg("s"), py::arg("X"),
        py::arg("arcs") = "full", py::arg("l") = 2);

    m.def(
        "classify_arc",
        [](const std::string& alpha, long X, int k, int l) {
            const auto v = classify_arc(FixedReal::parse(alpha), X, k, l);
            py::dict d;
            d["major"] = v.major;
            if (v.witness) {
                d["a"] = to_py_int(v.witness->a);
                d["q"] = to_py_int(v.witness->q);
                d["err"] = v.witness->err_d();
            }
            return d;
        },
        py::arg("alpha"), py::arg("X"), py::arg("k"), py::arg("l") = 2);

    m.def(
        "baker_count",
        [](long m, const std::string& alpha, const std::string& beta, long X,
           double Y) {
            return baker_count(m, FixedReal::parse(alpha),
                               FixedReal::parse(beta), X, Y);
        },
        py::arg("m"), py::arg("alpha"), py::arg("beta"), py::arg("X"),
        py::arg("Y"));
    m.def("baker_bound",
          [](long m, long q, long X, double Y) {
              return baker_bound(m, mpz_class(q), X, Y);
          },
          py::arg("m"), py::arg("q"), py::arg("X"), py::arg("Y"));

    m.def(
        "min_frac",
        [](const std::vector<std::map<int, std::string>>& phis, long X,
           const std::string& engine) {
            PolySystem sys;
            sys.X = X;
            for (const auto& c : phis) sys.phis.push_back(make_phase(c));
            const MinResult r =
                engine == "exhaustive" ? exhaustive_min(sys) : mitm_min(sys);
            py::dict d;
            d["value"] = r.value_d();
            d["argmin"] = r.argmin;
            d["engine"] = engine;
            return d;
        },
        py::arg("phis"), py::arg("X"), py::arg("engine") = "mitm",
        "Minimize ||phi_1(x_1)+...+phi_s(x_s)|| over 0 <= x <= X, x != 0.");

    m.def(
        "verify",
        [](bool full, std::uint64_t seed) {
            VerifyOptions opt;
            opt.full = full;
            opt.seed = seed;
            std::ostringstream log;
            const auto report = run_verify(opt, log);
            py::list crits;
            for (const auto& c : report.criteria) {
                py::dict d;
                d["id"] = c.id;
                d["name"] = c.name;
                d["ran"] = c.ran;
                d["pass"] = c.pass;
                d["detail"] = c.detail;
                crits.append(d);
            }
            py::dict d;
            d["criteria"] = crits;
            d["all_pass"] = report.all_pass();
            d["log"] = log.str();
            return d;
        },
        py::arg("full") = false, py::arg("seed") = 20260823ULL);
}
