// Python bindings for the batch front end and a few exact primitives.
//
// The heavy objects (bands, lattice systems, reports) cross the boundary as
// JSON text in the same schema the CLI uses, so Python callers get plain
// dicts and strings instead of wrapped GMP types.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "latsamp/cyclotomic.hpp"
#include "latsamp/problem.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace py = pybind11;
using namespace latsamp;

namespace {

py::dict run_spec_text(const std::string& text, const RunFlags& flags) {
    ProblemSpec spec = parse_spec_json(text);
    Report r = run(spec, flags);
    py::dict out = py::module_::import("json").attr("loads")(report_to_json(r));
    out["exit_code"] = exit_code(r);
    out["text"] = report_to_text(r);
    return out;
}

RunFlags make_flags(bool verify, std::optional<long> radius, std::optional<int> trials,
                    std::optional<std::uint64_t> seed, std::optional<double> tol) {
    RunFlags f;
    f.verify = verify;
    f.radius = radius;
    f.trials = trials;
    f.seed = seed;
    f.tol = tol;
    return f;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact tightness and orthogonality checks for sampling on unions "
              "of shifted lattices";

    py::register_exception<SpecError>(m, "SpecError", PyExc_ValueError);
    py::register_exception<UnsupportedSystemError>(m, "UnsupportedSystemError",
                                                   PyExc_ValueError);

    m.def(
        "check",
        [](const std::string& spec_json) {
            return run_spec_text(spec_json, make_flags(false, {}, {}, {}, {}));
        },
        py::arg("spec_json"),
        "Decide the spec's question exactly. Returns the report as a dict "
        "with an added integer 'exit_code' and the plain-text rendering "
        "under 'text'.");

    m.def(
        "verify",
        [](const std::string& spec_json, std::optional<long> radius,
           std::optional<int> trials, std::optional<std::uint64_t> seed,
           std::optional<double> tol) {
            return run_spec_text(spec_json,
                                 make_flags(true, radius, trials, seed, tol));
        },
        py::arg("spec_json"), py::arg("radius") = py::none(),
        py::arg("trials") = py::none(), py::arg("seed") = py::none(),
        py::arg("tol") = py::none(),
        "Decide the spec's question and cross-check the verdict against the "
        "numeric sampling oracle. The report dict gains an 'oracle' section; "
        "exit_code 3 means the two disagreed beyond tolerance.");

    m.def(
        "canonical_spec",
        [](const std::string& spec_json) {
            return spec_to_json(parse_spec_json(spec_json));
        },
        py::arg("spec_json"),
        "Parse a problem spec and re-serialize it in canonical form. Raises "
        "SpecError (a ValueError) with a located message on invalid input.");

    m.def(
        "exponential_sum_is_zero",
        [](const std::vector<std::pair<std::string, std::string>>& terms) {
            ExponentialSum s;
            for (const auto& [c, p] : terms)
                s.add_exact(rat_from_string(c), rat_from_string(p));
            return is_zero_exact(s);
        },
        py::arg("terms"),
        "Exact vanishing test for sum c_k exp(-2 pi i p_k), with rational "
        "coefficients and phases given as strings like '1/3'.");

    m.def(
        "cyclotomic_polynomial",
        [](unsigned long n) {
            std::vector<std::string> out;
            for (const Int& c : cyclotomic_polynomial(n)) out.push_back(c.get_str());
            return out;
        },
        py::arg("n"),
        "Coefficients of the n-th cyclotomic polynomial, ascending degree, "
        "as decimal strings.");
}
