#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "gfc/errors.hpp"
#include "gfc/lattice.hpp"
#include "gfc/oracle.hpp"
#include "gfc/periods.hpp"
#include "gfc/serialize.hpp"

namespace py = pybind11;
using namespace gfc;

namespace {

QuadConfig make_config(int level, double rel_tol, int max_level) {
    QuadConfig cfg{level, rel_tol, max_level};
    cfg.validate();
    return cfg;
}

py::dict word_dict(const HomologyWord& w) {
    py::dict d;
    if (const auto* p = std::get_if<PowerWord>(&w)) {
        d["type"] = "power";
        d["i"] = p->i;
    } else {
        const auto& c = std::get<ConjCommWord>(w);
        d["type"] = "conj_comm";
        d["g"] = c.g;
        d["j"] = c.j;
        d["l"] = c.l;
    }
    return d;
}

HomologyWord word_from_dict(const py::dict& d) {
    const auto type = d["type"].cast<std::string>();
    if (type == "power") return PowerWord{d["i"].cast<int>()};
    if (type == "conj_comm") {
        return ConjCommWord{d["g"].cast<std::vector<int>>(), d["j"].cast<int>(), d["l"].cast<int>()};
    }
    throw DegenerateInput("unknown generator type '" + type + "'");
}

std::vector<std::vector<int>> alphas(const std::vector<FormIndex>& forms) {
    std::vector<std::vector<int>> out;
    for (const auto& f : forms) out.push_back(f.alpha);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Period lattices of generalized Fermat curves";

    // Translators run newest first, so subclasses are registered after their bases.
    auto& base_error = py::register_exception<Error>(m, "GfcError", PyExc_RuntimeError);
    auto& degenerate = py::register_exception<DegenerateInput>(m, "DegenerateInput", base_error.ptr());
    py::register_exception<CollidingBranchPoints>(m, "CollidingBranchPoints", degenerate.ptr());
    py::register_exception<BasePointOnBranchPoint>(m, "BasePointOnBranchPoint", degenerate.ptr());
    py::register_exception<NoConvergence>(m, "NoConvergence", base_error.ptr());
    py::register_exception<NotFullRank>(m, "NotFullRank", base_error.ptr());
    py::register_exception<ReconstructionFailed>(m, "ReconstructionFailed", base_error.ptr());

    m.def("genus", py::overload_cast<int, int>(&genus), py::arg("k"), py::arg("n"));
    m.def(
        "enumerate_forms", [](int k, int n) { return alphas(enumerate_forms(k, n)); }, py::arg("k"), py::arg("n"));
    m.def(
        "m_exponents", [](const std::vector<int>& alpha, int k) { return make_form(alpha, k).m; }, py::arg("alpha"),
        py::arg("k"));
    m.def(
        "enumerate_generators",
        [](int k, int n, const std::vector<Complex>& lambdas, bool include_powers) {
            py::list out;
            for (const auto& w : enumerate_generators(validate_spec(k, n, lambdas), include_powers)) {
                out.append(word_dict(w));
            }
            return out;
        },
        py::arg("k"), py::arg("n"), py::arg("lambdas") = std::vector<Complex>{}, py::arg("include_powers") = false);
    m.def(
        "info_json",
        [](int k, int n, const std::vector<Complex>& lambdas, bool include_powers) {
            return io::to_json_text(io::info_json(validate_spec(k, n, lambdas), include_powers));
        },
        py::arg("k"), py::arg("n"), py::arg("lambdas") = std::vector<Complex>{}, py::arg("include_powers") = false);

    py::class_<PeriodMatrix>(m, "PeriodMatrix")
        .def_property_readonly("k", [](const PeriodMatrix& pm) { return pm.spec.k; })
        .def_property_readonly("n", [](const PeriodMatrix& pm) { return pm.spec.n; })
        .def_property_readonly("lambdas", [](const PeriodMatrix& pm) { return pm.spec.lambdas; })
        .def_property_readonly("base_point", [](const PeriodMatrix& pm) { return pm.base_point; })
        .def_property_readonly("forms", [](const PeriodMatrix& pm) { return alphas(pm.cols); })
        .def_property_readonly("generators",
                               [](const PeriodMatrix& pm) {
                                   py::list out;
                                   for (const auto& w : pm.rows) out.append(word_dict(w));
                                   return out;
                               })
        .def_property_readonly("entries", [](const PeriodMatrix& pm) { return pm.entries; })
        .def_property_readonly("base_integrals", [](const PeriodMatrix& pm) { return pm.base_integrals; })
        .def("to_json", [](const PeriodMatrix& pm) { return io::to_json_text(io::period_matrix_json(pm)); })
        .def("to_csv", [](const PeriodMatrix& pm) { return io::period_matrix_csv(pm); })
        .def_static("from_json",
                    [](const std::string& text) { return io::period_matrix_from_json(nlohmann::json::parse(text)); })
        .def_static("from_csv", [](const std::string& text) { return io::period_matrix_from_csv(text); })
        .def("same_wire_content", [](const PeriodMatrix& a, const PeriodMatrix& b) { return io::same_wire_content(a, b); });

    m.def(
        "period_matrix",
        [](int k, int n, const std::vector<Complex>& lambdas, bool include_powers, int level, double rel_tol,
           int max_level) {
            const CurveSpec spec = validate_spec(k, n, lambdas);
            const QuadConfig cfg = make_config(level, rel_tol, max_level);
            py::gil_scoped_release release;
            return assemble(spec, cfg, include_powers);
        },
        py::arg("k"), py::arg("n"), py::arg("lambdas") = std::vector<Complex>{}, py::arg("include_powers") = false,
        py::arg("level") = 10, py::arg("rel_tol") = 1e-10, py::arg("max_level") = 14);

    m.def(
        "integrate_word",
        [](const py::dict& word, const std::vector<int>& alpha, int k, int n, const std::vector<Complex>& lambdas) {
            const CurveSpec spec = validate_spec(k, n, lambdas);
            const HomologyWord w = word_from_dict(word);
            check_word(w, k, n);
            return integrate_word(w, make_form(alpha, k), spec, QuadConfig{});
        },
        py::arg("word"), py::arg("alpha"), py::arg("k"), py::arg("n"), py::arg("lambdas") = std::vector<Complex>{});

    m.def("real_split", py::overload_cast<const Eigen::MatrixXcd&>(&real_split), py::arg("entries"));
    m.def("lattice_rank", &lattice_rank, py::arg("vectors"), py::arg("rank_tol") = 1e-8);

    py::class_<LatticeBasis>(m, "LatticeBasis")
        .def_readonly("basis", &LatticeBasis::basis)
        .def_readonly("coefficients", &LatticeBasis::coefficients)
        .def_readonly("generator_combinations", &LatticeBasis::generator_combinations)
        .def_readonly("residual", &LatticeBasis::residual)
        .def_readonly("abs_det", &LatticeBasis::abs_det);

    m.def(
        "extract_basis", [](const PeriodMatrix& pm) { return extract_basis(real_split(pm), pm.spec); },
        py::arg("period_matrix"));
    m.def(
        "extract_basis_from_vectors",
        [](const Eigen::MatrixXd& vectors, int expected_rank, std::int64_t denominator_bound) {
            ExtractOptions o;
            o.expected_rank = expected_rank;
            o.denominator_bound = denominator_bound;
            return extract_basis(vectors, o);
        },
        py::arg("vectors"), py::arg("expected_rank"), py::arg("denominator_bound"));
    m.def("same_lattice", &same_lattice, py::arg("a"), py::arg("b"), py::arg("tol") = 1e-6);

    m.def(
        "crosscheck",
        [](int k, int n, const std::vector<Complex>& lambdas, int sample, std::uint64_t seed) {
            const CurveSpec spec = validate_spec(k, n, lambdas);
            CrosscheckReport report;
            {
                py::gil_scoped_release release;
                report = crosscheck_report(spec, QuadConfig{}, sample, seed);
            }
            py::list out;
            for (const auto& c : report.checks) {
                py::dict d;
                d["name"] = c.name;
                d["passed"] = c.passed;
                d["max_deviation"] = c.max_deviation;
                d["tolerance"] = c.tolerance;
                d["detail"] = c.detail;
                out.append(d);
            }
            return out;
        },
        py::arg("k"), py::arg("n"), py::arg("lambdas") = std::vector<Complex>{}, py::arg("sample") = 25,
        py::arg("seed") = 0);

    m.def(
        "beta_closed_form", [](const std::vector<int>& alpha, int k) { return beta_closed_form(make_form(alpha, k), k); },
        py::arg("alpha"), py::arg("k"));
    m.def("agm_elliptic_periods", &agm_elliptic_periods, py::arg("lambda_"));
}
