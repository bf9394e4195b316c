#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kw4/continuation.hpp"
#include "kw4/report.hpp"
#include "kw4/runner.hpp"
#include "kw4/scenario.hpp"
#include "kw4/weyl.hpp"

namespace py = pybind11;
using namespace kw4;

namespace {

using Mat = std::vector<std::vector<double>>;
using Ten = std::vector<Mat>;

Mat to_list(const Matrix4<double>& m) {
  Mat out(kDim, std::vector<double>(kDim));
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) out[i][j] = m[i][j];
  return out;
}

Ten to_list(const Tensor3<double>& t) {
  Ten out;
  for (const auto& s : t) out.push_back(to_list(s));
  return out;
}

std::vector<double> to_list(const Vector4<double>& v) { return {v.begin(), v.end()}; }

Matrix4<double> from_list(const Mat& m, const char* what) {
  if (m.size() != kDim) throw py::value_error(std::string(what) + " must be 4x4");
  Matrix4<double> out{};
  for (int i = 0; i < kDim; ++i) {
    if (m[i].size() != kDim) throw py::value_error(std::string(what) + " must be 4x4");
    for (int j = 0; j < kDim; ++j) out[i][j] = m[i][j];
  }
  return out;
}

StructureKind kind_of(const std::string& s) {
  if (auto k = parse_kind(s)) return *k;
  throw py::value_error("kind must be 'para' or 'complex'");
}

Signature signature_of(const std::string& s) {
  if (auto k = parse_signature(s)) return *k;
  throw py::value_error("signature must be '2,2' or '0,4'");
}

Model<double> model_from(const std::string& kind, const Mat& J, const Mat& g0, const std::optional<Ten>& g1) {
  MetricJet<double> g;
  g.g0 = from_list(g0, "g0");
  if (g1) {
    if (g1->size() != kDim) throw py::value_error("g1 must be 4x4x4");
    for (int i = 0; i < kDim; ++i) g.g1[i] = from_list((*g1)[i], "g1");
  }
  return make_model(make_structure(kind_of(kind), from_list(J, "J")), g);
}

}  // namespace

PYBIND11_MODULE(_kw4, m) {
  m.doc() = "Kahler-Weyl structures on 4-dimensional (para-)Hermitian models";
  m.attr("__version__") = KW4_VERSION;

  py::register_exception<Error>(m, "Kw4Error", PyExc_RuntimeError);

  py::class_<Model<double>>(m, "Model")
      .def(py::init(&model_from), py::arg("kind"), py::arg("J"), py::arg("g0"), py::arg("g1") = py::none())
      .def_property_readonly("kind", [](const Model<double>& x) { return std::string(to_string(x.kind())); })
      .def_property_readonly("J", [](const Model<double>& x) { return to_list(x.J()); })
      .def_property_readonly("g0", [](const Model<double>& x) { return to_list(x.metric.g0); })
      .def_property_readonly("g1", [](const Model<double>& x) { return to_list(x.metric.g1); })
      .def("__repr__", [](const Model<double>& x) { return "<kw4.Model kind=" + std::string(to_string(x.kind())) + ">"; });

  m.def("standard_model",
        [](const std::string& kind, const std::string& sig, bool pos) {
          return standard_model(kind_of(kind), signature_of(sig), pos);
        },
        py::arg("kind") = "para", py::arg("signature") = "2,2", py::arg("positive_definite") = false);

  m.def("random_model",
        [](const std::string& kind, const std::string& sig, std::uint64_t seed, std::uint64_t trial) {
          Rng rng = Rng::for_trial(seed, trial);
          return random_model(standard_structure<double>(kind_of(kind)), signature_of(sig), rng);
        },
        py::arg("kind") = "para", py::arg("signature") = "2,2", py::arg("seed") = 0, py::arg("trial") = 0);

  m.def("example_model", [](const std::array<double, 4>& f) { return example_model(f); }, py::arg("f"));

  m.def("gl4_action", [](const Mat& A, const Model<double>& x) { return gl4_action(from_list(A, "A"), x); },
        py::arg("A"), py::arg("model"));

  m.def("conformal_rescale",
        [](const Model<double>& x, double f0, const std::array<double, 4>& df) {
          return conformal_rescale(x, f0, Vector4<double>{df[0], df[1], df[2], df[3]});
        },
        py::arg("model"), py::arg("f0"), py::arg("df"));

  m.def("levi_civita", [](const Model<double>& x) { return to_list(levi_civita(x).gamma); }, py::arg("model"));

  m.def("lee_form",
        [](const Model<double>& x, bool flip) {
          const LeeForm<double> lf = lee_form(x, flip);
          return py::dict(py::arg("phi") = to_list(lf.phi), py::arg("phi_sharp") = to_list(lf.phi_sharp));
        },
        py::arg("model"), py::arg("flip_orientation") = false);

  m.def("codifferential_of_kahler",
        [](const Model<double>& x, bool flip) { return to_list(codifferential_of_kahler(x, flip)); }, py::arg("model"),
        py::arg("flip_orientation") = false);

  m.def("weyl_connection", [](const Model<double>& x) { return to_list(weyl_connection(x, lee_form(x)).gamma); },
        py::arg("model"));

  m.def("verify_kw",
        [](const Model<double>& x, double tol, bool flip) {
          const KwReport<double> r = verify_kw(x, {tol, flip});
          return py::dict(py::arg("residual") = r.residual, py::arg("pass") = r.pass,
                          py::arg("phi") = to_list(r.phi.phi), py::arg("nabla_J") = to_list(r.nabla.value));
        },
        py::arg("model"), py::arg("tolerance") = kDefaultTolerance, py::arg("flip_orientation") = false);

  m.def("uniqueness_rank", [](const Model<double>& x) { return uniqueness_rank(x); }, py::arg("model"));

  m.def("fd_oracle",
        [](const Model<double>& x, double h) {
          const FdOracleResult<double> o = fd_oracle(x, h);
          return py::dict(py::arg("phi") = to_list(o.phi), py::arg("gamma") = to_list(o.gamma),
                          py::arg("weyl_gamma") = to_list(o.weyl_gamma), py::arg("nabla_J") = to_list(o.nabla_j));
        },
        py::arg("model"), py::arg("h") = 1e-4);

  m.def("hermitian_reduction_check",
        [](const Model<double>& x) { return hermitian_reduction_check(x).max_deviation(); }, py::arg("model"));

  m.def("nijenhuis",
        [](const Mat& J0, const Ten& dJ) {
          if (dJ.size() != kDim) throw py::value_error("dJ must be 4x4x4");
          std::array<Matrix4<double>, kDim> parts{};
          for (int i = 0; i < kDim; ++i) parts[i] = from_list(dJ[i], "dJ");
          return to_list(nijenhuis(assemble_jet_matrix(from_list(J0, "J0"), parts)));
        },
        py::arg("J0"), py::arg("dJ"), "dJ[m] holds the partial derivatives d_m J.");

  m.def("run_scenario",
        [](const std::string& text, unsigned jobs, std::optional<double> tolerance, bool wall_time) {
          Scenario sc;
          try {
            sc = parse_scenario(text, "<scenario>");
          } catch (const ScenarioError& e) {
            throw Error(e.message());
          }
          RunResult r;
          {
            py::gil_scoped_release release;
            r = run_scenario(sc, {jobs, tolerance});
          }
          return std::make_pair(report_text(r, wall_time), r.text);
        },
        py::arg("scenario_json"), py::arg("jobs") = 1, py::arg("tolerance") = py::none(),
        py::arg("wall_time") = true);
}
