#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "corrsc/basis.hpp"
#include "corrsc/benchmarks.hpp"
#include "corrsc/collocation.hpp"
#include "corrsc/distribution.hpp"
#include "corrsc/error.hpp"
#include "corrsc/io.hpp"
#include "corrsc/multi_index.hpp"
#include "corrsc/quadrature.hpp"

namespace py = pybind11;
using namespace corrsc;

namespace {

std::span<const double> as_span(const Eigen::VectorXd& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Stochastic collocation for correlated Gaussian-mixture parameters";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

  py::class_<GaussianMixture>(m, "GaussianMixture")
      .def(py::init([](const std::vector<double>& weights, const std::vector<Eigen::VectorXd>& means,
                       const std::vector<Eigen::MatrixXd>& covs) {
             if (weights.size() != means.size() || weights.size() != covs.size()) {
               throw InvalidArgument("weights, means and covs must have the same length");
             }
             std::vector<GaussianComponent> comps;
             for (std::size_t k = 0; k < weights.size(); ++k) comps.push_back({weights[k], means[k], covs[k]});
             return GaussianMixture(std::move(comps));
           }),
           py::arg("weights"), py::arg("means"), py::arg("covs"))
      .def_property_readonly("dim", &GaussianMixture::dim)
      .def_property_readonly("n_components", &GaussianMixture::n_components)
      .def("mean", &GaussianMixture::mean)
      .def("sample", [](const GaussianMixture& gm, std::size_t n, std::uint64_t seed) { return sample(gm, n, seed); },
           py::arg("n"), py::arg("seed") = 0)
      .def("density", [](const GaussianMixture& gm, const Eigen::VectorXd& x) { return density(gm, as_span(x)); })
      .def("to_json", [](const GaussianMixture& gm) { return dump_json(mixture_to_json(gm)); })
      .def_static("from_json", [](const std::string& text) { return mixture_from_json(parse_json(text, "mixture")); });

  m.def("benchmark_mixture", &benchmarks::mixture, py::arg("name"));
  m.def("benchmark_model", [](const std::string& name, const Eigen::VectorXd& x) {
    return benchmarks::model_outputs(name, as_span(x));
  });

  py::class_<MomentTable>(m, "MomentTable")
      .def_property_readonly("dim", &MomentTable::dim)
      .def_property_readonly("max_order", &MomentTable::max_order)
      .def_property_readonly("values", &MomentTable::values)
      .def("at", [](const MomentTable& t, const std::vector<int>& gamma) { return t.at(gamma); });
  m.def("raw_moments", &raw_moments, py::arg("gm"), py::arg("max_order"));
  m.def("enumerate_indices", &enumerate_indices, py::arg("d"), py::arg("q"));

  py::class_<OrthoBasis>(m, "OrthoBasis")
      .def_property_readonly("dim", &OrthoBasis::dim)
      .def_property_readonly("order", &OrthoBasis::order)
      .def_property_readonly("indices", &OrthoBasis::indices)
      .def_property_readonly("coeff_matrix", &OrthoBasis::coeff_matrix)
      .def_property_readonly("gram_residual", &OrthoBasis::gram_residual)
      .def("__len__", &OrthoBasis::size)
      .def("evaluate", [](const OrthoBasis& b, const Eigen::VectorXd& x) { return b.evaluate(as_span(x)); })
      .def("jacobian", [](const OrthoBasis& b, const Eigen::VectorXd& x) { return b.jacobian(as_span(x)); });
  m.def("gram_schmidt", &gram_schmidt, py::arg("moments"), py::arg("q"));

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("residual_tol", &SolverConfig::residual_tol)
      .def_readwrite("max_outer_iters", &SolverConfig::max_outer_iters)
      .def_readwrite("candidate_count", &SolverConfig::candidate_count)
      .def_readwrite("seed", &SolverConfig::seed)
      .def_readwrite("increase_factor", &SolverConfig::increase_factor)
      .def_readwrite("gn_damping", &SolverConfig::gn_damping);

  py::class_<QuadratureRule>(m, "QuadratureRule")
      .def_readonly("nodes", &QuadratureRule::nodes)
      .def_readonly("weights", &QuadratureRule::weights)
      .def_readonly("residual_norm", &QuadratureRule::residual_norm)
      .def_readonly("basis_order", &QuadratureRule::basis_order)
      .def_readonly("converged", &QuadratureRule::converged)
      .def_readonly("history", &QuadratureRule::history)
      .def("__len__", &QuadratureRule::size)
      .def("to_json", [](const QuadratureRule& r) { return dump_json(rule_to_json(r)); });

  m.def("assemble_phi", &assemble_phi, py::arg("basis"), py::arg("nodes"));
  m.def("solve_weights", [](const Eigen::MatrixXd& phi) { return solve_weights(phi).weights; }, py::arg("phi"));
  m.def("bcd_solve", [](const OrthoBasis& b, const Points& nodes, const SolverConfig& cfg) {
    return bcd_solve(b, nodes, cfg);
  }, py::arg("basis"), py::arg("nodes"), py::arg("cfg") = SolverConfig{});
  m.def("init_nodes", &init_nodes, py::arg("gm"), py::arg("m"), py::arg("candidate_count"), py::arg("seed") = 0);
  m.def("adaptive_rule", [](const OrthoBasis& b, const GaussianMixture& gm, const SolverConfig& cfg) {
    return adaptive_rule(b, gm, cfg);
  }, py::arg("basis"), py::arg("gm"), py::arg("cfg") = SolverConfig{});

  py::class_<Statistics>(m, "Statistics")
      .def_readonly("mean", &Statistics::mean)
      .def_readonly("variance", &Statistics::variance)
      .def_readonly("std", &Statistics::std);

  py::class_<Surrogate>(m, "Surrogate")
      .def_readonly("coefficients", &Surrogate::coefficients)
      .def_readonly("rule_residual", &Surrogate::rule_residual)
      .def_readonly("model", &Surrogate::model)
      .def_readonly("sample_count", &Surrogate::sample_count)
      .def("__call__", [](const Surrogate& s, const Eigen::VectorXd& x) { return evaluate(s, as_span(x)); })
      .def("evaluate_points", &evaluate_points)
      .def("statistics", &statistics);

  m.def("project", [](const QuadratureRule& rule, const OrthoBasis& basis, const Eigen::VectorXd& values,
                      const std::string& model) { return project(rule, basis, as_span(values), model); },
        py::arg("rule"), py::arg("basis"), py::arg("values"), py::arg("model") = "");
  m.def("evaluate_builtin", [](const std::string& name, const Points& nodes) {
    return evaluate_model(ModelAdapter::builtin(name), nodes);
  }, py::arg("name"), py::arg("nodes"));

#ifdef CORRSC_VERSION
  m.attr("__version__") = CORRSC_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
