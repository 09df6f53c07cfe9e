// corrsc: command-line front end for the stochastic-collocation pipeline.
//
//   corrsc basis      --config mix.json --order p --out dir
//   corrsc quadrature --config mix.json --order p --out dir [--seed s] [--tol t]
//   corrsc surrogate  --config mix.json --order p --out dir (--model builtin:NAME | --values CSV | --model-cmd CMD)
//   corrsc stats      --config mix.json --out dir [--samples n] [--bins b] [--draws k] [--seed s]
//   corrsc sample     --config mix.json --n N --out dir [--seed s]
//
// Every stage reads and writes files in --out so that an external simulator
// can be run between `quadrature` (nodes.csv) and `surrogate` (--values).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "corrsc/basis.hpp"
#include "corrsc/benchmarks.hpp"
#include "corrsc/collocation.hpp"
#include "corrsc/distribution.hpp"
#include "corrsc/error.hpp"
#include "corrsc/io.hpp"
#include "corrsc/quadrature.hpp"

namespace fs = std::filesystem;
using namespace corrsc;

namespace {

constexpr int kExitError = 1;
constexpr int kExitNotConverged = 2;

struct RunConfig {
  std::string config;
  int order = 1;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  std::size_t candidates = 0;
  double increase_factor = 1.5;
  int max_iters = 200;
  std::string out = ".";

  std::string model;
  std::string values;
  std::string model_cmd;
  std::string rule_path;
  std::string basis_path;
  std::string surrogate_path;

  std::size_t samples = 100000;
  std::size_t bins = 50;
  std::size_t draws = 20;
  std::size_t n = 1000;
};

GaussianMixture load_mixture(const std::string& spec) {
  if (spec.empty()) throw InvalidArgument("--config is required");
  if (spec.rfind("builtin:", 0) == 0) return benchmarks::mixture(spec.substr(8));
  return mixture_from_json(parse_json(read_text_file(spec), spec));
}

std::string out_file(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.out);
  return (fs::path(cfg.out) / name).string();
}

std::string in_file(const RunConfig& cfg, const std::string& given, const std::string& name) {
  return given.empty() ? (fs::path(cfg.out) / name).string() : given;
}

SolverConfig solver_config(const RunConfig& cfg) {
  SolverConfig s;
  s.residual_tol = cfg.tol;
  s.seed = cfg.seed;
  s.candidate_count = cfg.candidates;
  s.increase_factor = cfg.increase_factor;
  s.max_outer_iters = cfg.max_iters;
  return s;
}

void check_order(int p) {
  if (p < 1) throw InvalidArgument("--order must be >= 1");
}

int cmd_basis(const RunConfig& cfg) {
  check_order(cfg.order);
  const auto gm = load_mixture(cfg.config);
  const auto moments = raw_moments(gm, 4 * cfg.order);
  const auto high = gram_schmidt(moments, 2 * cfg.order);
  const auto low = gram_schmidt(moments, cfg.order);
  write_text_file(out_file(cfg, "basis_p.json"), dump_json(basis_to_json(low)));
  write_text_file(out_file(cfg, "basis_2p.json"), dump_json(basis_to_json(high)));
  std::cerr << "basis: order " << cfg.order << " (" << low.size() << " functions), order "
            << 2 * cfg.order << " (" << high.size() << " functions), residual "
            << high.gram_residual() << "\n";
  return 0;
}

OrthoBasis basis_for(const RunConfig& cfg, const GaussianMixture& gm, int order,
                     const std::string& file_name) {
  const std::string path = in_file(cfg, cfg.basis_path, file_name);
  if (!cfg.basis_path.empty() || fs::exists(path)) {
    auto basis = basis_from_json(parse_json(read_text_file(path), path));
    if (basis.order() == order && basis.dim() == gm.dim()) return basis;
    if (!cfg.basis_path.empty()) {
      throw InvalidArgument(path + ": basis has order " + std::to_string(basis.order()) + ", expected " +
                            std::to_string(order));
    }
  }
  return gram_schmidt(raw_moments(gm, 2 * order), order);
}

int cmd_quadrature(const RunConfig& cfg) {
  check_order(cfg.order);
  const auto gm = load_mixture(cfg.config);
  const auto basis = basis_for(cfg, gm, 2 * cfg.order, "basis_2p.json");
  AdaptiveTrace trace;
  QuadratureRule rule;
  try {
    rule = adaptive_rule(basis, gm, solver_config(cfg), &trace);
  } catch (const QuadratureFailure& e) {
    std::cerr << "quadrature: " << e.what() << "\n";
    return kExitNotConverged;
  }
  write_text_file(out_file(cfg, "rule.json"), dump_json(rule_to_json(rule)));
  std::ostringstream csv;
  write_points_csv(csv, rule.nodes);
  write_text_file(out_file(cfg, "nodes.csv"), csv.str());
  for (std::size_t i = 0; i < trace.increase_counts.size(); ++i) {
    std::cerr << "increase: M = " << trace.increase_counts[i] << ", residual "
              << trace.increase_residuals[i] << "\n";
  }
  std::cerr << "decrease: " << trace.accepted.size() << " accepted rules\n";
  std::cerr << "quadrature: M = " << rule.size() << ", residual " << rule.residual_norm << "\n";
  return rule.converged ? 0 : kExitNotConverged;
}

ModelAdapter adapter_for(const RunConfig& cfg) {
  const int given = !cfg.model.empty() + !cfg.values.empty() + !cfg.model_cmd.empty();
  if (given != 1) throw InvalidArgument("exactly one of --model, --values, --model-cmd is required");
  if (!cfg.model.empty()) {
    if (cfg.model.rfind("builtin:", 0) != 0) throw InvalidArgument("--model must look like builtin:<name>");
    return ModelAdapter::builtin(cfg.model.substr(8));
  }
  if (!cfg.values.empty()) return ModelAdapter::batch_file(cfg.values);
  return ModelAdapter::subprocess(cfg.model_cmd);
}

int cmd_surrogate(const RunConfig& cfg) {
  check_order(cfg.order);
  const auto gm = load_mixture(cfg.config);
  const std::string rule_path = in_file(cfg, cfg.rule_path, "rule.json");
  const auto rule = rule_from_json(parse_json(read_text_file(rule_path), rule_path));
  if (rule.nodes.cols() != gm.dim()) throw InvalidArgument(rule_path + ": dimension differs from mixture");
  const auto basis = basis_for(cfg, gm, cfg.order, "basis_p.json");
  const auto adapter = adapter_for(cfg);

  const Eigen::MatrixXd values = evaluate_model(adapter, rule.nodes);
  SurrogateSet set;
  set.outputs = project_outputs(rule, basis, values, adapter.id());
  if (adapter.kind == ModelAdapter::Kind::builtin) {
    set.labels = benchmarks::output_labels(adapter.spec);
  } else if (values.cols() == 1) {
    set.labels = {"y"};
  } else {
    for (Eigen::Index j = 0; j < values.cols(); ++j) set.labels.push_back("y" + std::to_string(j + 1));
  }
  write_text_file(out_file(cfg, "surrogate.json"), dump_json(surrogates_to_json(set)));

  std::ostringstream table;
  table << "output,index,exponents,coefficient,magnitude\n";
  for (std::size_t o = 0; o < set.outputs.size(); ++o) {
    const auto& s = set.outputs[o];
    for (std::size_t j = 0; j < basis.size(); ++j) {
      std::string expo;
      for (int e : basis.indices()[j]) expo += (expo.empty() ? "" : " ") + std::to_string(e);
      const double c = s.coefficients[static_cast<Eigen::Index>(j)];
      table << set.labels[o] << ',' << j + 1 << ',' << expo << ',' << format_double(c) << ','
            << format_double(std::abs(c)) << '\n';
    }
  }
  write_text_file(out_file(cfg, "coefficients.csv"), table.str());
  std::cerr << "surrogate: " << set.outputs.size() << " output(s) from " << rule.size() << " model runs\n";
  return rule.converged ? 0 : kExitNotConverged;
}

int cmd_stats(const RunConfig& cfg) {
  const auto gm = load_mixture(cfg.config);
  const std::string path = in_file(cfg, cfg.surrogate_path, "surrogate.json");
  const auto set = surrogates_from_json(parse_json(read_text_file(path), path));
  Json doc;
  Json outputs = Json::array();
  std::ostringstream csv;
  csv << "output,bin_left,bin_right,center,histogram,kde\n";
  for (std::size_t o = 0; o < set.outputs.size(); ++o) {
    const auto& s = set.outputs[o];
    const auto st = statistics(s);
    const auto table = density_estimate(s, gm, cfg.samples, cfg.seed, cfg.bins);
    Json jo;
    jo["output"] = set.labels[o];
    jo["mean"] = st.mean;
    jo["variance"] = st.variance;
    jo["std"] = st.std;
    jo["bandwidth"] = table.bandwidth;
    jo["degenerate"] = table.degenerate;
    outputs.push_back(std::move(jo));
    const auto centers = table.bin_centers();
    for (std::size_t b = 0; b < table.histogram.size(); ++b) {
      csv << set.labels[o] << ',' << format_double(table.bin_edges[b]) << ','
          << format_double(table.bin_edges[b + 1]) << ',' << format_double(centers[b]) << ','
          << format_double(table.histogram[b]) << ',' << format_double(table.kde[b]) << '\n';
    }
  }
  doc["model"] = set.outputs.front().model;
  doc["samples"] = cfg.samples;
  doc["seed"] = cfg.seed;
  doc["outputs"] = std::move(outputs);
  write_text_file(out_file(cfg, "stats.json"), dump_json(doc));
  write_text_file(out_file(cfg, "density.csv"), csv.str());

  // Individual surrogate realizations, one row per draw and output.
  const Points xs = sample(gm, cfg.draws, cfg.seed);
  std::ostringstream dcsv;
  dcsv << "source,draw,output,value\n";
  for (Eigen::Index k = 0; k < xs.rows(); ++k) {
    for (std::size_t o = 0; o < set.outputs.size(); ++o) {
      const double v = evaluate(set.outputs[o], {xs.row(k).data(), static_cast<std::size_t>(xs.cols())});
      dcsv << "surrogate," << k << ',' << set.labels[o] << ',' << format_double(v) << '\n';
    }
  }
  write_text_file(out_file(cfg, "surrogate_draws.csv"), dcsv.str());
  return 0;
}

int cmd_sample(const RunConfig& cfg) {
  const auto gm = load_mixture(cfg.config);
  std::ostringstream csv;
  write_points_csv(csv, sample(gm, cfg.n, cfg.seed));
  write_text_file(out_file(cfg, "samples.csv"), csv.str());
  return 0;
}

void add_shared(CLI::App* sub, RunConfig& cfg, bool with_order) {
  sub->add_option("--config", cfg.config, "Mixture JSON file or builtin:<benchmark>")->required();
  if (with_order) sub->add_option("--order", cfg.order, "Surrogate order p")->required();
  sub->add_option("--seed", cfg.seed, "Random seed");
  sub->add_option("--tol", cfg.tol, "Quadrature residual tolerance");
  sub->add_option("--out", cfg.out, "Output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic collocation for correlated Gaussian-mixture parameters"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* basis = app.add_subcommand("basis", "Build orthonormal bases of order p and 2p");
  add_shared(basis, cfg, true);

  auto* quad = app.add_subcommand("quadrature", "Compute quadrature nodes and weights");
  add_shared(quad, cfg, true);
  quad->add_option("--candidates", cfg.candidates, "Monte Carlo candidates for clustering");
  quad->add_option("--increase-factor", cfg.increase_factor, "Node growth factor");
  quad->add_option("--max-iters", cfg.max_iters, "Outer iterations per solve");
  quad->add_option("--basis", cfg.basis_path, "Order-2p basis file");

  auto* surr = app.add_subcommand("surrogate", "Project model values onto the order-p basis");
  add_shared(surr, cfg, true);
  surr->add_option("--rule", cfg.rule_path, "Rule file (default <out>/rule.json)");
  surr->add_option("--basis", cfg.basis_path, "Order-p basis file");
  surr->add_option("--model", cfg.model, "builtin:<name>");
  surr->add_option("--values", cfg.values, "Values CSV, one line per node");
  surr->add_option("--model-cmd", cfg.model_cmd, "Command reading nodes on stdin");

  auto* stats = app.add_subcommand("stats", "Mean, variance and density tables of a surrogate");
  add_shared(stats, cfg, false);
  stats->add_option("--surrogate", cfg.surrogate_path, "Surrogate file (default <out>/surrogate.json)");
  stats->add_option("--samples", cfg.samples, "Surrogate samples for the density table");
  stats->add_option("--bins", cfg.bins, "Histogram bins");
  stats->add_option("--draws", cfg.draws, "Surrogate realizations written to surrogate_draws.csv");

  auto* samp = app.add_subcommand("sample", "Draw samples from the mixture");
  add_shared(samp, cfg, false);
  samp->add_option("--n", cfg.n, "Number of samples");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*basis) return cmd_basis(cfg);
    if (*quad) return cmd_quadrature(cfg);
    if (*surr) return cmd_surrogate(cfg);
    if (*stats) return cmd_stats(cfg);
    if (*samp) return cmd_sample(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
