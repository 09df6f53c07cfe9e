#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "corrsc/basis.hpp"
#include "corrsc/distribution.hpp"
#include "corrsc/quadrature.hpp"

namespace corrsc {

/// Polynomial surrogate y(xi) ~ sum_alpha c_alpha Psi_alpha(xi).
struct Surrogate {
  OrthoBasis basis;
  Eigen::VectorXd coefficients;
  double rule_residual = 0.0;
  std::string model;
  std::size_t sample_count = 0;
};

/// c_alpha = sum_k values[k] Psi_alpha(node_k) w_k for every basis function.
/// Throws ModelError naming the first node whose value is not finite.
Surrogate project(const QuadratureRule& rule, const OrthoBasis& basis,
                  std::span<const double> values, std::string model = {});

/// One projection per output column of `values` (M x K), sharing the rule.
std::vector<Surrogate> project_outputs(const QuadratureRule& rule, const OrthoBasis& basis,
                                       const Eigen::MatrixXd& values, const std::string& model = {});

double evaluate(const Surrogate& s, std::span<const double> x);

/// Surrogate values at every row of `points`.
Eigen::VectorXd evaluate_points(const Surrogate& s, const Points& points);

struct Statistics {
  double mean = 0.0;
  double variance = 0.0;
  double std = 0.0;
};

/// Mean is the constant coefficient; variance is the sum of the squares of
/// the others (orthonormal basis).
Statistics statistics(const Surrogate& s);

/// Normalized histogram plus Gaussian KDE of a set of scalar outputs.
struct DensityTable {
  std::vector<double> bin_edges;    // n_bins + 1 entries
  std::vector<double> histogram;    // density per bin, integrates to 1
  std::vector<double> kde;          // KDE at the bin centres
  double bandwidth = 0.0;           // Silverman rule of thumb
  double sample_mean = 0.0;
  double sample_std = 0.0;
  bool degenerate = false;          // zero-spread outputs, single bin

  std::vector<double> bin_centers() const;
};

/// Silverman's rule of thumb: 0.9 min(std, IQR / 1.34) n^(-1/5).
double silverman_bandwidth(std::span<const double> values);

/// Gaussian kernel density estimate at each grid point.
std::vector<double> kde(std::span<const double> values, std::span<const double> grid,
                        double bandwidth);

/// Histogram/KDE table of arbitrary outputs over their own range.
DensityTable density_table(std::span<const double> values, std::size_t n_bins);

/// Samples the mixture, evaluates the surrogate and tabulates the outputs.
DensityTable density_estimate(const Surrogate& s, const GaussianMixture& gm, std::size_t n_samples,
                              std::uint64_t seed, std::size_t n_bins);

/// How a black-box model is evaluated at the quadrature nodes.
struct ModelAdapter {
  enum class Kind { builtin, batch_file, subprocess };

  Kind kind = Kind::builtin;
  /// Benchmark name, values CSV path or shell command, depending on kind.
  std::string spec;
  /// batch_file only: if set, the nodes CSV is written here first.
  std::string nodes_path;

  static ModelAdapter builtin(std::string name) { return {Kind::builtin, std::move(name), {}}; }
  static ModelAdapter batch_file(std::string values_path, std::string nodes_path = {}) {
    return {Kind::batch_file, std::move(values_path), std::move(nodes_path)};
  }
  static ModelAdapter subprocess(std::string command) {
    return {Kind::subprocess, std::move(command), {}};
  }

  /// Identifier stored in surrogate metadata, e.g. "builtin:ro6".
  std::string id() const;
};

/// Model values at every node, one row per node and one column per output.
///
/// builtin evaluates the named benchmark. batch_file reads one line per node
/// (comma separated outputs, `#` comments ignored). subprocess runs the
/// command once through /bin/sh, writes one node per line to its stdin
/// (space separated) and reads one line of outputs per node from its stdout.
Eigen::MatrixXd evaluate_model(const ModelAdapter& adapter, const Points& nodes);

}  // namespace corrsc
