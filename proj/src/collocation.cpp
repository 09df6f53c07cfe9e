#include "corrsc/collocation.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <csignal>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include "corrsc/benchmarks.hpp"
#include "corrsc/error.hpp"
#include "corrsc/io.hpp"

namespace corrsc {

Surrogate project(const QuadratureRule& rule, const OrthoBasis& basis,
                  std::span<const double> values, std::string model) {
  if (rule.nodes.cols() != basis.dim()) throw InvalidArgument("project: rule and basis dimensions differ");
  if (static_cast<Eigen::Index>(values.size()) != rule.nodes.rows()) {
    throw InvalidArgument("project: expected " + std::to_string(rule.nodes.rows()) + " values, got " +
                          std::to_string(values.size()));
  }
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!std::isfinite(values[k])) {
      throw ModelError("model value at node " + std::to_string(k) + " is not finite");
    }
  }
  const Eigen::MatrixXd phi = assemble_phi(basis, rule.nodes);
  const Eigen::Map<const Eigen::VectorXd> y(values.data(), static_cast<Eigen::Index>(values.size()));
  Surrogate s{basis, phi * y.cwiseProduct(rule.weights), rule.residual_norm, std::move(model),
              values.size()};
  return s;
}

std::vector<Surrogate> project_outputs(const QuadratureRule& rule, const OrthoBasis& basis,
                                       const Eigen::MatrixXd& values, const std::string& model) {
  std::vector<Surrogate> out;
  Eigen::VectorXd column;
  for (Eigen::Index j = 0; j < values.cols(); ++j) {
    column = values.col(j);
    out.push_back(project(rule, basis, {column.data(), static_cast<std::size_t>(column.size())}, model));
  }
  return out;
}

double evaluate(const Surrogate& s, std::span<const double> x) {
  return s.coefficients.dot(s.basis.evaluate(x));
}

Eigen::VectorXd evaluate_points(const Surrogate& s, const Points& points) {
  Eigen::VectorXd out(points.rows());
  Eigen::VectorXd x(points.cols());
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    x = points.row(i).transpose();
    out[i] = evaluate(s, {x.data(), static_cast<std::size_t>(x.size())});
  }
  return out;
}

Statistics statistics(const Surrogate& s) {
  Statistics st;
  if (s.coefficients.size() == 0) return st;
  st.mean = s.coefficients[0];
  st.variance = s.coefficients.tail(s.coefficients.size() - 1).squaredNorm();
  st.std = std::sqrt(st.variance);
  return st;
}

std::vector<double> DensityTable::bin_centers() const {
  std::vector<double> c;
  for (std::size_t i = 0; i + 1 < bin_edges.size(); ++i) c.push_back(0.5 * (bin_edges[i] + bin_edges[i + 1]));
  return c;
}

namespace {

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double std_of(std::span<const double> v, double mean) {
  if (v.size() < 2) return 0.0;
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

double quantile(const std::vector<double>& sorted_copy, double q) {
  const double pos = q * static_cast<double>(sorted_copy.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted_copy.size() - 1);
  return sorted_copy[lo] + (pos - static_cast<double>(lo)) * (sorted_copy[hi] - sorted_copy[lo]);
}

}  // namespace

double silverman_bandwidth(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double sd = std_of(values, mean_of(values));
  const double iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);
  double spread = sd;
  if (iqr > 0.0) spread = std::min(sd, iqr / 1.34);
  return 0.9 * spread * std::pow(static_cast<double>(values.size()), -0.2);
}

std::vector<double> kde(std::span<const double> values, std::span<const double> grid,
                        double bandwidth) {
  std::vector<double> out(grid.size(), 0.0);
  if (values.empty() || !(bandwidth > 0.0)) return out;
  const double norm = 1.0 / (static_cast<double>(values.size()) * bandwidth *
                             std::sqrt(2.0 * std::numbers::pi));
  // Kernels beyond 8 bandwidths contribute below 1e-14 of their peak.
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const auto lo = std::lower_bound(sorted.begin(), sorted.end(), grid[g] - 8.0 * bandwidth);
    const auto hi = std::upper_bound(sorted.begin(), sorted.end(), grid[g] + 8.0 * bandwidth);
    double acc = 0.0;
    for (auto it = lo; it != hi; ++it) {
      const double u = (grid[g] - *it) / bandwidth;
      acc += std::exp(-0.5 * u * u);
    }
    out[g] = acc * norm;
  }
  return out;
}

DensityTable density_table(std::span<const double> values, std::size_t n_bins) {
  if (values.empty()) throw InvalidArgument("density_table: no values");
  if (n_bins < 1) throw InvalidArgument("density_table: need at least one bin");
  DensityTable t;
  t.sample_mean = mean_of(values);
  t.sample_std = std_of(values, t.sample_mean);
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  const double lo = *mn;
  const double hi = *mx;
  if (!(hi - lo > 1e-12 * std::max(1.0, std::abs(t.sample_mean)))) {
    t.degenerate = true;
    t.bin_edges = {lo - 0.5, lo + 0.5};
    t.histogram = {1.0};
    t.kde = {1.0};
    return t;
  }
  const double width = (hi - lo) / static_cast<double>(n_bins);
  t.bin_edges.resize(n_bins + 1);
  for (std::size_t i = 0; i <= n_bins; ++i) t.bin_edges[i] = lo + width * static_cast<double>(i);
  t.bin_edges.back() = hi;
  std::vector<double> counts(n_bins, 0.0);
  for (double v : values) {
    auto bin = static_cast<std::size_t>((v - lo) / width);
    counts[std::min(bin, n_bins - 1)] += 1.0;
  }
  t.histogram.resize(n_bins);
  for (std::size_t i = 0; i < n_bins; ++i) {
    t.histogram[i] = counts[i] / (static_cast<double>(values.size()) * (t.bin_edges[i + 1] - t.bin_edges[i]));
  }
  t.bandwidth = silverman_bandwidth(values);
  const auto centers = t.bin_centers();
  t.kde = kde(values, centers, t.bandwidth);
  return t;
}

DensityTable density_estimate(const Surrogate& s, const GaussianMixture& gm, std::size_t n_samples,
                              std::uint64_t seed, std::size_t n_bins) {
  if (n_samples < 1000) throw InvalidArgument("density_estimate: need at least 1000 samples");
  if (gm.dim() != s.basis.dim()) throw InvalidArgument("density_estimate: dimension mismatch");
  const Eigen::VectorXd outputs = evaluate_points(s, sample(gm, n_samples, seed));
  return density_table({outputs.data(), static_cast<std::size_t>(outputs.size())}, n_bins);
}

std::string ModelAdapter::id() const {
  switch (kind) {
    case Kind::builtin:
      return "builtin:" + spec;
    case Kind::batch_file:
      return "values:" + spec;
    case Kind::subprocess:
      return "command:" + spec;
  }
  return spec;
}

namespace {

Eigen::MatrixXd evaluate_builtin(const std::string& name, const Points& nodes) {
  Eigen::MatrixXd out;
  Eigen::VectorXd x(nodes.cols());
  for (Eigen::Index k = 0; k < nodes.rows(); ++k) {
    x = nodes.row(k).transpose();
    const auto y = benchmarks::model_outputs(name, {x.data(), static_cast<std::size_t>(x.size())});
    if (k == 0) out.resize(nodes.rows(), static_cast<Eigen::Index>(y.size()));
    for (std::size_t j = 0; j < y.size(); ++j) out(k, static_cast<Eigen::Index>(j)) = y[j];
  }
  return out;
}

Eigen::MatrixXd check_rows(Eigen::MatrixXd values, const Points& nodes, const std::string& context) {
  if (values.rows() != nodes.rows()) {
    throw ModelError(context + ": expected " + std::to_string(nodes.rows()) + " values, got " +
                     std::to_string(values.rows()));
  }
  return values;
}

Eigen::MatrixXd evaluate_batch_file(const ModelAdapter& adapter, const Points& nodes) {
  if (!adapter.nodes_path.empty()) {
    std::ofstream os(adapter.nodes_path);
    if (!os) throw ModelError("cannot write nodes file '" + adapter.nodes_path + "'");
    write_points_csv(os, nodes);
  }
  std::ifstream is(adapter.spec);
  if (!is) throw ModelError("values file '" + adapter.spec + "' not found");
  return check_rows(read_values_csv(is, adapter.spec), nodes, adapter.spec);
}

std::string node_lines(const Points& nodes) {
  std::string text;
  for (Eigen::Index k = 0; k < nodes.rows(); ++k) {
    for (Eigen::Index i = 0; i < nodes.cols(); ++i) {
      if (i) text += ' ';
      text += format_double(nodes(k, i));
    }
    text += '\n';
  }
  return text;
}

Eigen::MatrixXd evaluate_subprocess(const std::string& command, const Points& nodes) {
  int to_child[2];
  int from_child[2];
  if (pipe(to_child) != 0) throw ModelError("pipe failed: " + std::string(std::strerror(errno)));
  if (pipe(from_child) != 0) {
    close(to_child[0]);
    close(to_child[1]);
    throw ModelError("pipe failed: " + std::string(std::strerror(errno)));
  }
  const pid_t pid = fork();
  if (pid < 0) {
    for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1]}) close(fd);
    throw ModelError("fork failed: " + std::string(std::strerror(errno)));
  }
  if (pid == 0) {
    dup2(to_child[0], STDIN_FILENO);
    dup2(from_child[1], STDOUT_FILENO);
    for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1]}) close(fd);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(to_child[0]);
  close(from_child[1]);

  // A child that stops reading early must not kill us with SIGPIPE.
  struct sigaction ignore {};
  struct sigaction previous {};
  ignore.sa_handler = SIG_IGN;
  sigaction(SIGPIPE, &ignore, &previous);

  // Feed stdin from a separate thread so a chatty child cannot deadlock us.
  const std::string input = node_lines(nodes);
  std::thread writer([fd = to_child[1], &input] {
    std::size_t sent = 0;
    while (sent < input.size()) {
      const ssize_t n = write(fd, input.data() + sent, input.size() - sent);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) break;
      sent += static_cast<std::size_t>(n);
    }
    close(fd);
  });

  std::string output;
  char buffer[4096];
  for (;;) {
    const ssize_t n = read(from_child[0], buffer, sizeof buffer);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    output.append(buffer, static_cast<std::size_t>(n));
  }
  close(from_child[0]);
  writer.join();
  int status = 0;
  while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  sigaction(SIGPIPE, &previous, nullptr);

  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    throw ModelError("model command '" + command + "' failed with status " +
                     std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : -1));
  }
  std::istringstream is(output);
  return check_rows(read_values_csv(is, "output of '" + command + "'"), nodes,
                    "output of '" + command + "'");
}

}  // namespace

Eigen::MatrixXd evaluate_model(const ModelAdapter& adapter, const Points& nodes) {
  switch (adapter.kind) {
    case ModelAdapter::Kind::builtin:
      return evaluate_builtin(adapter.spec, nodes);
    case ModelAdapter::Kind::batch_file:
      return evaluate_batch_file(adapter, nodes);
    case ModelAdapter::Kind::subprocess:
      return evaluate_subprocess(adapter.spec, nodes);
  }
  throw InvalidArgument("unknown model adapter");
}

}  // namespace corrsc
