#include "corrsc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "corrsc/clustering.hpp"
#include "corrsc/error.hpp"
#include "corrsc/nnls.hpp"

namespace corrsc {

void SolverConfig::validate() const {
  if (!(residual_tol > 0.0)) throw InvalidArgument("residual_tol must be > 0");
  if (!(increase_factor > 1.0)) throw InvalidArgument("increase_factor must be > 1");
  if (max_outer_iters < 1) throw InvalidArgument("max_outer_iters must be >= 1");
  if (!(gn_damping > 0.0)) throw InvalidArgument("gn_damping must be > 0");
  if (!(line_search_shrink > 0.0 && line_search_shrink < 1.0)) {
    throw InvalidArgument("line_search_shrink must lie in (0, 1)");
  }
  if (max_gn_backtracks < 0) throw InvalidArgument("max_gn_backtracks must be >= 0");
}

std::size_t initial_node_count(std::size_t n_basis, int dim) {
  const auto unknowns_per_node = static_cast<std::size_t>(dim + 1);
  return (n_basis + unknowns_per_node - 1) / unknowns_per_node;
}

Eigen::MatrixXd assemble_phi(const OrthoBasis& basis, const Points& nodes) {
  if (nodes.cols() != basis.dim()) throw InvalidArgument("assemble_phi: node dimension mismatch");
  Eigen::MatrixXd phi(static_cast<Eigen::Index>(basis.size()), nodes.rows());
  Eigen::VectorXd x(nodes.cols());
  for (Eigen::Index k = 0; k < nodes.rows(); ++k) {
    x = nodes.row(k).transpose();
    phi.col(k) = basis.evaluate({x.data(), static_cast<std::size_t>(x.size())});
  }
  return phi;
}

Residual residual(const Eigen::MatrixXd& phi, const Eigen::VectorXd& weights) {
  if (phi.cols() != weights.size()) throw InvalidArgument("residual: weight count mismatch");
  Residual out;
  out.r = phi * weights;
  out.r[0] -= 1.0;
  out.norm = out.r.norm();
  return out;
}

WeightSolution solve_weights(const Eigen::MatrixXd& phi, const Eigen::VectorXd& warm_start) {
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(phi.rows());
  e1[0] = 1.0;
  auto sol = nnls(phi, e1, warm_start);
  return {std::move(sol.x), sol.converged};
}

Eigen::MatrixXd stacked_jacobian(const OrthoBasis& basis, const Points& nodes,
                                 const Eigen::VectorXd& weights) {
  if (nodes.rows() != weights.size()) throw InvalidArgument("stacked_jacobian: weight count mismatch");
  const int d = basis.dim();
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(basis.size()), nodes.rows() * d);
  Eigen::VectorXd x(d);
  for (Eigen::Index k = 0; k < nodes.rows(); ++k) {
    if (weights[k] == 0.0) continue;
    x = nodes.row(k).transpose();
    jac.middleCols(k * d, d) = weights[k] * basis.jacobian({x.data(), static_cast<std::size_t>(d)});
  }
  return jac;
}

GaussNewtonResult gauss_newton_step(const OrthoBasis& basis, const Points& nodes,
                                    const Eigen::VectorXd& weights, const Residual& r,
                                    double& damping, const SolverConfig& cfg) {
  GaussNewtonResult out{nodes, r, false};
  if (r.norm == 0.0) {
    out.accepted = true;
    return out;
  }
  const Eigen::MatrixXd jac = stacked_jacobian(basis, nodes, weights);
  Eigen::MatrixXd normal = jac.transpose() * jac;
  normal.diagonal().array() += damping;
  const Eigen::VectorXd rhs = -(jac.transpose() * r.r);
  Eigen::VectorXd step = normal.ldlt().solve(rhs);

  if (step.allFinite()) {
    const Eigen::Map<const Points> step_rows(step.data(), nodes.rows(), nodes.cols());
    double scale = 1.0;
    for (int attempt = 0; attempt <= cfg.max_gn_backtracks; ++attempt) {
      Points trial = nodes + scale * step_rows;
      Residual trial_res = residual(assemble_phi(basis, trial), weights);
      if (trial_res.norm <= r.norm) {
        out.nodes = std::move(trial);
        out.residual = std::move(trial_res);
        out.accepted = true;
        damping = std::max(damping / 10.0, cfg.min_damping);
        return out;
      }
      scale *= cfg.line_search_shrink;
    }
  }
  damping *= 10.0;
  return out;
}

QuadratureRule bcd_solve(const OrthoBasis& basis, const Points& init_nodes,
                         const SolverConfig& cfg, const Eigen::VectorXd& warm_weights) {
  cfg.validate();
  if (init_nodes.rows() < 1) throw InvalidArgument("bcd_solve: need at least one node");
  if (init_nodes.cols() != basis.dim()) throw InvalidArgument("bcd_solve: node dimension mismatch");

  QuadratureRule rule;
  rule.nodes = init_nodes;
  rule.basis_order = basis.order();
  rule.seed = cfg.seed;

  Eigen::MatrixXd phi = assemble_phi(basis, rule.nodes);
  Eigen::VectorXd weights;
  Residual res;
  if (warm_weights.size() == init_nodes.rows() && (warm_weights.array() >= 0.0).all()) {
    weights = warm_weights;
    res = residual(phi, weights);
  } else {
    weights = Eigen::VectorXd::Zero(init_nodes.rows());
    res = residual(phi, weights);
  }

  double damping = cfg.gn_damping;
  for (int iter = 0;; ++iter) {
    if (res.norm > cfg.residual_tol) {
      // Weight block. The previous weights stay feasible, so keep whichever
      // is better and the residual never increases.
      auto sol = solve_weights(phi, weights);
      Residual sol_res = residual(phi, sol.weights);
      if (sol_res.norm <= res.norm) {
        weights = std::move(sol.weights);
        res = std::move(sol_res);
      }
    }
    rule.history.push_back(res.norm);
    if (res.norm <= cfg.residual_tol) {
      rule.converged = true;
      break;
    }
    if (iter >= cfg.max_outer_iters || damping > cfg.max_damping) break;

    // Node block.
    auto gn = gauss_newton_step(basis, rule.nodes, weights, res, damping, cfg);
    if (gn.accepted) {
      rule.nodes = std::move(gn.nodes);
      res = std::move(gn.residual);
      phi = assemble_phi(basis, rule.nodes);
    }
  }

  rule.weights = std::move(weights);
  rule.residual_norm = residual(phi, rule.weights).norm;
  return rule;
}

Points init_nodes(const GaussianMixture& gm, std::size_t m, std::size_t candidate_count,
                  std::uint64_t seed) {
  if (m < 1) throw InvalidArgument("init_nodes: need at least one node");
  if (m > candidate_count) {
    throw InvalidArgument("init_nodes: " + std::to_string(m) + " nodes requested but only " +
                          std::to_string(candidate_count) + " candidates");
  }
  const Points candidates = sample(gm, candidate_count, seed);
  const auto labels = complete_linkage(candidates, m);
  return cluster_centroids(candidates, labels, m);
}

namespace {

QuadratureRule without_node(const QuadratureRule& rule, Eigen::Index drop) {
  const Eigen::Index m = rule.nodes.rows();
  QuadratureRule out = rule;
  out.nodes.resize(m - 1, rule.nodes.cols());
  out.weights.resize(m - 1);
  for (Eigen::Index k = 0, dst = 0; k < m; ++k) {
    if (k == drop) continue;
    out.nodes.row(dst) = rule.nodes.row(k);
    out.weights[dst] = rule.weights[k];
    ++dst;
  }
  return out;
}

}  // namespace

QuadratureRule adaptive_rule(const OrthoBasis& basis, const GaussianMixture& gm,
                             const SolverConfig& cfg, AdaptiveTrace* trace) {
  cfg.validate();
  if (basis.dim() != gm.dim()) throw InvalidArgument("adaptive_rule: basis and mixture dimensions differ");
  const std::size_t n_basis = basis.size();
  const std::size_t max_nodes = 10 * n_basis;
  const std::size_t candidates = cfg.candidate_count > 0 ? cfg.candidate_count : max_nodes;

  // Increase phase.
  std::size_t m = initial_node_count(n_basis, basis.dim());
  QuadratureRule rule;
  for (;;) {
    rule = bcd_solve(basis, init_nodes(gm, m, candidates, cfg.seed), cfg);
    if (trace) {
      trace->increase_counts.push_back(m);
      trace->increase_residuals.push_back(rule.residual_norm);
    }
    if (rule.converged) break;
    const auto next = static_cast<std::size_t>(
        std::ceil(cfg.increase_factor * static_cast<double>(m) - 1e-9));
    if (next > max_nodes || next > candidates) {
      throw QuadratureFailure(rule.residual_norm,
                              "quadrature did not converge with " + std::to_string(m) +
                                  " nodes (residual " + std::to_string(rule.residual_norm) +
                                  ", tolerance " + std::to_string(cfg.residual_tol) +
                                  "); node limit " + std::to_string(max_nodes) + " reached");
    }
    m = std::max(next, m + 1);
  }
  if (trace) trace->accepted.push_back(rule);

  // Decrease phase: drop the smallest weight (lowest index on ties) and
  // re-solve from the remaining nodes until convergence is lost.
  while (rule.size() > 1) {
    Eigen::Index drop = 0;
    for (Eigen::Index k = 1; k < rule.weights.size(); ++k) {
      if (rule.weights[k] < rule.weights[drop]) drop = k;
    }
    const QuadratureRule reduced = without_node(rule, drop);
    QuadratureRule trial = bcd_solve(basis, reduced.nodes, cfg, reduced.weights);
    if (!trial.converged) {
      if (trace) trace->rejected_count = trial.size();
      break;
    }
    rule = std::move(trial);
    if (trace) trace->accepted.push_back(rule);
  }
  return rule;
}

}  // namespace corrsc
