#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "corrsc/basis.hpp"
#include "corrsc/distribution.hpp"

namespace corrsc {

/// Knobs of the optimization-based quadrature search.
struct SolverConfig {
  double residual_tol = 1e-8;
  int max_outer_iters = 200;
  /// Monte Carlo candidates for the clustering initializer; 0 means 10 N_2p.
  std::size_t candidate_count = 0;
  std::uint64_t seed = 0;
  double increase_factor = 1.5;
  /// Initial Levenberg parameter; multiplied by 10 after a rejected step and
  /// divided by 10 (down to min_damping) after an accepted one.
  double gn_damping = 1e-6;
  double min_damping = 1e-12;
  /// A block-coordinate run stops early once the damping exceeds this value.
  double max_damping = 1e8;
  double line_search_shrink = 0.5;
  int max_gn_backtracks = 20;

  void validate() const;
};

/// Nodes (one per row) and nonnegative weights of a quadrature rule exact,
/// up to residual_norm, for every basis function of total order basis_order.
struct QuadratureRule {
  Points nodes;
  Eigen::VectorXd weights;
  double residual_norm = 1.0;
  int basis_order = 0;
  bool converged = false;
  std::uint64_t seed = 0;
  /// Residual after each outer iteration (entry 0 is the starting residual).
  std::vector<double> history;

  std::size_t size() const noexcept { return static_cast<std::size_t>(nodes.rows()); }
};

/// Phi(j, k) = Psi_j(node_k); N x M.
Eigen::MatrixXd assemble_phi(const OrthoBasis& basis, const Points& nodes);

struct Residual {
  Eigen::VectorXd r;
  double norm = 0.0;
};

/// r = Phi w - e_1 and its Euclidean norm.
Residual residual(const Eigen::MatrixXd& phi, const Eigen::VectorXd& weights);

struct WeightSolution {
  Eigen::VectorXd weights;
  bool converged = false;
};

/// Nonnegative least squares min_{w >= 0} ||Phi w - e_1||.
WeightSolution solve_weights(const Eigen::MatrixXd& phi,
                             const Eigen::VectorXd& warm_start = Eigen::VectorXd());

/// Stacked Jacobian J = [G_1 ... G_M] of r with respect to all node
/// coordinates; G_k = w_k dPsi/dxi at node k, so J is N x (M d).
Eigen::MatrixXd stacked_jacobian(const OrthoBasis& basis, const Points& nodes,
                                 const Eigen::VectorXd& weights);

struct GaussNewtonResult {
  Points nodes;
  Residual residual;
  bool accepted = false;
};

/// One damped Gauss-Newton step on the nodes with the weights fixed.
///
/// Solves min ||J s + r||^2 + damping ||s||^2, then halves the step until the
/// residual does not grow. `damping` is updated in place: divided by 10 on
/// success, multiplied by 10 when no acceptable step was found (in which case
/// the nodes are returned unchanged).
GaussNewtonResult gauss_newton_step(const OrthoBasis& basis, const Points& nodes,
                                    const Eigen::VectorXd& weights, const Residual& r,
                                    double& damping, const SolverConfig& cfg = {});

/// Block coordinate descent: alternate solve_weights and gauss_newton_step
/// until the residual drops to cfg.residual_tol or the budget runs out.
QuadratureRule bcd_solve(const OrthoBasis& basis, const Points& init_nodes,
                         const SolverConfig& cfg,
                         const Eigen::VectorXd& warm_weights = Eigen::VectorXd());

/// Monte Carlo candidates clustered by complete linkage; returns M centroids.
Points init_nodes(const GaussianMixture& gm, std::size_t m, std::size_t candidate_count,
                  std::uint64_t seed);

/// Record of the node-count search, for diagnostics and tests.
struct AdaptiveTrace {
  /// Node counts tried in the increase phase, with their final residuals.
  std::vector<std::size_t> increase_counts;
  std::vector<double> increase_residuals;
  /// Every rule accepted during the decrease phase, in order (the first is
  /// the converged rule from the increase phase).
  std::vector<QuadratureRule> accepted;
  /// Node count of the first rejected pruning attempt (0 if none).
  std::size_t rejected_count = 0;
};

/// Full node-count search: initialize, grow until converged, then drop the
/// smallest-weight node while the rule stays converged.
///
/// `basis` must have order 2p. Throws QuadratureFailure if the increase phase
/// passes 10 N_2p nodes without converging.
QuadratureRule adaptive_rule(const OrthoBasis& basis, const GaussianMixture& gm,
                             const SolverConfig& cfg, AdaptiveTrace* trace = nullptr);

/// Initial node count ceil(N_2p / (d + 1)).
std::size_t initial_node_count(std::size_t n_basis, int dim);

}  // namespace corrsc
