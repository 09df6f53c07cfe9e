#pragma once

#include <Eigen/Dense>

namespace corrsc {

struct NnlsResult {
  Eigen::VectorXd x;
  bool converged = false;
  int iterations = 0;
};

/// Lawson-Hanson active-set solver for min ||A x - b||_2 subject to x >= 0.
///
/// If `warm_start` is non-empty its positive entries seed the passive set,
/// which usually saves most of the outer iterations when A changes slowly.
/// On hitting the iteration cap the best feasible iterate is returned with
/// converged = false.
NnlsResult nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                const Eigen::VectorXd& warm_start = Eigen::VectorXd(), int max_iterations = 0);

/// Largest KKT violation of x for the problem above, relative to ||A^T b||_inf:
/// max(|g_i| over x_i > 0, -g_i over x_i == 0, -x_i) / ||A^T b||_inf
/// with g = A^T (A x - b).
double nnls_kkt_violation(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                          const Eigen::VectorXd& x);

}  // namespace corrsc
