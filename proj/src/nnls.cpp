#include "corrsc/nnls.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "corrsc/error.hpp"

namespace corrsc {

namespace {

// Least squares restricted to the passive columns; other entries are zero.
Eigen::VectorXd passive_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                              const std::vector<bool>& passive) {
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < A.cols(); ++i) {
    if (passive[static_cast<std::size_t>(i)]) cols.push_back(i);
  }
  Eigen::VectorXd z = Eigen::VectorXd::Zero(A.cols());
  if (cols.empty()) return z;
  Eigen::MatrixXd sub(A.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) sub.col(static_cast<Eigen::Index>(c)) = A.col(cols[c]);
  const Eigen::VectorXd zs = sub.colPivHouseholderQr().solve(b);
  for (std::size_t c = 0; c < cols.size(); ++c) z[cols[c]] = zs[static_cast<Eigen::Index>(c)];
  return z;
}

// Inner loop: move from feasible x toward the passive solution z, dropping
// variables that hit zero, until the passive solution is strictly positive.
void restore_feasibility(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                         std::vector<bool>& passive, Eigen::VectorXd& x, int& budget) {
  Eigen::VectorXd z = passive_solve(A, b, passive);
  while (budget-- > 0) {
    double alpha = std::numeric_limits<double>::infinity();
    Eigen::Index blocking = -1;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (!passive[static_cast<std::size_t>(i)] || z[i] > 0.0) continue;
      const double denom = x[i] - z[i];
      const double step = denom > 0.0 ? x[i] / denom : 0.0;
      if (step < alpha) {
        alpha = step;
        blocking = i;
      }
    }
    if (blocking < 0) break;
    x += alpha * (z - x);
    x[blocking] = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const auto si = static_cast<std::size_t>(i);
      if (passive[si] && x[i] <= 0.0) {
        passive[si] = false;
        x[i] = 0.0;
      }
    }
    z = passive_solve(A, b, passive);
  }
  x = z;
}

}  // namespace

NnlsResult nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                const Eigen::VectorXd& warm_start, int max_iterations) {
  if (A.rows() != b.size()) throw InvalidArgument("nnls: A and b have incompatible shapes");
  if (!A.allFinite() || !b.allFinite()) throw InvalidArgument("nnls: non-finite input");
  const Eigen::Index n = A.cols();
  if (max_iterations <= 0) max_iterations = static_cast<int>(3 * n + 30);

  NnlsResult result;
  result.x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  int budget = max_iterations;

  if (warm_start.size() == n) {
    bool any = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (warm_start[i] > 0.0) passive[static_cast<std::size_t>(i)] = any = true;
    }
    if (any) {
      // Start from x = 0 (feasible) so the inner loop can drop variables.
      restore_feasibility(A, b, passive, result.x, budget);
    }
  }

  const double scale = std::max(1.0, (A.transpose() * b).cwiseAbs().maxCoeff());
  const double tol = 1e-13 * scale;
  std::vector<bool> blocked(static_cast<std::size_t>(n), false);

  while (budget > 0) {
    ++result.iterations;
    --budget;
    const Eigen::VectorXd neg_grad = A.transpose() * (b - A * result.x);
    Eigen::Index best = -1;
    double best_val = tol;
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto si = static_cast<std::size_t>(i);
      if (passive[si] || blocked[si]) continue;
      if (neg_grad[i] > best_val) {
        best_val = neg_grad[i];
        best = i;
      }
    }
    if (best < 0) {
      result.converged = true;
      break;
    }
    passive[static_cast<std::size_t>(best)] = true;
    Eigen::VectorXd trial = result.x;
    restore_feasibility(A, b, passive, trial, budget);
    const double old_res = (A * result.x - b).squaredNorm();
    const double new_res = (A * trial - b).squaredNorm();
    if (trial[best] > 0.0 && new_res <= old_res) {
      result.x = trial;
      std::fill(blocked.begin(), blocked.end(), false);
    } else {
      // Round-off made the entering variable useless; keep it out so the
      // selection does not cycle.
      blocked[static_cast<std::size_t>(best)] = true;
      for (Eigen::Index i = 0; i < n; ++i) passive[static_cast<std::size_t>(i)] = result.x[i] > 0.0;
    }
  }
  result.x = result.x.cwiseMax(0.0);
  return result;
}

double nnls_kkt_violation(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                          const Eigen::VectorXd& x) {
  const Eigen::VectorXd grad = A.transpose() * (A * x - b);
  const double scale = std::max((A.transpose() * b).cwiseAbs().maxCoeff(),
                                std::numeric_limits<double>::min());
  double worst = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] < 0.0) worst = std::max(worst, -x[i]);
    if (x[i] > 0.0) {
      worst = std::max(worst, std::abs(grad[i]));
    } else {
      worst = std::max(worst, -grad[i]);
    }
  }
  return worst / scale;
}

}  // namespace corrsc
