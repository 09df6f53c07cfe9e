#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "corrsc/distribution.hpp"
#include "corrsc/multi_index.hpp"

namespace corrsc {

/// Orthonormal polynomials {Psi_j} for a (possibly correlated) measure.
///
/// Psi_j(xi) = sum_{i <= j} C(j, i) p_i(xi), where p_i is the i-th monomial in
/// graded-lexicographic order. C is lower triangular with a positive diagonal
/// and its first row is e_1, so Psi_1 == 1.
class OrthoBasis {
 public:
  OrthoBasis(int dim, int order, Eigen::MatrixXd coeff_matrix, double gram_residual);

  int dim() const noexcept { return dim_; }
  int order() const noexcept { return order_; }
  std::size_t size() const noexcept { return indices_.size(); }
  const std::vector<MultiIndex>& indices() const noexcept { return indices_; }
  const Eigen::MatrixXd& coeff_matrix() const noexcept { return coeffs_; }
  double gram_residual() const noexcept { return gram_residual_; }

  /// [Psi_1(x), ..., Psi_N(x)].
  Eigen::VectorXd evaluate(std::span<const double> x) const;

  /// N x d matrix with entry (j, i) = dPsi_j / dxi_i at x.
  Eigen::MatrixXd jacobian(std::span<const double> x) const;

  /// Monomial values p_i(x) in index order.
  Eigen::VectorXd monomials(std::span<const double> x) const;

 private:
  void power_table(std::span<const double> x, Eigen::MatrixXd& powers) const;

  int dim_;
  int order_;
  std::vector<MultiIndex> indices_;
  Eigen::MatrixXd coeffs_;
  double gram_residual_;
};

/// Moment-based Gram-Schmidt for total order q (requires moments to order 2q).
///
/// Uses modified Gram-Schmidt with one re-orthogonalization pass. Throws
/// DegenerateBasis if E[hat Psi_j^2] <= 1e-12 and Error if the resulting
/// orthonormality residual exceeds 1e-8.
OrthoBasis gram_schmidt(const MomentTable& moments, int q);

/// Gram matrix of monomials, H(i, j) = E[p_i p_j] for |alpha| <= q.
Eigen::MatrixXd monomial_gram(const MomentTable& moments, int q);

/// max_{i,j} |E[Psi_i Psi_j] - delta_ij| evaluated with exact moments.
double orthonormality_residual(const Eigen::MatrixXd& coeff_matrix, const MomentTable& moments,
                               int q);

}  // namespace corrsc
