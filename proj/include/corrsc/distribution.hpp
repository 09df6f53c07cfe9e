#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "corrsc/multi_index.hpp"

namespace corrsc {

/// Points in R^d stored one per row (n x d).
using Points = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct GaussianComponent {
  double weight = 1.0;
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};

/// Finite mixture of multivariate Gaussians, the joint density of the
/// correlated parameters. Immutable once constructed.
class GaussianMixture {
 public:
  /// Validates the components and precomputes Cholesky factors. Throws
  /// InvalidArgument naming the offending component on failure.
  explicit GaussianMixture(std::vector<GaussianComponent> components);

  int dim() const noexcept { return dim_; }
  std::size_t n_components() const noexcept { return components_.size(); }
  const std::vector<GaussianComponent>& components() const noexcept { return components_; }
  const GaussianComponent& component(std::size_t k) const { return components_.at(k); }
  /// Lower Cholesky factor of component k's covariance.
  const Eigen::MatrixXd& cholesky(std::size_t k) const { return chol_.at(k); }

  Eigen::VectorXd mean() const;

 private:
  int dim_ = 0;
  std::vector<GaussianComponent> components_;
  std::vector<Eigen::MatrixXd> chol_;
  std::vector<double> log_norm_;

  friend double density(const GaussianMixture&, std::span<const double>);
};

/// n i.i.d. draws (rows). Deterministic for a given seed.
Points sample(const GaussianMixture& gm, std::size_t n, std::uint64_t seed);

/// Mixture density sum_k pi_k N(x; mu_k, Sigma_k).
double density(const GaussianMixture& gm, std::span<const double> x);

/// Dense table of raw moments E[xi^gamma] for all |gamma| <= max_order,
/// stored in graded-lexicographic order.
class MomentTable {
 public:
  MomentTable(int dim, int max_order, std::vector<double> values);

  int dim() const noexcept { return dim_; }
  int max_order() const noexcept { return max_order_; }
  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<double>& values() const noexcept { return values_; }

  double operator[](std::size_t rank) const { return values_[rank]; }
  /// Moment for gamma; throws if |gamma| exceeds max_order.
  double at(std::span<const int> gamma) const;

 private:
  int dim_;
  int max_order_;
  std::vector<double> values_;
};

/// Exact raw moments via the per-component Gaussian recursion
///   m(gamma + e_i) = mu_i m(gamma) + sum_j Sigma_ij gamma_j m(gamma - e_j).
/// Throws MomentOverflow with the offending gamma if a value is not finite.
MomentTable raw_moments(const GaussianMixture& gm, int max_order);

}  // namespace corrsc
