#include "corrsc/basis.hpp"

#include <cmath>
#include <string>

#include "corrsc/error.hpp"

namespace corrsc {

namespace {

constexpr double kDegenerateTol = 1e-12;
constexpr double kOrthonormalityTol = 1e-8;

}  // namespace

OrthoBasis::OrthoBasis(int dim, int order, Eigen::MatrixXd coeff_matrix, double gram_residual)
    : dim_(dim),
      order_(order),
      indices_(enumerate_indices(dim, order)),
      coeffs_(std::move(coeff_matrix)),
      gram_residual_(gram_residual) {
  const auto n = static_cast<Eigen::Index>(indices_.size());
  if (coeffs_.rows() != n || coeffs_.cols() != n) {
    throw InvalidArgument("basis coefficient matrix must be " + std::to_string(n) + "x" +
                          std::to_string(n));
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (!(coeffs_(j, j) > 0.0)) throw InvalidArgument("basis coefficient diagonal must be positive");
    for (Eigen::Index i = j + 1; i < n; ++i) {
      if (coeffs_(j, i) != 0.0) throw InvalidArgument("basis coefficient matrix must be lower triangular");
    }
  }
}

void OrthoBasis::power_table(std::span<const double> x, Eigen::MatrixXd& powers) const {
  if (static_cast<int>(x.size()) != dim_) throw InvalidArgument("basis: point dimension mismatch");
  powers.resize(dim_, order_ + 1);
  for (int i = 0; i < dim_; ++i) {
    powers(i, 0) = 1.0;
    for (int e = 1; e <= order_; ++e) powers(i, e) = powers(i, e - 1) * x[i];
  }
}

Eigen::VectorXd OrthoBasis::monomials(std::span<const double> x) const {
  Eigen::MatrixXd powers;
  power_table(x, powers);
  Eigen::VectorXd p(static_cast<Eigen::Index>(indices_.size()));
  for (std::size_t m = 0; m < indices_.size(); ++m) {
    double v = 1.0;
    for (int i = 0; i < dim_; ++i) v *= powers(i, indices_[m][i]);
    p[static_cast<Eigen::Index>(m)] = v;
  }
  return p;
}

Eigen::VectorXd OrthoBasis::evaluate(std::span<const double> x) const {
  return coeffs_.triangularView<Eigen::Lower>() * monomials(x);
}

Eigen::MatrixXd OrthoBasis::jacobian(std::span<const double> x) const {
  Eigen::MatrixXd powers;
  power_table(x, powers);
  const auto n = static_cast<Eigen::Index>(indices_.size());
  Eigen::MatrixXd dp = Eigen::MatrixXd::Zero(n, dim_);
  for (Eigen::Index m = 0; m < n; ++m) {
    const auto& alpha = indices_[static_cast<std::size_t>(m)];
    for (int i = 0; i < dim_; ++i) {
      if (alpha[i] == 0) continue;
      double v = alpha[i] * powers(i, alpha[i] - 1);
      for (int l = 0; l < dim_; ++l) {
        if (l != i) v *= powers(l, alpha[l]);
      }
      dp(m, i) = v;
    }
  }
  return coeffs_.triangularView<Eigen::Lower>() * dp;
}

Eigen::MatrixXd monomial_gram(const MomentTable& moments, int q) {
  if (moments.max_order() < 2 * q) {
    throw InvalidArgument("basis of order " + std::to_string(q) + " needs moments to order " +
                          std::to_string(2 * q));
  }
  const auto indices = enumerate_indices(moments.dim(), q);
  const auto n = static_cast<Eigen::Index>(indices.size());
  Eigen::MatrixXd gram(n, n);
  MultiIndex sum(static_cast<std::size_t>(moments.dim()));
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b <= a; ++b) {
      for (int i = 0; i < moments.dim(); ++i) sum[i] = indices[a][i] + indices[b][i];
      gram(a, b) = gram(b, a) = moments[graded_rank(sum)];
    }
  }
  return gram;
}

double orthonormality_residual(const Eigen::MatrixXd& coeff_matrix, const MomentTable& moments,
                               int q) {
  const Eigen::MatrixXd gram = monomial_gram(moments, q);
  const Eigen::MatrixXd g = coeff_matrix * gram * coeff_matrix.transpose();
  return (g - Eigen::MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

OrthoBasis gram_schmidt(const MomentTable& moments, int q) {
  if (q < 0) throw InvalidArgument("gram_schmidt: order must be >= 0");
  const Eigen::MatrixXd gram = monomial_gram(moments, q);
  const Eigen::Index n = gram.rows();

  Eigen::MatrixXd coeffs = Eigen::MatrixXd::Zero(n, n);
  // Row i holds (H c_i)^T, so <Psi_i, v> = c_i^T H v = row_i . v.
  Eigen::MatrixXd gram_coeffs = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd v(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    v.setZero();
    v[j] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index i = 0; i < j; ++i) {
        const double proj = gram_coeffs.row(i).head(j + 1).dot(v.head(j + 1));
        v.head(i + 1) -= proj * coeffs.row(i).head(i + 1).transpose();
      }
    }
    const Eigen::VectorXd hv = gram.leftCols(j + 1) * v.head(j + 1);
    const double norm2 = v.head(j + 1).dot(hv.head(j + 1));
    if (!(norm2 > kDegenerateTol)) {
      throw DegenerateBasis(static_cast<std::size_t>(j),
                            "Gram-Schmidt degenerate at basis function " + std::to_string(j + 1) +
                                " (E[hat Psi^2] = " + std::to_string(norm2) +
                                "); the moment matrix is nearly singular");
    }
    const double scale = 1.0 / std::sqrt(norm2);
    coeffs.row(j).head(j + 1) = scale * v.head(j + 1).transpose();
    gram_coeffs.row(j) = scale * hv.transpose();
  }

  const double residual = orthonormality_residual(coeffs, moments, q);
  if (!(residual <= kOrthonormalityTol)) {
    throw Error("Gram-Schmidt orthonormality residual " + std::to_string(residual) +
                " exceeds 1e-8");
  }
  return OrthoBasis(moments.dim(), q, std::move(coeffs), residual);
}

}  // namespace corrsc
