#include "doctest.h"

#include <cmath>
#include <random>

#include "corrsc/basis.hpp"
#include "corrsc/benchmarks.hpp"
#include "corrsc/error.hpp"
#include "corrsc/multi_index.hpp"
#include "oracles.hpp"

using namespace corrsc;

namespace {

OrthoBasis make_basis(const GaussianMixture& gm, int q) { return gram_schmidt(raw_moments(gm, 2 * q), q); }

std::vector<double> random_point(int d, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> nd;
  std::vector<double> x(d);
  for (auto& v : x) v = scale * nd(rng);
  return x;
}

}  // namespace

TEST_CASE("standard normal gives orthonormal Hermite polynomials") {
  auto b = make_basis(oracle::standard_normal(1), 2);
  Eigen::MatrixXd ref(3, 3);
  ref << 1, 0, 0, 0, 1, 0, -1 / std::sqrt(2.0), 0, 1 / std::sqrt(2.0);
  CHECK((b.coeff_matrix() - ref).cwiseAbs().maxCoeff() <= 1e-12);

  double x = 1.0;
  Eigen::VectorXd v = b.evaluate({&x, 1});
  CHECK(v[0] == doctest::Approx(1.0));
  CHECK(v[1] == doctest::Approx(1.0));
  CHECK(std::abs(v[2]) <= 1e-12);

  auto b6 = make_basis(oracle::standard_normal(1), 6);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 50; ++t) {
    double y = random_point(1, rng, 2.0)[0];
    Eigen::VectorXd e = b6.evaluate({&y, 1});
    for (int n = 0; n <= 6; ++n) CHECK(e[n] == doctest::Approx(oracle::hermite(n, y)).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("tensor Hermite basis for the 2-D standard normal") {
  auto b = make_basis(oracle::standard_normal(2), 3);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    auto x = random_point(2, rng);
    Eigen::VectorXd e = b.evaluate(x);
    for (std::size_t j = 0; j < b.size(); ++j) {
      const auto& a = b.indices()[j];
      double ref = oracle::hermite(a[0], x[0]) * oracle::hermite(a[1], x[1]);
      CHECK(e[j] == doctest::Approx(ref).epsilon(1e-10).scale(1.0));
    }
  }
}

TEST_CASE("symmetric 1-D mixture linear polynomial") {
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(1, 1);
  GaussianMixture gm({{0.5, Eigen::VectorXd::Constant(1, -1.0), s}, {0.5, Eigen::VectorXd::Constant(1, 1.0), s}});
  auto b = make_basis(gm, 1);
  CHECK(b.coeff_matrix()(1, 0) == doctest::Approx(0.0));
  CHECK(b.coeff_matrix()(1, 1) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("first function is constant and the rest have zero mean") {
  auto gm = benchmarks::ro6_mixture();
  auto mom = raw_moments(gm, 4);
  auto b = gram_schmidt(mom, 2);
  CHECK(b.size() == 28);
  CHECK(b.coeff_matrix()(0, 0) == 1.0);
  CHECK(b.coeff_matrix().row(0).tail(27).cwiseAbs().maxCoeff() == 0.0);
  Eigen::VectorXd m(28);
  for (std::size_t i = 0; i < 28; ++i) m[i] = mom.at(b.indices()[i]);
  Eigen::VectorXd means = b.coeff_matrix() * m;
  CHECK(means[0] == doctest::Approx(1.0));
  CHECK(means.tail(27).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("coefficient matrix is lower triangular with positive diagonal") {
  auto b = make_basis(oracle::correlated_pair(3), 3);
  const auto& c = b.coeff_matrix();
  for (Eigen::Index j = 0; j < c.rows(); ++j) {
    CHECK(c(j, j) > 0.0);
    for (Eigen::Index i = j + 1; i < c.cols(); ++i) CHECK(c(j, i) == 0.0);
  }
}

TEST_CASE("orthonormality residual for random mixtures up to d = 6, order 4") {
  std::mt19937_64 rng(77);
  for (int d = 1; d <= 6; ++d) {
    for (int q = 1; q <= 4; ++q) {
      auto gm = oracle::random_mixture(d, 2, rng);
      auto mom = raw_moments(gm, 2 * q);
      auto b = gram_schmidt(mom, q);
      double res = orthonormality_residual(b.coeff_matrix(), mom, q);
      CHECK(res <= 1e-8);
      CHECK(b.gram_residual() == res);
    }
  }
}

TEST_CASE("Gram matrix orthonormality computed independently") {
  auto gm = oracle::correlated_pair(2);
  auto mom = raw_moments(gm, 6);
  auto b = gram_schmidt(mom, 3);
  auto idx = b.indices();
  Eigen::MatrixXd H(idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j)
      H(i, j) = mom.at(std::vector<int>{idx[i][0] + idx[j][0], idx[i][1] + idx[j][1]});
  Eigen::MatrixXd G = b.coeff_matrix() * H * b.coeff_matrix().transpose();
  CHECK((G - Eigen::MatrixXd::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK((monomial_gram(mom, 3) - H).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sample averages of Psi_i Psi_j are within 3 standard errors of delta_ij") {
  auto gm = oracle::correlated_pair(2);
  auto b = make_basis(gm, 2);
  Points x = sample(gm, 1000000, 99);
  const std::size_t n = b.size();
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n), s2 = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < x.rows(); ++k) {
    Eigen::VectorXd v = b.evaluate({x.row(k).data(), 2});
    Eigen::MatrixXd p = v * v.transpose();
    s += p;
    s2 += p.cwiseProduct(p);
  }
  double N = static_cast<double>(x.rows());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (i == 0 && j == 0) continue;
      double m = s(i, j) / N;
      double se = std::sqrt((s2(i, j) / N - m * m) / N);
      CHECK(std::abs(m - (i == j ? 1.0 : 0.0)) <= 3 * se);
    }
  }
}

TEST_CASE("evaluation matches a naive monomial sum") {
  std::mt19937_64 rng(8);
  auto gm = oracle::random_mixture(4, 3, rng);
  auto b = make_basis(gm, 3);
  for (int t = 0; t < 100; ++t) {
    auto x = random_point(4, rng);
    Eigen::VectorXd e = b.evaluate(x), ref = oracle::naive_eval(b, x);
    for (Eigen::Index j = 0; j < e.size(); ++j) CHECK(std::abs(e[j] - ref[j]) <= 1e-12 * std::max(1.0, std::abs(ref[j])));
  }
}

TEST_CASE("jacobian of known polynomials") {
  auto b = make_basis(oracle::standard_normal(1), 2);
  double x = 2.0;
  Eigen::MatrixXd J = b.jacobian({&x, 1});
  CHECK(J(0, 0) == 0.0);
  CHECK(J(1, 0) == doctest::Approx(1.0));
  CHECK(J(2, 0) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-13));
}

TEST_CASE("jacobian agrees with central differences") {
  std::mt19937_64 rng(31);
  auto gm = oracle::random_mixture(3, 2, rng);
  auto b = make_basis(gm, 3);
  auto f = [&](const std::vector<double>& x) { return b.evaluate(x); };
  for (int t = 0; t < 50; ++t) {
    auto x = random_point(3, rng);
    Eigen::MatrixXd J = b.jacobian(x);
    Eigen::MatrixXd F = oracle::fd_jacobian(f, x, 1e-5);
    CHECK(J.col(0).size() == static_cast<Eigen::Index>(b.size()));
    double scale = std::max(1.0, J.cwiseAbs().maxCoeff());
    CHECK((J - F).cwiseAbs().maxCoeff() / scale <= 1e-6);
  }
}

TEST_CASE("scaling the covariance rescales the argument") {
  const double sigma = 2.5;
  auto b1 = make_basis(oracle::standard_normal(1), 4);
  auto bs = make_basis(GaussianMixture({{1.0, Eigen::VectorXd::Zero(1), Eigen::MatrixXd::Constant(1, 1, sigma * sigma)}}), 4);
  for (double x : {-3.0, -0.7, 0.0, 1.1, 4.0}) {
    double y = x / sigma;
    Eigen::VectorXd a = bs.evaluate({&x, 1}), r = b1.evaluate({&y, 1});
    CHECK((a - r).cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("degenerate monomial is reported by index") {
  // Variance of xi^2 - s^2 is 2 s^4 = 2e-16 for s = 1e-4.
  GaussianMixture gm({{1.0, Eigen::VectorXd::Zero(1), Eigen::MatrixXd::Constant(1, 1, 1e-8)}});
  try {
    make_basis(gm, 2);
    FAIL("expected DegenerateBasis");
  } catch (const DegenerateBasis& e) {
    CHECK(e.index() == 2);
  }
  CHECK_NOTHROW(make_basis(gm, 1));
}

TEST_CASE("insufficient moment order and invalid matrices are rejected") {
  auto mom = raw_moments(oracle::standard_normal(2), 3);
  CHECK_THROWS_AS(gram_schmidt(mom, 2), InvalidArgument);
  CHECK_THROWS_AS(gram_schmidt(mom, -1), InvalidArgument);
  Eigen::MatrixXd upper = Eigen::MatrixXd::Identity(3, 3);
  upper(0, 2) = 0.1;
  CHECK_THROWS_AS(OrthoBasis(2, 1, upper, 0.0), InvalidArgument);
  CHECK_THROWS_AS(OrthoBasis(2, 1, Eigen::MatrixXd::Identity(4, 4), 0.0), InvalidArgument);
  Eigen::MatrixXd neg = Eigen::MatrixXd::Identity(3, 3);
  neg(1, 1) = -1.0;
  CHECK_THROWS_AS(OrthoBasis(2, 1, neg, 0.0), InvalidArgument);
  auto b = gram_schmidt(mom, 1);
  double x[3] = {0, 0, 0};
  CHECK_THROWS_AS(b.evaluate(x), InvalidArgument);
}
