#include "doctest.h"

#include <limits>
#include <random>

#include "corrsc/nnls.hpp"

using namespace corrsc;

namespace {

Eigen::MatrixXd random_matrix(int m, int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Eigen::MatrixXd A(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = nd(rng);
  return A;
}

// Exhaustive search over passive sets.
double brute_force_objective(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  const int n = static_cast<int>(A.cols());
  double best = b.squaredNorm();
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<int> cols;
    for (int j = 0; j < n; ++j)
      if (mask & (1 << j)) cols.push_back(j);
    Eigen::MatrixXd As(A.rows(), cols.size());
    for (std::size_t k = 0; k < cols.size(); ++k) As.col(k) = A.col(cols[k]);
    Eigen::VectorXd z = As.completeOrthogonalDecomposition().solve(b);
    if ((z.array() < 0).any()) continue;
    best = std::min(best, (As * z - b).squaredNorm());
  }
  return best;
}

}  // namespace

TEST_CASE("one by one") {
  Eigen::MatrixXd A(1, 1);
  A << 1.0;
  Eigen::VectorXd b(1);
  b << 1.0;
  auto r = nnls(A, b);
  CHECK(r.converged);
  CHECK(r.x[0] == doctest::Approx(1.0));
}

TEST_CASE("two by two with interior solution") {
  Eigen::MatrixXd A(2, 2);
  A << 1, 1, 1, -1;
  Eigen::VectorXd b(2);
  b << 1, 0;
  auto r = nnls(A, b);
  CHECK(r.x[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r.x[1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("negative right-hand side gives zero") {
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(3, 3);
  Eigen::VectorXd b = -Eigen::VectorXd::Ones(3);
  auto r = nnls(A, b);
  CHECK(r.converged);
  CHECK(r.x.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("nonnegative unconstrained solution is returned unchanged") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int t = 0; t < 20; ++t) {
    Eigen::MatrixXd A = random_matrix(12, 6, rng);
    Eigen::VectorXd x0(6);
    for (auto& v : x0) v = u(rng);
    Eigen::VectorXd b = A * x0;
    auto r = nnls(A, b);
    CHECK(r.converged);
    CHECK((r.x - x0).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("random problems satisfy KKT and match exhaustive search") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    int m = 3 + t % 8, n = 1 + t % 7;
    Eigen::MatrixXd A = random_matrix(m, n, rng);
    Eigen::VectorXd b = random_matrix(m, 1, rng);
    auto r = nnls(A, b);
    REQUIRE(r.converged);
    CHECK((r.x.array() >= 0).all());
    CHECK(nnls_kkt_violation(A, b, r.x) <= 1e-10);
    double obj = (A * r.x - b).squaredNorm();
    CHECK(obj == doctest::Approx(brute_force_objective(A, b)).epsilon(1e-10).scale(1e-12));
  }
}

TEST_CASE("wide systems like quadrature weight problems") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    Eigen::MatrixXd A = random_matrix(10, 40, rng);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(10);
    b[0] = 1.0;
    auto r = nnls(A, b);
    CHECK(r.converged);
    CHECK(nnls_kkt_violation(A, b, r.x) <= 1e-10);
  }
}

TEST_CASE("warm start reaches the same solution") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 30; ++t) {
    Eigen::MatrixXd A = random_matrix(15, 8, rng);
    Eigen::VectorXd b = random_matrix(15, 1, rng);
    auto cold = nnls(A, b);
    Eigen::MatrixXd A2 = A + 1e-3 * random_matrix(15, 8, rng);
    auto ref = nnls(A2, b);
    auto warm = nnls(A2, b, cold.x);
    CHECK(warm.converged);
    CHECK((warm.x - ref.x).cwiseAbs().maxCoeff() <= 1e-10);
    Eigen::VectorXd garbage = Eigen::VectorXd::Ones(8);
    auto bad_warm = nnls(A2, b, garbage);
    CHECK((bad_warm.x - ref.x).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("iteration cap returns a feasible unconverged iterate") {
  std::mt19937_64 rng(5);
  Eigen::MatrixXd A = random_matrix(30, 20, rng);
  Eigen::VectorXd b = A * Eigen::VectorXd::Ones(20);
  auto r = nnls(A, b, Eigen::VectorXd(), 1);
  CHECK_FALSE(r.converged);
  CHECK((r.x.array() >= 0).all());
  CHECK(r.iterations <= 1);
}
