#pragma once

// Reference computations that do not share code with the library.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "corrsc/basis.hpp"
#include "corrsc/distribution.hpp"

namespace oracle {

inline double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

// E[X^k] for X ~ N(0, s^2).
inline double centered_normal_moment(double s, int k) {
  if (k % 2) return 0.0;
  double r = 1.0;
  for (int i = k - 1; i > 0; i -= 2) r *= i;
  return r * ipow(s, k);
}

// E[X^k] for X ~ N(mu, s^2) by binomial expansion.
inline double normal_moment(double mu, double s, int k) {
  double r = 0.0;
  double c = 1.0;
  for (int j = 0; j <= k; ++j) {
    r += c * ipow(mu, k - j) * centered_normal_moment(s, j);
    c = c * (k - j) / (j + 1);
  }
  return r;
}

// Orthonormal probabilists' Hermite polynomial He_n(x) / sqrt(n!).
inline double hermite(int n, double x) {
  double a = 1.0, b = x;
  if (n == 0) return 1.0;
  for (int k = 1; k < n; ++k) {
    double c = x * b - k * a;
    a = b;
    b = c;
  }
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return b / std::sqrt(f);
}

// Psi_j(x) as a plain sum of coefficient * prod x_i^alpha_i.
inline Eigen::VectorXd naive_eval(const corrsc::OrthoBasis& b, const std::vector<double>& x) {
  const auto& idx = b.indices();
  const auto& c = b.coeff_matrix();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j) {
    for (std::size_t i = 0; i <= j; ++i) {
      double p = 1.0;
      for (std::size_t t = 0; t < x.size(); ++t) p *= ipow(x[t], idx[i][t]);
      out[j] += c(j, i) * p;
    }
  }
  return out;
}

// Central finite-difference Jacobian of f: R^n -> R^m.
inline Eigen::MatrixXd fd_jacobian(const std::function<Eigen::VectorXd(const std::vector<double>&)>& f,
                                   const std::vector<double>& x, double h) {
  Eigen::VectorXd f0 = f(x);
  Eigen::MatrixXd J(f0.size(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    J.col(i) = (f(xp) - f(xm)) / (2 * h);
  }
  return J;
}

// Random SPD matrix with unit-scale entries and condition number well below 1e3.
inline Eigen::MatrixXd random_spd(int d, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> nd;
  Eigen::MatrixXd A(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) A(i, j) = nd(rng);
  Eigen::MatrixXd S = A * A.transpose() / d + 0.3 * Eigen::MatrixXd::Identity(d, d);
  S = 0.5 * (S + S.transpose());
  return scale * S;
}

inline corrsc::GaussianMixture random_mixture(int d, int k, std::mt19937_64& rng,
                                               double spread = 0.5) {
  std::uniform_real_distribution<double> u(0.2, 1.0);
  std::normal_distribution<double> nd;
  std::vector<double> w(k);
  double s = 0;
  for (auto& v : w) s += (v = u(rng));
  std::vector<corrsc::GaussianComponent> comps;
  double acc = 0;
  for (int i = 0; i < k; ++i) {
    double wi = (i + 1 == k) ? 1.0 - acc : w[i] / s;
    acc += wi;
    Eigen::VectorXd mu(d);
    for (int t = 0; t < d; ++t) mu[t] = spread * nd(rng);
    comps.push_back({wi, mu, random_spd(d, rng, 0.5)});
  }
  return corrsc::GaussianMixture(std::move(comps));
}

inline corrsc::GaussianMixture standard_normal(int d) {
  return corrsc::GaussianMixture({{1.0, Eigen::VectorXd::Zero(d), Eigen::MatrixXd::Identity(d, d)}});
}

// Two-component correlated mixture used by several tests.
inline corrsc::GaussianMixture correlated_pair(int d) {
  Eigen::VectorXd m1(d), m2(d);
  Eigen::MatrixXd s1(d, d), s2(d, d);
  for (int i = 0; i < d; ++i) {
    m1[i] = (i % 2 ? -0.5 : 0.7);
    m2[i] = -0.8 * m1[i];
    for (int j = 0; j < d; ++j) {
      s1(i, j) = 0.6 * std::pow(0.5, std::abs(i - j));
      s2(i, j) = (i == j) ? 0.4 : 0.1;
    }
  }
  return corrsc::GaussianMixture({{0.4, m1, s1}, {0.6, m2, s2}});
}

}  // namespace oracle
