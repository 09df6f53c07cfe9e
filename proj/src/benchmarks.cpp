#include "corrsc/benchmarks.hpp"

#include <cmath>

#include "corrsc/error.hpp"
#include "corrsc/io.hpp"

namespace corrsc::benchmarks {

namespace {

Eigen::MatrixXd ar1_covariance(int d, double variance, double rho) {
  Eigen::MatrixXd cov(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) cov(i, j) = variance * std::pow(rho, std::abs(i - j));
  }
  return cov;
}

Eigen::MatrixXd equicorrelated(int d, double variance, double rho) {
  Eigen::MatrixXd cov = Eigen::MatrixXd::Constant(d, d, variance * rho);
  cov.diagonal().setConstant(variance);
  return cov;
}

}  // namespace

GaussianMixture ro6_mixture() {
  Eigen::VectorXd mu1(6);
  mu1 << -0.4, -0.4, -0.4, 0.4, 0.4, 0.4;
  // Weights 0.6 / 0.4 with mu2 = -1.5 mu1 give a zero overall mean.
  return GaussianMixture({{0.6, mu1, ar1_covariance(6, 0.5, 0.5)},
                          {0.4, -1.5 * mu1, equicorrelated(6, 0.3, 0.3)}});
}

GaussianMixture filter4_mixture() {
  Eigen::VectorXd mu1(4);
  mu1 << 0.6, 0.6, -0.6, -0.6;
  return GaussianMixture({{0.5, mu1, ar1_covariance(4, 0.4, 0.6)},
                          {0.5, -mu1, equicorrelated(4, 0.5, 0.4)}});
}

GaussianMixture mixture(const std::string& name) {
  if (name == "ro6") return ro6_mixture();
  if (name == "filter4") return filter4_mixture();
  throw InvalidArgument("unknown benchmark '" + name + "'");
}

double ro6(std::span<const double> xi) {
  if (xi.size() != 6) throw InvalidArgument("ro6 expects 6 parameters");
  constexpr double supply = 1.0;
  constexpr double nominal = 0.35;
  constexpr double spread = 0.03;
  constexpr double tau0 = 1.0 / 12.0;
  auto device_delay = [&](double x) {
    const double overdrive = supply - (nominal + spread * x);
    return tau0 * std::exp(1.3 * std::log((supply - nominal) / overdrive));
  };
  double total = 0.0;
  for (int s = 0; s < 3; ++s) total += 0.5 * (device_delay(xi[2 * s]) + device_delay(xi[2 * s + 1]));
  return 1.0 / (2.0 * total);
}

std::vector<double> filter4_frequencies() {
  std::vector<double> f(21);
  for (int i = 0; i < 21; ++i) f[i] = (i - 10) / 10.0;
  return f;
}

std::vector<double> filter4(std::span<const double> xi) {
  if (xi.size() != 4) throw InvalidArgument("filter4 expects 4 parameters");
  const double shift_a = 0.02 * (xi[0] + xi[1]) + 0.005 * xi[2];
  const double shift_b = 0.02 * (xi[2] + xi[3]) - 0.005 * xi[1];
  constexpr double width = 0.5;
  std::vector<double> out;
  for (double f : filter4_frequencies()) {
    const double ua = (f + 0.4 - shift_a) / width;
    const double ub = (f - 0.4 - shift_b) / width;
    out.push_back(1.0 - 0.5 / (1.0 + ua * ua) - 0.4 / (1.0 + ub * ub));
  }
  return out;
}

const std::vector<std::string>& names() {
  static const std::vector<std::string> all{"ro6", "filter4"};
  return all;
}

std::vector<double> model_outputs(const std::string& name, std::span<const double> xi) {
  if (name == "ro6") return {ro6(xi)};
  if (name == "filter4") return filter4(xi);
  throw InvalidArgument("unknown benchmark '" + name + "'");
}

std::vector<std::string> output_labels(const std::string& name) {
  if (name == "ro6") return {"ro6"};
  if (name == "filter4") {
    std::vector<std::string> labels;
    for (double f : filter4_frequencies()) labels.push_back(format_double(f));
    return labels;
  }
  throw InvalidArgument("unknown benchmark '" + name + "'");
}

}  // namespace corrsc::benchmarks
