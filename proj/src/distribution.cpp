#include "corrsc/distribution.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "corrsc/error.hpp"

namespace corrsc {

namespace {

std::string component_label(std::size_t k) { return "component " + std::to_string(k); }

std::string format_index(std::span<const int> gamma) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < gamma.size(); ++i) os << (i ? "," : "") << gamma[i];
  os << ')';
  return os.str();
}

}  // namespace

GaussianMixture::GaussianMixture(std::vector<GaussianComponent> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw InvalidArgument("mixture needs at least one component");
  dim_ = static_cast<int>(components_.front().mean.size());
  if (dim_ < 1) throw InvalidArgument(component_label(0) + ": mean is empty");

  double weight_sum = 0.0;
  for (std::size_t k = 0; k < components_.size(); ++k) {
    const auto& c = components_[k];
    if (!(c.weight >= 0.0) || !std::isfinite(c.weight)) {
      throw InvalidArgument(component_label(k) + ": weight must be finite and >= 0");
    }
    weight_sum += c.weight;
    if (c.mean.size() != dim_) {
      throw InvalidArgument(component_label(k) + ": mean has dimension " +
                            std::to_string(c.mean.size()) + ", expected " + std::to_string(dim_));
    }
    if (c.cov.rows() != dim_ || c.cov.cols() != dim_) {
      throw InvalidArgument(component_label(k) + ": covariance must be " + std::to_string(dim_) +
                            "x" + std::to_string(dim_));
    }
    if (!c.mean.allFinite() || !c.cov.allFinite()) {
      throw InvalidArgument(component_label(k) + ": non-finite mean or covariance entry");
    }
    const double asym = (c.cov - c.cov.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12) {
      throw InvalidArgument(component_label(k) + ": covariance is not symmetric");
    }
    Eigen::LLT<Eigen::MatrixXd> llt(c.cov);
    if (llt.info() != Eigen::Success) {
      throw InvalidArgument(component_label(k) + ": covariance is not positive definite");
    }
    Eigen::MatrixXd L = llt.matrixL();
    double log_det = 0.0;
    for (int i = 0; i < dim_; ++i) {
      if (!(L(i, i) > 0.0)) {
        throw InvalidArgument(component_label(k) + ": covariance is not positive definite");
      }
      log_det += 2.0 * std::log(L(i, i));
    }
    chol_.push_back(std::move(L));
    log_norm_.push_back(-0.5 * (dim_ * std::log(2.0 * std::numbers::pi) + log_det));
  }
  if (std::abs(weight_sum - 1.0) > 1e-12) {
    throw InvalidArgument("mixture weights sum to " + std::to_string(weight_sum) + ", not 1");
  }
}

Eigen::VectorXd GaussianMixture::mean() const {
  Eigen::VectorXd m = Eigen::VectorXd::Zero(dim_);
  for (const auto& c : components_) m += c.weight * c.mean;
  return m;
}

Points sample(const GaussianMixture& gm, std::size_t n, std::uint64_t seed) {
  const int d = gm.dim();
  Points out(static_cast<Eigen::Index>(n), d);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<double> cumulative;
  double acc = 0.0;
  for (const auto& c : gm.components()) cumulative.push_back(acc += c.weight);

  Eigen::VectorXd z(d);
  for (std::size_t s = 0; s < n; ++s) {
    const double u = uniform(rng) * acc;
    std::size_t k = 0;
    // Zero-weight components are never selected: u < cumulative[k] is strict.
    while (k + 1 < cumulative.size() && !(u < cumulative[k])) ++k;
    for (int i = 0; i < d; ++i) z[i] = normal(rng);
    out.row(static_cast<Eigen::Index>(s)) =
        (gm.component(k).mean + gm.cholesky(k) * z).transpose();
  }
  return out;
}

double density(const GaussianMixture& gm, std::span<const double> x) {
  const int d = gm.dim();
  if (static_cast<int>(x.size()) != d) throw InvalidArgument("density: dimension mismatch");
  const Eigen::Map<const Eigen::VectorXd> point(x.data(), d);
  double total = 0.0;
  for (std::size_t k = 0; k < gm.n_components(); ++k) {
    const auto& c = gm.component(k);
    if (c.weight == 0.0) continue;
    const Eigen::VectorXd z =
        gm.cholesky(k).triangularView<Eigen::Lower>().solve(point - c.mean);
    total += c.weight * std::exp(gm.log_norm_[k] - 0.5 * z.squaredNorm());
  }
  return total;
}

MomentTable::MomentTable(int dim, int max_order, std::vector<double> values)
    : dim_(dim), max_order_(max_order), values_(std::move(values)) {
  if (values_.size() != index_count(dim_, max_order_)) {
    throw InvalidArgument("moment table is incomplete for the requested order");
  }
}

double MomentTable::at(std::span<const int> gamma) const {
  if (static_cast<int>(gamma.size()) != dim_) throw InvalidArgument("moment index dimension mismatch");
  if (total_order(gamma) > max_order_) {
    throw InvalidArgument("moment " + format_index(gamma) + " exceeds table order " +
                          std::to_string(max_order_));
  }
  return values_[graded_rank(gamma)];
}

MomentTable raw_moments(const GaussianMixture& gm, int max_order) {
  if (max_order < 0) throw InvalidArgument("raw_moments: max_order must be >= 0");
  const int d = gm.dim();
  const auto indices = enumerate_indices(d, max_order);
  const std::size_t n = indices.size();

  // Each gamma != 0 is built from its predecessor gamma - e_i, where i is the
  // first nonzero coordinate. Both ranks are fixed, so precompute them.
  std::vector<std::size_t> parent(n, 0);
  std::vector<int> lead(n, 0);
  std::vector<std::vector<std::pair<int, std::size_t>>> lowered(n);
  MultiIndex scratch;
  for (std::size_t r = 1; r < n; ++r) {
    scratch = indices[r];
    int i = 0;
    while (scratch[i] == 0) ++i;
    lead[r] = i;
    --scratch[i];
    parent[r] = graded_rank(scratch);
    for (int j = 0; j < d; ++j) {
      if (scratch[j] == 0) continue;
      --scratch[j];
      lowered[r].emplace_back(j, graded_rank(scratch));
      ++scratch[j];
    }
  }

  std::vector<double> total(n, 0.0);
  std::vector<double> m(n);
  for (const auto& c : gm.components()) {
    if (c.weight == 0.0) continue;
    m[0] = 1.0;
    for (std::size_t r = 1; r < n; ++r) {
      const int i = lead[r];
      const auto& prev = indices[parent[r]];
      double value = c.mean[i] * m[parent[r]];
      for (const auto& [j, rank] : lowered[r]) value += c.cov(i, j) * prev[j] * m[rank];
      if (!std::isfinite(value)) {
        throw MomentOverflow(indices[r], "moment " + format_index(indices[r]) + " overflowed");
      }
      m[r] = value;
    }
    for (std::size_t r = 0; r < n; ++r) total[r] += c.weight * m[r];
  }
  for (std::size_t r = 0; r < n; ++r) {
    if (!std::isfinite(total[r])) {
      throw MomentOverflow(indices[r], "moment " + format_index(indices[r]) + " overflowed");
    }
  }
  total[0] = 1.0;
  return MomentTable(d, max_order, std::move(total));
}

}  // namespace corrsc
