#include "corrsc/multi_index.hpp"

#include <numeric>

#include "corrsc/error.hpp"

namespace corrsc {

int total_order(std::span<const int> alpha) {
  return std::accumulate(alpha.begin(), alpha.end(), 0);
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return result;
}

namespace {

// Compositions of `remaining` into the slots [pos, d), largest leading part first.
void append_grade(MultiIndex& current, std::size_t pos, int remaining,
                  std::vector<MultiIndex>& out) {
  if (pos + 1 == current.size()) {
    current[pos] = remaining;
    out.push_back(current);
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    current[pos] = v;
    append_grade(current, pos + 1, remaining - v, out);
  }
  current[pos] = 0;
}

}  // namespace

std::vector<MultiIndex> enumerate_indices(int d, int q) {
  if (d < 1) throw InvalidArgument("enumerate_indices: dimension must be >= 1");
  if (q < 0) throw InvalidArgument("enumerate_indices: order must be >= 0");
  std::vector<MultiIndex> out;
  out.reserve(index_count(d, q));
  MultiIndex current(static_cast<std::size_t>(d), 0);
  for (int grade = 0; grade <= q; ++grade) {
    append_grade(current, 0, grade, out);
  }
  return out;
}

std::size_t graded_rank(std::span<const int> alpha) {
  const std::size_t d = alpha.size();
  const int grade = total_order(alpha);
  std::size_t rank = grade == 0 ? 0 : binomial(d + grade - 1, d);
  int remaining = grade;
  for (std::size_t i = 0; i + 1 < d; ++i) {
    const std::size_t slots_after = d - i - 1;
    // Every composition with a larger entry in slot i comes first.
    for (int v = alpha[i] + 1; v <= remaining; ++v) {
      const auto rest = static_cast<std::size_t>(remaining - v);
      rank += binomial(rest + slots_after - 1, slots_after - 1);
    }
    remaining -= alpha[i];
  }
  return rank;
}

}  // namespace corrsc
