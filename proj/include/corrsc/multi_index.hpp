#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace corrsc {

/// Exponent vector alpha = (alpha_1, ..., alpha_d) of the monomial xi^alpha.
using MultiIndex = std::vector<int>;

int total_order(std::span<const int> alpha);

/// Binomial coefficient as size_t; callers stay well inside the range.
std::size_t binomial(std::size_t n, std::size_t k);

/// Number of multi-indices in d variables with total order <= q.
inline std::size_t index_count(int d, int q) {
  return binomial(static_cast<std::size_t>(d + q), static_cast<std::size_t>(d));
}

/// All multi-indices with |alpha| <= q in graded-lexicographic order.
///
/// Lower total order comes first. Within a grade, exponent vectors are
/// compared left to right and the larger exponent on xi_1 wins, so for
/// d = 2, q = 1 the order is (0,0), (1,0), (0,1). Files that store
/// coefficients or moments rely on this order.
std::vector<MultiIndex> enumerate_indices(int d, int q);

/// Position of alpha in enumerate_indices(alpha.size(), q) for any q >= |alpha|.
std::size_t graded_rank(std::span<const int> alpha);

}  // namespace corrsc
