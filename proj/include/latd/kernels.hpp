#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "latd/enumerate.hpp"
#include "latd/errors.hpp"
#include "latd/matrix.hpp"

namespace latd {

/// Execution policy of the hot kernels. Both variants return identical
/// results; the serial one is the reference used in tests and benchmarks.
enum class Exec { Serial, Parallel };

/// Vector counts (both signs, zero included) for every scaled norm 0..hi.
std::vector<std::uint64_t> count_norms(const Enumerator& e, std::int64_t hi, Exec exec, Budget budget);

/// Antipodal representatives with scaled norm in [lo, hi], in input
/// coordinates, canonical order.
std::vector<std::int64_t> collect_pairs(const Enumerator& e, std::int64_t lo, std::int64_t hi, Exec exec,
                                        Budget budget);

/// Histogram of the scaled inner products x^T G y over all ordered pairs
/// (x, y) of stored rows. Index i corresponds to the value i - offset.
struct InnerProductHistogram {
  std::int64_t offset = 0;
  std::vector<std::uint64_t> counts;
};

InnerProductHistogram pair_histogram(std::span<const std::int64_t> rows, int dim, const I64Matrix& gram,
                                     Exec exec);

/// Sums over the stored rows of prod_i u_i^{a_i} with u = G x, for every
/// multi-index in `exponents` (row-major, dim entries each). Exact.
std::vector<Integer> monomial_moments(std::span<const std::int64_t> rows, int dim, const I64Matrix& gram,
                                      std::span<const int> exponents, Exec exec);

}  // namespace latd
