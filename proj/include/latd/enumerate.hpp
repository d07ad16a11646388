#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "latd/errors.hpp"
#include "latd/lattice.hpp"

namespace latd {

namespace detail {
struct EnumGeometry;
}

/// Short-vector enumeration for one lattice.
///
/// Norms are exchanged as scaled integers: a vector of norm N / scale() is
/// reported as N. Coordinates are always in the basis of the input lattice.
class Enumerator {
 public:
  explicit Enumerator(const Lattice& lattice);

  int dim() const;
  std::int64_t scale() const;
  /// Gram and transform of the reduced basis used internally.
  const I64Matrix& reduced_gram() const;
  const I64Matrix& reduced_transform() const;

  using Visitor = std::function<bool(std::span<const std::int64_t> coords, std::int64_t scaled_norm)>;

  /// Visits one vector of each antipodal pair with scaled norm in [lo, hi];
  /// depth-first order. Returns false if the visitor stopped the search.
  bool for_each_pair(std::int64_t lo, std::int64_t hi, const Visitor& visit, Budget budget = Budget::standard()) const;

  /// Collects the pairs with scaled norm in [lo, hi], canonical order.
  std::vector<std::int64_t> collect_pairs(std::int64_t lo, std::int64_t hi, Budget budget = Budget::standard()) const;

  /// Number of lattice vectors (both signs, zero included) of each scaled
  /// norm 0..hi. Runs the OpenMP kernel.
  std::vector<std::uint64_t> count_by_norm(std::int64_t hi, Budget budget = Budget::standard()) const;
  std::vector<std::uint64_t> count_by_norm_serial(std::int64_t hi, Budget budget = Budget::standard()) const;

  /// Visits every z = den*x + shift (x integral) with z^T G z <= hi_num, where
  /// G is int_gram of the lattice. The element z/den of L (x) Q has norm
  /// z^T G z / (den^2 * scale). The visitor receives z in input coordinates.
  bool for_each_in_coset(std::span<const std::int64_t> shift, std::int64_t den, std::int64_t hi_num,
                         const Visitor& visit, Budget budget = Budget::standard()) const;

  const detail::EnumGeometry& geometry() const { return *geo_; }

 private:
  std::shared_ptr<const detail::EnumGeometry> geo_;
};

}  // namespace latd
