#pragma once

#include <optional>
#include <vector>

#include "latd/errors.hpp"
#include "latd/lattice.hpp"

namespace latd {

/// Cheap isometry invariants checked before any backtracking.
struct Fingerprint {
  Rational det;
  Parity parity = Parity::Odd;
  std::int64_t scale = 1;
  std::vector<std::uint64_t> layer_counts;  // vectors of scaled norm 1..bound

  bool operator==(const Fingerprint&) const = default;
};

/// `layers` counts the scaled norms 1..layers.
Fingerprint fingerprint(const Lattice& lattice, int layers, Budget budget = Budget::standard());

/// Unimodular T with T^T G_M T = G_L, or nullopt when L and M are not
/// isometric. Deterministic.
std::optional<I64Matrix> isometric(const Lattice& l, const Lattice& m, Budget budget = Budget::standard());

struct AutomorphismGroup {
  Integer order;
  std::vector<I64Matrix> generators;  // act on coordinate columns, A^T G A = G
  std::vector<std::uint64_t> orbit_lengths;
};

AutomorphismGroup automorphism_group(const Lattice& lattice, Budget budget = Budget::standard());
Integer aut_order(const Lattice& lattice, Budget budget = Budget::standard());

}  // namespace latd
