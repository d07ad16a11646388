#pragma once

#include <map>
#include <optional>
#include <vector>

#include "latd/constructions.hpp"
#include "latd/errors.hpp"
#include "latd/lattice.hpp"

namespace latd {

struct NeighborResult {
  Lattice lattice;
  IntMatrix basis2;                  // rows: 2 * basis vectors of M in the coordinates of L
  std::vector<std::int64_t> vector;  // the v actually used (after an even lift)
};

/// M = L_v + Z v/2 with L_v = { l : (l, v) even }. With require_even a vector
/// of norm 4 mod 8 is first replaced by v + 2 b_j of norm 0 mod 8.
NeighborResult neighbor(const Lattice& lattice, std::span<const std::int64_t> v, bool require_even = false);

/// Whether two neighbors (as basis2 rows in a common L) span the same lattice.
bool same_sublattice(const IntMatrix& a, const IntMatrix& b);

/// Branch and bound for a largest set of pairwise orthogonal vectors among
/// `candidates` (indices into `roots`). Stops early at `target` (0: never).
std::vector<size_t> orthogonal_root_search(const Lattice& lattice, const ShellSet& roots,
                                           const std::vector<size_t>& candidates, size_t target = 0,
                                           Budget budget = Budget::standard());
/// Largest set of pairwise orthogonal roots, searched per irreducible
/// component up to the known maximum for its type; indices into the roots.
std::vector<size_t> max_orthogonal_roots(const Lattice& lattice, const RootDecomposition& roots,
                                         Budget budget = Budget::standard());
int defect(const Lattice& lattice, Budget budget = Budget::standard());

struct KochVenkovTally {
  std::map<int, std::uint64_t> f;  // i -> number of v (both signs) with delta(L^(v)) = n - i
  std::map<int, Rational> g;       // f(i) / (2i)
  std::uint64_t vectors_seen = 0;  // both signs
  bool complete = false;
};

/// Walks norm-8 vectors of a root-free even unimodular lattice, at most
/// max_pairs antipodal pairs; complete when the whole shell was seen.
KochVenkovTally koch_venkov_g(const Lattice& lattice, std::uint64_t max_pairs, Budget budget = Budget::standard());

struct GenusClass {
  Lattice lattice;
  Integer aut_order;
  std::string roots;  // root signature
};

struct GenusOptions {
  int max_classes = 32;
  std::uint64_t max_neighbors = 200000;  // neighbor constructions over the whole run
  int verify_isometries = 4;  // per class pair, fingerprint matches also checked by isometric()
  Budget budget = Budget::standard();
};

struct GenusReport {
  std::vector<GenusClass> classes;
  std::vector<std::vector<std::uint64_t>> adjacency;  // K, rows of explored classes
  std::vector<bool> explored;
  Rational mass_lhs;
  Rational mass_rhs;
  std::uint64_t neighbors_built = 0;
  bool closed = false;    // every class explored
  bool complete = false;  // closed and mass equality
};

/// Breadth-first search over even 2-neighbors of an even unimodular seed.
GenusReport genus_explore(const Lattice& seed, const GenusOptions& options = {});

}  // namespace latd
