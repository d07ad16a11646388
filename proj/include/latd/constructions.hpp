#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "latd/codes.hpp"
#include "latd/errors.hpp"
#include "latd/lattice.hpp"
#include "latd/qseries.hpp"

namespace latd {

/// Frame vectors as integral coordinate rows in a lattice basis.
using Frame = std::vector<std::vector<std::int64_t>>;

struct ConstructionA {
  Lattice lattice;
  IntMatrix basis;  // rows, ambient coordinates in Z^n (a with a mod p in C)
  Frame frame;      // p e_i in lattice coordinates
};

/// L(C) = { a in Z^n : a mod p in C } with (a, b) = a.b / p.
ConstructionA construction_a_with_frame(const LinearCode& code);
Lattice construction_a(const LinearCode& code);

/// The code { (a_1..a_n) mod p : sum (a_i / p) v_i in L }, a_i = (l, v_i).
LinearCode code_from_frame(const Lattice& lattice, const Frame& frame, int p);

/// n pairwise orthogonal vectors of norm p, or nullopt. Deterministic.
std::optional<Frame> find_p_frame(const Lattice& lattice, int p, Budget budget = Budget::standard());

struct RootComponent {
  std::string type;  // "A3", "D16", "E8"
  int rank = 0;
  std::uint64_t root_count = 0;  // both signs
  std::int64_t coxeter_number = 0;
  std::vector<size_t> members;  // indices into RootDecomposition::roots
};

struct RootDecomposition {
  std::vector<RootComponent> components;  // sorted by type letter then rank
  bool full_rank = false;
  int rank = 0;
  ShellSet roots;  // norm-2 vectors, one per pair
};

/// Type name for an irreducible root system with the given rank and root
/// count; empty when (rank, count) is not a row of the A_n, D_n, E_n table.
std::string root_type(int rank, std::uint64_t count);

/// Largest number of pairwise orthogonal roots in an irreducible root system.
int max_orthogonal_roots_of_type(const std::string& type);

RootDecomposition root_decomposition(const Lattice& lattice, Budget budget = Budget::standard());
/// Compact form such as "24A1" or "2E8".
std::string root_signature(const RootDecomposition& r);

struct ShadowReport {
  Rational shadow_min;
  Rational sigma;
  int char_vector_norm_residue = 0;
  Rational minimum;
  bool s_extremal = false;
  bool exception_o23 = false;
};

struct Shadow {
  std::array<std::vector<Rational>, 2> cosets;  // u/2 and u/2 + b in lattice coordinates
  std::vector<std::int64_t> characteristic;     // u, with (u, l) = (l, l) mod 2
  ShadowReport report;
  QSeries theta;  // index j counts shadow vectors of norm j/4
};

/// Shadow of an odd unimodular lattice; theta to q-precision `prec`.
Shadow shadow(const Lattice& lattice, int prec = 2, Budget budget = Budget::standard());

struct OddMinBounds {
  std::int64_t classical = 0;
  std::int64_t rains_sloane = 0;
};

OddMinBounds odd_min_bounds(int n);

}  // namespace latd
