#pragma once

#include <optional>
#include <vector>

#include "latd/errors.hpp"
#include "latd/kernels.hpp"
#include "latd/lattice.hpp"

namespace latd {

/// A monomial moment identity that fails. Coordinates are u = G x (the
/// coefficients of x against the basis), so for an orthonormal basis this is
/// the plain moment sum over X of x^a against its sphere average.
struct MomentWitness {
  int degree = 0;
  std::vector<int> exponents;
  Rational lhs;  // sum over X of u^a
  Rational rhs;  // value required of a design
};

struct DesignCertificate {
  Rational shell_norm;
  std::uint64_t set_size = 0;  // |X| counting both signs
  int strength = 0;
  int t_max = 0;
  bool capped = false;  // no failing degree found up to t_max
  std::optional<MomentWitness> failing_witness;
};

/// Design strength of X = S u -S, testing every even degree e <= t_max (<= 12).
DesignCertificate design_strength(const Lattice& lattice, const ShellSet& shell, int t_max,
                                  Exec exec = Exec::Parallel);

/// Sum over X of (x, y)^e for x, y in X, per even e up to t_max (index e).
std::vector<Rational> pair_power_sums(const Lattice& lattice, const ShellSet& shell, int t_max,
                                      Exec exec = Exec::Parallel);

/// (e-1)!! / (n (n+2) ... (n+e-2)): the average of (x, y)^e over the unit
/// sphere for a fixed unit vector y.
Rational sphere_moment_constant(int n, int e);

/// Sum over X of u^a (u = G x) and the value required for a design.
MomentWitness monomial_moment(const Lattice& lattice, const ShellSet& shell, const std::vector<int>& exponents);

/// Rank of { x x^T } in the space of symmetric matrices.
int perfection_rank(const ShellSet& shell);
/// The unique symmetric F with x^T F x = 1 on the shell, when perfect.
std::optional<RatMatrix> perfect_form(const ShellSet& shell);

/// Sum over X of x x^T, counting both signs.
RatMatrix second_moment(const ShellSet& shell);
bool is_strongly_eutactic(const Lattice& lattice, const ShellSet& shell);

struct EutaxyResult {
  bool eutactic = false;
  std::vector<Rational> weights;  // one per stored pair: sum w_p x_p x_p^T = G^{-1}
  std::optional<std::vector<Rational>> degenerate_direction;  // nonzero alpha orthogonal to the shell
};

/// Decides whether G^{-1} is a positive combination of the x x^T. Uses the
/// equal-weight solution when it exists and an exact simplex otherwise.
EutaxyResult is_eutactic(const Lattice& lattice, const ShellSet& shell, Budget budget = Budget::standard());

struct OptimalityReport {
  Rational minimum;
  std::uint64_t kissing_number = 0;
  int perfection_rank = 0;
  int symmetric_dim = 0;
  bool perfect = false;
  bool strongly_eutactic = false;
  bool eutactic = false;
  std::vector<Rational> eutaxy_weights;
  bool strongly_perfect = false;
  bool extreme_certified = false;
  DesignCertificate design;
  std::optional<std::vector<Rational>> degenerate_direction;
};

OptimalityReport is_strongly_perfect(const Lattice& lattice, Budget budget = Budget::standard());

struct VenkovCheck {
  Rational lhs;
  Rational rhs;
  bool ok = false;
};

/// min(L) * min(L#) against (n + 2) / 3.
VenkovCheck venkov_bound_check(const Lattice& lattice, Budget budget = Budget::standard());

/// Smallest even m with m^2 >= (n + 2) / 3: the minimum forced on a strongly
/// perfect even unimodular lattice of dimension n.
std::int64_t venkov_even_unimodular_min(int n);

}  // namespace latd
