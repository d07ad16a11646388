#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latd/lattice.hpp"

namespace latd {

/// Smallest size of a spherical t-design in R^n (antipodal pairs counted twice).
Integer tight_bound(int n, int t);

/// X = S u -S is a t-design meeting tight_bound(n, t).
bool is_tight(const Lattice& lattice, const ShellSet& shell, int t);

struct Tight7Shell {
  Integer x_size;  // number of antipodal pairs
  int n = 0;
};

/// n = 3d^2 - 4 and |X| = n(n+1)(n+2)/6 for a tight 7-design of norm d.
Tight7Shell tight7_shell_constraints(int d);

/// Univariate polynomial, coefficients from the constant term up.
struct Polynomial {
  std::vector<Rational> coeffs;

  int degree() const;
  Rational operator()(const Rational& x) const;
  /// Integer coefficients with content 1 and positive leading coefficient.
  Polynomial primitive() const;
  std::string to_string(const std::string& var = "a") const;
  bool operator==(const Polynomial&) const = default;
};

/// All rational roots (with multiplicity removed) by the rational root theorem.
std::vector<Rational> rational_roots(const Polynomial& p);

enum class NkStatus { Unique, Inconsistent, Underdetermined };
const char* nk_status_name(NkStatus s);

struct NkSolution {
  int d = 0;
  std::optional<Rational> a;  // (alpha, alpha); nullopt when eliminated
  std::vector<int> k_values;
  NkStatus status = NkStatus::Underdetermined;
  std::map<int, Rational> values;      // k -> n_k when unique
  int failing_equation = -1;           // 0..3, the moment equation left with a residual
  Rational residual;                   // lhs - rhs of that equation
  bool nonnegative_integral = false;   // post-filter on unique solutions
  std::optional<Polynomial> consistency_poly;  // free a: must vanish at the true norm
  std::optional<Polynomial> reduced_poly;      // consistency_poly without its factor a^m
  std::optional<Rational> discriminant;        // of reduced_poly when quadratic
  std::vector<Rational> nonzero_rational_roots;
};

/// Right-hand sides of sum_k k^{2j} n_k (j = 0..3) for a tight 7-design of
/// norm d and a vector of norm a.
std::vector<Rational> tight7_moments(int d, const Rational& a);

/// Solves sum_k k^{2j} n_k = rhs[j], j = 0..rhs.size()-1, exactly.
NkSolution solve_moment_system(const std::vector<int>& k_values, const std::vector<Rational>& rhs);

/// The four moment equations of a tight 7-design of norm d; a = nullopt
/// eliminates the counts and leaves a polynomial condition on a.
NkSolution solve_nk(int d, const std::optional<Rational>& a, const std::vector<int>& k_values);

/// Residuals of the four equations for measured counts n_k.
std::vector<Rational> nk_residuals(int d, const Rational& a, const std::map<int, Rational>& counts);

/// n = (2m+1)^2 - 2.
int tight5_dimension(int m);
/// n = 3d^2 - 4.
int tight7_dimension(int d);
/// Known examples: E7# (m = 1), M23#[2] (m = 2), E8 (d = 2), O23 (d = 3).
std::string tight_design_example(int t, int param);

/// d = +-1 mod 16 or d = +-3 mod 32, for odd d >= 3.
bool tight7_odd_admissible(int d);
/// (k^2 - 1)(k^2 - 9)(k^2 - 25).
Integer odd_helper_product(long k);
/// 2^10 3^2 5.
Integer odd_helper_modulus();

}  // namespace latd
