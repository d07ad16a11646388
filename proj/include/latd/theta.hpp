#pragma once

#include <vector>

#include "latd/errors.hpp"
#include "latd/lattice.hpp"
#include "latd/qseries.hpp"

namespace latd {

/// Exponent grid of the theta series: q^{(x,x)/2} is stored at index
/// (x,x) * den / 2, den = 1 for even lattices, 2 for odd ones, 2 * scale else.
int theta_grid(const Lattice& lattice);

/// Theta series with coefficients known through q^prec.
QSeries theta_series(const Lattice& lattice, int prec, Budget budget = Budget::standard());
QSeries theta_series_serial(const Lattice& lattice, int prec, Budget budget = Budget::standard());

/// Harmonic polynomial p(x) = sum_k c_k (x,x)^k (a,a)^k (x,a)^{d-2k}.
struct HarmonicWitness {
  std::vector<Rational> alpha;  // coordinates in the lattice basis
  int degree = 2;
  int dim = 0;
  std::vector<Rational> coefficients;  // c_0 = 1, c_1, ..., c_{d/2}

  Rational evaluate(const Lattice& lattice, std::span<const std::int64_t> x) const;
};

/// Builds the degree-2 or degree-4 witness by forcing Laplacian annihilation;
/// the result is checked symbolically.
HarmonicWitness harmonic_witness(const Lattice& lattice, std::vector<Rational> alpha, int degree);
/// Applies the Laplacian to sum_k c_k r^k A^k s^{d-2k} (r = (x,x), s = (x,a),
/// A = (a,a)) in dimension n; returns the coefficients of the image, indexed
/// by the power of r.
std::vector<Rational> harmonic_laplacian(int n, int degree, const std::vector<Rational>& coefficients);

/// Coefficient of q^j is the sum of p over the vectors with Q = j.
QSeries harmonic_theta(const Lattice& lattice, const HarmonicWitness& w, int prec,
                       Budget budget = Budget::standard());

struct ExtremalCheck {
  bool extremal = false;
  Rational minimum;
  std::int64_t bound = 0;
  int prec_checked = 0;
  bool theta_matches = false;
};

/// Compares min(L) with 2 + 2 floor(n/24); when extremal, also matches the
/// theta series against the extremal form through q^prec.
ExtremalCheck is_extremal(const Lattice& lattice, int prec = -1, Budget budget = Budget::standard());

/// Default precision: 8 through dimension 16, 3 beyond.
int default_theta_precision(int dim);
/// Precision used by is_extremal when none is given (8, 4, 3 for dims 8, 16, 24+).
int extremal_check_precision(int dim);

}  // namespace latd
