#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "latd/errors.hpp"
#include "latd/matrix.hpp"

namespace latd {

enum class Parity { NonIntegral, Odd, Even };

const char* parity_name(Parity p);

/// A positive definite lattice, represented only by its rational Gram matrix
/// G_ij = (b_i, b_j). Immutable; copies share storage.
class Lattice {
 public:
  /// Validates symmetry and positive definiteness (exact leading minors).
  static Lattice from_gram(const RatMatrix& gram, std::string label = {});

  int dim() const { return data_->gram.rows(); }
  const RatMatrix& gram() const { return data_->gram; }
  const std::string& label() const { return data_->label; }
  Lattice with_label(std::string label) const;

  /// gram() == int_gram() / scale(), scale the lcm of all denominators.
  const I64Matrix& int_gram() const { return data_->int_gram; }
  std::int64_t scale() const { return data_->scale; }

  Rational inner(std::span<const Rational> a, std::span<const Rational> b) const;
  Rational norm(std::span<const Rational> coords) const;
  Rational norm(std::span<const std::int64_t> coords) const;
  /// Scaled integer inner product of integral coordinate vectors.
  std::int64_t int_inner(std::span<const std::int64_t> a, std::span<const std::int64_t> b) const;

 private:
  struct Data {
    RatMatrix gram;
    std::string label;
    I64Matrix int_gram;
    std::int64_t scale = 1;
  };
  explicit Lattice(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
};

/// Coordinates in the lattice basis; integral for lattice elements.
struct LatticeVector {
  std::vector<Rational> coords;
};

/// One norm layer of a lattice, one representative per antipodal pair,
/// sign-normalised (first nonzero coordinate positive) and sorted.
struct ShellSet {
  Rational norm;
  int dim = 0;
  std::vector<std::int64_t> coords;  // row-major, size() rows of length dim
  bool complete = true;

  size_t size() const { return dim == 0 ? 0 : coords.size() / static_cast<size_t>(dim); }
  size_t full_count() const { return 2 * size(); }
  bool empty() const { return coords.empty(); }
  std::span<const std::int64_t> vector(size_t i) const {
    return {coords.data() + i * static_cast<size_t>(dim), static_cast<size_t>(dim)};
  }
};

Lattice make_lattice(const RatMatrix& gram, std::string label = {});
Rational determinant(const Lattice& lattice);
Lattice dual(const Lattice& lattice);
Parity parity(const Lattice& lattice);
bool is_integral(const Lattice& lattice);
bool is_unimodular(const Lattice& lattice);
Lattice rescale(const Lattice& lattice, const Rational& c);
Lattice orthogonal_sum(const Lattice& a, const Lattice& b);

/// Even sublattice of an odd integral lattice together with its basis
/// (columns, coordinates in the basis of the input lattice).
struct Sublattice {
  Lattice lattice;
  I64Matrix basis;
};
Sublattice even_sublattice_with_basis(const Lattice& lattice);
Lattice even_sublattice(const Lattice& lattice);

/// All vectors of norm m (antipodally reduced).
ShellSet shell(const Lattice& lattice, const Rational& m, Budget budget = Budget::standard());
/// Minimum and the full minimal shell.
std::pair<Rational, ShellSet> minimum(const Lattice& lattice, Budget budget = Budget::standard());
/// min(L)^n / det(L), the n-th power of the Hermite invariant.
Rational hermite_pow(const Lattice& lattice, Budget budget = Budget::standard());

/// Parses the ".gram" text format.
Lattice parse_gram(std::string_view text, std::string label = {});
Lattice read_gram_file(const std::string& path);
std::string format_gram(const Lattice& lattice);

/// Sign-normalises (first nonzero positive) and sorts rows lexicographically.
void canonicalize_pairs(std::vector<std::int64_t>& coords, int dim);

}  // namespace latd
