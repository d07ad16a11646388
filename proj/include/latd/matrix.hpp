#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace latd {

using Integer = mpz_class;
using Rational = mpq_class;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}
  Matrix(int rows, int cols, const T& fill)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {}

  static Matrix identity(int n) {
    Matrix m(n, n, T(0));
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  std::span<T> row(int i) { return {data_.data() + static_cast<size_t>(i) * cols_, static_cast<size_t>(cols_)}; }
  std::span<const T> row(int i) const {
    return {data_.data() + static_cast<size_t>(i) * cols_, static_cast<size_t>(cols_)};
  }

  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

  bool operator==(const Matrix& other) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

using RatMatrix = Matrix<Rational>;
using IntMatrix = Matrix<Integer>;
using I64Matrix = Matrix<std::int64_t>;

RatMatrix transpose(const RatMatrix& a);
RatMatrix multiply(const RatMatrix& a, const RatMatrix& b);
/// Returns B^T * G * B.
RatMatrix congruence(const RatMatrix& g, const RatMatrix& b);
RatMatrix to_rational(const I64Matrix& a);
RatMatrix to_rational(const IntMatrix& a);

Rational determinant(const RatMatrix& a);
/// Inverse of a square nonsingular matrix; nullopt when singular.
std::optional<RatMatrix> inverse(const RatMatrix& a);
int rank(const RatMatrix& a);
/// Basis of the right kernel {x : A x = 0}, one vector per row of the result.
RatMatrix nullspace(const RatMatrix& a);
/// Solves A x = b; nullopt if inconsistent. Free variables are set to zero.
std::optional<std::vector<Rational>> solve(const RatMatrix& a, std::span<const Rational> b);

/// Index (1-based) of the first leading principal minor that is not strictly
/// positive, or 0 when the matrix is positive definite.
int first_nonpositive_minor(const RatMatrix& a);

/// Row-style Hermite normal form: returns the nonzero rows of an echelon basis
/// of the Z-module spanned by the rows of `gens`.
IntMatrix hermite_basis(const IntMatrix& gens);

/// Basis (as rows) of the lattice spanned by rational generator rows.
RatMatrix lattice_basis_from_generators(const RatMatrix& gens);

/// Result of reducing an integral Gram matrix.
struct ReducedGram {
  I64Matrix gram;       // U^T G U
  I64Matrix transform;  // columns express the reduced basis in the input basis
};

/// LLL reduction (delta = 0.99) of a positive definite integral Gram matrix.
/// Gram-Schmidt data are kept in long double; all basis updates are exact.
ReducedGram lll_reduce(const I64Matrix& gram);

/// Inverse of a unimodular integer matrix.
I64Matrix unimodular_inverse(const I64Matrix& u);

I64Matrix multiply(const I64Matrix& a, const I64Matrix& b);
I64Matrix transpose(const I64Matrix& a);

}  // namespace latd
