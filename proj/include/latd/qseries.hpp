#pragma once

#include <optional>
#include <vector>

#include "latd/matrix.hpp"

namespace latd {

/// Truncated q-expansion with exact coefficients. Index j stands for
/// q^{j/den}; coefficients are known for j = 0..prec.
class QSeries {
 public:
  QSeries() = default;
  explicit QSeries(int prec, int den = 1, std::optional<int> weight = std::nullopt);
  QSeries(std::vector<Rational> coeffs, int den = 1, std::optional<int> weight = std::nullopt);

  int prec() const { return static_cast<int>(coeffs_.size()) - 1; }
  int den() const { return den_; }
  std::optional<int> weight() const { return weight_; }
  void set_weight(std::optional<int> w) { weight_ = w; }

  const Rational& operator[](int j) const { return coeffs_.at(static_cast<size_t>(j)); }
  Rational& operator[](int j) { return coeffs_.at(static_cast<size_t>(j)); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  /// Drops coefficients beyond `prec`.
  QSeries truncated(int prec) const;

  bool operator==(const QSeries& other) const = default;

 private:
  std::vector<Rational> coeffs_;
  int den_ = 1;
  std::optional<int> weight_;
};

QSeries add(const QSeries& a, const QSeries& b);
QSeries scale(const QSeries& a, const Rational& c);
QSeries multiply(const QSeries& a, const QSeries& b);
QSeries power(const QSeries& a, unsigned e);

/// Divisor power sum sigma_r(j).
Integer sigma(int r, long j);

/// Normalised Eisenstein series E4 or E6.
QSeries eisenstein(int k, int prec);
/// (E4^3 - E6^2) / 1728.
QSeries delta(int prec);

/// Echelonised basis of the level-one forms of weight `weight`: leading
/// terms q^0, q^1, ... with zeros at the other leading positions.
std::vector<QSeries> level1_basis(int weight, int prec);
/// Echelonised E4^{k-3j} Delta^j, j = 0..floor(k/3), for weight 4k.
std::vector<QSeries> level1_basis_delta(int weight, int prec);
int level1_dimension(int weight);

/// Coefficients expressing `f` in `basis`, or nullopt if not in the span.
std::optional<std::vector<Rational>> express_in_basis(const QSeries& f, const std::vector<QSeries>& basis);

struct ExtremalForm {
  QSeries series;
  int m = 0;  // floor(k/3)
  Rational a;  // coefficient of q^{m+1}
  Rational b;  // coefficient of q^{m+2}
};

/// The extremal modular form of weight 4k; prec is raised to m + 2 if needed.
ExtremalForm extremal_form(int k, int prec);
/// 2 + 2 floor(n/24) for n divisible by 8.
std::int64_t extremal_min_bound(int n);

/// Bernoulli numbers with B_1 = -1/2.
Rational bernoulli(int j);
/// |B_k|/(2k) prod_{j<k} |B_{2j}|/(4j) for dimension 2k divisible by 8.
Rational mass(int dim);

}  // namespace latd
