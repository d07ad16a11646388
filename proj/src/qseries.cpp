#include "latd/qseries.hpp"

#include <algorithm>

#include "latd/errors.hpp"

namespace latd {

QSeries::QSeries(int prec, int den, std::optional<int> weight)
    : coeffs_(static_cast<size_t>(std::max(prec, 0)) + 1, Rational(0)), den_(den), weight_(weight) {}

QSeries::QSeries(std::vector<Rational> coeffs, int den, std::optional<int> weight)
    : coeffs_(std::move(coeffs)), den_(den), weight_(weight) {
  if (coeffs_.empty()) coeffs_.push_back(0);
}

bool QSeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& q) { return q == 0; });
}

QSeries QSeries::truncated(int prec) const {
  QSeries out(*this);
  out.coeffs_.resize(static_cast<size_t>(std::min(prec, this->prec())) + 1);
  return out;
}

namespace {

void check_grid(const QSeries& a, const QSeries& b) {
  if (a.den() != b.den()) throw Error(Errc::InvalidArgument, "q-series on different exponent grids");
}

std::optional<int> same_weight(const QSeries& a, const QSeries& b) {
  return a.weight() == b.weight() ? a.weight() : std::nullopt;
}

}  // namespace

QSeries add(const QSeries& a, const QSeries& b) {
  check_grid(a, b);
  QSeries out(std::min(a.prec(), b.prec()), a.den(), same_weight(a, b));
  for (int j = 0; j <= out.prec(); ++j) out[j] = a[j] + b[j];
  return out;
}

QSeries scale(const QSeries& a, const Rational& c) {
  QSeries out(a);
  for (int j = 0; j <= out.prec(); ++j) out[j] *= c;
  return out;
}

QSeries multiply(const QSeries& a, const QSeries& b) {
  check_grid(a, b);
  std::optional<int> w;
  if (a.weight() && b.weight()) w = *a.weight() + *b.weight();
  QSeries out(std::min(a.prec(), b.prec()), a.den(), w);
  const int n = out.prec();
#pragma omp parallel for schedule(dynamic, 4) if (n > 64)
  for (int j = 0; j <= n; ++j) {
    Rational s = 0;
    for (int i = 0; i <= j; ++i)
      if (a[i] != 0 && b[j - i] != 0) s += a[i] * b[j - i];
    out[j] = s;
  }
  return out;
}

QSeries power(const QSeries& a, unsigned e) {
  QSeries result(a.prec(), a.den());
  result[0] = 1;
  if (a.weight()) result.set_weight(0);
  QSeries base = a;
  while (e) {
    if (e & 1) result = multiply(result, base);
    e >>= 1;
    if (e) base = multiply(base, base);
  }
  return result;
}

Integer sigma(int r, long j) {
  Integer s = 0, t;
  for (long d = 1; d * d <= j; ++d) {
    if (j % d) continue;
    mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(r));
    s += t;
    if (d * d != j) {
      mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(j / d), static_cast<unsigned long>(r));
      s += t;
    }
  }
  return s;
}

QSeries eisenstein(int k, int prec) {
  if (k != 4 && k != 6) throw Error(Errc::InvalidArgument, "Eisenstein series of weight 4 or 6 only");
  QSeries e(prec, 1, k);
  e[0] = 1;
  const long c = k == 4 ? 240 : -504;
  for (int j = 1; j <= prec; ++j) e[j] = Rational(c * sigma(k - 1, j));
  return e;
}

QSeries delta(int prec) {
  QSeries d = add(power(eisenstein(4, prec), 3), scale(power(eisenstein(6, prec), 2), -1));
  d = scale(d, Rational(1, 1728));
  d.set_weight(12);
  return d;
}

int level1_dimension(int weight) {
  if (weight < 0 || weight % 2) return 0;
  if (weight % 12 == 2) return weight / 12;
  return weight / 12 + 1;
}

namespace {

// Reduced echelon form on the leading indices; requires distinct leading terms.
std::vector<QSeries> echelonize(std::vector<QSeries> rows) {
  const int count = static_cast<int>(rows.size());
  int r = 0;
  const int prec = count ? rows[0].prec() : 0;
  for (int col = 0; col <= prec && r < count; ++col) {
    int pivot = -1;
    for (int i = r; i < count; ++i)
      if (rows[i][col] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[r], rows[pivot]);
    rows[r] = scale(rows[r], 1 / Rational(rows[r][col]));
    for (int i = 0; i < count; ++i) {
      if (i == r || rows[i][col] == 0) continue;
      rows[i] = add(rows[i], scale(rows[r], -rows[i][col]));
    }
    ++r;
  }
  if (r < count) throw Error(Errc::InvalidArgument, "precision too small to separate the basis");
  return rows;
}

}  // namespace

std::vector<QSeries> level1_basis(int weight, int prec) {
  if (weight < 0 || weight % 2) throw Error(Errc::WeightNotRepresentable, "weight " + std::to_string(weight));
  const int dim = level1_dimension(weight);
  if (dim == 0) return {};
  prec = std::max(prec, dim - 1);
  const QSeries e4 = eisenstein(4, prec), e6 = eisenstein(6, prec);
  std::vector<QSeries> rows;
  for (int b = 0; 6 * b <= weight; ++b) {
    const int rest = weight - 6 * b;
    if (rest % 4) continue;
    QSeries f = multiply(power(e4, static_cast<unsigned>(rest / 4)), power(e6, static_cast<unsigned>(b)));
    rows.push_back(f);
  }
  auto out = echelonize(rows);
  for (auto& f : out) f.set_weight(weight);
  return out;
}

std::vector<QSeries> level1_basis_delta(int weight, int prec) {
  if (weight < 0 || weight % 4) throw Error(Errc::WeightNotRepresentable, "weight " + std::to_string(weight));
  const int k = weight / 4;
  const int m = k / 3;
  prec = std::max(prec, m);
  const QSeries e4 = eisenstein(4, prec), d = delta(std::max(prec, 1)).truncated(prec);
  std::vector<QSeries> rows;
  for (int j = 0; j <= m; ++j)
    rows.push_back(multiply(power(e4, static_cast<unsigned>(k - 3 * j)), power(d, static_cast<unsigned>(j))));
  auto out = echelonize(rows);
  for (auto& f : out) f.set_weight(weight);
  return out;
}

std::optional<std::vector<Rational>> express_in_basis(const QSeries& f, const std::vector<QSeries>& basis) {
  const int prec = f.prec();
  RatMatrix a(prec + 1, static_cast<int>(basis.size()));
  std::vector<Rational> rhs(static_cast<size_t>(prec) + 1);
  for (int j = 0; j <= prec; ++j) {
    rhs[j] = f[j];
    for (size_t i = 0; i < basis.size(); ++i) {
      if (basis[i].prec() < prec) throw Error(Errc::InvalidArgument, "basis precision below the series precision");
      a(j, static_cast<int>(i)) = basis[i][j];
    }
  }
  if (basis.empty()) {
    if (f.is_zero()) return std::vector<Rational>{};
    return std::nullopt;
  }
  return solve(a, rhs);
}

ExtremalForm extremal_form(int k, int prec) {
  if (k < 1) throw Error(Errc::InvalidArgument, "extremal form needs k >= 1");
  ExtremalForm ef;
  ef.m = k / 3;
  prec = std::max(prec, ef.m + 2);
  auto basis = level1_basis_delta(4 * k, prec);
  ef.series = basis.front();
  ef.a = ef.series[ef.m + 1];
  ef.b = ef.series[ef.m + 2];
  return ef;
}

std::int64_t extremal_min_bound(int n) {
  if (n <= 0 || n % 8) throw Error(Errc::BadDimension, "dimension must be a positive multiple of 8, got " + std::to_string(n));
  return 2 + 2 * (n / 24);
}

Rational bernoulli(int j) {
  if (j < 0) throw Error(Errc::InvalidArgument, "negative Bernoulli index");
  std::vector<Rational> b(static_cast<size_t>(j) + 1);
  b[0] = 1;
  for (int m = 1; m <= j; ++m) {
    Rational s = 0;
    Integer c = 1;  // C(m+1, i)
    for (int i = 0; i < m; ++i) {
      s += Rational(c) * b[i];
      c = c * (m + 1 - i) / (i + 1);
    }
    b[m] = -s / (m + 1);
  }
  return b[j];
}

Rational mass(int dim) {
  if (dim <= 0 || dim % 8) throw Error(Errc::BadDimension, "mass formula needs a positive multiple of 8, got " + std::to_string(dim));
  const int k = dim / 2;
  Rational m = abs(bernoulli(k)) / (2 * k);
  for (int j = 1; j < k; ++j) m *= abs(bernoulli(2 * j)) / (4 * j);
  return m;
}

}  // namespace latd
