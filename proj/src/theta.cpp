#include "latd/theta.hpp"

#include "latd/enumerate.hpp"
#include "latd/kernels.hpp"

namespace latd {

int theta_grid(const Lattice& lattice) {
  switch (parity(lattice)) {
    case Parity::Even: return 1;
    case Parity::Odd: return 2;
    case Parity::NonIntegral: break;
  }
  if (lattice.scale() > (1 << 29)) throw Error(Errc::ResourceLimit, "Gram denominators too large for a theta grid");
  return static_cast<int>(2 * lattice.scale());
}

namespace {

QSeries theta_impl(const Lattice& lattice, int prec, Exec exec, Budget budget) {
  if (prec < 0) throw Error(Errc::InvalidArgument, "negative precision");
  const int den = theta_grid(lattice);
  // index j <-> (x,x) = 2 j / den <-> scaled norm 2 j scale / den
  const std::int64_t top = static_cast<std::int64_t>(prec) * den;
  const std::int64_t step_num = 2 * lattice.scale();  // scaled norm = index * step_num / den
  Enumerator e(lattice);
  const std::int64_t hi = top * step_num / den;
  const auto counts = count_norms(e, hi, exec, budget);
  QSeries out(static_cast<int>(top), den, lattice.dim() % 2 == 0 ? std::optional<int>(lattice.dim() / 2) : std::nullopt);
  for (std::int64_t p = 0; p <= hi; ++p) {
    if (counts[static_cast<size_t>(p)] == 0) continue;
    const std::int64_t idx = p * den / step_num;
    out[static_cast<int>(idx)] += static_cast<unsigned long>(counts[static_cast<size_t>(p)]);
  }
  return out;
}

}  // namespace

QSeries theta_series(const Lattice& lattice, int prec, Budget budget) {
  return theta_impl(lattice, prec, Exec::Parallel, budget);
}

QSeries theta_series_serial(const Lattice& lattice, int prec, Budget budget) {
  return theta_impl(lattice, prec, Exec::Serial, budget);
}

std::vector<Rational> harmonic_laplacian(int n, int degree, const std::vector<Rational>& c) {
  // Delta(s^i r^j) = i(i-1) A s^{i-2} r^j + (2nj + 4j(j-1) + 4ij) s^i r^{j-1}
  const int half = degree / 2;
  std::vector<Rational> out(static_cast<size_t>(half), Rational(0));  // coefficient of s^{d-2-2m} r^m A^{m+1}
  for (int k = 0; k <= half && k < static_cast<int>(c.size()); ++k) {
    const int i = degree - 2 * k, j = k;
    if (i >= 2) out[static_cast<size_t>(k)] += c[k] * (i * (i - 1));
    if (j >= 1) out[static_cast<size_t>(k - 1)] += c[k] * (2 * n * j + 4 * j * (j - 1) + 4 * i * j);
  }
  return out;
}

HarmonicWitness harmonic_witness(const Lattice& lattice, std::vector<Rational> alpha, int degree) {
  if (degree != 2 && degree != 4) throw Error(Errc::InvalidArgument, "harmonic witnesses of degree 2 or 4 only");
  const int n = lattice.dim();
  if (static_cast<int>(alpha.size()) != n) throw Error(Errc::InvalidArgument, "direction has the wrong length");
  bool zero = true;
  for (const auto& q : alpha) zero = zero && q == 0;
  if (zero) throw Error(Errc::InvalidArgument, "direction must be nonzero");
  HarmonicWitness w;
  w.alpha = std::move(alpha);
  w.degree = degree;
  w.dim = n;
  // Triangular system: the s^{d-2-2m} r^m coefficient of the Laplacian
  // involves only c_m and c_{m+1}.
  w.coefficients.assign(static_cast<size_t>(degree / 2) + 1, Rational(0));
  w.coefficients[0] = 1;
  for (int m = 0; m < degree / 2; ++m) {
    const int i = degree - 2 * m;
    const int j = m + 1;
    const int i2 = degree - 2 * j;
    w.coefficients[m + 1] = -w.coefficients[m] * (i * (i - 1)) / Rational(2 * n * j + 4 * j * (j - 1) + 4 * i2 * j);
  }
  for (const auto& v : harmonic_laplacian(n, degree, w.coefficients))
    if (v != 0) throw Error(Errc::ValidationFailed, "harmonic witness is not annihilated by the Laplacian");
  return w;
}

Rational HarmonicWitness::evaluate(const Lattice& lattice, std::span<const std::int64_t> x) const {
  const int n = lattice.dim();
  std::vector<Rational> xr(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) xr[i] = static_cast<long>(x[i]);
  const Rational s = lattice.inner(xr, alpha);
  const Rational r = lattice.norm(x);
  const Rational a = lattice.norm(alpha);
  Rational total = 0, ra = 1;
  for (size_t k = 0; k < coefficients.size(); ++k) {
    Rational sp = 1;
    for (int t = 0; t < degree - 2 * static_cast<int>(k); ++t) sp *= s;
    total += coefficients[k] * ra * sp;
    ra *= r * a;
  }
  return total;
}

QSeries harmonic_theta(const Lattice& lattice, const HarmonicWitness& w, int prec, Budget budget) {
  if (w.dim != lattice.dim()) throw Error(Errc::InvalidArgument, "witness dimension differs from the lattice");
  const int den = theta_grid(lattice);
  const std::int64_t top = static_cast<std::int64_t>(prec) * den;
  const std::int64_t step_num = 2 * lattice.scale();
  const std::int64_t hi = top * step_num / den;
  const int n = lattice.dim();
  // (x, alpha) = x . (G alpha); clear denominators once
  std::vector<Rational> ga(static_cast<size_t>(n), Rational(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ga[i] += lattice.gram()(i, j) * w.alpha[j];
  const Rational a = lattice.norm(w.alpha);
  Integer common = 1;
  for (const auto& q : ga) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), q.get_den_mpz_t());
  std::vector<Integer> gi(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) gi[i] = Rational(ga[i] * common).get_num();
  std::vector<std::vector<Integer>> sums(static_cast<size_t>(hi) + 1);  // per scaled norm, sum of s^{d-2k} numerators
  const size_t terms = w.coefficients.size();
  for (auto& v : sums) v.assign(terms, 0);
  Enumerator e(lattice);
  Integer s, sp;
  e.for_each_pair(1, hi, [&](std::span<const std::int64_t> x, std::int64_t p) {
    s = 0;
    for (int i = 0; i < n; ++i)
      if (x[i]) s += gi[i] * static_cast<long>(x[i]);
    auto& acc = sums[static_cast<size_t>(p)];
    for (size_t k = 0; k < terms; ++k) {
      mpz_pow_ui(sp.get_mpz_t(), s.get_mpz_t(), static_cast<unsigned long>(w.degree - 2 * static_cast<int>(k)));
      acc[k] += sp;
    }
    return true;
  }, budget);
  QSeries out(static_cast<int>(top), den, lattice.dim() % 2 == 0 ? std::optional<int>(n / 2 + w.degree) : std::nullopt);
  for (std::int64_t p = 1; p <= hi; ++p) {
    const auto& acc = sums[static_cast<size_t>(p)];
    bool any = false;
    for (const auto& v : acc) any = any || v != 0;
    if (!any) continue;
    const Rational r(p, lattice.scale());
    Rational total = 0, ra = 1;
    for (size_t k = 0; k < terms; ++k) {
      Rational sk(acc[k]);
      Integer dpow;
      mpz_pow_ui(dpow.get_mpz_t(), common.get_mpz_t(), static_cast<unsigned long>(w.degree - 2 * static_cast<int>(k)));
      sk /= Rational(dpow);
      total += w.coefficients[k] * ra * sk;
      ra *= r * a;
    }
    out[static_cast<int>(p * den / step_num)] += 2 * total;  // both signs, p even degree
  }
  // constant term: p(0) = 0
  return out;
}

int default_theta_precision(int dim) { return dim <= 16 ? 8 : 3; }

int extremal_check_precision(int dim) { return dim <= 8 ? 8 : dim <= 16 ? 4 : 3; }

ExtremalCheck is_extremal(const Lattice& lattice, int prec, Budget budget) {
  if (parity(lattice) != Parity::Even || determinant(lattice) != 1)
    throw Error(Errc::NotEvenUnimodular, "extremality is defined for even unimodular lattices");
  ExtremalCheck c;
  const int n = lattice.dim();
  c.bound = extremal_min_bound(n);
  c.minimum = minimum(lattice, budget).first;
  c.extremal = c.minimum == c.bound;
  if (c.extremal) {
    c.prec_checked = prec < 0 ? extremal_check_precision(n) : prec;
    const QSeries t = theta_series(lattice, c.prec_checked, budget);
    const ExtremalForm f = extremal_form(n / 8, c.prec_checked);
    c.theta_matches = t.coeffs() == f.series.truncated(c.prec_checked).coeffs();
    if (!c.theta_matches) throw Error(Errc::ValidationFailed, "extremal lattice whose theta series differs from the extremal form");
  }
  return c;
}

}  // namespace latd
