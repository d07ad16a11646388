#include "latd/lattice.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "latd/enumerate.hpp"
#include "latd/kernels.hpp"

namespace latd {

const char* parity_name(Parity p) {
  switch (p) {
    case Parity::NonIntegral: return "non-integral";
    case Parity::Odd: return "odd";
    case Parity::Even: return "even";
  }
  return "?";
}

Lattice Lattice::from_gram(const RatMatrix& gram, std::string label) {
  const int n = gram.rows();
  if (n != gram.cols()) throw Error(Errc::InvalidArgument, "Gram matrix is not square");
  if (n == 0) throw Error(Errc::BadDimension, "Gram matrix is empty");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (gram(i, j) != gram(j, i))
        throw Error(Errc::NotSymmetric,
                    "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") differs from its transpose");
  if (int k = first_nonpositive_minor(gram))
    throw Error(Errc::NotPositiveDefinite, "leading principal minor " + std::to_string(k) + " is not positive");

  auto d = std::make_shared<Data>();
  d->gram = gram;
  for (auto& q : d->gram.data()) q.canonicalize();
  d->label = std::move(label);
  Integer scale = 1;
  for (const auto& q : d->gram.data()) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), q.get_den_mpz_t());
  if (!scale.fits_slong_p()) throw Error(Errc::ResourceLimit, "Gram denominators exceed 64-bit range");
  d->scale = scale.get_si();
  d->int_gram = I64Matrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rational v = d->gram(i, j) * scale;
      if (!v.get_num().fits_slong_p() || std::abs(v.get_num().get_si()) > (std::int64_t{1} << 40))
        throw Error(Errc::ResourceLimit, "scaled Gram entries exceed the supported integer range");
      d->int_gram(i, j) = v.get_num().get_si();
    }
  return Lattice(std::move(d));
}

Lattice Lattice::with_label(std::string label) const {
  auto d = std::make_shared<Data>(*data_);
  d->label = std::move(label);
  return Lattice(std::move(d));
}

Rational Lattice::inner(std::span<const Rational> a, std::span<const Rational> b) const {
  Rational s = 0;
  const int n = dim();
  for (int i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    Rational row = 0;
    for (int j = 0; j < n; ++j) row += gram()(i, j) * b[j];
    s += a[i] * row;
  }
  return s;
}

Rational Lattice::norm(std::span<const Rational> coords) const { return inner(coords, coords); }

Rational Lattice::norm(std::span<const std::int64_t> coords) const {
  Rational r(int_inner(coords, coords), scale());
  r.canonicalize();
  return r;
}

std::int64_t Lattice::int_inner(std::span<const std::int64_t> a, std::span<const std::int64_t> b) const {
  const auto& g = int_gram();
  const int n = dim();
  std::int64_t s = 0;
  for (int i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    std::int64_t row = 0;
    for (int j = 0; j < n; ++j) row += g(i, j) * b[j];
    s += a[i] * row;
  }
  return s;
}

Lattice make_lattice(const RatMatrix& gram, std::string label) { return Lattice::from_gram(gram, std::move(label)); }

Rational determinant(const Lattice& lattice) { return determinant(lattice.gram()); }

Lattice dual(const Lattice& lattice) {
  auto inv = inverse(lattice.gram());
  std::string label = lattice.label().empty() ? std::string() : lattice.label() + "#";
  return Lattice::from_gram(*inv, std::move(label));
}

Parity parity(const Lattice& lattice) {
  if (lattice.scale() != 1) return Parity::NonIntegral;
  for (int i = 0; i < lattice.dim(); ++i)
    if (lattice.int_gram()(i, i) % 2 != 0) return Parity::Odd;
  return Parity::Even;
}

bool is_integral(const Lattice& lattice) { return lattice.scale() == 1; }

bool is_unimodular(const Lattice& lattice) { return is_integral(lattice) && determinant(lattice) == 1; }

Lattice rescale(const Lattice& lattice, const Rational& c) {
  if (c <= 0) throw Error(Errc::InvalidArgument, "rescale factor must be positive");
  RatMatrix g = lattice.gram();
  for (auto& q : g.data()) q *= c;
  return Lattice::from_gram(g, lattice.label());
}

Lattice orthogonal_sum(const Lattice& a, const Lattice& b) {
  const int n = a.dim(), m = b.dim();
  RatMatrix g(n + m, n + m, Rational(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = a.gram()(i, j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) g(n + i, n + j) = b.gram()(i, j);
  std::string label;
  if (!a.label().empty() && !b.label().empty()) label = a.label() + "+" + b.label();
  return Lattice::from_gram(g, std::move(label));
}

Sublattice even_sublattice_with_basis(const Lattice& lattice) {
  if (parity(lattice) != Parity::Odd) throw Error(Errc::NotOdd, "even sublattice requires an odd integral lattice");
  const int n = lattice.dim();
  int k = -1;
  for (int i = 0; i < n && k < 0; ++i)
    if (lattice.int_gram()(i, i) % 2 != 0) k = i;
  I64Matrix basis(n, n, 0);
  for (int j = 0; j < n; ++j) {
    if (j == k) {
      basis(k, j) = 2;
    } else {
      basis(j, j) = 1;
      if (lattice.int_gram()(j, j) % 2 != 0) basis(k, j) = -1;
    }
  }
  RatMatrix g = congruence(lattice.gram(), to_rational(basis));
  std::string label = lattice.label().empty() ? std::string() : lattice.label() + "_0";
  return {Lattice::from_gram(g, std::move(label)), basis};
}

Lattice even_sublattice(const Lattice& lattice) { return even_sublattice_with_basis(lattice).lattice; }

ShellSet shell(const Lattice& lattice, const Rational& m, Budget budget) {
  if (m <= 0) throw Error(Errc::InvalidArgument, "shell norm must be positive");
  ShellSet s;
  s.norm = m;
  s.dim = lattice.dim();
  Rational scaled = m * lattice.scale();
  if (scaled.get_den() != 1) return s;
  if (!scaled.get_num().fits_slong_p()) throw Error(Errc::ResourceLimit, "shell norm out of range");
  const std::int64_t target = scaled.get_num().get_si();
  Enumerator e(lattice);
  s.coords = collect_pairs(e, target, target, Exec::Parallel, budget);
  return s;
}

std::pair<Rational, ShellSet> minimum(const Lattice& lattice, Budget budget) {
  Enumerator e(lattice);
  const auto& rg = e.reduced_gram();
  std::int64_t bound = rg(0, 0);
  for (int i = 1; i < rg.rows(); ++i) bound = std::min(bound, rg(i, i));
  // bound is attained by a basis vector; collect all vectors of norm <= bound
  std::int64_t best = bound;
  e.for_each_pair(1, bound, [&](std::span<const std::int64_t>, std::int64_t p) {
    best = std::min(best, p);
    return true;
  }, budget);
  ShellSet s;
  s.dim = lattice.dim();
  s.norm = Rational(best, lattice.scale());
  s.norm.canonicalize();
  s.coords = collect_pairs(e, best, best, Exec::Parallel, budget);
  return {s.norm, std::move(s)};
}

Rational hermite_pow(const Lattice& lattice, Budget budget) {
  auto [m, s] = minimum(lattice, budget);
  Rational p = 1;
  for (int i = 0; i < lattice.dim(); ++i) p *= m;
  return p / determinant(lattice);
}

Lattice parse_gram(std::string_view text, std::string label) {
  std::string cleaned;
  cleaned.reserve(text.size());
  bool comment = false;
  for (char c : text) {
    if (c == '#') comment = true;
    if (c == '\n') comment = false;
    if (!comment) cleaned.push_back(c);
  }
  std::istringstream in(cleaned);
  std::string tok;
  if (!(in >> tok)) throw Error(Errc::ParseError, "empty Gram file");
  long n = 0;
  try {
    size_t used = 0;
    n = std::stol(tok, &used);
    if (used != tok.size() || n <= 0) throw std::invalid_argument(tok);
  } catch (const std::exception&) {
    throw Error(Errc::ParseError, "first token must be the positive dimension, got '" + tok + "'");
  }
  RatMatrix g(static_cast<int>(n), static_cast<int>(n));
  for (long k = 0; k < n * n; ++k) {
    if (!(in >> tok))
      throw Error(Errc::ParseError, "expected " + std::to_string(n * n) + " entries, found " + std::to_string(k));
    g.data()[static_cast<size_t>(k)] = parse_rational(tok);
  }
  if (in >> tok) throw Error(Errc::ParseError, "trailing token '" + tok + "' after Gram entries");
  return Lattice::from_gram(g, std::move(label));
}

Lattice read_gram_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::ParseError, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_gram(ss.str(), path);
}

std::string format_gram(const Lattice& lattice) {
  std::ostringstream out;
  if (!lattice.label().empty()) out << "# " << lattice.label() << "\n";
  const int n = lattice.dim();
  out << n << "\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out << (j ? " " : "") << to_string(lattice.gram()(i, j));
    out << "\n";
  }
  return out.str();
}

void canonicalize_pairs(std::vector<std::int64_t>& coords, int dim) {
  if (dim <= 0) return;
  const size_t count = coords.size() / static_cast<size_t>(dim);
  for (size_t r = 0; r < count; ++r) {
    std::int64_t* row = &coords[r * dim];
    int k = 0;
    while (k < dim && row[k] == 0) ++k;
    if (k < dim && row[k] < 0)
      for (int j = 0; j < dim; ++j) row[j] = -row[j];
  }
  std::vector<size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return std::lexicographical_compare(coords.begin() + a * dim, coords.begin() + (a + 1) * dim,
                                        coords.begin() + b * dim, coords.begin() + (b + 1) * dim);
  });
  std::vector<std::int64_t> sorted;
  sorted.reserve(coords.size());
  for (size_t r : order) sorted.insert(sorted.end(), coords.begin() + r * dim, coords.begin() + (r + 1) * dim);
  coords = std::move(sorted);
}

}  // namespace latd
