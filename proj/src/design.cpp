#include "latd/design.hpp"

#include <algorithm>
#include <map>

namespace latd {
namespace {

Integer factorial(int k) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
  return f;
}

Integer multinomial(const std::vector<int>& a) {
  int total = 0;
  for (int v : a) total += v;
  Integer r = factorial(total);
  for (int v : a) r /= factorial(v);
  return r;
}

Rational power(const Rational& q, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= q;
  return r;
}

// Coefficient of y^a in (y^T G y)^k, 2k = |a|, restricted to the support of a.
Rational quadratic_power_coefficient(const RatMatrix& g, const std::vector<int>& a) {
  std::vector<int> support;
  for (int i = 0; i < static_cast<int>(a.size()); ++i)
    if (a[i] > 0) support.push_back(i);
  int total = 0;
  for (int v : a) total += v;
  if (total % 2 != 0) return 0;
  const int k = total / 2;
  const int s = static_cast<int>(support.size());
  struct Term {
    std::vector<int> exp;
    Rational coef;
  };
  std::vector<Term> terms;
  for (int i = 0; i < s; ++i)
    for (int j = i; j < s; ++j) {
      Rational c = g(support[i], support[j]);
      if (i != j) c *= 2;
      if (c == 0) continue;
      std::vector<int> e(static_cast<size_t>(s), 0);
      ++e[i];
      ++e[j];
      terms.push_back({e, c});
    }
  // state: remaining exponents in mixed radix
  std::vector<int> radix(static_cast<size_t>(s));
  size_t states = 1;
  for (int i = 0; i < s; ++i) {
    radix[i] = a[support[i]] + 1;
    states *= static_cast<size_t>(radix[i]);
  }
  auto encode = [&](const std::vector<int>& r) {
    size_t idx = 0;
    for (int i = s - 1; i >= 0; --i) idx = idx * radix[i] + static_cast<size_t>(r[i]);
    return idx;
  };
  auto decode = [&](size_t idx) {
    std::vector<int> r(static_cast<size_t>(s));
    for (int i = 0; i < s; ++i) {
      r[i] = static_cast<int>(idx % radix[i]);
      idx /= radix[i];
    }
    return r;
  };
  // f[state] = sum over choices of prod coef^c / c! consuming exactly `state`.
  std::vector<Rational> f(states, Rational(0));
  f[0] = 1;
  for (const auto& t : terms) {
    std::vector<Rational> g2(states, Rational(0));
    for (size_t idx = 0; idx < states; ++idx) {
      if (f[idx] == 0) continue;
      std::vector<int> r = decode(idx);
      Rational w = f[idx];
      for (int c = 0;; ++c) {
        g2[encode(r)] += w;
        bool fits = true;
        for (int i = 0; i < s; ++i) {
          r[i] += t.exp[i];
          if (r[i] >= radix[i]) fits = false;
        }
        if (!fits) break;
        w *= t.coef;
        w /= c + 1;
      }
    }
    f = std::move(g2);
  }
  std::vector<int> full(static_cast<size_t>(s));
  for (int i = 0; i < s; ++i) full[i] = a[support[i]];
  return f[encode(full)] * factorial(k);
}

Rational design_rhs(const Lattice& lattice, const ShellSet& shell, const std::vector<int>& a) {
  int e = 0;
  for (int v : a) e += v;
  if (e % 2 != 0) return 0;
  const Rational size = static_cast<unsigned long>(shell.full_count());
  return size * power(shell.norm, e / 2) * sphere_moment_constant(lattice.dim(), e) *
         quadratic_power_coefficient(lattice.gram(), a) / Rational(multinomial(a));
}

std::vector<MomentWitness> moment_batch(const Lattice& lattice, const ShellSet& shell,
                                        const std::vector<std::vector<int>>& monomials) {
  const int n = lattice.dim();
  std::vector<int> flat;
  for (const auto& a : monomials) flat.insert(flat.end(), a.begin(), a.end());
  const auto sums = monomial_moments(shell.coords, n, lattice.int_gram(), flat, Exec::Parallel);
  std::vector<MomentWitness> out;
  for (size_t t = 0; t < monomials.size(); ++t) {
    MomentWitness w;
    w.exponents = monomials[t];
    for (int v : w.exponents) w.degree += v;
    Rational lhs = w.degree % 2 == 0 ? Rational(2 * sums[t]) : Rational(0);
    w.lhs = lhs / power(Rational(lattice.scale()), w.degree);
    w.rhs = design_rhs(lattice, shell, w.exponents);
    out.push_back(std::move(w));
  }
  return out;
}

// All ways of writing e as an ordered sum of s positive parts.
std::vector<std::vector<int>> compositions(int e, int s) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int left, int slots) -> void {
    if (slots == 1) {
      cur.push_back(left);
      out.push_back(cur);
      cur.pop_back();
      return;
    }
    for (int v = left - slots + 1; v >= 1; --v) {
      cur.push_back(v);
      self(self, left - v, slots - 1);
      cur.pop_back();
    }
  };
  rec(rec, e, s);
  return out;
}

// Searches monomials of degree e by growing support size for a failing identity.
std::optional<MomentWitness> find_witness(const Lattice& lattice, const ShellSet& shell, int e) {
  const int n = lattice.dim();
  const size_t cap = 200000;
  size_t tested = 0;
  for (int s = 1; s <= std::min(n, e); ++s) {
    // supports in lexicographic order, exponents composing e into s positive parts
    std::vector<int> idx(static_cast<size_t>(s));
    for (int i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      std::vector<std::vector<int>> batch;
      for (const auto& parts : compositions(e, s)) {
        std::vector<int> a(static_cast<size_t>(n), 0);
        for (int i = 0; i < s; ++i) a[idx[i]] = parts[i];
        batch.push_back(std::move(a));
      }
      for (auto& w : moment_batch(lattice, shell, batch))
        if (w.lhs != w.rhs) return w;
      tested += batch.size();
      if (tested > cap) return std::nullopt;
      int i = s - 1;
      while (i >= 0 && idx[i] == n - s + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

constexpr std::uint64_t kPrime = 2147483647ULL;

std::uint64_t mod_p(std::int64_t v) {
  std::int64_t r = v % static_cast<std::int64_t>(kPrime);
  if (r < 0) r += static_cast<std::int64_t>(kPrime);
  return static_cast<std::uint64_t>(r);
}

std::uint64_t inv_mod(std::uint64_t a) {
  std::uint64_t result = 1, base = a, e = kPrime - 2;
  while (e) {
    if (e & 1) result = result * base % kPrime;
    base = base * base % kPrime;
    e >>= 1;
  }
  return result;
}

std::vector<std::int64_t> sym_entries(std::span<const std::int64_t> v) {
  std::vector<std::int64_t> out;
  const size_t n = v.size();
  out.reserve(n * (n + 1) / 2);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) out.push_back(v[i] * v[j]);
  return out;
}

struct RankResult {
  int rank = 0;
  std::vector<size_t> pivots;  // shell indices of independent vectors (mod p)
};

RankResult rank_mod_p(const ShellSet& shell) {
  const int n = shell.dim;
  const size_t dim = static_cast<size_t>(n) * (n + 1) / 2;
  std::map<size_t, std::vector<std::uint64_t>> rows;  // pivot column -> row (pivot normalized to 1)
  RankResult res;
  for (size_t r = 0; r < shell.size() && rows.size() < dim; ++r) {
    auto ent = sym_entries(shell.vector(r));
    std::vector<std::uint64_t> v(dim);
    for (size_t k = 0; k < dim; ++k) v[k] = mod_p(ent[k]);
    for (const auto& [c, row] : rows) {
      if (v[c] == 0) continue;
      const std::uint64_t f = v[c];
      for (size_t k = c; k < dim; ++k) v[k] = (v[k] + (kPrime - f) * row[k]) % kPrime;
    }
    size_t c = 0;
    while (c < dim && v[c] == 0) ++c;
    if (c == dim) continue;
    const std::uint64_t inv = inv_mod(v[c]);
    for (size_t k = c; k < dim; ++k) v[k] = v[k] * inv % kPrime;
    rows.emplace(c, std::move(v));
    res.pivots.push_back(r);
  }
  res.rank = static_cast<int>(rows.size());
  return res;
}

int rank_exact(const ShellSet& shell) {
  const int n = shell.dim;
  const size_t dim = static_cast<size_t>(n) * (n + 1) / 2;
  std::map<size_t, std::vector<Integer>> rows;
  for (size_t r = 0; r < shell.size() && rows.size() < dim; ++r) {
    auto ent = sym_entries(shell.vector(r));
    std::vector<Integer> v(dim);
    for (size_t k = 0; k < dim; ++k) v[k] = static_cast<long>(ent[k]);
    for (const auto& [c, row] : rows) {
      if (v[c] == 0) continue;
      const Integer a = row[c], b = v[c];
      for (size_t k = c; k < dim; ++k) v[k] = a * v[k] - b * row[k];
      Integer g = 0;
      for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
      if (g > 1)
        for (auto& x : v) x /= g;
    }
    size_t c = 0;
    while (c < dim && v[c] == 0) ++c;
    if (c == dim) continue;
    rows.emplace(c, std::move(v));
  }
  return static_cast<int>(rows.size());
}

RatMatrix shell_matrix(const ShellSet& shell) {
  RatMatrix m(static_cast<int>(shell.size()), shell.dim);
  for (size_t r = 0; r < shell.size(); ++r)
    for (int i = 0; i < shell.dim; ++i) m(static_cast<int>(r), i) = static_cast<long>(shell.vector(r)[i]);
  return m;
}

// Exact simplex on a dense tableau, Bland's rule. Maximises the last
// structural variable subject to A x = b, x >= 0.
struct Simplex {
  int rows, cols;  // structural columns
  std::vector<std::vector<Rational>> t;  // rows x (cols + rows + 1), last column rhs
  std::vector<int> basis;
  std::uint64_t budget, pivots = 0;

  void pivot(int r, int c) {
    if (++pivots > budget) throw_resource_limit("eutaxy simplex", budget);
    const Rational p = t[r][c];
    for (auto& x : t[r]) x /= p;
    for (int i = 0; i < static_cast<int>(t.size()); ++i) {
      if (i == r || t[i][c] == 0) continue;
      const Rational f = t[i][c];
      for (size_t j = 0; j < t[i].size(); ++j)
        if (t[r][j] != 0) t[i][j] -= f * t[r][j];
    }
    basis[r] = c;
  }

  // Minimises obj . x over columns allowed[c]; obj row kept as the last tableau row.
  void optimise(const std::vector<char>& allowed) {
    const int width = static_cast<int>(t[0].size()) - 1;
    while (true) {
      auto& z = t.back();
      int enter = -1;
      for (int c = 0; c < width; ++c)
        if (allowed[c] && z[c] < 0) {
          enter = c;
          break;
        }
      if (enter < 0) return;
      int leave = -1;
      Rational best;
      for (int r = 0; r < rows; ++r) {
        if (t[r][enter] <= 0) continue;
        Rational ratio = t[r][width] / t[r][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[r] < basis[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave < 0) throw Error(Errc::ValidationFailed, "unbounded eutaxy program");
      pivot(leave, enter);
    }
  }
};

std::optional<std::vector<Rational>> eutaxy_lp(const ShellSet& shell, const RatMatrix& target, Budget budget) {
  const int n = shell.dim;
  const int pairs = static_cast<int>(shell.size());
  const int rows = n * (n + 1) / 2;
  const int cols = pairs + 1;  // mu_p, delta
  Simplex s;
  s.rows = rows;
  s.cols = cols;
  s.budget = budget.max_nodes;
  s.t.assign(static_cast<size_t>(rows + 1), std::vector<Rational>(static_cast<size_t>(cols + rows + 1), Rational(0)));
  s.basis.assign(static_cast<size_t>(rows), 0);
  const int width = cols + rows;
  for (int p = 0; p < pairs; ++p) {
    auto ent = sym_entries(shell.vector(static_cast<size_t>(p)));
    for (int r = 0; r < rows; ++r) {
      s.t[r][p] = static_cast<long>(ent[r]);
      s.t[r][pairs] += static_cast<long>(ent[r]);
    }
  }
  int r = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j, ++r) s.t[r][width] = target(i, j);
  for (r = 0; r < rows; ++r) {
    if (s.t[r][width] < 0)
      for (auto& x : s.t[r]) x = -x;
    s.t[r][cols + r] = 1;
    s.basis[r] = cols + r;
  }
  // phase 1: minimise the sum of artificials
  auto& z = s.t.back();
  for (r = 0; r < rows; ++r)
    for (int c = 0; c <= width; ++c)
      if (c < cols || c == width) z[c] -= s.t[r][c];
  std::vector<char> allowed(static_cast<size_t>(width), 1);
  s.optimise(allowed);
  if (z[width] != 0) return std::nullopt;
  // drive artificials out of the basis; rows that cannot be are redundant
  for (r = 0; r < rows; ++r) {
    if (s.basis[r] < cols) continue;
    for (int c = 0; c < cols; ++c)
      if (s.t[r][c] != 0) {
        s.pivot(r, c);
        break;
      }
  }
  for (int c = cols; c < width; ++c) allowed[c] = 0;
  // phase 2: maximise delta
  std::fill(z.begin(), z.end(), Rational(0));
  z[pairs] = -1;
  for (r = 0; r < rows; ++r) {
    const int b = s.basis[r];
    if (z[b] == 0) continue;
    const Rational f = z[b];
    for (int c = 0; c <= width; ++c) z[c] -= f * s.t[r][c];
  }
  s.optimise(allowed);
  std::vector<Rational> x(static_cast<size_t>(cols), Rational(0));
  for (r = 0; r < rows; ++r)
    if (s.basis[r] < cols) x[s.basis[r]] = s.t[r][width];
  const Rational delta = x[pairs];
  if (delta <= 0) return std::nullopt;
  std::vector<Rational> w(static_cast<size_t>(pairs));
  for (int p = 0; p < pairs; ++p) w[p] = x[p] + delta;
  return w;
}

}  // namespace

Rational sphere_moment_constant(int n, int e) {
  if (e % 2 != 0) return 0;
  Rational c = 1;
  for (int j = 1; j < e; j += 2) c *= j;
  for (int k = 0; k < e / 2; ++k) c /= n + 2 * k;
  return c;
}

std::vector<Rational> pair_power_sums(const Lattice& lattice, const ShellSet& shell, int t_max, Exec exec) {
  const auto h = pair_histogram(shell.coords, shell.dim, lattice.int_gram(), exec);
  std::vector<Rational> out(static_cast<size_t>(t_max) + 1, Rational(0));
  for (int e = 0; e <= t_max; e += 2) {
    Integer acc = 0, term;
    for (size_t i = 0; i < h.counts.size(); ++i) {
      if (h.counts[i] == 0) continue;
      mpz_set_si(term.get_mpz_t(), static_cast<long>(i) - h.offset);
      mpz_pow_ui(term.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(e));
      term *= static_cast<unsigned long>(h.counts[i]);
      acc += term;
    }
    out[e] = Rational(4 * acc) / power(Rational(lattice.scale()), e);
  }
  return out;
}

MomentWitness monomial_moment(const Lattice& lattice, const ShellSet& shell, const std::vector<int>& exponents) {
  return moment_batch(lattice, shell, {exponents}).front();
}

DesignCertificate design_strength(const Lattice& lattice, const ShellSet& shell, int t_max, Exec exec) {
  if (shell.empty()) throw Error(Errc::InvalidArgument, "design strength of an empty shell");
  if (t_max < 1 || t_max > 12) throw Error(Errc::InvalidArgument, "t_max must lie in 1..12");
  DesignCertificate cert;
  cert.shell_norm = shell.norm;
  cert.set_size = shell.full_count();
  cert.t_max = t_max;
  const int n = lattice.dim();
  const Rational size = static_cast<unsigned long>(cert.set_size);
  const auto sums = pair_power_sums(lattice, shell, t_max, exec);
  int passed = 0;
  for (int e = 2; e <= t_max; e += 2) {
    const Rational want = size * size * power(shell.norm, e) * sphere_moment_constant(n, e);
    if (sums[e] != want) {
      cert.strength = e - 1;
      cert.failing_witness = find_witness(lattice, shell, e);
      if (!cert.failing_witness) throw Error(Errc::ValidationFailed, "no failing monomial found for degree " + std::to_string(e));
      return cert;
    }
    passed = e;
  }
  cert.strength = passed + 1;
  cert.capped = true;
  return cert;
}

int perfection_rank(const ShellSet& shell) {
  const int full = shell.dim * (shell.dim + 1) / 2;
  const RankResult r = rank_mod_p(shell);
  if (r.rank == full) return full;
  return rank_exact(shell);
}

std::optional<RatMatrix> perfect_form(const ShellSet& shell) {
  const int n = shell.dim;
  const int full = n * (n + 1) / 2;
  const RankResult r = rank_mod_p(shell);
  if (r.rank != full) return std::nullopt;
  RatMatrix a(full, full);
  std::vector<Rational> b(static_cast<size_t>(full), Rational(1));
  for (int row = 0; row < full; ++row) {
    auto v = shell.vector(r.pivots[row]);
    int k = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j, ++k) a(row, k) = static_cast<long>((i == j ? 1 : 2) * v[i] * v[j]);
  }
  auto sol = solve(a, b);
  if (!sol) return std::nullopt;
  RatMatrix f(n, n);
  int k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j, ++k) f(i, j) = f(j, i) = (*sol)[k];
  for (size_t s = 0; s < shell.size(); ++s) {
    auto v = shell.vector(s);
    Rational q = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) q += f(i, j) * static_cast<long>(v[i] * v[j]);
    if (q != 1) return std::nullopt;
  }
  return f;
}

RatMatrix second_moment(const ShellSet& shell) {
  const int n = shell.dim;
  std::vector<Integer> acc(static_cast<size_t>(n) * n, 0);
  for (size_t s = 0; s < shell.size(); ++s) {
    auto v = shell.vector(s);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) acc[i * n + j] += static_cast<long>(v[i] * v[j]);
  }
  RatMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Rational(2 * acc[i * n + j]);
  return m;
}

bool is_strongly_eutactic(const Lattice& lattice, const ShellSet& shell) {
  if (shell.empty()) return false;
  const int n = lattice.dim();
  const Rational c = shell.norm * static_cast<unsigned long>(shell.full_count()) / n;
  const RatMatrix mg = multiply(second_moment(shell), lattice.gram());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (mg(i, j) != (i == j ? c : Rational(0))) return false;
  return true;
}

EutaxyResult is_eutactic(const Lattice& lattice, const ShellSet& shell, Budget budget) {
  EutaxyResult res;
  const int n = lattice.dim();
  if (shell.empty() || rank(shell_matrix(shell)) < n) {
    RatMatrix ker = shell.empty() ? RatMatrix::identity(n) : nullspace(shell_matrix(shell));
    // y with x . y = 0 for all x; alpha = G^{-1} y satisfies (alpha, x) = 0
    const RatMatrix ginv = *inverse(lattice.gram());
    std::vector<Rational> alpha(static_cast<size_t>(n), Rational(0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) alpha[i] += ginv(i, j) * ker(0, j);
    res.degenerate_direction = alpha;
    return res;
  }
  const RatMatrix ginv = *inverse(lattice.gram());
  if (is_strongly_eutactic(lattice, shell)) {
    const Rational c = shell.norm * static_cast<unsigned long>(shell.full_count()) / n;
    res.eutactic = true;
    res.weights.assign(shell.size(), Rational(2) / c);
  } else {
    if (shell.size() > 5000) throw Error(Errc::ResourceLimit, "eutaxy program with more than 5000 pairs");
    auto w = eutaxy_lp(shell, ginv, budget);
    if (!w) return res;
    res.eutactic = true;
    res.weights = std::move(*w);
  }
  // residual must vanish exactly
  RatMatrix sum(n, n, Rational(0));
  for (size_t s = 0; s < shell.size(); ++s) {
    auto v = shell.vector(s);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) sum(i, j) += res.weights[s] * static_cast<long>(v[i] * v[j]);
  }
  if (sum != ginv) throw Error(Errc::ValidationFailed, "eutaxy weights leave a nonzero residual");
  return res;
}

OptimalityReport is_strongly_perfect(const Lattice& lattice, Budget budget) {
  OptimalityReport rep;
  auto [m, s] = minimum(lattice, budget);
  const int n = lattice.dim();
  rep.minimum = m;
  rep.kissing_number = s.full_count();
  rep.symmetric_dim = n * (n + 1) / 2;
  rep.perfection_rank = perfection_rank(s);
  rep.perfect = rep.perfection_rank == rep.symmetric_dim;
  rep.design = design_strength(lattice, s, 4);
  rep.strongly_perfect = rep.design.strength >= 4;
  rep.strongly_eutactic = is_strongly_eutactic(lattice, s);
  EutaxyResult eu = is_eutactic(lattice, s, budget);
  rep.eutactic = eu.eutactic;
  rep.eutaxy_weights = std::move(eu.weights);
  rep.degenerate_direction = std::move(eu.degenerate_direction);
  rep.extreme_certified = rep.perfect && rep.eutactic;
  if ((rep.strongly_perfect && !rep.strongly_eutactic) || (rep.strongly_eutactic && !rep.eutactic) ||
      (rep.strongly_perfect && !rep.perfect))
    throw Error(Errc::ValidationFailed, "optimality report violates the certificate hierarchy");
  return rep;
}

VenkovCheck venkov_bound_check(const Lattice& lattice, Budget budget) {
  VenkovCheck v;
  v.lhs = minimum(lattice, budget).first * minimum(dual(lattice), budget).first;
  v.rhs = Rational(lattice.dim() + 2, 3);
  v.rhs.canonicalize();
  v.ok = v.lhs >= v.rhs;
  return v;
}

std::int64_t venkov_even_unimodular_min(int n) {
  const Rational bound(n + 2, 3);
  std::int64_t m = 2;
  while (Rational(m * m) < bound) m += 2;
  return m;
}

}  // namespace latd
