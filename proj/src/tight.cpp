#include "latd/tight.hpp"

#include <algorithm>
#include <set>

#include "latd/design.hpp"

namespace latd {

namespace {

Integer binom(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Polynomial trim(Polynomial p) {
  while (!p.coeffs.empty() && p.coeffs.back() == 0) p.coeffs.pop_back();
  return p;
}

Polynomial add(const Polynomial& a, const Polynomial& b, const Rational& scale_b = 1) {
  Polynomial out;
  out.coeffs.assign(std::max(a.coeffs.size(), b.coeffs.size()), Rational(0));
  for (size_t i = 0; i < a.coeffs.size(); ++i) out.coeffs[i] += a.coeffs[i];
  for (size_t i = 0; i < b.coeffs.size(); ++i) out.coeffs[i] += scale_b * b.coeffs[i];
  return trim(out);
}

Polynomial scaled(const Polynomial& a, const Rational& c) {
  Polynomial out = a;
  for (auto& x : out.coeffs) x *= c;
  return trim(out);
}

// remainder of a by b over Q
Polynomial remainder(Polynomial a, const Polynomial& b) {
  a = trim(a);
  while (a.degree() >= b.degree() && !a.coeffs.empty()) {
    const int shift = a.degree() - b.degree();
    const Rational f = a.coeffs.back() / b.coeffs.back();
    Polynomial s;
    s.coeffs.assign(static_cast<size_t>(shift), Rational(0));
    s.coeffs.insert(s.coeffs.end(), b.coeffs.begin(), b.coeffs.end());
    a = add(a, s, -f);
  }
  return a;
}

Polynomial gcd(Polynomial a, Polynomial b) {
  a = trim(a);
  b = trim(b);
  while (!b.coeffs.empty()) {
    Polynomial r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.coeffs.empty() ? a : a.primitive();
}

std::vector<Integer> divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<std::pair<Integer, int>> factors;
  Integer p = 2;
  std::uint64_t steps = 0;
  while (p * p <= n) {
    if (++steps > 50000000) throw Error(Errc::ResourceLimit, "coefficient too large to factor for the rational root scan");
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) factors.emplace_back(p, e);
    p += p == 2 ? 1 : 2;
  }
  if (n > 1) factors.emplace_back(n, 1);
  std::vector<Integer> out{1};
  for (const auto& [q, e] : factors) {
    const size_t base = out.size();
    Integer pw = 1;
    for (int i = 0; i < e; ++i) {
      pw *= q;
      for (size_t j = 0; j < base; ++j) out.push_back(out[j] * pw);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Elimination {
  int rank = 0;
  std::vector<int> pivot_col;                // per pivot row
  std::vector<std::vector<Rational>> rows;   // RREF coefficient rows
  std::vector<Polynomial> rhs;               // per row
};

Elimination eliminate(const std::vector<int>& k_values, const std::vector<Polynomial>& rhs) {
  const int cols = static_cast<int>(k_values.size());
  Elimination e;
  for (size_t j = 0; j < rhs.size(); ++j) {
    std::vector<Rational> row;
    for (int k : k_values) {
      Integer v;
      mpz_ui_pow_ui(v.get_mpz_t(), static_cast<unsigned long>(k) * k, static_cast<unsigned long>(j));
      row.emplace_back(v);
    }
    e.rows.push_back(std::move(row));
    e.rhs.push_back(rhs[j]);
  }
  int r = 0;
  for (int c = 0; c < cols && r < static_cast<int>(e.rows.size()); ++c) {
    int piv = r;
    while (piv < static_cast<int>(e.rows.size()) && e.rows[piv][c] == 0) ++piv;
    if (piv == static_cast<int>(e.rows.size())) continue;
    std::swap(e.rows[r], e.rows[piv]);
    std::swap(e.rhs[r], e.rhs[piv]);
    const Rational inv = 1 / e.rows[r][c];
    for (auto& x : e.rows[r]) x *= inv;
    e.rhs[r] = scaled(e.rhs[r], inv);
    for (int i = 0; i < static_cast<int>(e.rows.size()); ++i) {
      if (i == r || e.rows[i][c] == 0) continue;
      const Rational f = e.rows[i][c];
      for (int t = 0; t < cols; ++t) e.rows[i][t] -= f * e.rows[r][t];
      e.rhs[i] = add(e.rhs[i], e.rhs[r], -f);
    }
    e.pivot_col.push_back(c);
    ++r;
  }
  e.rank = r;
  return e;
}

void check_k_values(const std::vector<int>& k) {
  if (k.empty()) throw Error(Errc::InvalidArgument, "k_values must be nonempty");
  std::set<int> seen;
  for (int x : k) {
    if (x < 0) throw Error(Errc::InvalidArgument, "k_values are absolute values, so nonnegative");
    if (!seen.insert(x).second) throw Error(Errc::InvalidArgument, "k_values contain a duplicate");
  }
}

Polynomial constant(const Rational& c) { return trim(Polynomial{{c}}); }

// rhs_j = coef_j a^j
std::vector<Rational> moment_coefficients(int d) {
  if (d < 2) throw Error(Errc::InvalidArgument, "tight 7-design norm d must be at least 2");
  const Tight7Shell s = tight7_shell_constraints(d);
  const Rational x(s.x_size);
  const long n = s.n;
  std::vector<Rational> c(4);
  Rational dd = 1, prod = 1;
  long dfact = 1;
  for (int j = 0; j < 4; ++j) {
    // |X| (2j-1)!! d^j / (n (n+2) ... (n+2j-2))
    c[j] = x * dfact * dd / prod;
    dfact *= 2 * j + 1;
    dd *= d;
    prod *= n + 2 * j;
  }
  return c;
}

void fill_unique(NkSolution& s, const Elimination& e) {
  const int cols = static_cast<int>(s.k_values.size());
  for (int r = 0; r < e.rank; ++r) {
    const Rational v = e.rhs[r].coeffs.empty() ? Rational(0) : e.rhs[r].coeffs[0];
    s.values[s.k_values[e.pivot_col[r]]] = v;
  }
  s.nonnegative_integral = static_cast<int>(s.values.size()) == cols;
  for (const auto& [k, v] : s.values) s.nonnegative_integral = s.nonnegative_integral && v >= 0 && v.get_den() == 1;
}

}  // namespace

Integer tight_bound(int n, int t) {
  if (n < 1 || t < 1) throw Error(Errc::InvalidArgument, "tight_bound needs n >= 1 and t >= 1");
  const long m = t / 2;
  if (t % 2 == 1) return 2 * binom(n - 1 + m, m);
  return binom(n - 1 + m, m) + binom(n - 2 + m, m - 1);
}

bool is_tight(const Lattice& lattice, const ShellSet& shell, int t) {
  if (!shell.complete) throw Error(Errc::InvalidArgument, "is_tight needs a complete shell");
  if (Integer(static_cast<unsigned long>(shell.full_count())) != tight_bound(lattice.dim(), t)) return false;
  return design_strength(lattice, shell, std::min(t, 12)).strength >= t;
}

Tight7Shell tight7_shell_constraints(int d) {
  if (d < 2) throw Error(Errc::InvalidArgument, "tight 7-design norm d must be at least 2");
  const long n = 3L * d * d - 4;
  const Integer x = Integer(n) * (n + 1) * (n + 2) / 6;
  const Integer closed = Integer(3L * d * d - 4) * (3L * d * d - 2) * (static_cast<long>(d) * d - 1) / 2;
  if (x != closed) throw Error(Errc::ValidationFailed, "tight 7-design cardinality formulas disagree");
  return {x, static_cast<int>(n)};
}

int Polynomial::degree() const {
  int d = static_cast<int>(coeffs.size()) - 1;
  while (d >= 0 && coeffs[d] == 0) --d;
  return d;
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational r = 0;
  for (size_t i = coeffs.size(); i-- > 0;) r = r * x + coeffs[i];
  return r;
}

Polynomial Polynomial::primitive() const {
  Polynomial p = trim(*this);
  if (p.coeffs.empty()) return p;
  Integer l = 1;
  for (const auto& c : p.coeffs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  Integer g = 0;
  for (auto& c : p.coeffs) {
    c *= l;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
  }
  if (p.coeffs.back() < 0) g = -g;
  for (auto& c : p.coeffs) c /= g;
  return p;
}

std::string Polynomial::to_string(const std::string& var) const {
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs[i];
    if (c == 0) continue;
    const Rational mag = abs(c);
    out += out.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
    if (mag != 1 || i == 0) out += latd::to_string(mag);
    if (i >= 1) out += var;
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

std::vector<Rational> rational_roots(const Polynomial& poly) {
  Polynomial p = poly.primitive();
  if (p.coeffs.empty()) throw Error(Errc::InvalidArgument, "the zero polynomial has every root");
  std::vector<Rational> out;
  size_t low = 0;
  while (p.coeffs[low] == 0) ++low;
  if (low > 0) out.emplace_back(0);
  p.coeffs.erase(p.coeffs.begin(), p.coeffs.begin() + static_cast<long>(low));
  if (p.degree() < 1) return out;
  for (const Integer& num : divisors(p.coeffs.front().get_num()))
    for (const Integer& den : divisors(p.coeffs.back().get_num()))
      for (int sign : {1, -1}) {
        Rational r(num * sign, den);
        r.canonicalize();
        if (p(r) == 0 && std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
      }
  std::sort(out.begin(), out.end());
  return out;
}

const char* nk_status_name(NkStatus s) {
  switch (s) {
    case NkStatus::Unique: return "unique";
    case NkStatus::Inconsistent: return "inconsistent";
    case NkStatus::Underdetermined: return "underdetermined";
  }
  return "?";
}

std::vector<Rational> tight7_moments(int d, const Rational& a) {
  std::vector<Rational> c = moment_coefficients(d);
  Rational p = 1;
  for (auto& x : c) {
    x *= p;
    p *= a;
  }
  return c;
}

NkSolution solve_moment_system(const std::vector<int>& k_values, const std::vector<Rational>& rhs) {
  check_k_values(k_values);
  NkSolution s;
  s.k_values = k_values;
  std::vector<Polynomial> r;
  for (const auto& x : rhs) r.push_back(constant(x));
  const Elimination e = eliminate(k_values, r);
  for (size_t i = static_cast<size_t>(e.rank); i < e.rhs.size(); ++i)
    if (!e.rhs[i].coeffs.empty()) {
      s.status = NkStatus::Inconsistent;
      break;
    }
  if (s.status == NkStatus::Inconsistent) {
    // the first rank equations form an invertible Vandermonde system in k^2
    const Elimination head = eliminate(k_values, std::vector<Polynomial>(r.begin(), r.begin() + e.rank));
    NkSolution tmp;
    tmp.k_values = k_values;
    fill_unique(tmp, head);
    for (size_t j = static_cast<size_t>(e.rank); j < rhs.size(); ++j) {
      Rational lhs = 0;
      for (const auto& [k, v] : tmp.values) {
        Integer pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(k) * k, j);
        lhs += Rational(pw) * v;
      }
      if (lhs != rhs[j]) {
        s.failing_equation = static_cast<int>(j);
        s.residual = lhs - rhs[j];
        s.values = tmp.values;
        break;
      }
    }
    return s;
  }
  if (e.rank < static_cast<int>(k_values.size())) {
    s.status = NkStatus::Underdetermined;
    return s;
  }
  s.status = NkStatus::Unique;
  fill_unique(s, e);
  return s;
}

NkSolution solve_nk(int d, const std::optional<Rational>& a, const std::vector<int>& k_values) {
  check_k_values(k_values);
  if (a) {
    NkSolution s = solve_moment_system(k_values, tight7_moments(d, *a));
    s.d = d;
    s.a = a;
    return s;
  }
  NkSolution s;
  s.d = d;
  s.k_values = k_values;
  const std::vector<Rational> c = moment_coefficients(d);
  std::vector<Polynomial> rhs;
  for (int j = 0; j < 4; ++j) {
    Polynomial p;
    p.coeffs.assign(static_cast<size_t>(j) + 1, Rational(0));
    p.coeffs[j] = c[j];
    rhs.push_back(p);
  }
  const Elimination e = eliminate(k_values, rhs);
  Polynomial cond;
  for (size_t i = static_cast<size_t>(e.rank); i < e.rhs.size(); ++i) cond = gcd(cond, e.rhs[i]);
  if (cond.coeffs.empty()) {
    s.status = NkStatus::Underdetermined;
    return s;
  }
  s.consistency_poly = cond.primitive();
  Polynomial red = *s.consistency_poly;
  size_t low = 0;
  while (red.coeffs[low] == 0) ++low;
  red.coeffs.erase(red.coeffs.begin(), red.coeffs.begin() + static_cast<long>(low));
  s.reduced_poly = red;
  if (red.degree() == 2) s.discriminant = red.coeffs[1] * red.coeffs[1] - 4 * red.coeffs[2] * red.coeffs[0];
  for (const auto& r : rational_roots(*s.consistency_poly))
    if (r != 0) s.nonzero_rational_roots.push_back(r);
  s.status = s.nonzero_rational_roots.empty() ? NkStatus::Inconsistent : NkStatus::Underdetermined;
  return s;
}

std::vector<Rational> nk_residuals(int d, const Rational& a, const std::map<int, Rational>& counts) {
  const std::vector<Rational> rhs = tight7_moments(d, a);
  std::vector<Rational> out;
  for (int j = 0; j < 4; ++j) {
    Rational lhs = 0;
    for (const auto& [k, v] : counts) {
      Integer pw;
      mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(k) * k, static_cast<unsigned long>(j));
      lhs += Rational(pw) * v;
    }
    out.push_back(lhs - rhs[j]);
  }
  return out;
}

int tight5_dimension(int m) {
  if (m < 1) throw Error(Errc::InvalidArgument, "m must be at least 1");
  return (2 * m + 1) * (2 * m + 1) - 2;
}

int tight7_dimension(int d) {
  if (d < 2) throw Error(Errc::InvalidArgument, "d must be at least 2");
  return 3 * d * d - 4;
}

std::string tight_design_example(int t, int param) {
  if (t == 5 && param == 1) return "minimal vectors of E7#";
  if (t == 5 && param == 2) return "minimal vectors of M23#[2]";
  if (t == 7 && param == 2) return "minimal vectors of E8";
  if (t == 7 && param == 3) return "minimal vectors of O23";
  return {};
}

bool tight7_odd_admissible(int d) {
  if (d < 3 || d % 2 == 0) throw Error(Errc::InvalidArgument, "tight7_odd_admissible takes odd d >= 3");
  const int r16 = d % 16, r32 = d % 32;
  return r16 == 1 || r16 == 15 || r32 == 3 || r32 == 29;
}

Integer odd_helper_product(long k) {
  const Integer k2 = Integer(k) * k;
  return (k2 - 1) * (k2 - 9) * (k2 - 25);
}

Integer odd_helper_modulus() { return Integer(1024) * 9 * 5; }

}  // namespace latd
