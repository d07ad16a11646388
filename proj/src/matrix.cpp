#include "latd/matrix.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <utility>

#include "latd/errors.hpp"

namespace latd {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(Errc::ParseError, "empty rational");
  size_t slash = s.find('/');
  auto valid_int = [](std::string_view t) {
    if (t.empty()) return false;
    size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto strip_plus = [](std::string t) { return (!t.empty() && t[0] == '+') ? t.substr(1) : t; };
  if (slash == std::string::npos) {
    if (!valid_int(s)) throw Error(Errc::ParseError, "not a rational: '" + s + "'");
    return Rational(Integer(strip_plus(s)));
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw Error(Errc::ParseError, "not a rational: '" + s + "'");
  Integer d(den);
  if (d == 0) throw Error(Errc::ParseError, "zero denominator in '" + s + "'");
  Rational q(Integer(strip_plus(num)), d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

RatMatrix transpose(const RatMatrix& a) {
  RatMatrix t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

RatMatrix multiply(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix c(a.rows(), b.cols(), Rational(0));
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

RatMatrix congruence(const RatMatrix& g, const RatMatrix& b) { return multiply(transpose(b), multiply(g, b)); }

RatMatrix to_rational(const I64Matrix& a) {
  RatMatrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = Rational(static_cast<long>(a(i, j)));
  return r;
}

RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = Rational(a(i, j));
  return r;
}

namespace {

// Gaussian elimination to reduced row echelon form; returns pivot columns.
std::vector<int> rref(RatMatrix& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (m(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Rational inv = 1 / m(r, c);
    for (int j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (int j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Rational determinant(const RatMatrix& a) {
  const int n = a.rows();
  RatMatrix m = a;
  Rational det = 1;
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (m(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) return 0;
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (int i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      const Rational f = m(i, c) / m(c, c);
      for (int j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

std::optional<RatMatrix> inverse(const RatMatrix& a) {
  const int n = a.rows();
  RatMatrix aug(n, 2 * n, Rational(0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) return std::nullopt;
  RatMatrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

int rank(const RatMatrix& a) {
  RatMatrix m = a;
  return static_cast<int>(rref(m).size());
}

RatMatrix nullspace(const RatMatrix& a) {
  RatMatrix m = a;
  auto piv = rref(m);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int c : piv) is_pivot[c] = true;
  const int nfree = a.cols() - static_cast<int>(piv.size());
  RatMatrix basis(nfree, a.cols(), Rational(0));
  int k = 0;
  for (int f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    basis(k, f) = 1;
    for (size_t r = 0; r < piv.size(); ++r) basis(k, piv[r]) = -m(static_cast<int>(r), f);
    ++k;
  }
  return basis;
}

std::optional<std::vector<Rational>> solve(const RatMatrix& a, std::span<const Rational> b) {
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
  std::vector<Rational> x(a.cols(), Rational(0));
  for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(static_cast<int>(r), a.cols());
  return x;
}

int first_nonpositive_minor(const RatMatrix& a) {
  // Leading minors are products of the pivots of unpivoted elimination.
  const int n = a.rows();
  RatMatrix m = a;
  for (int c = 0; c < n; ++c) {
    if (m(c, c) <= 0) return c + 1;
    for (int i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      const Rational f = m(i, c) / m(c, c);
      for (int j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return 0;
}

IntMatrix hermite_basis(const IntMatrix& gens) {
  std::vector<std::vector<Integer>> rows(gens.rows());
  for (int i = 0; i < gens.rows(); ++i) rows[i].assign(gens.row(i).begin(), gens.row(i).end());
  const int ncols = gens.cols();
  auto axpy = [](std::vector<Integer>& dst, const Integer& q, const std::vector<Integer>& src) {
    for (size_t j = 0; j < dst.size(); ++j) dst[j] -= q * src[j];
  };
  size_t r = 0;
  for (int c = 0; c < ncols && r < rows.size(); ++c) {
    for (size_t i = r + 1; i < rows.size(); ++i) {
      while (rows[i][c] != 0) {
        if (rows[r][c] == 0) {
          std::swap(rows[r], rows[i]);
          continue;
        }
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
        axpy(rows[i], q, rows[r]);
        if (rows[i][c] != 0) std::swap(rows[r], rows[i]);
      }
    }
    if (rows[r][c] == 0) {
      // Column empty below r.
      bool found = false;
      for (size_t i = r + 1; i < rows.size(); ++i)
        if (rows[i][c] != 0) found = true;
      if (!found) continue;
    }
    if (rows[r][c] < 0)
      for (auto& x : rows[r]) x = -x;
    for (size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
      if (q != 0) axpy(rows[i], q, rows[r]);
    }
    ++r;
  }
  IntMatrix out(static_cast<int>(r), ncols);
  for (size_t i = 0; i < r; ++i)
    for (int j = 0; j < ncols; ++j) out(static_cast<int>(i), j) = rows[i][j];
  return out;
}

RatMatrix lattice_basis_from_generators(const RatMatrix& gens) {
  Integer den = 1;
  for (const auto& q : gens.data()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  IntMatrix ig(gens.rows(), gens.cols());
  for (int i = 0; i < gens.rows(); ++i)
    for (int j = 0; j < gens.cols(); ++j) {
      Rational v = gens(i, j) * den;
      ig(i, j) = v.get_num();
    }
  IntMatrix h = hermite_basis(ig);
  RatMatrix out(h.rows(), h.cols());
  for (int i = 0; i < h.rows(); ++i)
    for (int j = 0; j < h.cols(); ++j) {
      out(i, j) = Rational(h(i, j), den);
      out(i, j).canonicalize();
    }
  return out;
}

namespace {

std::int64_t narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw Error(Errc::ResourceLimit, "integer overflow in basis reduction");
  return static_cast<std::int64_t>(v);
}

}  // namespace

ReducedGram lll_reduce(const I64Matrix& gram) {
  const int n = gram.rows();
  I64Matrix g = gram;
  I64Matrix u = I64Matrix::identity(n);
  if (n <= 1) return {g, u};

  constexpr long double delta = 0.99L;
  std::vector<long double> r(static_cast<size_t>(n) * n, 0), mu(static_cast<size_t>(n) * n, 0);
  auto R = [&](int i, int j) -> long double& { return r[static_cast<size_t>(i) * n + j]; };
  auto MU = [&](int i, int j) -> long double& { return mu[static_cast<size_t>(i) * n + j]; };

  auto gso_row = [&](int k) {
    for (int j = 0; j < k; ++j) {
      long double s = static_cast<long double>(g(k, j));
      for (int l = 0; l < j; ++l) s -= MU(j, l) * R(k, l);
      R(k, j) = s;
      MU(k, j) = s / R(j, j);
    }
    long double s = static_cast<long double>(g(k, k));
    for (int l = 0; l < k; ++l) s -= MU(k, l) * R(k, l);
    R(k, k) = s;
  };

  auto reduce = [&](int k, int j, std::int64_t q) {
    const __int128 gkk = static_cast<__int128>(g(k, k)) - 2 * static_cast<__int128>(q) * g(k, j) +
                         static_cast<__int128>(q) * q * g(j, j);
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      g(k, i) = narrow(static_cast<__int128>(g(k, i)) - static_cast<__int128>(q) * g(j, i));
      g(i, k) = g(k, i);
    }
    g(k, k) = narrow(gkk);
    for (int i = 0; i < n; ++i) u(i, k) = narrow(static_cast<__int128>(u(i, k)) - static_cast<__int128>(q) * u(i, j));
  };

  auto swap_basis = [&](int a, int b) {
    for (int i = 0; i < n; ++i) std::swap(g(a, i), g(b, i));
    for (int i = 0; i < n; ++i) std::swap(g(i, a), g(i, b));
    for (int i = 0; i < n; ++i) std::swap(u(i, a), u(i, b));
  };

  gso_row(0);
  int k = 1;
  std::uint64_t iterations = 0;
  const std::uint64_t max_iterations = 1'000'000;
  while (k < n) {
    if (++iterations > max_iterations) throw Error(Errc::ResourceLimit, "LLL iteration cap reached");
    gso_row(k);
    for (int pass = 0; pass < 64; ++pass) {
      bool changed = false;
      for (int j = k - 1; j >= 0; --j) {
        if (std::fabs(MU(k, j)) > 0.5L) {
          const auto q = static_cast<std::int64_t>(std::llroundl(MU(k, j)));
          if (q == 0) continue;
          reduce(k, j, q);
          for (int l = 0; l < j; ++l) MU(k, l) -= static_cast<long double>(q) * MU(j, l);
          MU(k, j) -= static_cast<long double>(q);
          changed = true;
        }
      }
      gso_row(k);
      if (!changed) break;
    }
    if (R(k, k) < (delta - MU(k, k - 1) * MU(k, k - 1)) * R(k - 1, k - 1)) {
      swap_basis(k, k - 1);
      k = std::max(1, k - 1);
      gso_row(k - 1);
    } else {
      ++k;
    }
  }
  return {g, u};
}

I64Matrix multiply(const I64Matrix& a, const I64Matrix& b) {
  I64Matrix c(a.rows(), b.cols(), 0);
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (int j = 0; j < b.cols(); ++j)
        c(i, j) = narrow(static_cast<__int128>(c(i, j)) + static_cast<__int128>(a(i, k)) * b(k, j));
    }
  return c;
}

I64Matrix transpose(const I64Matrix& a) {
  I64Matrix t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

I64Matrix unimodular_inverse(const I64Matrix& u) {
  auto inv = inverse(to_rational(u));
  if (!inv) throw Error(Errc::InvalidArgument, "matrix is singular");
  I64Matrix out(u.rows(), u.cols());
  for (int i = 0; i < u.rows(); ++i)
    for (int j = 0; j < u.cols(); ++j) {
      const Rational& q = (*inv)(i, j);
      if (q.get_den() != 1 || !q.get_num().fits_slong_p())
        throw Error(Errc::InvalidArgument, "matrix is not unimodular");
      out(i, j) = q.get_num().get_si();
    }
  return out;
}

}  // namespace latd
