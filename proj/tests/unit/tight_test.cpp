#include <doctest.h>

#include "latd/catalog.hpp"
#include "latd/design.hpp"
#include "latd/tight.hpp"
#include "support.hpp"

using namespace latd;

namespace {

Integer choose(long n, long k) {
  if (k < 0 || n < k) return 0;
  Integer r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Integer harm_dim(long n, long j) { return choose(n + j - 1, j) - choose(n + j - 3, j - 2); }

std::map<int, Rational> measure(const Lattice& l, const ShellSet& s, std::span<const std::int64_t> alpha) {
  std::map<int, Rational> out;
  for (size_t i = 0; i < s.size(); ++i) {
    const std::int64_t ip = l.int_inner(s.vector(i), alpha);
    out[static_cast<int>(ip < 0 ? -ip : ip)] += 1;
  }
  return out;
}

}  // namespace

TEST_CASE("tight bounds") {
  CHECK(tight_bound(8, 7) == 240);
  CHECK(tight_bound(24, 11) == 196560);
  CHECK(tight_bound(3, 5) == 12);
  CHECK(tight_bound(4, 5) == 20);
  // bounds are sums of harmonic space dimensions
  for (long n = 2; n <= 5; ++n)
    for (int t = 1; t <= 5; ++t) {
      const long m = t / 2;
      Integer oracle = 0;
      for (long j = 0; j <= m; ++j)
        if (t % 2 == 0 || (m - j) % 2 == 0) oracle += harm_dim(n, j);
      if (t % 2 == 1) oracle *= 2;
      CHECK(tight_bound(static_cast<int>(n), t) == oracle);
    }
}

TEST_CASE("tightness of minimal vectors") {
  const Lattice e8 = catalog_lattice("e8");
  CHECK(is_tight(e8, minimum(e8).second, 7));
  const Lattice d4 = catalog_lattice("d:4");
  CHECK_FALSE(is_tight(d4, minimum(d4).second, 5));
  const Lattice a2 = catalog_lattice("a:2");
  CHECK(is_tight(a2, minimum(a2).second, 5));  // regular hexagon
  CHECK(tight_bound(2, 5) == 6);
}

TEST_CASE("tight 7-design shell constraints") {
  CHECK(tight7_shell_constraints(2).n == 8);
  CHECK(tight7_shell_constraints(2).x_size == 120);
  CHECK(tight7_shell_constraints(3).n == 23);
  CHECK(tight7_shell_constraints(3).x_size == 2300);
  CHECK(tight7_shell_constraints(4).n == 44);
  CHECK(tight7_shell_constraints(4).x_size == 15180);
  CHECK(tight5_dimension(1) == 7);
  CHECK(tight5_dimension(2) == 23);
  CHECK(tight7_dimension(6) == 104);
  CHECK(tight_design_example(5, 1) == "minimal vectors of E7#");
  CHECK(tight_design_example(7, 6).empty());
}

TEST_CASE("moment system for d = 4") {
  const NkSolution s = solve_nk(4, Rational(4), {0, 1, 2});
  CHECK(s.status == NkStatus::Inconsistent);
  CHECK(s.failing_equation == 3);
  CHECK(s.values.at(0) == 9720);
  CHECK(s.values.at(1) == 5440);
  CHECK(s.values.at(2) == 20);
  CHECK(s.residual == 6720 - 9600);
  const auto rhs = tight7_moments(4, 4);
  CHECK(rhs == std::vector<Rational>{15180, 5520, 5760, 9600});
}

TEST_CASE("free norm elimination") {
  const NkSolution d4 = solve_nk(4, std::nullopt, {0, 1, 2});
  REQUIRE(d4.reduced_poly.has_value());
  CHECK(d4.reduced_poly->to_string() == "5a^2 - 60a + 184");
  CHECK(d4.consistency_poly->to_string() == "5a^3 - 60a^2 + 184a");
  CHECK(*d4.discriminant == -80);
  CHECK(d4.nonzero_rational_roots.empty());
  CHECK(d4.status == NkStatus::Inconsistent);

  const NkSolution d5 = solve_nk(5, std::nullopt, {0, 1, 2});
  CHECK(d5.reduced_poly->to_string() == "5a^2 - 75a + 292");
  CHECK(*d5.discriminant == -215);
  CHECK(d5.nonzero_rational_roots.empty());

  const NkSolution odd = solve_nk(5, std::nullopt, {1, 3, 5});
  CHECK(odd.consistency_poly->to_string() == "5a^3 - 525a^2 + 18907a - 233235");
  CHECK(odd.nonzero_rational_roots.empty());
  CHECK(odd.status == NkStatus::Inconsistent);

  // symbolic elimination against the closed form a (C a^2 - 5 B a + 4 A)
  for (int d = 2; d <= 9; ++d) {
    const Rational dd(d), A = Rational(1, 2) * (3 * dd * dd - 2) * (dd * dd - 1) * dd,
                          B = Rational(3, 2) * (dd * dd - 1) * dd * dd, C = Rational(5, 2) * (dd * dd - 1) * dd;
    Polynomial expect{{0, 4 * A, -5 * B, C}};
    CHECK(solve_nk(d, std::nullopt, {0, 1, 2}).consistency_poly == expect.primitive());
  }
}

TEST_CASE("rational roots and polynomials") {
  const Polynomial p{{-6, 11, -6, 1}};  // (a-1)(a-2)(a-3)
  CHECK(rational_roots(p) == std::vector<Rational>{1, 2, 3});
  const Polynomial q{{0, -1, 0, 4}};  // a(2a-1)(2a+1)
  CHECK(rational_roots(q) == std::vector<Rational>{Rational(-1, 2), 0, Rational(1, 2)});
  CHECK(Polynomial{{Rational(1, 2), Rational(-3, 4)}}.primitive() == Polynomial{{-2, 3}});
  CHECK(Polynomial{{1, 0, -1}}.to_string("x") == "-x^2 + 1");
}

TEST_CASE("moment system on synthetic data") {
  // square in R^2: pairs (1,0), (0,1); alpha = (2,1) gives |(x, alpha)| = 2, 1
  std::vector<Rational> rhs;
  for (int j = 0; j < 4; ++j) rhs.push_back(Rational(1) + (Integer(1) << (2 * j)));
  const NkSolution s = solve_moment_system({1, 2}, rhs);
  CHECK(s.status == NkStatus::Unique);
  CHECK(s.values.at(1) == 1);
  CHECK(s.values.at(2) == 1);
  CHECK(s.nonnegative_integral);
  CHECK(solve_moment_system({0, 1, 2, 3}, {1, 1}).status == NkStatus::Underdetermined);
  CHECK_THROWS_AS(solve_moment_system({1, 1}, {1}), Error);
  CHECK_THROWS_AS(solve_moment_system({}, {1}), Error);
}

TEST_CASE("measured counts satisfy the moment equations") {
  for (const char* name : {"e8", "o23"}) {
    CAPTURE(name);
    const Lattice l = catalog_lattice(name);
    const auto [m, shell] = minimum(l);
    const int d = static_cast<int>(m.get_num().get_si());
    for (size_t i = 0; i < 5; ++i) {
      const auto alpha = shell.vector(i * 7);
      const auto counts = measure(l, shell, alpha);
      for (const auto& r : nk_residuals(d, l.norm(alpha), counts)) CHECK(r == 0);
    }
    const ShellSet other = shell.size() > 0 ? latd::shell(l, m + 1) : shell;
    for (size_t i = 0; i < 3 && i < other.size(); ++i) {
      const auto counts = measure(l, shell, other.vector(i));
      for (const auto& r : nk_residuals(d, l.norm(other.vector(i)), counts)) CHECK(r == 0);
    }
  }
}

TEST_CASE("odd tight 7-design admissibility") {
  std::vector<int> expected;
  for (int d = 3; d <= 99; d += 2) {
    const bool ok = d % 16 == 1 || d % 16 == 15 || d % 32 == 3 || d % 32 == 29;
    CHECK(tight7_odd_admissible(d) == ok);
    if (ok) expected.push_back(d);
  }
  CHECK(expected.front() == 3);
  CHECK_FALSE(tight7_odd_admissible(5));
  CHECK(tight7_odd_admissible(15));
  CHECK(tight7_odd_admissible(29));
  for (long k = 1; k <= 99; k += 2) CHECK(odd_helper_product(k) % odd_helper_modulus() == 0);
  CHECK(odd_helper_product(7) == 46080);
  CHECK(odd_helper_modulus() == 46080);
  CHECK_THROWS_AS(tight7_odd_admissible(4), Error);
}
