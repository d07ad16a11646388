#include <doctest.h>

#include <map>

#include "latd/enumerate.hpp"
#include "latd/kernels.hpp"
#include "latd/lattice.hpp"
#include "support.hpp"

using namespace latd;
using latd::testing::gram;
using latd::testing::identity_lattice;

namespace {

Lattice a2() { return gram({{2, -1}, {-1, 2}}); }

Lattice e8() {
  return gram({{2, -1, 0, 0, 0, 0, 0, 0},
               {-1, 2, -1, 0, 0, 0, 0, 0},
               {0, -1, 2, -1, 0, 0, 0, -1},
               {0, 0, -1, 2, -1, 0, 0, 0},
               {0, 0, 0, -1, 2, -1, 0, 0},
               {0, 0, 0, 0, -1, 2, -1, 0},
               {0, 0, 0, 0, 0, -1, 2, 0},
               {0, 0, -1, 0, 0, 0, 0, 2}});
}

// Brute-force count of lattice vectors by scaled norm inside a coordinate box.
std::map<std::int64_t, std::uint64_t> box_counts(const Lattice& l, int radius, std::int64_t hi) {
  const int n = l.dim();
  std::vector<std::int64_t> x(n, -radius);
  std::map<std::int64_t, std::uint64_t> out;
  while (true) {
    const std::int64_t p = l.int_inner(x, x);
    if (p <= hi) ++out[p];
    int i = 0;
    while (i < n && x[i] == radius) x[i++] = -radius;
    if (i == n) break;
    ++x[i];
  }
  return out;
}

}  // namespace

TEST_CASE("make_lattice validates symmetry and definiteness") {
  CHECK(gram({{2}}).dim() == 1);
  CHECK(determinant(a2()) == 3);
  try {
    gram({{1, 2}, {2, 1}});
    FAIL("expected NotPositiveDefinite");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotPositiveDefinite);
    CHECK(std::string(e.what()).find("minor 2") != std::string::npos);
  }
  CHECK_THROWS_AS(gram({{2, 1}, {0, 2}}), Error);
}

TEST_CASE("determinant, dual and parity") {
  CHECK(determinant(e8()) == 1);
  CHECK(determinant(orthogonal_sum(gram({{2}}), gram({{2}}))) == 4);
  const Lattice d = dual(a2());
  CHECK(determinant(d) == Rational(1, 3));
  CHECK(minimum(d).first == Rational(2, 3));
  CHECK(dual(identity_lattice(3)).gram() == identity_lattice(3).gram());
  CHECK(parity(e8()) == Parity::Even);
  CHECK(parity(identity_lattice(4)) == Parity::Odd);
  CHECK(parity(make_lattice(latd::testing::rat({{1}}) )) == Parity::Odd);
  RatMatrix half(1, 1);
  half(0, 0) = Rational(1, 2);
  CHECK(parity(make_lattice(half)) == Parity::NonIntegral);
}

TEST_CASE("shells and minima") {
  CHECK(shell(e8(), 2).size() == 120);
  CHECK(shell(a2(), 2).size() == 3);
  CHECK(shell(e8(), 3).size() == 0);
  CHECK(shell(e8(), 4).full_count() == 2160);
  auto [m, s] = minimum(identity_lattice(3));
  CHECK(m == 1);
  CHECK(s.size() == 3);
  const Lattice d4 = gram({{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}});
  CHECK(minimum(d4).second.full_count() == 24);
  CHECK(hermite_pow(e8()) == 256);
  CHECK(hermite_pow(identity_lattice(1)) == 1);
  CHECK(hermite_pow(a2()) == Rational(4, 3));
}

TEST_CASE("shell order is canonical and vectors are exact") {
  const ShellSet s = shell(e8(), 2);
  for (size_t i = 0; i < s.size(); ++i) {
    auto v = s.vector(i);
    CHECK(e8().norm(v) == 2);
    size_t k = 0;
    while (v[k] == 0) ++k;
    CHECK(v[k] > 0);
    if (i > 0) {
      auto u = s.vector(i - 1);
      CHECK(std::lexicographical_compare(u.begin(), u.end(), v.begin(), v.end()));
    }
  }
}

TEST_CASE("enumeration agrees with a bounding-box count") {
  const std::vector<Lattice> cases = {a2(), identity_lattice(3), gram({{2, 1, 0}, {1, 3, 1}, {0, 1, 4}}),
                                      gram({{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}}),
                                      gram({{3, 1, 1, 1}, {1, 3, 1, 1}, {1, 1, 3, 1}, {1, 1, 1, 5}})};
  for (const auto& l : cases) {
    const std::int64_t hi = 10;
    Enumerator e(l);
    auto counts = e.count_by_norm(hi);
    auto serial = e.count_by_norm_serial(hi);
    CHECK(counts == serial);
    // a box of radius 6 contains every vector of norm <= 10 for these Grams
    auto box = box_counts(l, 6, hi);
    for (std::int64_t p = 0; p <= hi; ++p) CHECK(counts[static_cast<size_t>(p)] == box[p]);
  }
}

TEST_CASE("parallel and serial kernels agree") {
  Enumerator e(e8());
  CHECK(e.count_by_norm(8) == e.count_by_norm_serial(8));
  CHECK(collect_pairs(e, 1, 6, Exec::Parallel, Budget::standard()) ==
        collect_pairs(e, 1, 6, Exec::Serial, Budget::standard()));
}

TEST_CASE("coset enumeration") {
  // Z + 1/2: z = 2x + 1, norm z^2 / 4
  Enumerator e(identity_lattice(1));
  std::vector<std::int64_t> shift = {1};
  int count = 0;
  e.for_each_in_coset(shift, 2, 1, [&](std::span<const std::int64_t> z, std::int64_t p) {
    CHECK(p == z[0] * z[0]);
    ++count;
    return true;
  });
  CHECK(count == 2);
}

TEST_CASE("budget overrun raises ResourceLimit") {
  try {
    shell(e8(), 8, Budget::nodes(100));
    FAIL("expected ResourceLimit");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ResourceLimit);
  }
}

TEST_CASE("rescale, sums and the even sublattice") {
  const Lattice l = gram({{2, 1, 0}, {1, 3, 1}, {0, 1, 4}});
  const Lattice r = rescale(l, Rational(3, 2));
  CHECK(determinant(r) == determinant(l) * Rational(27, 8));
  CHECK(minimum(r).first == minimum(l).first * Rational(3, 2));
  CHECK(hermite_pow(r) == hermite_pow(l));
  CHECK(minimum(rescale(identity_lattice(2), 3)).first == 3);
  CHECK(determinant(dual(l)) * determinant(l) == 1);

  const Lattice e8e8 = orthogonal_sum(e8(), e8());
  CHECK(e8e8.dim() == 16);
  CHECK(minimum(e8e8).second.full_count() == 480);

  CHECK(even_sublattice(identity_lattice(1)).gram() == latd::testing::rat({{4}}));
  const Lattice d2 = even_sublattice(identity_lattice(2));
  CHECK(determinant(d2) == 4);
  CHECK(parity(d2) == Parity::Even);
  const Lattice odd = gram({{1, 0, 0}, {0, 2, 1}, {0, 1, 3}});
  CHECK(determinant(even_sublattice(odd)) == 4 * determinant(odd));
  try {
    even_sublattice(e8());
    FAIL("expected NotOdd");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotOdd);
  }
}

TEST_CASE("gram text format round trip") {
  const Lattice l = parse_gram("# comment\n2\n 2 -1/2 # tail\n-1/2 3\n");
  CHECK(l.gram()(0, 1) == Rational(-1, 2));
  const Lattice back = parse_gram(format_gram(l));
  CHECK(back.gram() == l.gram());
  CHECK_THROWS_AS(parse_gram("2\n1 0 0\n"), Error);
  CHECK_THROWS_AS(parse_gram("x"), Error);
}
