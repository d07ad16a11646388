#include <doctest.h>

#include "latd/catalog.hpp"
#include "latd/enumerate.hpp"
#include "latd/isometry.hpp"
#include "latd/neighbors.hpp"
#include "latd/qseries.hpp"
#include "support.hpp"

using namespace latd;

namespace {

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidArgument;
}

// basis2 rows of M expressed in L: x (M coords) -> x^T basis2 / 2
std::vector<std::int64_t> in_parent(const NeighborResult& m, std::span<const std::int64_t> x) {
  std::vector<std::int64_t> out(static_cast<size_t>(m.basis2.cols()), 0);
  for (int i = 0; i < m.basis2.rows(); ++i)
    for (int j = 0; j < m.basis2.cols(); ++j) out[j] += x[i] * m.basis2(i, j).get_si();
  return out;  // twice the vector
}

}  // namespace

TEST_CASE("neighbor of Z^8 is E8") {
  const Lattice z8 = catalog_lattice("zn:8");
  const std::vector<std::int64_t> v(8, 1);
  const NeighborResult m = neighbor(z8, v);
  CHECK(parity(m.lattice) == Parity::Even);
  CHECK(determinant(m.lattice) == 1);
  CHECK(isometric(m.lattice, catalog_lattice("e8")).has_value());
}

TEST_CASE("neighbor preconditions") {
  const Lattice e8 = catalog_lattice("e8");
  const ShellSet s6 = shell(e8, Rational(6));
  REQUIRE_FALSE(s6.empty());
  const auto v6 = s6.vector(0);
  CHECK(code_of([&] { neighbor(e8, v6); }) == Errc::BadNeighborVector);
  std::vector<std::int64_t> twice(8, 0);
  twice[0] = 2;
  CHECK(code_of([&] { neighbor(e8, twice); }) == Errc::BadNeighborVector);
  CHECK(code_of([&] { neighbor(catalog_lattice("a:2"), std::vector<std::int64_t>{1, 0}); }) == Errc::NotUnimodular);
  // characteristic vectors of Z^n have no even lift
  CHECK(code_of([&] { neighbor(catalog_lattice("zn:4"), std::vector<std::int64_t>{1, 1, 1, 1}, true); }) ==
        Errc::BadNeighborVector);
}

TEST_CASE("neighbor involution and invariants") {
  const Lattice e8 = catalog_lattice("e8");
  const ShellSet s4 = shell(e8, Rational(4));
  for (size_t idx : {size_t{0}, size_t{17}, s4.size() - 1}) {
    const auto v = s4.vector(idx);
    const NeighborResult m = neighbor(e8, v, true);
    CHECK(m.lattice.dim() == 8);
    CHECK(determinant(m.lattice) == 1);
    CHECK(parity(m.lattice) == Parity::Even);
    CHECK(e8.int_inner(m.vector, m.vector) % 8 == 0);
    // go back: 2 l0 with (l0, v) odd gives L again
    int k = 0;
    std::vector<std::int64_t> unit(8, 0);
    for (; k < 8; ++k) {
      std::fill(unit.begin(), unit.end(), 0);
      unit[k] = 1;
      if (e8.int_inner(unit, m.vector) % 2 != 0) break;
    }
    REQUIRE(k < 8);
    // coordinates of 2 e_k in M: solve c^T basis2 = 4 e_k
    RatMatrix bt = transpose(to_rational(m.basis2));
    std::vector<Rational> rhs(8, Rational(0));
    rhs[k] = 4;
    const auto c = solve(bt, rhs);
    REQUIRE(c.has_value());
    std::vector<std::int64_t> ci;
    for (const auto& q : *c) {
      REQUIRE(q.get_den() == 1);
      ci.push_back(q.get_num().get_si());
    }
    const NeighborResult back = neighbor(m.lattice, ci);
    // back.basis2 in M coordinates, times M's basis2 gives 4 * basis of L
    IntMatrix comp(8, 8, Integer(0));
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        for (int t = 0; t < 8; ++t) comp(i, j) += back.basis2(i, t) * m.basis2(t, j);
    IntMatrix four(8, 8, Integer(0));
    for (int i = 0; i < 8; ++i) four(i, i) = 4;
    CHECK(same_sublattice(comp, four));
  }
}

TEST_CASE("defects") {
  CHECK(defect(construction_a(golay24())) == 0);
  CHECK(defect(catalog_lattice("e8")) == 0);
  CHECK(defect(leech()) == 24);
  CHECK(defect(orthogonal_sum(leech(), catalog_lattice("a:1"))) == 24);
  CHECK(defect(catalog_lattice("a:7")) == 3);
}

TEST_CASE("orthogonal root maxima agree with exhaustive search") {
  for (const char* name : {"a:1", "a:2", "a:3", "a:4", "a:5", "a:6", "a:7", "d:4", "d:5", "d:6", "d:7", "e6", "e7", "e8"}) {
    CAPTURE(name);
    const Lattice l = catalog_lattice(name);
    const RootDecomposition r = root_decomposition(l);
    const auto full = orthogonal_root_search(l, r.roots, r.components[0].members, 0);
    CHECK(static_cast<int>(full.size()) == max_orthogonal_roots_of_type(r.components[0].type));
    for (size_t i = 0; i < full.size(); ++i)
      for (size_t j = i + 1; j < full.size(); ++j) CHECK(l.int_inner(r.roots.vector(full[i]), r.roots.vector(full[j])) == 0);
  }
}

TEST_CASE("defects of even-dimensional unimodular catalog lattices") {
  for (const char* name : {"e8", "e8+e8", "dplus:16", "golay24", "zn:6", "dplus:12", "ternary_golay12", "zn:2+e8"}) {
    CAPTURE(name);
    const Lattice l = catalog_lattice(name);
    REQUIRE(determinant(l) == 1);
    const int d = defect(l);
    if (d <= 13) CHECK((d == 0 || d == 8 || d == 12));
  }
}

TEST_CASE("Koch-Venkov sample on the Leech lattice") {
  const Lattice l = leech();
  const KochVenkovTally t = koch_venkov_g(l, 3);
  CHECK_FALSE(t.complete);
  CHECK(t.vectors_seen == 6);
  Enumerator e(l);
  int seen = 0;
  e.for_each_pair(8, 8, [&](std::span<const std::int64_t> v, std::int64_t) {
    const NeighborResult m = neighbor(l, v);
    const RootDecomposition r = root_decomposition(m.lattice);
    for (const auto& c : r.components) CHECK(c.type == "A1");
    CHECK(r.components.size() <= 24);
    CHECK(r.components.size() >= 1);
    // the neighbor is recovered from any of its roots
    const auto w2 = in_parent(m, r.roots.vector(0));
    CHECK(same_sublattice(neighbor(l, w2).basis2, m.basis2));
    return ++seen < 2;
  });
  CHECK_THROWS_AS(koch_venkov_g(catalog_lattice("e8"), 1), Error);
}

TEST_CASE("genus of E8") {
  const GenusReport r = genus_explore(catalog_lattice("e8"));
  REQUIRE(r.classes.size() == 1);
  CHECK(r.classes[0].aut_order == 696729600);
  CHECK(r.adjacency[0][0] == 135);
  CHECK(r.mass_lhs == Rational(1, 696729600));
  CHECK(r.mass_lhs == mass(8));
  CHECK(r.complete);
}

TEST_CASE("partial genus exploration") {
  GenusOptions o;
  o.max_neighbors = 20;
  const GenusReport r = genus_explore(catalog_lattice("e8+e8"), o);
  CHECK_FALSE(r.complete);
  CHECK(r.neighbors_built == 20);
  CHECK_THROWS_AS(genus_explore(catalog_lattice("zn:8")), Error);
}
