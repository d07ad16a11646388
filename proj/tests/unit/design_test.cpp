#include <doctest.h>

#include <functional>

#include "latd/design.hpp"
#include "support.hpp"

using namespace latd;
using latd::testing::gram;
using latd::testing::identity_lattice;

namespace {

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

Lattice a2() { return gram({{2, -1}, {-1, 2}}); }
Lattice d4() { return gram({{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}}); }

// Gamma(k/2) as rational * sqrt(pi)^odd
struct HalfGamma {
  Rational r;
  int sqrt_pi;
};

HalfGamma half_gamma(int k) {
  // Gamma(1/2) = sqrt(pi), Gamma(1) = 1, Gamma(x + 1) = x Gamma(x)
  HalfGamma g{1, k % 2};
  for (int j = (k % 2 == 0) ? 2 : 1; j < k; j += 2) g.r *= Rational(j) / 2;
  return g;
}

// Sphere average of prod x_i^{a_i} over S^{n-1}, peeling one coordinate at a
// time with the beta-function identity.
Rational sphere_average_oracle(std::vector<int> a) {
  const int n = static_cast<int>(a.size());
  for (int v : a)
    if (v % 2) return 0;
  if (n == 1) return 1;
  const int an = a.back();
  a.pop_back();
  int rest = 0;
  for (int v : a) rest += v;
  // E[x_n^an * |x'|^rest] with x_n^2 ~ Beta(1/2, (n-1)/2):
  //   B((an+1)/2, (rest+n-1)/2) / B(1/2, (n-1)/2)
  auto beta = [](int p2, int q2) {  // B(p2/2, q2/2)
    HalfGamma a1 = half_gamma(p2), b1 = half_gamma(q2), c1 = half_gamma(p2 + q2);
    return HalfGamma{a1.r * b1.r / c1.r, a1.sqrt_pi + b1.sqrt_pi - c1.sqrt_pi};
  };
  HalfGamma num = beta(an + 1, rest + n - 1), den = beta(1, n - 1);
  REQUIRE(num.sqrt_pi == den.sqrt_pi);
  return num.r / den.r * sphere_average_oracle(a);
}

void for_each_exponent(int n, int e, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> a(static_cast<size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n - 1) {
      a[i] = left;
      f(a);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      a[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, e);
}

}  // namespace

TEST_CASE("moment constants agree with sphere integration") {
  for (int n = 1; n <= 4; ++n)
    for (int e = 0; e <= 6; e += 2) {
      const ShellSet s = shell(identity_lattice(n), 1);
      for_each_exponent(n, e, [&](const std::vector<int>& a) {
        Rational dfact = 1;
        for (int v : a)
          for (int j = v - 1; j > 0; j -= 2) dfact *= j;
        bool all_even = true;
        for (int v : a) all_even = all_even && v % 2 == 0;
        Rational rising = 1;
        for (int k = 0; k < e / 2; ++k) rising *= n + 2 * k;
        const Rational oracle = sphere_average_oracle(a);
        CHECK(oracle == (all_even ? dfact / rising : Rational(0)));
        if (e > 0) CHECK(monomial_moment(identity_lattice(n), s, a).rhs == Rational(2 * n) * oracle);
      });
    }
}

TEST_CASE("design strength of root-lattice shells") {
  const auto [m, s] = minimum(e8());
  const DesignCertificate c = design_strength(e8(), s, 8);
  CHECK(c.strength == 7);
  CHECK(c.set_size == 240);
  REQUIRE(c.failing_witness.has_value());
  CHECK(c.failing_witness->degree == 8);
  CHECK(c.failing_witness->lhs != c.failing_witness->rhs);
  CHECK(design_strength(e8(), s, 6).strength == 7);
  CHECK(design_strength(e8(), s, 6).capped);

  const ShellSet z2 = shell(identity_lattice(2), 1);
  const DesignCertificate cz = design_strength(identity_lattice(2), z2, 12);
  CHECK(cz.strength == 3);
  REQUIRE(cz.failing_witness.has_value());
  CHECK(cz.failing_witness->exponents == std::vector<int>{4, 0});
  CHECK(cz.failing_witness->lhs == 2);
  CHECK(cz.failing_witness->rhs == Rational(3, 2));

  CHECK(design_strength(a2(), shell(a2(), 2), 12).strength == 5);
  CHECK(design_strength(d4(), shell(d4(), 2), 12).strength == 5);
}

TEST_CASE("pair sums and monomial moments give the same verdicts") {
  const std::vector<Lattice> cases = {a2(), d4(), identity_lattice(3), gram({{2, 1, 0}, {1, 2, 1}, {0, 1, 3}}),
                                      gram({{3, 1, 1}, {1, 3, -1}, {1, -1, 3}}), gram({{4, 1}, {1, 4}})};
  for (const auto& l : cases) {
    for (int norm = 2; norm <= 6; ++norm) {
      const ShellSet s = shell(l, norm);
      if (s.empty()) continue;
      const auto sums = pair_power_sums(l, s, 6);
      const Rational size = static_cast<unsigned long>(s.full_count());
      for (int e = 2; e <= 6; e += 2) {
        const bool pair_ok = sums[e] == size * size * Rational(norm) * Rational(norm) *
                                            (e >= 4 ? Rational(norm * norm) : Rational(1)) *
                                            (e >= 6 ? Rational(norm * norm) : Rational(1)) *
                                            sphere_moment_constant(l.dim(), e);
        bool mono_ok = true;
        for_each_exponent(l.dim(), e, [&](const std::vector<int>& a) {
          const MomentWitness w = monomial_moment(l, s, a);
          mono_ok = mono_ok && w.lhs == w.rhs;
        });
        CHECK(pair_ok == mono_ok);
      }
    }
  }
}

TEST_CASE("serial and parallel pair sums agree") {
  const ShellSet s = shell(e8(), 4);
  CHECK(pair_power_sums(e8(), s, 12, Exec::Serial) == pair_power_sums(e8(), s, 12, Exec::Parallel));
}

TEST_CASE("perfection rank") {
  CHECK(perfection_rank(minimum(e8()).second) == 36);
  CHECK(perfection_rank(shell(identity_lattice(2), 1)) == 2);
  CHECK(perfection_rank(shell(a2(), 2)) == 3);
  // perfect forms recover the Gram matrix scaled by 1/min
  for (const auto& l : {e8(), a2()}) {
    auto f = perfect_form(minimum(l).second);
    REQUIRE(f.has_value());
    RatMatrix g = l.gram();
    for (auto& q : g.data()) q /= 2;
    CHECK(*f == g);
  }
  CHECK_FALSE(perfect_form(shell(identity_lattice(2), 1)).has_value());
}

TEST_CASE("strong eutaxy") {
  const ShellSet s = shell(d4(), 2);
  CHECK(is_strongly_eutactic(d4(), s));
  // sum over Min of (x, alpha)^2 = 12 (alpha, alpha): second moment times G is 12 I
  const RatMatrix mg = multiply(second_moment(s), d4().gram());
  CHECK(mg == [] {
    RatMatrix m = RatMatrix::identity(4);
    for (auto& q : m.data()) q *= 12;
    return m;
  }());
  CHECK(is_strongly_eutactic(identity_lattice(5), shell(identity_lattice(5), 1)));
  const Lattice l = orthogonal_sum(gram({{2}}), gram({{4}}));
  CHECK_FALSE(is_strongly_eutactic(l, minimum(l).second));
  // agrees with 2-design test
  for (const auto& x : {d4(), a2(), e8(), l, gram({{2, 1, 0}, {1, 2, 1}, {0, 1, 3}})}) {
    const ShellSet m = minimum(x).second;
    CHECK(is_strongly_eutactic(x, m) == (design_strength(x, m, 2).strength >= 2));
  }
}

static void check_eutaxy_residual(const Lattice& l, const ShellSet& s, const EutaxyResult& e) {
  REQUIRE(e.weights.size() == s.size());
  const int n = l.dim();
  RatMatrix sum(n, n);
  for (size_t p = 0; p < s.size(); ++p) {
    const auto v = s.vector(p);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) sum(i, j) += e.weights[p] * static_cast<long>(v[i] * v[j]);
  }
  CHECK(sum == *inverse(l.gram()));
}

TEST_CASE("eutaxy") {
  const EutaxyResult e = is_eutactic(e8(), minimum(e8()).second);
  CHECK(e.eutactic);
  for (const auto& w : e.weights) CHECK(w == e.weights.front());
  check_eutaxy_residual(e8(), minimum(e8()).second, e);

  const EutaxyResult z = is_eutactic(identity_lattice(2), shell(identity_lattice(2), 1));
  CHECK(z.eutactic);
  CHECK(z.weights == std::vector<Rational>{1, 1});

  const Lattice deg = orthogonal_sum(gram({{2}}), gram({{6}}));
  const EutaxyResult d = is_eutactic(deg, minimum(deg).second);
  CHECK_FALSE(d.eutactic);
  REQUIRE(d.degenerate_direction.has_value());
  CHECK((*d.degenerate_direction)[0] == 0);
  CHECK((*d.degenerate_direction)[1] != 0);

  // eutactic but not strongly: needs the simplex
  const Lattice a1a2 = orthogonal_sum(gram({{2}}), a2());
  const ShellSet s = minimum(a1a2).second;
  CHECK_FALSE(is_strongly_eutactic(a1a2, s));
  const EutaxyResult lp = is_eutactic(a1a2, s);
  CHECK(lp.eutactic);
  for (const auto& w : lp.weights) CHECK(w > 0);
  check_eutaxy_residual(a1a2, s, lp);
  for (const Lattice& l : {a2(), d4(), gram({{2, 1, 1}, {1, 2, 1}, {1, 1, 2}})}) {
    const ShellSet m = minimum(l).second;
    const EutaxyResult r = is_eutactic(l, m);
    REQUIRE(r.eutactic);
    check_eutaxy_residual(l, m, r);
  }

  // full rank but not eutactic
  RatMatrix g(2, 2);
  g(0, 0) = 2;
  g(1, 1) = 2;
  g(0, 1) = g(1, 0) = Rational(1, 2);
  const Lattice skew = make_lattice(g);
  const EutaxyResult no = is_eutactic(skew, minimum(skew).second);
  CHECK_FALSE(no.eutactic);
  CHECK_FALSE(no.degenerate_direction.has_value());
}

TEST_CASE("optimality report") {
  const OptimalityReport r = is_strongly_perfect(e8());
  CHECK(r.strongly_perfect);
  CHECK(r.perfect);
  CHECK(r.extreme_certified);
  const OptimalityReport z = is_strongly_perfect(identity_lattice(2));
  CHECK_FALSE(z.strongly_perfect);
  CHECK_FALSE(z.perfect);
  CHECK(z.eutactic);
  CHECK(z.strongly_eutactic);
  CHECK_FALSE(z.extreme_certified);
}

TEST_CASE("Venkov bound") {
  CHECK(venkov_even_unimodular_min(248) == 10);
  CHECK(venkov_even_unimodular_min(24) == 4);
  const VenkovCheck v = venkov_bound_check(e8());
  CHECK(v.lhs == 4);
  CHECK(v.rhs == Rational(10, 3));
  CHECK(v.ok);
}
