#include "latd/constructions.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "latd/enumerate.hpp"

namespace latd {

ConstructionA construction_a_with_frame(const LinearCode& code) {
  if (!code.self_dual()) throw Error(Errc::NotSelfDual, "Construction A needs a self-dual code");
  const int n = code.length(), p = code.p();
  IntMatrix gens(code.dim() + n, n, Integer(0));
  for (int i = 0; i < code.dim(); ++i)
    for (int j = 0; j < n; ++j) gens(i, j) = code.generator()[i][j];
  for (int j = 0; j < n; ++j) gens(code.dim() + j, j) = p;
  IntMatrix b = hermite_basis(gens);
  if (b.rows() != n) throw Error(Errc::ValidationFailed, "Construction A basis has the wrong rank");
  RatMatrix gram(n, n, Rational(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      Integer s = 0;
      for (int k = 0; k < n; ++k) s += b(i, k) * b(j, k);
      gram(i, j) = gram(j, i) = Rational(s) / p;
    }
  Lattice l = make_lattice(gram, code.label().empty() ? "L(C)" : "L(" + code.label() + ")");
  if (determinant(l) != 1) throw Error(Errc::ValidationFailed, "Construction A lattice is not unimodular");
  // p e_i = c B, c = p e_i B^{-1}
  const auto inv = inverse(to_rational(b));
  Frame frame(static_cast<size_t>(n), std::vector<std::int64_t>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Rational c = (*inv)(i, j) * p;
      if (c.get_den() != 1 || !c.get_num().fits_slong_p())
        throw Error(Errc::ValidationFailed, "frame vector outside the lattice");
      frame[i][j] = c.get_num().get_si();
    }
  return {l, std::move(b), std::move(frame)};
}

Lattice construction_a(const LinearCode& code) { return construction_a_with_frame(code).lattice; }

LinearCode code_from_frame(const Lattice& lattice, const Frame& frame, int p) {
  const int n = lattice.dim();
  if (!is_integral(lattice) || determinant(lattice) != 1)
    throw Error(Errc::NotUnimodular, "code_from_frame needs a unimodular lattice");
  if (static_cast<int>(frame.size()) != n) throw Error(Errc::NotAFrame, "a frame has exactly dim vectors");
  const I64Matrix& g = lattice.int_gram();
  for (size_t i = 0; i < frame.size(); ++i) {
    if (static_cast<int>(frame[i].size()) != n) throw Error(Errc::NotAFrame, "frame vector has the wrong length");
    for (size_t j = i; j < frame.size(); ++j) {
      const std::int64_t ip = lattice.int_inner(frame[i], frame[j]);
      if (i == j && ip != p) throw Error(Errc::NotAFrame, "frame vector " + std::to_string(i) + " does not have norm p");
      if (i != j && ip != 0) throw Error(Errc::NotAFrame, "frame vectors " + std::to_string(i) + " and " + std::to_string(j) + " are not orthogonal");
    }
  }
  // basis vector b_j has frame coordinates ((b_j, v_i))_i
  std::vector<std::vector<int>> rows(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      std::int64_t s = 0;
      for (int k = 0; k < n; ++k) s += g(j, k) * frame[i][k];
      rows[j][i] = static_cast<int>(((s % p) + p) % p);
    }
  auto red = row_reduce_mod_p(std::move(rows), p);
  LinearCode code(p, std::move(red), "C(" + lattice.label() + ")");
  if (!code.self_dual()) throw Error(Errc::ValidationFailed, "frame code is not self-dual");
  return code;
}

namespace {

using Bits = std::vector<std::uint64_t>;

size_t popcount(const Bits& b) {
  size_t c = 0;
  for (auto w : b) c += static_cast<size_t>(__builtin_popcountll(w));
  return c;
}

struct FrameSearch {
  const std::vector<Bits>& adj;
  size_t need;
  std::uint64_t budget, nodes = 0;
  std::vector<size_t> chosen;

  bool run(const Bits& cand) {
    if (chosen.size() == need) return true;
    if (++nodes > budget) throw_resource_limit("frame search", budget);
    if (chosen.size() + popcount(cand) < need) return false;
    for (size_t w = 0; w < cand.size(); ++w) {
      std::uint64_t word = cand[w];
      while (word) {
        const size_t v = w * 64 + static_cast<size_t>(__builtin_ctzll(word));
        word &= word - 1;
        Bits next(cand.size());
        for (size_t k = 0; k < cand.size(); ++k) next[k] = cand[k] & adj[v][k];
        // only later candidates, so every set is tried once
        for (size_t k = 0; k <= w; ++k) next[k] &= (k < w) ? 0 : ~((std::uint64_t{2} << (v % 64)) - 1);
        chosen.push_back(v);
        if (run(next)) return true;
        chosen.pop_back();
      }
    }
    return false;
  }
};

}  // namespace

std::optional<Frame> find_p_frame(const Lattice& lattice, int p, Budget budget) {
  if (!is_integral(lattice)) throw Error(Errc::NotIntegral, "frames live in integral lattices");
  if (p < 1) throw Error(Errc::InvalidArgument, "frame norm must be positive");
  const int n = lattice.dim();
  const ShellSet s = shell(lattice, Rational(p), budget);
  const size_t m = s.size();
  if (m < static_cast<size_t>(n)) return std::nullopt;
  const size_t words = (m + 63) / 64;
  std::vector<Bits> adj(m, Bits(words, 0));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j)
      if (lattice.int_inner(s.vector(i), s.vector(j)) == 0) {
        adj[i][j / 64] |= std::uint64_t{1} << (j % 64);
        adj[j][i / 64] |= std::uint64_t{1} << (i % 64);
      }
  Bits all(words, 0);
  for (size_t i = 0; i < m; ++i) all[i / 64] |= std::uint64_t{1} << (i % 64);
  FrameSearch fs{adj, static_cast<size_t>(n), budget.max_nodes, 0, {}};
  if (!fs.run(all)) return std::nullopt;
  Frame f;
  for (size_t v : fs.chosen) {
    auto row = s.vector(v);
    f.emplace_back(row.begin(), row.end());
  }
  return f;
}

std::string root_type(int rank, std::uint64_t count) {
  const auto r = static_cast<std::uint64_t>(rank);
  if (rank >= 1 && count == r * (r + 1)) return "A" + std::to_string(rank);
  if (rank >= 4 && count == 2 * r * (r - 1)) return "D" + std::to_string(rank);
  if ((rank == 6 && count == 72) || (rank == 7 && count == 126) || (rank == 8 && count == 240))
    return "E" + std::to_string(rank);
  return {};
}

namespace {

// rank over F_p, p = 2^31 - 1; never exceeds the rational rank
int rank_mod_p(const ShellSet& s, const std::vector<size_t>& rows) {
  constexpr std::int64_t p = 2147483647;
  const int n = s.dim;
  std::vector<std::vector<std::int64_t>> basis;  // echelon rows with pivot columns
  std::vector<int> pivots;
  for (size_t r : rows) {
    std::vector<std::int64_t> x(static_cast<size_t>(n));
    for (int c = 0; c < n; ++c) x[c] = ((s.vector(r)[c] % p) + p) % p;
    for (size_t b = 0; b < basis.size(); ++b) {
      const std::int64_t f = x[pivots[b]];
      if (f == 0) continue;
      for (int c = 0; c < n; ++c) x[c] = ((x[c] - f * basis[b][c]) % p + p) % p;
    }
    int piv = 0;
    while (piv < n && x[piv] == 0) ++piv;
    if (piv == n) continue;
    std::int64_t inv = 1;
    for (std::int64_t e = p - 2, b = x[piv]; e > 0; e >>= 1, b = b * b % p)
      if (e & 1) inv = inv * b % p;
    for (auto& v : x) v = v * inv % p;
    basis.push_back(std::move(x));
    pivots.push_back(piv);
    if (static_cast<int>(basis.size()) == n) break;
  }
  return static_cast<int>(basis.size());
}

}  // namespace

int max_orthogonal_roots_of_type(const std::string& type) {
  if (type.size() < 2) throw Error(Errc::InvalidArgument, "bad root type");
  const int r = std::stoi(type.substr(1));
  switch (type[0]) {
    case 'A': return (r + 1) / 2;
    case 'D': return 2 * (r / 2);
    case 'E': return r == 6 ? 4 : r;
  }
  throw Error(Errc::InvalidArgument, "bad root type " + type);
}

RootDecomposition root_decomposition(const Lattice& lattice, Budget budget) {
  if (!is_integral(lattice)) throw Error(Errc::NotIntegral, "roots are defined for integral lattices");
  const int n = lattice.dim();
  RootDecomposition out;
  out.roots = shell(lattice, Rational(2), budget);
  const size_t m = out.roots.size();
  std::vector<size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j)
      if (lattice.int_inner(out.roots.vector(i), out.roots.vector(j)) != 0) parent[find(i)] = find(j);
  std::map<size_t, std::vector<size_t>> comps;
  for (size_t i = 0; i < m; ++i) comps[find(i)].push_back(i);
  for (const auto& [root, members] : comps) {
    RootComponent comp;
    comp.root_count = 2 * members.size();
    comp.rank = rank_mod_p(out.roots, members);
    comp.type = root_type(comp.rank, comp.root_count);
    if (comp.type.empty()) {
      RatMatrix vecs(static_cast<int>(members.size()), n);
      for (size_t r = 0; r < members.size(); ++r)
        for (int c = 0; c < n; ++c) vecs(static_cast<int>(r), c) = static_cast<long>(out.roots.vector(members[r])[c]);
      comp.rank = rank(vecs);
      comp.type = root_type(comp.rank, comp.root_count);
    }
    if (comp.type.empty())
      throw Error(Errc::ValidationFailed, "root component of rank " + std::to_string(comp.rank) + " with " +
                                              std::to_string(comp.root_count) + " roots is not in the table");
    comp.coxeter_number = static_cast<std::int64_t>(comp.root_count) / comp.rank;
    comp.members = members;
    out.rank += comp.rank;
    out.components.push_back(std::move(comp));
  }
  std::sort(out.components.begin(), out.components.end(), [](const RootComponent& a, const RootComponent& b) {
    if (a.type[0] != b.type[0]) return a.type[0] < b.type[0];
    return a.rank > b.rank;
  });
  out.full_rank = out.rank == n;
  return out;
}

std::string root_signature(const RootDecomposition& r) {
  if (r.components.empty()) return "0";
  std::string out;
  for (size_t i = 0; i < r.components.size();) {
    size_t j = i;
    while (j < r.components.size() && r.components[j].type == r.components[i].type) ++j;
    if (!out.empty()) out += "+";
    if (j - i > 1) out += std::to_string(j - i);
    out += r.components[i].type;
    i = j;
  }
  return out;
}

Shadow shadow(const Lattice& lattice, int prec, Budget budget) {
  if (parity(lattice) != Parity::Odd || determinant(lattice) != 1)
    throw Error(Errc::NotOddUnimodular, "the shadow is defined for odd unimodular lattices");
  if (prec < 0) throw Error(Errc::InvalidArgument, "negative precision");
  const int n = lattice.dim();
  const I64Matrix& g = lattice.int_gram();
  const RatMatrix ginv = *inverse(lattice.gram());
  Shadow out;
  out.characteristic.assign(static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    Rational s = 0;
    for (int j = 0; j < n; ++j) s += ginv(i, j) * static_cast<long>(g(j, j));
    out.characteristic[i] = s.get_num().get_si();
  }
  int odd = 0;
  while (g(odd, odd) % 2 == 0) ++odd;
  for (int c = 0; c < 2; ++c) {
    out.cosets[c].assign(static_cast<size_t>(n), Rational(0));
    for (int i = 0; i < n; ++i) out.cosets[c][i] = Rational(out.characteristic[i]) / 2;
  }
  out.cosets[1][odd] += 1;
  const std::int64_t unorm = lattice.int_inner(out.characteristic, out.characteristic);
  out.report.char_vector_norm_residue = static_cast<int>(((unorm % 8) + 8) % 8);

  // shadow vectors z/2, z = 2x + u, norm (z,z)/4; sigma <= n bounds the search
  const std::int64_t hi = std::max<std::int64_t>(n, 8 * static_cast<std::int64_t>(prec));
  out.theta = QSeries(8 * prec, 8);
  std::int64_t best = -1;
  Enumerator e(lattice);
  e.for_each_in_coset(out.characteristic, 2, hi, [&](std::span<const std::int64_t>, std::int64_t p) {
    if (best < 0 || p < best) best = p;
    if (p <= 8 * prec) out.theta[static_cast<int>(p)] += 1;
    return true;
  }, budget);
  if (best < 0) throw Error(Errc::ValidationFailed, "no shadow vector of norm at most n/4");
  out.report.shadow_min = Rational(best, 4);
  out.report.shadow_min.canonicalize();
  out.report.sigma = 4 * out.report.shadow_min;
  if (out.report.sigma.get_den() != 1 || (out.report.sigma.get_num() - n) % 8 != 0)
    throw Error(Errc::ValidationFailed, "sigma is not congruent to n mod 8");
  out.report.minimum = minimum(lattice, budget).first;
  const Rational lhs = 8 * out.report.minimum + out.report.sigma;
  out.report.s_extremal = lhs == 8 + n;
  if (lhs > 8 + n) {
    if (n == 23 && out.report.minimum == 3)
      out.report.exception_o23 = true;
    else
      throw Error(Errc::ValidationFailed, "8 min + sigma exceeds 8 + n");
  }
  return out;
}

OddMinBounds odd_min_bounds(int n) {
  if (n < 1) throw Error(Errc::BadDimension, "dimension must be positive");
  return {n / 8 + 1, n == 23 ? 3 : 2 + 2 * (n / 24)};
}

}  // namespace latd
