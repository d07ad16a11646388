#include "latd/neighbors.hpp"

#include <algorithm>
#include <numeric>

#include "latd/enumerate.hpp"
#include "latd/isometry.hpp"
#include "latd/qseries.hpp"

namespace latd {

namespace {

void require_unimodular(const Lattice& l) {
  if (!is_integral(l) || determinant(l) != 1) throw Error(Errc::NotUnimodular, "neighbors need a unimodular lattice");
}

std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

}  // namespace

NeighborResult neighbor(const Lattice& lattice, std::span<const std::int64_t> v_in, bool require_even) {
  require_unimodular(lattice);
  const int n = lattice.dim();
  if (static_cast<int>(v_in.size()) != n) throw Error(Errc::BadNeighborVector, "vector has the wrong length");
  std::vector<std::int64_t> v(v_in.begin(), v_in.end());
  if (std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x % 2 == 0; }))
    throw Error(Errc::BadNeighborVector, "v lies in 2L");
  const I64Matrix& g = lattice.int_gram();
  std::int64_t nv = lattice.int_inner(v, v);
  if (mod(nv, 4) != 0) throw Error(Errc::BadNeighborVector, "(v, v) = " + std::to_string(nv) + " is not 0 mod 4");
  std::vector<std::int64_t> f(static_cast<size_t>(n));
  auto pairing = [&] {
    for (int i = 0; i < n; ++i) {
      std::int64_t s = 0;
      for (int j = 0; j < n; ++j) s += g(i, j) * v[j];
      f[i] = mod(s, 2);
    }
  };
  pairing();
  if (require_even && mod(nv, 8) == 4) {
    // (v + 2 b_j)^2 = v^2 + 4 ((v, b_j) + (b_j, b_j)) mod 8
    int j = 0;
    while (j < n && mod(f[j] + g(j, j), 2) == 0) ++j;
    if (j == n) throw Error(Errc::BadNeighborVector, "v is characteristic mod 2L; no lift of norm 0 mod 8");
    v[j] += 2;
    nv = lattice.int_inner(v, v);
    pairing();
  }
  int k = 0;
  while (f[k] == 0) ++k;
  // 2 * (basis of L_v) and v, in L coordinates
  IntMatrix gens(n + 1, n, Integer(0));
  int r = 0;
  for (int j = 0; j < n; ++j, ++r) {
    if (j == k) {
      gens(r, k) = 4;
      continue;
    }
    gens(r, j) = 2;
    if (f[j]) gens(r, k) += 2;
  }
  for (int j = 0; j < n; ++j) gens(n, j) = v[j];
  IntMatrix b = hermite_basis(gens);
  RatMatrix gram(n, n, Rational(0));
  std::vector<Integer> row(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < n; ++c) {
      Integer s = 0;
      for (int t = 0; t < n; ++t) s += b(i, t) * g(t, c);
      row[c] = s;
    }
    for (int j = 0; j <= i; ++j) {
      Integer s = 0;
      for (int c = 0; c < n; ++c) s += row[c] * b(j, c);
      gram(i, j) = gram(j, i) = Rational(s, 4 * lattice.scale());
      gram(i, j).canonicalize();
      gram(j, i) = gram(i, j);
    }
  }
  Lattice m = make_lattice(gram, lattice.label() + "^(v)");
  if (determinant(m) != 1) throw Error(Errc::ValidationFailed, "neighbor is not unimodular");
  return {m, std::move(b), std::move(v)};
}

bool same_sublattice(const IntMatrix& a, const IntMatrix& b) { return hermite_basis(a) == hermite_basis(b); }

namespace {

using Bits = std::vector<std::uint64_t>;

struct CliqueSearch {
  const std::vector<Bits>& adj;
  std::uint64_t budget, nodes = 0;
  std::vector<size_t> current, best;
  size_t words;
  size_t target;  // stop once a set of this size is found; 0 searches exhaustively

  bool done() const { return target != 0 && best.size() >= target; }

  // greedy colouring bound
  void colour(const std::vector<size_t>& verts, std::vector<size_t>& order, std::vector<int>& bound) {
    order.clear();
    bound.clear();
    std::vector<size_t> rest = verts;
    int c = 0;
    while (!rest.empty()) {
      ++c;
      std::vector<size_t> cls, next;
      for (size_t v : rest) {
        bool ok = true;
        for (size_t u : cls)
          if (adj[u][v / 64] >> (v % 64) & 1) {
            ok = false;
            break;
          }
        (ok ? cls : next).push_back(v);
      }
      for (size_t v : cls) {
        order.push_back(v);
        bound.push_back(c);
      }
      rest.swap(next);
    }
  }

  void expand(const std::vector<size_t>& verts) {
    if (++nodes > budget) throw_resource_limit("orthogonal root search", budget);
    std::vector<size_t> order;
    std::vector<int> bound;
    colour(verts, order, bound);
    for (size_t i = order.size(); i-- > 0;) {
      if (done() || current.size() + static_cast<size_t>(bound[i]) <= best.size()) return;
      const size_t v = order[i];
      current.push_back(v);
      std::vector<size_t> next;
      for (size_t j = 0; j < i; ++j)
        if (adj[v][order[j] / 64] >> (order[j] % 64) & 1) next.push_back(order[j]);
      if (next.empty()) {
        if (current.size() > best.size()) best = current;
      } else {
        expand(next);
      }
      current.pop_back();
    }
  }
};

}  // namespace

std::vector<size_t> orthogonal_root_search(const Lattice& lattice, const ShellSet& roots,
                                           const std::vector<size_t>& candidates, size_t target, Budget budget) {
  const size_t m = candidates.size();
  if (m == 0) return {};
  const size_t words = (m + 63) / 64;
  std::vector<Bits> adj(m, Bits(words, 0));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j)
      if (lattice.int_inner(roots.vector(candidates[i]), roots.vector(candidates[j])) == 0) {
        adj[i][j / 64] |= std::uint64_t{1} << (j % 64);
        adj[j][i / 64] |= std::uint64_t{1} << (i % 64);
      }
  std::vector<size_t> verts(m);
  std::iota(verts.begin(), verts.end(), 0);
  std::vector<size_t> degree(m, 0);
  for (size_t v = 0; v < m; ++v)
    for (size_t w = 0; w < words; ++w) degree[v] += static_cast<size_t>(__builtin_popcountll(adj[v][w]));
  // low degree first in the colouring order, so high degree vertices branch first
  std::stable_sort(verts.begin(), verts.end(), [&](size_t a, size_t b) { return degree[a] < degree[b]; });
  CliqueSearch cs{adj, budget.max_nodes, 0, {}, {}, words, target};
  cs.expand(verts);
  std::vector<size_t> out;
  for (size_t v : cs.best) out.push_back(candidates[v]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<size_t> max_orthogonal_roots(const Lattice& lattice, const RootDecomposition& roots, Budget budget) {
  std::vector<size_t> out;
  for (const auto& comp : roots.components) {
    const auto target = static_cast<size_t>(max_orthogonal_roots_of_type(comp.type));
    const auto part = orthogonal_root_search(lattice, roots.roots, comp.members, target, budget);
    if (part.size() != target)
      throw Error(Errc::ValidationFailed, "orthogonal root search in " + comp.type + " fell short of the table value");
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

int defect(const Lattice& lattice, Budget budget) {
  if (!is_integral(lattice)) throw Error(Errc::NotIntegral, "defect is defined for integral lattices");
  const RootDecomposition r = root_decomposition(lattice, budget);
  return lattice.dim() - static_cast<int>(max_orthogonal_roots(lattice, r, budget).size());
}

KochVenkovTally koch_venkov_g(const Lattice& lattice, std::uint64_t max_pairs, Budget budget) {
  if (parity(lattice) != Parity::Even || determinant(lattice) != 1)
    throw Error(Errc::NotEvenUnimodular, "Koch-Venkov tallies need an even unimodular lattice");
  if (!shell(lattice, Rational(2), budget).empty())
    throw Error(Errc::InvalidArgument, "Koch-Venkov tallies need a lattice without roots");
  const int n = lattice.dim();
  KochVenkovTally t;
  Enumerator e(lattice);
  std::uint64_t pairs = 0;
  const bool finished = e.for_each_pair(8, 8, [&](std::span<const std::int64_t> v, std::int64_t) {
    if (pairs == max_pairs) return false;
    ++pairs;
    const NeighborResult m = neighbor(lattice, v);
    const int s = n - defect(m.lattice, budget);
    t.f[s] += 2;
    return true;
  }, budget);
  t.vectors_seen = 2 * pairs;
  t.complete = finished;
  for (const auto& [i, c] : t.f)
    t.g[i] = i == 0 ? Rational(0) : Rational(Integer(static_cast<unsigned long>(c)), Integer(2 * i));
  for (auto& [i, q] : t.g) q.canonicalize();
  return t;
}

namespace {

struct Key {
  std::string roots;
  std::uint64_t root_count;
  bool operator==(const Key&) const = default;
};

struct Candidate {
  Lattice lattice;
  Key key;
};

Key genus_key(const Lattice& l, Budget budget) {
  const RootDecomposition r = root_decomposition(l, budget);
  return {root_signature(r), r.roots.full_count()};
}

}  // namespace

GenusReport genus_explore(const Lattice& seed, const GenusOptions& opt) {
  if (parity(seed) != Parity::Even || determinant(seed) != 1)
    throw Error(Errc::NotEvenUnimodular, "genus exploration starts from an even unimodular lattice");
  const int n = seed.dim();
  if (n > 62) throw Error(Errc::BadDimension, "dimension too large for neighbor enumeration");
  GenusReport rep;
  std::vector<Key> keys;
  std::vector<std::vector<int>> verified;  // isometry checks spent per (i, j)
  auto add_class = [&](const Lattice& l, const Key& k) {
    const int idx = static_cast<int>(rep.classes.size());
    rep.classes.push_back({l.with_label("class" + std::to_string(idx)), Integer(0), k.roots});
    keys.push_back(k);
    rep.explored.push_back(false);
    return idx;
  };
  add_class(seed, genus_key(seed, opt.budget));
  bool stopped = false;
  for (size_t ci = 0; ci < rep.classes.size() && !stopped; ++ci) {
    const Lattice l = rep.classes[ci].lattice;
    const I64Matrix& g = l.int_gram();
    std::vector<std::uint64_t> row(rep.classes.size(), 0);
    std::vector<int> checks(rep.classes.size(), 0);
    // isotropic classes of L/2L: c in {0,1}^n with (c, c) = 0 mod 4
    const std::uint64_t total = std::uint64_t{1} << n;
    std::vector<std::int64_t> c(static_cast<size_t>(n));
    for (std::uint64_t mask = 1; mask < total; ++mask) {
      std::int64_t q = 0;
      for (int i = 0; i < n; ++i) {
        c[i] = (mask >> i) & 1;
        if (!c[i]) continue;
        q += g(i, i);
        for (int j = 0; j < i; ++j)
          if (c[j]) q += 2 * g(i, j);
      }
      if (mod(q, 4) != 0) continue;
      if (rep.neighbors_built == opt.max_neighbors) {
        stopped = true;
        break;
      }
      ++rep.neighbors_built;
      const NeighborResult nb = neighbor(l, c, true);
      const Key key = genus_key(nb.lattice, opt.budget);
      int match = -1;
      std::vector<int> bucket;
      for (size_t j = 0; j < keys.size(); ++j)
        if (keys[j] == key) bucket.push_back(static_cast<int>(j));
      if (bucket.size() == 1 && checks.size() > static_cast<size_t>(bucket[0]) &&
          checks[bucket[0]] >= opt.verify_isometries) {
        match = bucket[0];  // certified at the end by the mass
      } else {
        for (int j : bucket) {
          if (static_cast<size_t>(j) < checks.size()) ++checks[j];
          if (isometric(nb.lattice, rep.classes[j].lattice, opt.budget)) {
            match = j;
            break;
          }
        }
      }
      if (match < 0) {
        if (static_cast<int>(rep.classes.size()) == opt.max_classes) {
          stopped = true;
          break;
        }
        match = add_class(nb.lattice, key);
        checks.push_back(0);
      }
      if (row.size() <= static_cast<size_t>(match)) row.resize(static_cast<size_t>(match) + 1, 0);
      ++row[match];
    }
    if (!stopped) rep.explored[ci] = true;
    rep.adjacency.push_back(std::move(row));
  }
  for (auto& r : rep.adjacency) r.resize(rep.classes.size(), 0);
  rep.mass_lhs = 0;
  for (auto& cl : rep.classes) {
    cl.aut_order = aut_order(cl.lattice, opt.budget);
    rep.mass_lhs += Rational(1) / Rational(cl.aut_order);
  }
  rep.mass_rhs = n % 8 == 0 ? mass(n) : Rational(0);
  rep.closed = std::all_of(rep.explored.begin(), rep.explored.end(), [](bool b) { return b; });
  rep.complete = rep.closed && rep.mass_lhs == rep.mass_rhs;
  return rep;
}

}  // namespace latd
