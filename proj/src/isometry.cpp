// Isometry testing and automorphism group orders by backtracking over the
// short vectors of a reduced basis (Plesken-Souvignier style).
#include "latd/isometry.hpp"

#include <omp.h>

#include <algorithm>
#include <deque>
#include <numeric>

#include "latd/enumerate.hpp"
#include "latd/kernels.hpp"

namespace latd {
namespace {

// All vectors of norm <= bound (both signs), sorted, with per-vector invariants.
struct VecSet {
  int n = 0;
  std::vector<std::int64_t> x, u, norm;
  std::vector<std::uint64_t> inv;

  size_t size() const { return norm.size(); }
  const std::int64_t* row(size_t i) const { return &x[i * n]; }
  std::int64_t ip(size_t i, size_t j) const {
    const std::int64_t* a = &u[i * n];
    const std::int64_t* b = &x[j * n];
    std::int64_t s = 0;
    for (int k = 0; k < n; ++k) s += a[k] * b[k];
    return s;
  }
  long find(std::span<const std::int64_t> v) const {
    size_t lo = 0, hi = size();
    while (lo < hi) {
      const size_t mid = (lo + hi) / 2;
      const std::int64_t* r = row(mid);
      if (std::lexicographical_compare(r, r + n, v.begin(), v.end()))
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo < size() && std::equal(v.begin(), v.end(), row(lo))) return static_cast<long>(lo);
    return -1;
  }
};

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

VecSet build_vectors(const Lattice& l, std::int64_t bound, Budget budget) {
  VecSet s;
  s.n = l.dim();
  const int n = s.n;
  Enumerator e(l);
  std::vector<std::int64_t> pairs = collect_pairs(e, 1, bound, Exec::Parallel, budget);
  const size_t half = pairs.size() / static_cast<size_t>(n);
  std::vector<std::int64_t> all(pairs);
  all.reserve(2 * pairs.size());
  for (auto v : pairs) all.push_back(-v);
  std::vector<size_t> order(2 * half);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return std::lexicographical_compare(all.begin() + a * n, all.begin() + (a + 1) * n, all.begin() + b * n,
                                        all.begin() + (b + 1) * n);
  });
  s.x.reserve(all.size());
  for (size_t r : order) s.x.insert(s.x.end(), all.begin() + r * n, all.begin() + (r + 1) * n);
  const size_t count = order.size();
  s.u.assign(s.x.size(), 0);
  s.norm.assign(count, 0);
  const auto& g = l.int_gram();
  for (size_t r = 0; r < count; ++r) {
    for (int i = 0; i < n; ++i) {
      std::int64_t acc = 0;
      for (int j = 0; j < n; ++j) acc += g(i, j) * s.x[r * n + j];
      s.u[r * n + i] = acc;
    }
    std::int64_t p = 0;
    for (int i = 0; i < n; ++i) p += s.u[r * n + i] * s.x[r * n + i];
    s.norm[r] = p;
  }
  // Invariant: norm plus the profile of |(x, y)| over the minimal vectors y.
  std::int64_t mn = count ? *std::min_element(s.norm.begin(), s.norm.end()) : 0;
  std::vector<size_t> mins;
  for (size_t r = 0; r < count; ++r)
    if (s.norm[r] == mn) mins.push_back(r);
  s.inv.assign(count, 0);
  const bool profile = static_cast<double>(count) * static_cast<double>(mins.size()) <= 6e8;
#pragma omp parallel for schedule(dynamic, 64)
  for (long r = 0; r < static_cast<long>(count); ++r) {
    std::uint64_t h = mix(0x51ed27, static_cast<std::uint64_t>(s.norm[r]));
    if (profile) {
      std::vector<std::int64_t> vals;
      vals.reserve(mins.size());
      for (size_t m : mins) vals.push_back(std::llabs(s.ip(static_cast<size_t>(r), m)));
      std::sort(vals.begin(), vals.end());
      for (size_t k = 0; k < vals.size();) {
        size_t j = k;
        while (j < vals.size() && vals[j] == vals[k]) ++j;
        h = mix(mix(h, static_cast<std::uint64_t>(vals[k])), j - k);
        k = j;
      }
    }
    s.inv[static_cast<size_t>(r)] = h;
  }
  return s;
}

// Depth-first assignment of images to basis vectors with forward checking.
class Backtrack {
 public:
  Backtrack(const VecSet& v, const I64Matrix& target, std::uint64_t budget, std::uint64_t& nodes)
      : v_(v), g_(target), n_(target.rows()), budget_(budget), nodes_(nodes), img_(n_, -1), assigned_(n_, 0) {}

  void fix(int j, std::int32_t y) {
    img_[j] = y;
    assigned_[j] = 1;
  }

  // lists[j] must already be consistent with every fixed assignment.
  bool run(std::vector<std::vector<std::int32_t>> lists) {
    int remaining = 0;
    for (int j = 0; j < n_; ++j)
      if (!assigned_[j]) ++remaining;
    return step(lists, remaining);
  }

  const std::vector<std::int32_t>& images() const { return img_; }

  std::vector<std::int32_t> filter(const std::vector<std::int32_t>& list, int j) const {
    std::vector<std::int32_t> out;
    out.reserve(list.size());
    for (std::int32_t y : list) {
      bool ok = true;
      for (int k = 0; k < n_ && ok; ++k)
        if (assigned_[k] && v_.ip(static_cast<size_t>(img_[k]), static_cast<size_t>(y)) != g_(k, j)) ok = false;
      if (ok) out.push_back(y);
    }
    return out;
  }

 private:
  bool step(const std::vector<std::vector<std::int32_t>>& lists, int remaining) {
    if (remaining == 0) return true;
    int j = -1;
    for (int k = 0; k < n_; ++k)
      if (!assigned_[k] && (j < 0 || lists[k].size() < lists[j].size())) j = k;
    std::vector<std::vector<std::int32_t>> next(static_cast<size_t>(n_));
    for (std::int32_t y : lists[j]) {
      if (++nodes_ > budget_) throw_resource_limit("isometry backtracking", budget_);
      img_[j] = y;
      assigned_[j] = 1;
      bool dead = false;
      for (int k = 0; k < n_ && !dead; ++k) {
        if (assigned_[k]) continue;
        auto& dst = next[k];
        dst.clear();
        const std::int64_t want = g_(j, k);
        for (std::int32_t z : lists[k])
          if (v_.ip(static_cast<size_t>(y), static_cast<size_t>(z)) == want) dst.push_back(z);
        dead = dst.empty();
      }
      if (!dead && step(next, remaining - 1)) return true;
      assigned_[j] = 0;
    }
    img_[j] = -1;
    return false;
  }

  const VecSet& v_;
  const I64Matrix& g_;
  int n_;
  std::uint64_t budget_;
  std::uint64_t& nodes_;
  std::vector<std::int32_t> img_;
  std::vector<char> assigned_;
};

I64Matrix images_matrix(const VecSet& v, const std::vector<std::int32_t>& img) {
  const int n = v.n;
  I64Matrix w(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) w(i, j) = v.row(static_cast<size_t>(img[j]))[i];
  return w;
}

std::int64_t max_diagonal(const I64Matrix& g) {
  std::int64_t b = 0;
  for (int i = 0; i < g.rows(); ++i) b = std::max(b, g(i, i));
  return b;
}

std::vector<std::vector<std::int32_t>> initial_lists(const VecSet& v, const I64Matrix& target,
                                                     const std::vector<std::uint64_t>& basis_inv) {
  const int n = target.rows();
  std::vector<std::vector<std::int32_t>> lists(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j)
    for (size_t y = 0; y < v.size(); ++y)
      if (v.norm[y] == target(j, j) && v.inv[y] == basis_inv[j]) lists[j].push_back(static_cast<std::int32_t>(y));
  return lists;
}

}  // namespace

Fingerprint fingerprint(const Lattice& lattice, int layers, Budget budget) {
  Fingerprint f;
  f.det = determinant(lattice);
  f.parity = parity(lattice);
  f.scale = lattice.scale();
  Enumerator e(lattice);
  auto counts = count_norms(e, layers, Exec::Parallel, budget);
  f.layer_counts.assign(counts.begin() + 1, counts.end());
  return f;
}

std::optional<I64Matrix> isometric(const Lattice& l, const Lattice& m, Budget budget) {
  if (l.dim() != m.dim() || l.scale() != m.scale()) return std::nullopt;
  if (determinant(l) != determinant(m) || parity(l) != parity(m)) return std::nullopt;
  const int n = l.dim();
  Enumerator el(l);
  const I64Matrix& target = el.reduced_gram();
  const std::int64_t bound = max_diagonal(target);
  VecSet vl = build_vectors(l, bound, budget);
  VecSet vm = build_vectors(m, bound, budget);
  if (vl.size() != vm.size()) return std::nullopt;
  {
    auto a = vl.inv, b = vm.inv;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }
  std::vector<std::uint64_t> basis_inv(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    std::vector<std::int64_t> b(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) b[i] = el.reduced_transform()(i, j);
    const long idx = vl.find(b);
    if (idx < 0) throw Error(Errc::ValidationFailed, "reduced basis vector missing from short vector list");
    basis_inv[j] = vl.inv[static_cast<size_t>(idx)];
  }
  std::uint64_t nodes = 0;
  Backtrack bt(vm, target, budget.max_nodes, nodes);
  if (!bt.run(initial_lists(vm, target, basis_inv))) return std::nullopt;
  const I64Matrix w = images_matrix(vm, bt.images());
  const I64Matrix t = multiply(w, unimodular_inverse(el.reduced_transform()));
  if (multiply(transpose(t), multiply(m.int_gram(), t)) != l.int_gram())
    throw Error(Errc::ValidationFailed, "isometry check failed on the constructed transform");
  return t;
}

AutomorphismGroup automorphism_group(const Lattice& lattice, Budget budget) {
  const int n = lattice.dim();
  Enumerator e(lattice);
  const I64Matrix& target = e.reduced_gram();
  const I64Matrix& basis = e.reduced_transform();
  const I64Matrix basis_inv_matrix = unimodular_inverse(basis);
  VecSet v = build_vectors(lattice, max_diagonal(target), budget);
  const size_t count = v.size();

  std::vector<std::int32_t> bi(static_cast<size_t>(n));
  std::vector<std::uint64_t> basis_inv(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    std::vector<std::int64_t> b(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) b[i] = basis(i, j);
    const long idx = v.find(b);
    if (idx < 0) throw Error(Errc::ValidationFailed, "reduced basis vector missing from short vector list");
    bi[j] = static_cast<std::int32_t>(idx);
    basis_inv[j] = v.inv[static_cast<size_t>(idx)];
  }
  const auto lists0 = initial_lists(v, target, basis_inv);

  AutomorphismGroup group;
  group.order = 1;
  std::vector<std::vector<std::int32_t>> perms;
  std::uint64_t nodes = 0;

  auto orbit_of = [&](std::int32_t start, std::vector<char>& mark, std::vector<std::int32_t>* members) {
    std::deque<std::int32_t> queue{start};
    mark[static_cast<size_t>(start)] = 1;
    if (members) members->push_back(start);
    while (!queue.empty()) {
      const std::int32_t a = queue.front();
      queue.pop_front();
      for (const auto& p : perms) {
        const std::int32_t b = p[static_cast<size_t>(a)];
        if (!mark[static_cast<size_t>(b)]) {
          mark[static_cast<size_t>(b)] = 1;
          if (members) members->push_back(b);
          queue.push_back(b);
        }
      }
    }
  };

  group.orbit_lengths.assign(static_cast<size_t>(n), 0);
  for (int i = n - 1; i >= 0; --i) {
    // Candidates for the image of b_i under automorphisms fixing b_0..b_{i-1}.
    Backtrack probe(v, target, budget.max_nodes, nodes);
    for (int k = 0; k < i; ++k) probe.fix(k, bi[k]);
    const std::vector<std::int32_t> cands = probe.filter(lists0[i], i);

    std::vector<char> in_orbit(count, 0), excluded(count, 0);
    std::vector<std::int32_t> members;
    orbit_of(bi[i], in_orbit, &members);
    for (std::int32_t w : cands) {
      if (in_orbit[static_cast<size_t>(w)] || excluded[static_cast<size_t>(w)]) continue;
      Backtrack bt(v, target, budget.max_nodes, nodes);
      for (int k = 0; k < i; ++k) bt.fix(k, bi[k]);
      bt.fix(i, w);
      std::vector<std::vector<std::int32_t>> lists(static_cast<size_t>(n));
      bool dead = false;
      for (int j = i + 1; j < n && !dead; ++j) {
        lists[j] = bt.filter(lists0[j], j);
        dead = lists[j].empty();
      }
      if (!dead && bt.run(std::move(lists))) {
        const I64Matrix a = multiply(images_matrix(v, bt.images()), basis_inv_matrix);
        std::vector<std::int32_t> perm(count);
        std::vector<std::int64_t> y(static_cast<size_t>(n));
        for (size_t r = 0; r < count; ++r) {
          const std::int64_t* xr = v.row(r);
          for (int p = 0; p < n; ++p) {
            std::int64_t s = 0;
            for (int q = 0; q < n; ++q) s += a(p, q) * xr[q];
            y[p] = s;
          }
          const long idx = v.find(y);
          if (idx < 0) throw Error(Errc::ValidationFailed, "automorphism does not preserve the short vectors");
          perm[r] = static_cast<std::int32_t>(idx);
        }
        perms.push_back(std::move(perm));
        group.generators.push_back(a);
        std::fill(in_orbit.begin(), in_orbit.end(), 0);
        members.clear();
        orbit_of(bi[i], in_orbit, &members);
      } else {
        orbit_of(w, excluded, nullptr);
      }
    }
    group.orbit_lengths[i] = members.size();
    group.order *= static_cast<unsigned long>(members.size());
  }
  return group;
}

Integer aut_order(const Lattice& lattice, Budget budget) { return automorphism_group(lattice, budget).order; }

}  // namespace latd
