// Enumeration kernels: a serial reference and an OpenMP version that splits
// the search tree at a fixed prefix depth.
#include <omp.h>

#include <algorithm>
#include <exception>

#include "../enum_core.hpp"
#include "latd/kernels.hpp"
#include "latd/lattice.hpp"

namespace latd {
namespace {

struct Split {
  std::vector<std::int64_t> prefixes;
  int depth = 0;
  std::uint64_t nodes = 0;
};

// Picks the shallowest depth giving enough independent subtrees.
template <class Visitor>
Split split_tree(const detail::EnumGeometry& geo, std::int64_t lo, std::int64_t hi, std::uint64_t budget,
                 Visitor& dummy) {
  Split s;
  const int want = 64 * std::max(1, omp_get_max_threads());
  for (int depth = 1; depth < geo.n; ++depth) {
    detail::Dfs<Visitor> dfs(geo, {}, 1, lo, hi, true, budget, dummy);
    s.prefixes = dfs.prefixes(depth);
    s.depth = depth;
    s.nodes += dfs.nodes();
    if (s.prefixes.size() / static_cast<size_t>(depth) >= static_cast<size_t>(want)) break;
  }
  return s;
}

// Runs body(task_index) for every prefix in parallel; rethrows the first error
// and enforces the global node budget.
template <class Body>
void run_tasks(size_t tasks, std::uint64_t budget, std::uint64_t base_nodes, Body body) {
  std::vector<std::uint64_t> nodes(tasks, 0);
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1)
  for (long t = 0; t < static_cast<long>(tasks); ++t) {
    if (error) continue;
    try {
      nodes[static_cast<size_t>(t)] = body(static_cast<size_t>(t));
    } catch (...) {
#pragma omp critical(latd_task_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  std::uint64_t total = base_nodes;
  for (auto v : nodes) total += v;
  if (total > budget) throw_resource_limit("lattice enumeration", budget);
}

}  // namespace

std::vector<std::uint64_t> count_norms(const Enumerator& e, std::int64_t hi, Exec exec, Budget budget) {
  const auto& geo = e.geometry();
  std::vector<std::uint64_t> out(static_cast<size_t>(std::max<std::int64_t>(hi, 0)) + 1, 0);
  out[0] = 1;
  if (hi <= 0) return out;
  if (exec == Exec::Serial || geo.n < 3) {
    auto v = [&](std::span<const std::int64_t>, std::int64_t p) {
      out[static_cast<size_t>(p)] += 2;
      return true;
    };
    detail::Dfs<decltype(v)> dfs(geo, {}, 1, 1, hi, true, budget.max_nodes, v);
    dfs.run_all();
    return out;
  }
  auto none = [](std::span<const std::int64_t>, std::int64_t) { return true; };
  Split split = split_tree(geo, 1, hi, budget.max_nodes, none);
  const size_t tasks = split.prefixes.size() / static_cast<size_t>(split.depth);
  const int threads = omp_get_max_threads();
  std::vector<std::vector<std::uint64_t>> local(static_cast<size_t>(threads), std::vector<std::uint64_t>(out.size(), 0));
  run_tasks(tasks, budget.max_nodes, split.nodes, [&](size_t t) {
    auto& hist = local[static_cast<size_t>(omp_get_thread_num())];
    auto v = [&](std::span<const std::int64_t>, std::int64_t p) {
      hist[static_cast<size_t>(p)] += 2;
      return true;
    };
    detail::Dfs<decltype(v)> dfs(geo, {}, 1, 1, hi, true, budget.max_nodes, v);
    dfs.run_prefix(std::span<const std::int64_t>(split.prefixes).subspan(t * split.depth, split.depth));
    return dfs.nodes();
  });
  for (const auto& h : local)
    for (size_t i = 0; i < out.size(); ++i) out[i] += h[i];
  return out;
}

std::vector<std::int64_t> collect_pairs(const Enumerator& e, std::int64_t lo, std::int64_t hi, Exec exec,
                                        Budget budget) {
  const auto& geo = e.geometry();
  const int n = geo.n;
  lo = std::max<std::int64_t>(lo, 1);
  std::vector<std::int64_t> out;
  if (hi < lo) return out;
  auto emit = [&](std::vector<std::int64_t>& dst, std::span<const std::int64_t> z) {
    for (int i = 0; i < n; ++i) {
      std::int64_t s = 0;
      for (int j = 0; j < n; ++j) s += geo.transform(i, j) * z[j];
      dst.push_back(s);
    }
  };
  if (exec == Exec::Serial || n < 3) {
    auto v = [&](std::span<const std::int64_t> z, std::int64_t) {
      emit(out, z);
      return true;
    };
    detail::Dfs<decltype(v)> dfs(geo, {}, 1, lo, hi, true, budget.max_nodes, v);
    dfs.run_all();
  } else {
    auto none = [](std::span<const std::int64_t>, std::int64_t) { return true; };
    Split split = split_tree(geo, lo, hi, budget.max_nodes, none);
    const size_t tasks = split.prefixes.size() / static_cast<size_t>(split.depth);
    std::vector<std::vector<std::int64_t>> parts(tasks);
    run_tasks(tasks, budget.max_nodes, split.nodes, [&](size_t t) {
      auto& dst = parts[t];
      auto v = [&](std::span<const std::int64_t> z, std::int64_t) {
        emit(dst, z);
        return true;
      };
      detail::Dfs<decltype(v)> dfs(geo, {}, 1, lo, hi, true, budget.max_nodes, v);
      dfs.run_prefix(std::span<const std::int64_t>(split.prefixes).subspan(t * split.depth, split.depth));
      return dfs.nodes();
    });
    size_t total = 0;
    for (const auto& p : parts) total += p.size();
    out.reserve(total);
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  }
  canonicalize_pairs(out, n);
  return out;
}

}  // namespace latd
