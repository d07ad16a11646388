#include "latd/enumerate.hpp"

#include <algorithm>

#include "enum_core.hpp"
#include "latd/kernels.hpp"

namespace latd {
namespace detail {

EnumGeometry::EnumGeometry(const I64Matrix& int_gram, std::int64_t s) : n(int_gram.rows()), scale(s) {
  ReducedGram red = lll_reduce(int_gram);
  gram = std::move(red.gram);
  transform = std::move(red.transform);
  inverse = unimodular_inverse(transform);
  q.assign(static_cast<size_t>(n), 0);
  mu.assign(static_cast<size_t>(n) * n, 0);
  auto MU = [&](int i, int j) -> long double& { return mu[static_cast<size_t>(i) * n + j]; };
  for (int i = 0; i < n; ++i) {
    long double d = static_cast<long double>(gram(i, i));
    for (int k = 0; k < i; ++k) d -= MU(k, i) * MU(k, i) * q[k];
    q[i] = d;
    for (int j = i + 1; j < n; ++j) {
      long double v = static_cast<long double>(gram(i, j));
      for (int k = 0; k < i; ++k) v -= MU(k, i) * MU(k, j) * q[k];
      MU(i, j) = v / d;
    }
  }
}

}  // namespace detail

Enumerator::Enumerator(const Lattice& lattice)
    : geo_(std::make_shared<detail::EnumGeometry>(lattice.int_gram(), lattice.scale())) {}

int Enumerator::dim() const { return geo_->n; }
std::int64_t Enumerator::scale() const { return geo_->scale; }
const I64Matrix& Enumerator::reduced_gram() const { return geo_->gram; }
const I64Matrix& Enumerator::reduced_transform() const { return geo_->transform; }

namespace {

void to_input(const I64Matrix& u, std::span<const std::int64_t> z, std::vector<std::int64_t>& out) {
  const int n = u.rows();
  for (int i = 0; i < n; ++i) {
    std::int64_t s = 0;
    for (int j = 0; j < n; ++j) s += u(i, j) * z[j];
    out[i] = s;
  }
}

}  // namespace

bool Enumerator::for_each_pair(std::int64_t lo, std::int64_t hi, const Visitor& visit, Budget budget) const {
  std::vector<std::int64_t> buf(static_cast<size_t>(geo_->n));
  auto v = [&](std::span<const std::int64_t> z, std::int64_t p) {
    to_input(geo_->transform, z, buf);
    return visit(buf, p);
  };
  detail::Dfs<decltype(v)> dfs(*geo_, {}, 1, lo, hi, true, budget.max_nodes, v);
  return dfs.run_all();
}

std::vector<std::int64_t> Enumerator::collect_pairs(std::int64_t lo, std::int64_t hi, Budget budget) const {
  return latd::collect_pairs(*this, lo, hi, Exec::Parallel, budget);
}

std::vector<std::uint64_t> Enumerator::count_by_norm(std::int64_t hi, Budget budget) const {
  return count_norms(*this, hi, Exec::Parallel, budget);
}

std::vector<std::uint64_t> Enumerator::count_by_norm_serial(std::int64_t hi, Budget budget) const {
  return count_norms(*this, hi, Exec::Serial, budget);
}

bool Enumerator::for_each_in_coset(std::span<const std::int64_t> shift, std::int64_t den, std::int64_t hi_num,
                                   const Visitor& visit, Budget budget) const {
  const int n = geo_->n;
  std::vector<std::int64_t> s(static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s[i] += geo_->inverse(i, j) * shift[j];
  std::vector<std::int64_t> buf(static_cast<size_t>(n));
  auto v = [&](std::span<const std::int64_t> z, std::int64_t p) {
    to_input(geo_->transform, z, buf);
    return visit(buf, p);
  };
  detail::Dfs<decltype(v)> dfs(*geo_, s, den, 0, hi_num, false, budget.max_nodes, v);
  return dfs.run_all();
}

}  // namespace latd
