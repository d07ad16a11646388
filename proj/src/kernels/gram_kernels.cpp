// Kernels over a stored vector list: pair inner-product histogram and
// monomial moment sums, serial reference plus OpenMP version.
#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "latd/kernels.hpp"

namespace latd {
namespace {

std::vector<std::int64_t> dual_rows(std::span<const std::int64_t> rows, int dim, const I64Matrix& g) {
  const size_t count = rows.size() / static_cast<size_t>(dim);
  std::vector<std::int64_t> u(rows.size(), 0);
  for (size_t r = 0; r < count; ++r)
    for (int i = 0; i < dim; ++i) {
      std::int64_t s = 0;
      for (int j = 0; j < dim; ++j) s += g(i, j) * rows[r * dim + j];
      u[r * dim + i] = s;
    }
  return u;
}

template <class T>
void histogram_rows(const std::vector<T>& x, const std::vector<T>& u, size_t count, int stride, size_t row,
                    std::int64_t offset, std::vector<std::uint64_t>& hist) {
  const T* ui = &u[row * stride];
  for (size_t j = row; j < count; ++j) {
    const T* xj = &x[j * stride];
    T s = 0;
    for (int k = 0; k < stride; ++k) s += ui[k] * xj[k];
    hist[static_cast<size_t>(static_cast<std::int64_t>(s) + offset)] += (j == row) ? 1 : 2;
  }
}

template <class T>
InnerProductHistogram histogram_impl(std::span<const std::int64_t> rows, int dim, const std::vector<std::int64_t>& u64,
                                     std::int64_t bound, Exec exec) {
  const size_t count = rows.size() / static_cast<size_t>(dim);
  const int stride = (dim + 7) / 8 * 8;
  std::vector<T> x(count * stride, 0), u(count * stride, 0);
  for (size_t r = 0; r < count; ++r)
    for (int i = 0; i < dim; ++i) {
      x[r * stride + i] = static_cast<T>(rows[r * dim + i]);
      u[r * stride + i] = static_cast<T>(u64[r * dim + i]);
    }
  InnerProductHistogram h;
  h.offset = bound;
  h.counts.assign(static_cast<size_t>(2 * bound + 1), 0);
  if (exec == Exec::Serial) {
    for (size_t r = 0; r < count; ++r) histogram_rows(x, u, count, stride, r, bound, h.counts);
    return h;
  }
  const int threads = omp_get_max_threads();
  std::vector<std::vector<std::uint64_t>> local(static_cast<size_t>(threads), h.counts);
#pragma omp parallel for schedule(dynamic, 16)
  for (long r = 0; r < static_cast<long>(count); ++r)
    histogram_rows(x, u, count, stride, static_cast<size_t>(r), bound, local[static_cast<size_t>(omp_get_thread_num())]);
  for (const auto& l : local)
    for (size_t i = 0; i < l.size(); ++i) h.counts[i] += l[i];
  return h;
}

}  // namespace

InnerProductHistogram pair_histogram(std::span<const std::int64_t> rows, int dim, const I64Matrix& gram, Exec exec) {
  const std::vector<std::int64_t> u = dual_rows(rows, dim, gram);
  const size_t count = dim == 0 ? 0 : rows.size() / static_cast<size_t>(dim);
  std::int64_t max_u = 0, max_x = 0, bound = 0;
  for (auto v : u) max_u = std::max<std::int64_t>(max_u, std::llabs(v));
  for (auto v : rows) max_x = std::max<std::int64_t>(max_x, std::llabs(v));
  // |x^T G y| <= max norm by Cauchy-Schwarz
  for (size_t r = 0; r < count; ++r) {
    std::int64_t s = 0;
    for (int i = 0; i < dim; ++i) s += u[r * dim + i] * rows[r * dim + i];
    bound = std::max(bound, s);
  }
  const __int128 partial = static_cast<__int128>(max_u) * max_x * dim;
  if (partial < std::numeric_limits<std::int32_t>::max()) return histogram_impl<std::int32_t>(rows, dim, u, bound, exec);
  return histogram_impl<std::int64_t>(rows, dim, u, bound, exec);
}

std::vector<Integer> monomial_moments(std::span<const std::int64_t> rows, int dim, const I64Matrix& gram,
                                      std::span<const int> exponents, Exec exec) {
  const std::vector<std::int64_t> u = dual_rows(rows, dim, gram);
  const size_t count = rows.size() / static_cast<size_t>(dim);
  const size_t terms = exponents.size() / static_cast<size_t>(dim);
  std::vector<Integer> out(terms, 0);
  auto term = [&](size_t t, size_t r, Integer& acc, Integer& tmp) {
    acc = 1;
    for (int i = 0; i < dim; ++i) {
      const int a = exponents[t * dim + i];
      if (a == 0) continue;
      mpz_set_si(tmp.get_mpz_t(), u[r * dim + i]);
      mpz_pow_ui(tmp.get_mpz_t(), tmp.get_mpz_t(), static_cast<unsigned long>(a));
      acc *= tmp;
    }
  };
  if (exec == Exec::Serial) {
    Integer acc, tmp;
    for (size_t t = 0; t < terms; ++t)
      for (size_t r = 0; r < count; ++r) {
        term(t, r, acc, tmp);
        out[t] += acc;
      }
    return out;
  }
  const int threads = omp_get_max_threads();
  std::vector<std::vector<Integer>> local(static_cast<size_t>(threads), std::vector<Integer>(terms, 0));
#pragma omp parallel
  {
    Integer acc, tmp;
    auto& mine = local[static_cast<size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
    for (long r = 0; r < static_cast<long>(count); ++r)
      for (size_t t = 0; t < terms; ++t) {
        term(t, static_cast<size_t>(r), acc, tmp);
        mine[t] += acc;
      }
  }
  for (const auto& l : local)
    for (size_t t = 0; t < terms; ++t) out[t] += l[t];
  return out;
}

}  // namespace latd
