// Internal Fincke-Pohst depth-first search shared by the serial and OpenMP
// enumeration kernels.
#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "latd/errors.hpp"
#include "latd/matrix.hpp"

namespace latd::detail {

/// Reduced basis plus the floating Cholesky data used for pruning.
struct EnumGeometry {
  int n = 0;
  std::int64_t scale = 1;  // lattice gram = original int gram / scale
  I64Matrix gram;          // reduced integral gram
  I64Matrix transform;     // reduced basis in original coordinates (columns)
  I64Matrix inverse;       // original coordinates -> reduced coordinates
  std::vector<long double> q;   // squared Cholesky diagonal
  std::vector<long double> mu;  // mu[i*n+j], j > i

  explicit EnumGeometry(const I64Matrix& int_gram, std::int64_t scale);
};

/// Depth-first enumeration of z = den*x + s (x integral, reduced coordinates)
/// with exact numerator z^T G z in [lo, hi].
///
/// With `antipodal` set (requires s = 0), exactly one of each pair {x, -x}
/// is produced and the zero vector is skipped. The visitor receives the
/// reduced coordinates of z and the exact numerator and returns false to stop.
template <class Visitor>
class Dfs {
 public:
  Dfs(const EnumGeometry& geo, std::span<const std::int64_t> shift, std::int64_t den, std::int64_t lo,
      std::int64_t hi, bool antipodal, std::uint64_t budget, Visitor& visit)
      : geo_(geo),
        n_(geo.n),
        den_(den),
        lo_(lo),
        hi_(hi),
        antipodal_(antipodal),
        budget_(budget),
        visit_(visit),
        s_(shift.begin(), shift.end()),
        t_(n_),
        x_(n_, 0),
        z_(n_, 0),
        y_(n_, 0),
        rho_(n_ + 1, 0),
        h_(static_cast<size_t>(n_ + 1) * n_, 0),
        p_(n_ + 1, 0) {
    if (s_.empty()) s_.assign(n_, 0);
    for (int i = 0; i < n_; ++i) t_[i] = static_cast<long double>(s_[i]) / static_cast<long double>(den_);
    const long double dd = static_cast<long double>(den_) * static_cast<long double>(den_);
    bound_ = static_cast<long double>(hi_) / dd;
    bound_ += 1e-9L * (bound_ + 1.0L);
  }

  /// Integer range for the top coordinate.
  std::pair<std::int64_t, std::int64_t> top_range() const { return range(n_ - 1, 0.0L, 0.0L, true); }

  /// Runs the search restricted to x_{n-1} in [a, b]. Returns false if stopped.
  bool run(std::int64_t a, std::int64_t b) {
    const int top = n_ - 1;
    for (std::int64_t v = a; v <= b; ++v) {
      if (!enter(top, v, true)) return false;
    }
    return true;
  }

  bool run_all() {
    auto [a, b] = top_range();
    return run(a, b);
  }

  /// Runs the subtree below a fixed assignment of the top prefix.size()
  /// coordinates (prefix[0] is x_{n-1}). Requires prefix.size() < n.
  bool run_prefix(std::span<const std::int64_t> prefix) {
    forced_.assign(prefix.begin(), prefix.end());
    auto [a, b] = top_range();
    const std::int64_t v = forced_[0];
    bool ok = true;
    if (v >= a && v <= b) ok = enter(n_ - 1, v, true);
    forced_.clear();
    return ok;
  }

  /// Collects every feasible assignment of the top `depth` coordinates
  /// (depth < n) in depth-first order, flattened.
  std::vector<std::int64_t> prefixes(int depth) {
    cut_ = n_ - depth;
    prefix_out_.clear();
    run_all();
    cut_ = -1;
    return std::move(prefix_out_);
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  std::pair<std::int64_t, std::int64_t> range(int level, long double center, long double rho, bool all_zero) const {
    const long double rem = bound_ - rho;
    if (rem < 0) return {1, 0};
    const long double r = std::sqrt(rem / geo_.q[level]);
    const long double mid = -center - t_[level];
    auto a = static_cast<std::int64_t>(std::ceil(mid - r - 1e-12L));
    auto b = static_cast<std::int64_t>(std::floor(mid + r + 1e-12L));
    if (antipodal_ && all_zero) a = std::max<std::int64_t>(a, level == 0 ? 1 : 0);
    return {a, b};
  }

  // Assigns x_level = v and descends. all_zero_above: x_j = 0 for all j > level.
  bool enter(int level, std::int64_t v, bool all_zero_above) {
    if (++nodes_ > budget_) throw_resource_limit("lattice enumeration", budget_);
    const size_t n = static_cast<size_t>(n_);
    x_[level] = v;
    const std::int64_t z = den_ * v + s_[level];
    z_[level] = z;
    // center for this level
    long double c = 0;
    const long double* mu = &geo_.mu[static_cast<size_t>(level) * n];
    for (int j = level + 1; j < n_; ++j) c += mu[j] * y_[j];
    const long double yl = static_cast<long double>(z) / static_cast<long double>(den_);
    y_[level] = yl;
    const long double d = yl + c;
    const long double rho = rho_[level + 1] + geo_.q[level] * d * d;
    if (rho > bound_) return true;
    rho_[level] = rho;
    // exact partial norm: h^{(level)} = h^{(level+1)} + G[:,level] z
    const std::int64_t* hprev = &h_[static_cast<size_t>(level + 1) * n];
    std::int64_t* hcur = &h_[static_cast<size_t>(level) * n];
    const std::int64_t p = p_[level + 1] + z * (2 * hprev[level] + geo_.gram(level, level) * z);
    p_[level] = p;
    const bool zero_here = all_zero_above && v == 0;
    if (level == cut_) {
      for (int j = n_ - 1; j >= level; --j) prefix_out_.push_back(x_[j]);
      return true;
    }
    if (level == 0) {
      if (p >= lo_ && p <= hi_ && !(antipodal_ && zero_here)) {
        if (!visit_(std::span<const std::int64_t>(z_.data(), n), p)) return false;
      }
      return true;
    }
    for (int i = 0; i < n_; ++i) hcur[i] = hprev[i] + geo_.gram(i, level) * z;
    // next level
    const int nl = level - 1;
    long double cn = 0;
    const long double* mun = &geo_.mu[static_cast<size_t>(nl) * n];
    for (int j = nl + 1; j < n_; ++j) cn += mun[j] * y_[j];
    auto [a, b] = range(nl, cn, rho, zero_here);
    const int fixed = static_cast<int>(forced_.size());
    if (fixed > 0 && nl >= n_ - fixed) {
      const std::int64_t w = forced_[static_cast<size_t>(n_ - 1 - nl)];
      if (w < a || w > b) return true;
      return enter(nl, w, zero_here);
    }
    if (nl == 0) return leaves(a, b, cn, rho, zero_here);
    for (std::int64_t w = a; w <= b; ++w)
      if (!enter(nl, w, zero_here)) return false;
    return true;
  }

  // Level-0 loop specialised for speed.
  bool leaves(std::int64_t a, std::int64_t b, long double c, long double rho, bool all_zero_above) {
    const std::int64_t* h1 = &h_[static_cast<size_t>(1) * n_];
    const std::int64_t g00 = geo_.gram(0, 0);
    const std::int64_t base = p_[1];
    const std::int64_t twoh = 2 * h1[0];
    for (std::int64_t w = a; w <= b; ++w) {
      if (++nodes_ > budget_) throw_resource_limit("lattice enumeration", budget_);
      const std::int64_t z = den_ * w + s_[0];
      const std::int64_t p = base + z * (twoh + g00 * z);
      if (p < lo_ || p > hi_) continue;
      if (antipodal_ && all_zero_above && w == 0) continue;
      x_[0] = w;
      z_[0] = z;
      if (!visit_(std::span<const std::int64_t>(z_.data(), static_cast<size_t>(n_)), p)) return false;
    }
    (void)c;
    (void)rho;
    return true;
  }

  const EnumGeometry& geo_;
  int n_;
  std::int64_t den_, lo_, hi_;
  bool antipodal_;
  std::uint64_t budget_;
  Visitor& visit_;
  std::vector<std::int64_t> s_;
  std::vector<long double> t_;
  std::vector<std::int64_t> x_, z_;
  std::vector<long double> y_, rho_;
  std::vector<std::int64_t> h_, p_;
  long double bound_ = 0;
  std::uint64_t nodes_ = 0;
  int cut_ = -1;
  std::vector<std::int64_t> forced_, prefix_out_;
};

}  // namespace latd::detail
