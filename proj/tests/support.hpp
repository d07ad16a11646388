// Small helpers shared by the test binaries.
#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "latd/lattice.hpp"

namespace latd::testing {

inline RatMatrix rat(std::initializer_list<std::initializer_list<long>> rows) {
  const int n = static_cast<int>(rows.size());
  RatMatrix m(n, static_cast<int>(rows.begin()->size()));
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (long v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline Lattice gram(std::initializer_list<std::initializer_list<long>> rows) { return make_lattice(rat(rows)); }

inline Lattice identity_lattice(int n) { return make_lattice(RatMatrix::identity(n)); }

}  // namespace latd::testing
