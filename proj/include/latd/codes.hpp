#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "latd/errors.hpp"
#include "latd/matrix.hpp"

namespace latd {

/// Linear code over F_p given by a generator matrix of full rank.
class LinearCode {
 public:
  /// Validates p prime, entries in 0..p-1 and full row rank over F_p.
  LinearCode(int p, std::vector<std::vector<int>> generator, std::string label = {});

  int p() const { return p_; }
  int length() const { return n_; }
  int dim() const { return static_cast<int>(gen_.size()); }
  const std::vector<std::vector<int>>& generator() const { return gen_; }
  const std::string& label() const { return label_; }

  bool self_orthogonal() const;
  bool self_dual() const;
  /// Binary only: generators of weight 0 mod 4 with pairwise even
  /// intersections span a doubly even code.
  bool doubly_even() const;

 private:
  int p_;
  int n_;
  std::vector<std::vector<int>> gen_;
  std::string label_;
};

/// Reduced row echelon basis over F_p of the span of `rows`.
std::vector<std::vector<int>> row_reduce_mod_p(std::vector<std::vector<int>> rows, int p);

/// Number of codewords of each weight 0..n. Enumerates all p^k codewords.
std::vector<Integer> weight_enumerator(const LinearCode& code, Budget budget = Budget::standard());

/// Same (p, n, k) and weight enumerator: the equivalence test used for round trips.
bool equivalent_parameters(const LinearCode& a, const LinearCode& b);

/// ".code" format: "p k n" then k rows of n digits.
LinearCode parse_code(std::string_view text, std::string label = {});
LinearCode read_code_file(const std::string& path);
std::string format_code(const LinearCode& code);

}  // namespace latd
