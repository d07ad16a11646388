#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace latd {

enum class Errc {
  NotSymmetric,
  NotPositiveDefinite,
  NotOdd,
  NotIntegral,
  ResourceLimit,
  NotSelfDual,
  NotAFrame,
  NotUnimodular,
  BadNeighborVector,
  UnknownName,
  ValidationFailed,
  BadDimension,
  WeightNotRepresentable,
  NotEvenUnimodular,
  NotOddUnimodular,
  ParseError,
  InvalidArgument,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Node budget shared by enumeration and backtracking searches.
///
/// The default is 10^9 nodes; the environment variable LATD_NODE_BUDGET
/// overrides it process-wide. Exceeding the budget raises Errc::ResourceLimit,
/// results are never silently truncated.
struct Budget {
  std::uint64_t max_nodes;

  static Budget standard();
  static Budget nodes(std::uint64_t n) { return Budget{n}; }
};

std::uint64_t default_node_budget();

[[noreturn]] void throw_resource_limit(const std::string& what, std::uint64_t budget);

}  // namespace latd
