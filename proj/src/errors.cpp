#include "latd/errors.hpp"

#include <cstdlib>

namespace latd {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::NotPositiveDefinite: return "NotPositiveDefinite";
    case Errc::NotOdd: return "NotOdd";
    case Errc::NotIntegral: return "NotIntegral";
    case Errc::ResourceLimit: return "ResourceLimit";
    case Errc::NotSelfDual: return "NotSelfDual";
    case Errc::NotAFrame: return "NotAFrame";
    case Errc::NotUnimodular: return "NotUnimodular";
    case Errc::BadNeighborVector: return "BadNeighborVector";
    case Errc::UnknownName: return "UnknownName";
    case Errc::ValidationFailed: return "ValidationFailed";
    case Errc::BadDimension: return "BadDimension";
    case Errc::WeightNotRepresentable: return "WeightNotRepresentable";
    case Errc::NotEvenUnimodular: return "NotEvenUnimodular";
    case Errc::NotOddUnimodular: return "NotOddUnimodular";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

std::uint64_t default_node_budget() {
  if (const char* env = std::getenv("LATD_NODE_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return 1'000'000'000ULL;
}

Budget Budget::standard() { return Budget{default_node_budget()}; }

void throw_resource_limit(const std::string& what, std::uint64_t budget) {
  throw Error(Errc::ResourceLimit, what + " exceeded node budget " + std::to_string(budget));
}

}  // namespace latd
