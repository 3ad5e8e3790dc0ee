#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "qmt/system.hpp"

namespace qmt {

enum class Kind { Strong, PosEntry, Classical, WeakNotStrongNotPosEntry, HermitianOnly };

// "strong", "posentry", "classical", "weak_not_strong_not_posentry",
// "hermitian_only"
const char* to_string(Kind k);
std::optional<Kind> parse_kind(std::string_view s);

struct GenSpec {
  Kind kind = Kind::Strong;
  std::size_t atoms = 2;
  std::uint64_t seed = 0;
};

inline constexpr unsigned kGenRetryCap = 1000;

/// SplitMix64 stream: state advances by the golden-ratio increment and each
/// output is the finalised state.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  // Uniform in [0, 1) from the top 53 bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

/// Deterministic in request. The result is certified against its class with
/// the membership tests at `tol`; weak positivity is only certified up to
/// kBruteForceLimit atoms. Throws ErrorCode::InvalidArgument for infeasible
/// requests and ErrorCode::NotFound after kGenRetryCap failed draws.
QuantumSystem generate(const GenSpec& request, Tolerance tol = {});

}  // namespace qmt
