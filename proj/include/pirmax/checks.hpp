#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pirmax/code.hpp"
#include "pirmax/entropy.hpp"
#include "pirmax/exec.hpp"

namespace pirmax {

struct CorrectnessViolation {
  std::uint32_t source;
  std::size_t set_index;
  std::size_t residual_bits;  ///< H(W_k | S)
};

struct CorrectnessReport {
  bool pass = true;
  std::vector<CorrectnessViolation> violations;  ///< in (k, set) order
};

/// H(W_k | S) = 0 for every k and every S in S_k.
CorrectnessReport check_correctness(const LinearCode& code, Exec exec = Exec::kParallel);

struct SmoothnessReport {
  bool pass = true;
  /// membership[k][m] = number of sets of S_k containing X_m.
  std::vector<std::vector<std::size_t>> membership;
  /// First (k, m) whose count differs from X_1's count in S_k.
  std::optional<std::pair<std::uint32_t, std::uint32_t>> witness;
};

std::vector<std::vector<std::size_t>> membership_counts(const LinearCode& code);
SmoothnessReport check_smoothness(const LinearCode& code);

struct UniversalityReport {
  bool pass = true;
  std::optional<std::pair<std::uint32_t, std::uint32_t>> witness;  ///< (k, m) with X_m in no set of S_k
};

UniversalityReport check_universality(const LinearCode& code);

/// X_i1 and X_i2 determine each other given the sources outside `about`.
bool same_information(const EntropyOracle& oracle, std::uint32_t i1, std::uint32_t i2, SourceSet about);
/// H(X_i1 | X_i2, W_{not k}) == H(X_i1 | W_{not k}).
bool distinct_information(const EntropyOracle& oracle, std::uint32_t i1, std::uint32_t i2, std::uint32_t k);

enum class Property { kNonZeroEntropy, kSameInterference, kDistinctDesired, kIndependence, kIncompatibility };

inline constexpr std::array<Property, 5> kAllProperties = {Property::kNonZeroEntropy, Property::kSameInterference,
                                                           Property::kDistinctDesired, Property::kIndependence,
                                                           Property::kIncompatibility};

/// "P1", "P2a", ...
const char* property_id(Property p);
const char* property_name(Property p);

/// Concrete counterexample for one property; fields not used by a property stay empty.
struct PropertyWitness {
  std::uint32_t source = 0;                  ///< k
  std::optional<std::uint32_t> other_source; ///< k' (P2a)
  std::optional<std::size_t> set_index;      ///< S in S_k (P2*)
  std::uint32_t i1 = 0;
  std::uint32_t i2 = 0;
  std::string detail;  ///< the entropy values that violate the property
};

struct PropertyVerdict {
  Property property;
  bool pass = true;
  std::optional<PropertyWitness> witness;
};

struct PropertyReport {
  bool universal = true;  ///< precondition
  std::vector<PropertyVerdict> verdicts;
  bool all_pass() const;
};

/**
 * Evaluates the five structural properties every capacity-achieving
 * universal LDC must have, exhaustively. Each failure carries the
 * lexicographically smallest witness in the iteration order documented in
 * checks.cpp. Runs on any code (the report is diagnostic for codes that do
 * not reach capacity).
 */
PropertyReport check_capacity_properties(const LinearCode& code, Exec exec = Exec::kParallel);

}  // namespace pirmax
