#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pirmax/capacity.hpp"
#include "pirmax/code.hpp"
#include "pirmax/exec.hpp"

namespace pirmax {

/// Exhaustive search requested beyond the configured size.
class SearchBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Binomial coefficient, saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// The r-th k-subset of [0, n) in lexicographic order.
std::vector<std::uint32_t> unrank_combination(std::uint64_t r, std::uint32_t n, std::uint32_t k);

struct DistanceOptions {
  std::size_t exact_limit = 24;  ///< largest M searched exhaustively
  bool sampled = false;          ///< random erasures instead of exhaustive search
  std::size_t samples = 2000;    ///< per erasure size in sampled mode
  std::uint64_t seed = 1;
  Exec exec = Exec::kParallel;
};

/**
 * Smallest number of erased symbols after which some W_k is no longer
 * determined by the survivors. Among the erasures of that size the witness
 * is the one losing the fewest messages, then the smallest lost message,
 * then the lexicographically smallest erasure.
 */
struct DistanceReport {
  bool exact = true;                     ///< false: sampled upper bound
  std::optional<std::size_t> distance;   ///< empty when no erasure loses a message
  std::vector<std::uint32_t> erasure;
  std::vector<std::uint32_t> lost;       ///< messages not recoverable from the survivors
  std::uint64_t patterns_checked = 0;
};

DistanceReport min_distance(const LinearCode& code, const DistanceOptions& options = {});

struct CorruptionOptions {
  bool sampled = false;
  std::size_t exact_limit = 24;
  std::size_t samples = 2000;
  std::uint64_t seed = 1;
  Exec exec = Exec::kParallel;
};

/**
 * Decoding under adversarial corruption of floor(delta * M) symbols when the
 * decoder picks a decoding set of W_k uniformly: the success probability for
 * (pattern, k) is the fraction of sets in S_k that avoid every corrupted
 * symbol. Reports the minimum over patterns for each message.
 */
struct CorruptionReport {
  Rational delta;
  std::size_t corrupted = 0;
  bool exact = true;
  std::uint64_t patterns = 0;
  std::vector<Rational> min_success;     ///< per message
  Rational worst;                        ///< min over messages
  std::vector<std::uint32_t> worst_pattern;
  std::uint32_t worst_source = 0;
  bool clean_set_always = true;          ///< every pattern leaves a clean set for every message
  Rational guarantee;                    ///< 1 - delta N
  std::optional<std::string> warning;    ///< delta >= 1/N voids the guarantee
};

CorruptionReport corruption_trial(const LinearCode& code, const Rational& delta, const CorruptionOptions& options = {});

}  // namespace pirmax
