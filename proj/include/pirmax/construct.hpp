#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pirmax/code.hpp"

namespace pirmax {

/// A size limit of the builder was hit; the message names the limit.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs to a decoder do not determine the requested message, or are not
/// consistent with any codeword.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BuildLimits {
  std::uint64_t max_symbols = 4096;                       ///< N^K
  std::uint64_t max_generator_bits = std::uint64_t{1} << 31;  ///< M * N^K * K * L_w
};

/// Column order descriptor written into code files for build_sldc output.
inline constexpr const char* kSldcColumnOrder = "k-major; gamma lexicographic (gamma_1 most significant); bit i in [1,N-1]";
/// Column order descriptor for hand-transcribed codes.
inline constexpr const char* kGenericColumnOrder = "k-major; bit index ascending";

/// Base-N digits of `index`, most significant first, `width` digits.
std::vector<std::uint32_t> to_digits(std::uint64_t index, std::uint32_t base, std::uint32_t width);
std::uint64_t from_digits(std::span<const std::uint32_t> digits, std::uint32_t base);

/**
 * The capacity-achieving perfectly smooth LDC of length N^K.
 *
 * Symbol \vec p (lexicographic), sub-symbol \vec gamma (lexicographic):
 *   X_p^gamma = sum_k W_{k, (p_k + gamma_k) mod N}^gamma,   W_{k,0}^gamma = 0.
 * L_w = N^K (N-1), L_x = N^K - 1, groups by sum(p) mod N.
 */
LinearCode build_sldc(std::uint32_t n, std::uint32_t k, const BuildLimits& limits = {});

/// The decoding supersets of build_sldc(n, k): N^{K-1} group-transversal sets per source.
std::vector<DecodingSuperset> enumerate_supersets(std::uint32_t n, std::uint32_t k);

/// Recovers W_k from the N coded symbols of decoding set `set_index` of source
/// k (0-based), given in the set's stored order. Uses the structured decoder for
/// build_sldc codes and elimination otherwise.
BitVector decode(const LinearCode& code, std::size_t k, std::size_t set_index,
                 std::span<const BitVector> symbol_values);

/// Decoding by Gaussian elimination over the stacked generators; valid for
/// any linear code. Detects inputs outside the code's image when the set has
/// redundancy.
BitVector decode_generic(const LinearCode& code, std::size_t k, std::span<const std::uint32_t> set,
                         std::span<const BitVector> symbol_values);

/// Per-gamma interference cancellation for build_sldc codes.
BitVector decode_sldc(const LinearCode& code, std::size_t k, std::size_t set_index,
                      std::span<const BitVector> symbol_values);

}  // namespace pirmax
