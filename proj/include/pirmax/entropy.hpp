#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "pirmax/code.hpp"

namespace pirmax {

/// Subset of source indices [0, K), K <= 64.
class SourceSet {
 public:
  constexpr SourceSet() = default;
  constexpr explicit SourceSet(std::uint64_t bits) : bits_(bits) {}
  static SourceSet of(std::initializer_list<std::uint32_t> ks) {
    SourceSet s;
    for (auto k : ks) s = s.with(k);
    return s;
  }
  static constexpr SourceSet all(std::uint32_t k) { return SourceSet(k >= 64 ? ~0ULL : (1ULL << k) - 1); }
  static constexpr SourceSet only(std::uint32_t k) { return SourceSet(1ULL << k); }
  /// Every source except k, out of K.
  static constexpr SourceSet all_but(std::uint32_t k, std::uint32_t count) { return SourceSet(all(count).bits_ & ~(1ULL << k)); }

  constexpr bool contains(std::uint32_t k) const { return (bits_ >> k) & 1U; }
  constexpr SourceSet with(std::uint32_t k) const { return SourceSet(bits_ | (1ULL << k)); }
  constexpr SourceSet operator|(SourceSet o) const { return SourceSet(bits_ | o.bits_); }
  constexpr SourceSet minus(SourceSet o) const { return SourceSet(bits_ & ~o.bits_); }
  constexpr SourceSet complement(std::uint32_t count) const { return all(count).minus(*this); }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr std::uint64_t bits() const { return bits_; }
  std::vector<std::uint32_t> members() const;
  /// "W_1,W_3" or "-" when empty.
  std::string label() const;

  friend constexpr bool operator==(SourceSet, SourceSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

/// H(X_A | W_J): coded-symbol set A conditioned on the sources in J.
struct EntropyQuery {
  std::vector<std::uint32_t> symbols;
  SourceSet given;
};

/**
 * Exact entropies, in bits, for a linear code with i.i.d. uniform message
 * bits: every joint entropy is the GF(2) rank of the stacked generators with
 * the conditioned sources' columns removed.
 */
class EntropyOracle {
 public:
  explicit EntropyOracle(const LinearCode& code);

  const LinearCode& code() const { return *code_; }

  /// H(X_A | W_J).
  std::size_t h(std::span<const std::uint32_t> a, SourceSet given = {}) const;
  std::size_t h(std::initializer_list<std::uint32_t> a, SourceSet given = {}) const {
    return h(std::span<const std::uint32_t>(a.begin(), a.size()), given);
  }
  /// H(X_A, W_B | W_J).
  std::size_t joint(std::span<const std::uint32_t> a, SourceSet sources, SourceSet given) const;
  /// H(X_A | X_B, W_J).
  std::size_t h_given(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b, SourceSet given) const;
  /// H(W_k | X_A, W_J).
  std::size_t residual(std::uint32_t k, std::span<const std::uint32_t> a, SourceSet given = {}) const;

 private:
  std::size_t masked_rank(std::span<const std::uint32_t> a, SourceSet removed) const;

  const LinearCode* code_;
};

/// H(X_A | W_J) per the query.
std::size_t conditional_entropy(const LinearCode& code, const EntropyQuery& q);

}  // namespace pirmax
