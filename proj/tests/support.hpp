#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "pirmax/code.hpp"
#include "pirmax/entropy.hpp"
#include "pirmax/gf2.hpp"

namespace pirmax::testing {

inline BitVector random_bits(std::mt19937_64& rng, std::size_t n) {
  BitVector v(n);
  for (std::size_t i = 0; i < n; ++i) v.set(i, (rng() & 1U) != 0);
  return v;
}

inline BitMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  BitMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, (rng() & 1U) != 0);
  }
  return m;
}

/// Shannon entropy (bits) of a histogram.
inline double histogram_entropy(const std::map<std::vector<bool>, std::size_t>& hist, std::size_t total) {
  double h = 0;
  for (const auto& [_, c] : hist) {
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

/**
 * H(X_A | W_J) by enumerating every message block and tabulating the joint
 * distribution of (X_A, W_J) and of W_J. Only for tiny codes.
 */
inline double brute_force_entropy(const LinearCode& code, const std::vector<std::uint32_t>& a, SourceSet given) {
  const std::size_t bits = code.message_bits();
  std::map<std::vector<bool>, std::size_t> joint;
  std::map<std::vector<bool>, std::size_t> cond;
  const std::size_t total = std::size_t{1} << bits;
  for (std::size_t value = 0; value < total; ++value) {
    BitVector msg(bits);
    for (std::size_t i = 0; i < bits; ++i) msg.set(i, (value >> i) & 1U);
    std::vector<bool> key;
    for (std::uint32_t k = 0; k < code.sources(); ++k) {
      if (!given.contains(k)) continue;
      for (std::size_t b = 0; b < code.source_bits(); ++b) key.push_back(msg.get(code.source_column(k, b)));
    }
    ++cond[key];
    for (auto m : a) {
      const BitVector x = encode_symbol(code, m, msg);
      for (std::size_t b = 0; b < x.size(); ++b) key.push_back(x.get(b));
    }
    ++joint[key];
  }
  return histogram_entropy(joint, total) - histogram_entropy(cond, total);
}

}  // namespace pirmax::testing
