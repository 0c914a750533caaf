#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pirmax {

/// Raised on shape mismatches and out-of-range indices in the GF(2) layer.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/**
 * Packed vector over GF(2).
 *
 * Bits are stored in 64-bit words, bit i in word i/64 at position i%64.
 * Serialized forms (bytes, hex) use MSB-first order: bit 0 is the most
 * significant bit of the first byte; pad bits are zero.
 */
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t nbits);

  /// Parses a string of '0'/'1' characters, bit 0 first.
  static BitVector from_string(std::string_view bits);
  static BitVector from_bytes(std::span<const std::uint8_t> bytes, std::size_t nbits);
  static BitVector from_hex(std::string_view hex, std::size_t nbits);

  std::size_t size() const { return nbits_; }
  bool empty() const { return nbits_ == 0; }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i, bool value = true) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  bool any() const;
  std::size_t popcount() const;

  BitVector& operator^=(const BitVector& other);
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend bool operator==(const BitVector&, const BitVector&) = default;

  /// GF(2) inner product.
  bool dot(const BitVector& other) const;

  /// Bits [offset, offset + count) as a new vector.
  BitVector slice(std::size_t offset, std::size_t count) const;
  /// Appends all bits of `tail`.
  void append(const BitVector& tail);

  std::vector<std::uint8_t> to_bytes() const;
  std::string to_hex() const;
  std::string to_string() const;

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

 private:
  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

/**
 * Dense row-major matrix over GF(2). Empty shapes (0 rows or 0 columns)
 * are legal and have rank 0.
 */
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  /// Rows given as '0'/'1' strings of equal length.
  static BitMatrix from_rows(std::initializer_list<std::string_view> rows);
  static BitMatrix from_rows(std::span<const BitVector> rows, std::size_t cols);
  static BitMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return stride_; }

  bool get(std::size_t r, std::size_t c) const {
    return (data_[r * stride_ + (c >> 6)] >> (c & 63)) & 1U;
  }
  void set(std::size_t r, std::size_t c, bool value = true);

  std::span<const std::uint64_t> row_words(std::size_t r) const {
    return {data_.data() + r * stride_, stride_};
  }
  std::span<std::uint64_t> row_words(std::size_t r) {
    return {data_.data() + r * stride_, stride_};
  }

  BitVector row(std::size_t r) const;
  bool row_is_zero(std::size_t r) const;
  void append_row(const BitVector& row);

  /// Rows of `this` followed by rows of `below`; column counts must match.
  BitMatrix stacked(const BitMatrix& below) const;
  /// Selected rows, in the order given.
  BitMatrix select_rows(std::span<const std::size_t> which) const;
  /// Clears every column whose bit is not set in `keep_mask` (a cols()-bit mask).
  BitMatrix masked_columns(const BitVector& keep_mask) const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> data_;
};

/// Row rank over GF(2).
std::size_t rank(const BitMatrix& m);

/// Rank after zeroing all columns outside `keep_mask`; equals
/// rank(restrict_columns(m, keep)) without materializing the projection.
std::size_t rank_masked(const BitMatrix& m, const BitVector& keep_mask);

/// Keeps the listed columns (duplicates ignored) in ascending order.
BitMatrix restrict_columns(const BitMatrix& m, std::span<const std::size_t> keep);

BitVector mat_vec_mul(const BitMatrix& m, const BitVector& v);

}  // namespace pirmax
