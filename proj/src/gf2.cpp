#include "pirmax/gf2.hpp"

#include <algorithm>
#include <bit>
#include <utility>

namespace pirmax {

namespace {

constexpr std::size_t words_for(std::size_t nbits) { return (nbits + 63) / 64; }

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// In-place elimination over the first `nrows` rows of a packed buffer.
std::size_t eliminate(std::vector<std::uint64_t>& data, std::size_t nrows, std::size_t ncols,
                      std::size_t stride) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < ncols && rank < nrows; ++col) {
    const std::size_t w = col >> 6;
    const std::uint64_t bit = std::uint64_t{1} << (col & 63);
    std::size_t pivot = rank;
    while (pivot < nrows && !(data[pivot * stride + w] & bit)) ++pivot;
    if (pivot == nrows) continue;
    if (pivot != rank) {
      std::swap_ranges(data.begin() + pivot * stride, data.begin() + (pivot + 1) * stride,
                       data.begin() + rank * stride);
    }
    const std::uint64_t* prow = data.data() + rank * stride;
    for (std::size_t r = rank + 1; r < nrows; ++r) {
      std::uint64_t* row = data.data() + r * stride;
      if (row[w] & bit) {
        for (std::size_t i = w; i < stride; ++i) row[i] ^= prow[i];
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

BitVector::BitVector(std::size_t nbits) : nbits_(nbits), words_(words_for(nbits), 0) {}

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i);
    } else if (bits[i] != '0') {
      throw DimensionError("bit string contains a character other than 0/1");
    }
  }
  return v;
}

BitVector BitVector::from_bytes(std::span<const std::uint8_t> bytes, std::size_t nbits) {
  if (bytes.size() != (nbits + 7) / 8) {
    throw DimensionError("expected " + std::to_string((nbits + 7) / 8) + " bytes for " +
                         std::to_string(nbits) + " bits, got " + std::to_string(bytes.size()));
  }
  BitVector v(nbits);
  for (std::size_t i = 0; i < nbits; ++i) {
    if ((bytes[i / 8] >> (7 - i % 8)) & 1U) v.set(i);
  }
  for (std::size_t i = nbits; i < bytes.size() * 8; ++i) {
    if ((bytes[i / 8] >> (7 - i % 8)) & 1U) {
      throw DimensionError("nonzero pad bits after bit " + std::to_string(nbits));
    }
  }
  return v;
}

BitVector BitVector::from_hex(std::string_view hex, std::size_t nbits) {
  if (hex.size() % 2 != 0) throw DimensionError("hex string has odd length");
  std::vector<std::uint8_t> bytes(hex.size() / 2);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    const int hi = hex_value(hex[2 * i]);
    const int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw DimensionError("invalid hex digit");
    bytes[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return from_bytes(bytes, nbits);
}

bool BitVector::any() const {
  return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

std::size_t BitVector::popcount() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  if (other.nbits_ != nbits_) throw DimensionError("xor of vectors with different lengths");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

bool BitVector::dot(const BitVector& other) const {
  if (other.nbits_ != nbits_) throw DimensionError("dot product of vectors with different lengths");
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
  return std::popcount(acc) & 1;
}

BitVector BitVector::slice(std::size_t offset, std::size_t count) const {
  if (offset + count > nbits_) throw DimensionError("slice out of range");
  BitVector out(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (get(offset + i)) out.set(i);
  }
  return out;
}

void BitVector::append(const BitVector& tail) {
  const std::size_t old = nbits_;
  nbits_ += tail.nbits_;
  words_.resize(words_for(nbits_), 0);
  for (std::size_t i = 0; i < tail.nbits_; ++i) {
    if (tail.get(i)) set(old + i);
  }
}

std::vector<std::uint8_t> BitVector::to_bytes() const {
  std::vector<std::uint8_t> out((nbits_ + 7) / 8, 0);
  for (std::size_t i = 0; i < nbits_; ++i) {
    if (get(i)) out[i / 8] |= static_cast<std::uint8_t>(0x80U >> (i % 8));
  }
  return out;
}

std::string BitVector::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (auto b : to_bytes()) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 15]);
  }
  return out;
}

std::string BitVector::to_string() const {
  std::string out(nbits_, '0');
  for (std::size_t i = 0; i < nbits_; ++i) {
    if (get(i)) out[i] = '1';
  }
  return out;
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_(words_for(cols)), data_(rows * words_for(cols), 0) {}

BitMatrix BitMatrix::from_rows(std::initializer_list<std::string_view> rows) {
  const std::size_t cols = rows.size() ? rows.begin()->size() : 0;
  BitMatrix m(0, cols);
  for (auto r : rows) {
    if (r.size() != cols) throw DimensionError("ragged rows");
    m.append_row(BitVector::from_string(r));
  }
  return m;
}

BitMatrix BitMatrix::from_rows(std::span<const BitVector> rows, std::size_t cols) {
  BitMatrix m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool value) {
  std::uint64_t& w = data_[r * stride_ + (c >> 6)];
  const std::uint64_t bit = std::uint64_t{1} << (c & 63);
  w = value ? (w | bit) : (w & ~bit);
}

BitVector BitMatrix::row(std::size_t r) const {
  if (r >= rows_) throw DimensionError("row index out of range");
  BitVector v(cols_);
  std::copy_n(data_.begin() + r * stride_, stride_, v.words().begin());
  return v;
}

bool BitMatrix::row_is_zero(std::size_t r) const {
  auto w = row_words(r);
  return std::all_of(w.begin(), w.end(), [](std::uint64_t x) { return x == 0; });
}

void BitMatrix::append_row(const BitVector& row) {
  if (row.size() != cols_) {
    throw DimensionError("row has " + std::to_string(row.size()) + " bits, matrix has " +
                         std::to_string(cols_) + " columns");
  }
  data_.insert(data_.end(), row.words().begin(), row.words().end());
  ++rows_;
}

BitMatrix BitMatrix::stacked(const BitMatrix& below) const {
  if (below.cols_ != cols_) throw DimensionError("stacking matrices with different column counts");
  BitMatrix out = *this;
  out.data_.insert(out.data_.end(), below.data_.begin(), below.data_.end());
  out.rows_ += below.rows_;
  return out;
}

BitMatrix BitMatrix::select_rows(std::span<const std::size_t> which) const {
  BitMatrix out(which.size(), cols_);
  for (std::size_t i = 0; i < which.size(); ++i) {
    if (which[i] >= rows_) throw DimensionError("row index out of range");
    std::copy_n(data_.begin() + which[i] * stride_, stride_, out.data_.begin() + i * stride_);
  }
  return out;
}

BitMatrix BitMatrix::masked_columns(const BitVector& keep_mask) const {
  if (keep_mask.size() != cols_) throw DimensionError("column mask length mismatch");
  BitMatrix out = *this;
  auto mask = keep_mask.words();
  for (std::size_t r = 0; r < rows_; ++r) {
    auto row = out.row_words(r);
    for (std::size_t i = 0; i < stride_; ++i) row[i] &= mask[i];
  }
  return out;
}

std::size_t rank(const BitMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  std::vector<std::uint64_t> data(m.rows() * m.words_per_row());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto w = m.row_words(r);
    std::copy(w.begin(), w.end(), data.begin() + r * m.words_per_row());
  }
  return eliminate(data, m.rows(), m.cols(), m.words_per_row());
}

std::size_t rank_masked(const BitMatrix& m, const BitVector& keep_mask) {
  return rank(m.masked_columns(keep_mask));
}

BitMatrix restrict_columns(const BitMatrix& m, std::span<const std::size_t> keep) {
  std::vector<std::size_t> cols(keep.begin(), keep.end());
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  if (!cols.empty() && cols.back() >= m.cols()) {
    throw std::out_of_range("column index " + std::to_string(cols.back()) + " out of range for " +
                            std::to_string(m.cols()) + " columns");
  }
  BitMatrix out(m.rows(), cols.size());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (m.get(r, cols[j])) out.set(r, j);
    }
  }
  return out;
}

BitVector mat_vec_mul(const BitMatrix& m, const BitVector& v) {
  if (v.size() != m.cols()) {
    throw DimensionError("matrix has " + std::to_string(m.cols()) + " columns, vector has " +
                         std::to_string(v.size()) + " bits");
  }
  BitVector out(m.rows());
  auto vw = v.words();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto rw = m.row_words(r);
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < rw.size(); ++i) acc ^= rw[i] & vw[i];
    if (std::popcount(acc) & 1) out.set(r);
  }
  return out;
}

}  // namespace pirmax
