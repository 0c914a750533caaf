#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "pirmax/gf2.hpp"
#include "support.hpp"

namespace pirmax {
namespace {

using testing::random_bits;
using testing::random_matrix;

TEST(BitVector, StringRoundTrip) {
  const auto v = BitVector::from_string("1011001");
  EXPECT_EQ(v.size(), 7U);
  EXPECT_TRUE(v.get(0));
  EXPECT_FALSE(v.get(1));
  EXPECT_EQ(v.to_string(), "1011001");
  EXPECT_EQ(v.popcount(), 4U);
}

TEST(BitVector, BytesAreMsbFirstWithZeroPadding) {
  const auto v = BitVector::from_string("1000000011");
  const auto bytes = v.to_bytes();
  ASSERT_EQ(bytes.size(), 2U);
  EXPECT_EQ(bytes[0], 0x80);
  EXPECT_EQ(bytes[1], 0xC0);
  EXPECT_EQ(v.to_hex(), "80c0");
  EXPECT_EQ(BitVector::from_bytes(bytes, 10), v);
  EXPECT_EQ(BitVector::from_hex("80c0", 10), v);
}

TEST(BitVector, SliceAndAppend) {
  std::mt19937_64 rng(7);
  const auto v = random_bits(rng, 150);
  auto head = v.slice(0, 70);
  head.append(v.slice(70, 80));
  EXPECT_EQ(head, v);
}

TEST(BitVector, XorAndDot) {
  const auto a = BitVector::from_string("1101");
  const auto b = BitVector::from_string("0111");
  EXPECT_EQ((a ^ b).to_string(), "1010");
  EXPECT_FALSE(a.dot(b));  // two common ones
}

TEST(Rank, IdentityIsFull) { EXPECT_EQ(rank(BitMatrix::identity(3)), 3U); }

TEST(Rank, ZeroMatrixOfAnyShape) {
  EXPECT_EQ(rank(BitMatrix(4, 9)), 0U);
  EXPECT_EQ(rank(BitMatrix(0, 5)), 0U);
  EXPECT_EQ(rank(BitMatrix(5, 0)), 0U);
}

TEST(Rank, ThirdRowIsSumOfFirstTwo) { EXPECT_EQ(rank(BitMatrix::from_rows({"110", "011", "101"})), 2U); }

TEST(RestrictColumns, AllColumnsIsIdentityOperation) {
  std::mt19937_64 rng(3);
  const auto m = random_matrix(rng, 5, 7);
  std::vector<std::size_t> all(7);
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  EXPECT_EQ(restrict_columns(m, all), m);
}

TEST(RestrictColumns, NoColumnsGivesEmptyRows) {
  const auto m = BitMatrix::from_rows({"101", "011"});
  const auto r = restrict_columns(m, {});
  EXPECT_EQ(r.rows(), 2U);
  EXPECT_EQ(r.cols(), 0U);
}

TEST(RestrictColumns, ManualProjection) {
  const std::vector<std::size_t> keep = {0, 2};
  EXPECT_EQ(restrict_columns(BitMatrix::from_rows({"101", "011"}), keep), BitMatrix::from_rows({"11", "01"}));
}

TEST(RestrictColumns, OutOfRangeThrows) {
  const std::vector<std::size_t> keep = {3};
  EXPECT_THROW(restrict_columns(BitMatrix::from_rows({"101"}), keep), std::out_of_range);
}

TEST(MatVec, IdentityAndZero) {
  std::mt19937_64 rng(5);
  const auto v = random_bits(rng, 33);
  EXPECT_EQ(mat_vec_mul(BitMatrix::identity(33), v), v);
  const auto m = random_matrix(rng, 12, 33);
  EXPECT_FALSE(mat_vec_mul(m, BitVector(33)).any());
}

// 110.101 = 1 and 011.101 = 1 by hand.
TEST(MatVec, ManualXor) {
  EXPECT_EQ(mat_vec_mul(BitMatrix::from_rows({"110", "011"}), BitVector::from_string("101")).to_string(), "11");
  EXPECT_EQ(mat_vec_mul(BitMatrix::from_rows({"110", "011"}), BitVector::from_string("100")).to_string(), "10");
}

TEST(MatVec, DimensionMismatchThrows) {
  EXPECT_THROW(mat_vec_mul(BitMatrix(2, 3), BitVector(4)), DimensionError);
}

// Randomized properties.

TEST(RankProperty, SubadditiveUnderStacking) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t cols = 1 + rng() % 90;
    const auto a = random_matrix(rng, rng() % 12, cols);
    const auto b = random_matrix(rng, rng() % 12, cols);
    EXPECT_LE(rank(a.stacked(b)), rank(a) + rank(b));
  }
}

TEST(RankProperty, InvariantUnderRowPermutationAndRowXor) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 2 + rng() % 10;
    const auto m = random_matrix(rng, rows, 1 + rng() % 80);
    std::vector<std::size_t> order(rows);
    for (std::size_t i = 0; i < rows; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    EXPECT_EQ(rank(m.select_rows(order)), rank(m));

    const std::size_t src = rng() % rows;
    std::size_t dst = rng() % rows;
    if (dst == src) dst = (dst + 1) % rows;
    std::vector<BitVector> rs;
    for (std::size_t r = 0; r < rows; ++r) rs.push_back(m.row(r));
    rs[dst] ^= rs[src];
    EXPECT_EQ(rank(BitMatrix::from_rows(rs, m.cols())), rank(m));
  }
}

TEST(RankProperty, MatVecIsLinear) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t cols = 1 + rng() % 130;
    const auto m = random_matrix(rng, rng() % 20, cols);
    const auto u = random_bits(rng, cols);
    const auto v = random_bits(rng, cols);
    EXPECT_EQ(mat_vec_mul(m, u ^ v), mat_vec_mul(m, u) ^ mat_vec_mul(m, v));
  }
}

TEST(RankProperty, MaskedRankMatchesProjection) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t cols = 1 + rng() % 140;
    const auto m = random_matrix(rng, rng() % 16, cols);
    const auto mask = random_bits(rng, cols);
    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < cols; ++c) {
      if (mask.get(c)) keep.push_back(c);
    }
    EXPECT_EQ(rank_masked(m, mask), rank(restrict_columns(m, keep)));
    EXPECT_EQ(rank(m.masked_columns(mask)), rank(restrict_columns(m, keep)));
  }
}

// Independent oracle: rank = log2 of the number of distinct row combinations.
TEST(RankProperty, MatchesSpanSizeOnSmallMatrices) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rows = rng() % 9;
    const auto m = random_matrix(rng, rows, 1 + rng() % 10);
    std::vector<std::string> span;
    for (std::size_t mask = 0; mask < (std::size_t{1} << rows); ++mask) {
      BitVector acc(m.cols());
      for (std::size_t r = 0; r < rows; ++r) {
        if ((mask >> r) & 1U) acc ^= m.row(r);
      }
      span.push_back(acc.to_string());
    }
    std::sort(span.begin(), span.end());
    span.erase(std::unique(span.begin(), span.end()), span.end());
    EXPECT_EQ(std::size_t{1} << rank(m), span.size());
  }
}

}  // namespace
}  // namespace pirmax
