#include <gtest/gtest.h>

#include "pirmax/construct.hpp"
#include "pirmax/distance.hpp"
#include "pirmax/entropy.hpp"
#include "pirmax/fixtures.hpp"

namespace pirmax {
namespace {

// Independent oracle: smallest erasure, by brute force over bitmasks, after which some message is lost.
std::size_t brute_distance(const LinearCode& code) {
  const EntropyOracle oracle(code);
  const auto m = code.length();
  std::size_t best = m + 1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    const auto erased = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (erased >= best) continue;
    std::vector<std::uint32_t> rest;
    for (std::uint32_t i = 0; i < m; ++i) {
      if (!((mask >> i) & 1U)) rest.push_back(i);
    }
    for (std::uint32_t k = 0; k < code.sources(); ++k) {
      if (oracle.residual(k, rest) > 0) {
        best = erased;
        break;
      }
    }
  }
  return best;
}

TEST(Combinatorics, BinomialAndUnrank) {
  EXPECT_EQ(binomial(6, 3), 20U);
  EXPECT_EQ(binomial(5, 0), 1U);
  EXPECT_EQ(binomial(3, 5), 0U);
  EXPECT_EQ(binomial(200, 100), UINT64_MAX);
  EXPECT_EQ(unrank_combination(0, 6, 3), (std::vector<std::uint32_t>{0, 1, 2}));
  EXPECT_EQ(unrank_combination(19, 6, 3), (std::vector<std::uint32_t>{3, 4, 5}));
  std::vector<std::uint32_t> prev;
  for (std::uint64_t r = 0; r < binomial(7, 4); ++r) {
    const auto c = unrank_combination(r, 7, 4);
    if (r > 0) {
      EXPECT_LT(prev, c);
    }
    prev = c;
  }
}

TEST(MinDistance, Fig1IsThreeWithTheLiteratureWitness) {
  const auto r = min_distance(load_fixture("fig1"));
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.distance, 3U);
  EXPECT_EQ(r.erasure, (std::vector<std::uint32_t>{0, 4, 5}));
  EXPECT_EQ(r.lost, (std::vector<std::uint32_t>{0}));
}

TEST(MinDistance, SldcMeetsMOverN) {
  const auto r = min_distance(build_sldc(2, 2));
  ASSERT_TRUE(r.distance);
  EXPECT_GE(*r.distance * 2, 4U);
}

TEST(MinDistance, MatchesBruteForce) {
  std::vector<LinearCode> codes;
  for (const auto& name : fixture_names()) codes.push_back(load_fixture(name));
  codes.push_back(build_sldc(2, 2));
  codes.push_back(build_sldc(3, 2));
  for (const auto& code : codes) {
    const auto r = min_distance(code);
    ASSERT_TRUE(r.distance) << code.name();
    EXPECT_EQ(*r.distance, brute_distance(code)) << code.name();
  }
}

TEST(MinDistance, NonSmoothCodeIsReported) {
  const auto r = min_distance(load_fixture("intro_nonsmooth"));
  ASSERT_TRUE(r.distance);
  EXPECT_EQ(*r.distance, 1U);  // X_1 = W_1 is the only symbol involving W_1
}

TEST(MinDistance, BudgetAndSampling) {
  const auto big = build_sldc(3, 3);
  EXPECT_THROW(min_distance(big), SearchBudgetError);
  DistanceOptions opt;
  opt.sampled = true;
  opt.samples = 200;
  const auto r = min_distance(big, opt);
  EXPECT_FALSE(r.exact);
  ASSERT_TRUE(r.distance);
  EXPECT_GE(*r.distance, 9U);  // an upper bound can never undercut the true distance M/N
  EXPECT_EQ(min_distance(big, opt).erasure, r.erasure);
}

TEST(MinDistance, SerialAndParallelAgree) {
  for (const auto& name : fixture_names()) {
    const auto code = load_fixture(name);
    DistanceOptions s;
    s.exec = Exec::kSerial;
    const auto a = min_distance(code, s);
    const auto b = min_distance(code);
    EXPECT_EQ(a.distance, b.distance) << name;
    EXPECT_EQ(a.erasure, b.erasure) << name;
    EXPECT_EQ(a.lost, b.lost) << name;
  }
}

TEST(Corruption, Fig1ThirdLeavesACleanSet) {
  const auto r = corruption_trial(load_fixture("fig1"), Rational(1, 3));
  EXPECT_EQ(r.corrupted, 2U);
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.patterns, 15U);
  EXPECT_TRUE(r.clean_set_always);
  EXPECT_GE(r.worst, Rational(1, 3));
  EXPECT_EQ(r.guarantee, Rational(1, 3));
  EXPECT_FALSE(r.warning);
}

TEST(Corruption, ZeroDeltaAlwaysSucceeds) {
  for (const auto& name : fixture_names()) {
    const auto r = corruption_trial(load_fixture(name), Rational(0));
    EXPECT_EQ(r.worst, Rational(1)) << name;
  }
}

TEST(Corruption, SldcOneCorruptSymbol) {
  const auto r = corruption_trial(build_sldc(2, 2), Rational(1, 4));
  EXPECT_EQ(r.corrupted, 1U);
  EXPECT_GE(r.worst, Rational(1, 2));
}

TEST(Corruption, LargeDeltaWarns) {
  const auto r = corruption_trial(load_fixture("fig1"), Rational(1, 2));
  EXPECT_TRUE(r.warning);
  EXPECT_EQ(r.corrupted, 3U);
}

// Independent oracle: enumerate patterns with bitmasks and count clean sets directly.
TEST(Corruption, MatchesBruteForce) {
  const auto code = load_fixture("fig4");
  const auto r = corruption_trial(code, Rational(1, 4));
  Rational worst(1);
  for (std::uint32_t mask = 0; mask < (1U << 8); ++mask) {
    if (__builtin_popcount(mask) != 2) continue;
    for (const auto& ss : code.supersets()) {
      std::int64_t clean = 0;
      for (const auto& set : ss.sets) {
        bool hit = false;
        for (auto m : set) hit = hit || ((mask >> m) & 1U);
        if (!hit) ++clean;
      }
      worst = std::min(worst, Rational(clean, static_cast<std::int64_t>(ss.sets.size())));
    }
  }
  EXPECT_EQ(r.worst, worst);
}

TEST(Corruption, SerialAndParallelAgree) {
  const auto code = build_sldc(3, 2);
  CorruptionOptions s;
  s.exec = Exec::kSerial;
  const auto a = corruption_trial(code, Rational(2, 9), s);
  const auto b = corruption_trial(code, Rational(2, 9));
  EXPECT_EQ(a.worst, b.worst);
  EXPECT_EQ(a.worst_pattern, b.worst_pattern);
  EXPECT_EQ(a.worst_source, b.worst_source);
  EXPECT_EQ(a.min_success, b.min_success);
}

}  // namespace
}  // namespace pirmax
