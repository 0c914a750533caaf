#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "pirmax/capacity.hpp"
#include "pirmax/codec.hpp"
#include "pirmax/construct.hpp"
#include "pirmax/fixtures.hpp"
#include "pirmax/pir.hpp"
#include "support.hpp"

namespace pirmax {
namespace {

using testing::random_bits;

PirScheme drop_set(PirScheme s, std::uint32_t k, std::size_t index) {
  s.sets[k].erase(s.sets[k].begin() + static_cast<std::ptrdiff_t>(index));
  const auto count = static_cast<std::int64_t>(s.sets[k].size());
  s.probability[k].assign(s.sets[k].size(), Rational(1, count));
  return s;
}

TEST(SchemeFromSldc, Layouts) {
  const auto s23 = scheme_from_sldc(build_sldc(2, 3));
  ASSERT_EQ(s23.servers(), 2U);
  EXPECT_EQ(s23.queries(0), 4U);
  EXPECT_EQ(s23.queries(1), 4U);
  // group 0: p in {000, 011, 101, 110}
  EXPECT_EQ(s23.databases[0], (std::vector<std::uint32_t>{0, 3, 5, 6}));
  EXPECT_EQ(s23.databases[1], (std::vector<std::uint32_t>{1, 2, 4, 7}));

  const auto s22 = scheme_from_sldc(build_sldc(2, 2));
  EXPECT_EQ(s22.databases, (std::vector<std::vector<std::uint32_t>>{{0, 3}, {1, 2}}));
}

TEST(SchemeFromSldc, EachSetQueriesEveryDatabaseOnce) {
  const auto s = scheme_from_sldc(build_sldc(3, 2));
  for (std::uint32_t k = 0; k < 2; ++k) {
    for (const auto& set : s.sets[k]) {
      ASSERT_EQ(set.queries.size(), 3U);
      std::vector<std::uint32_t> symbols;
      for (std::uint32_t n = 0; n < 3; ++n) symbols.push_back(s.databases[n][set.queries[n]]);
      std::sort(symbols.begin(), symbols.end());
      auto code_set = s.code.superset(k).sets[set.code_set];
      std::sort(code_set.begin(), code_set.end());
      EXPECT_EQ(symbols, code_set);
    }
  }
}

TEST(SchemeFromSldc, Fig2HasNoPartition) {
  EXPECT_THROW(scheme_from_sldc(load_fixture("fig2")), PartitionError);
  EXPECT_THROW(find_transversal_partition(load_fixture("fig2")), PartitionError);
}

TEST(SchemeFromSldc, SearchRecoversFig4Groups) {
  const auto fig4 = load_fixture("fig4");
  const auto groups = find_transversal_partition(fig4.with_groups(std::vector<std::optional<std::uint32_t>>(8)));
  for (std::uint32_t m = 0; m < 8; ++m) EXPECT_EQ(groups[m], *fig4.group(m));
}

TEST(UniformIndex, InRangeAndDeterministic) {
  std::mt19937_64 a(99);
  std::mt19937_64 b(99);
  for (int i = 0; i < 1000; ++i) {
    const auto x = uniform_index(a, 7);
    EXPECT_LT(x, 7U);
    EXPECT_EQ(x, uniform_index(b, 7));
  }
}

TEST(GenQuery, SetIdIsUniform) {
  const auto s = scheme_from_sldc(build_sldc(2, 3));
  std::mt19937_64 rng(101);
  const int draws = 40000;
  std::vector<int> counts(4);
  for (int i = 0; i < draws; ++i) ++counts[gen_query(s, 1, rng).set_id];
  double chi2 = 0;
  for (int c : counts) chi2 += (c - draws / 4.0) * (c - draws / 4.0) / (draws / 4.0);
  EXPECT_LT(chi2, 16.27);  // 3 degrees of freedom, p = 0.001
}

TEST(GenQuery, QueriesStayInRange) {
  const auto s = scheme_from_sldc(build_sldc(2, 3));
  std::mt19937_64 rng(103);
  for (int i = 0; i < 200; ++i) {
    const auto b = gen_query(s, static_cast<std::uint32_t>(i % 3), rng);
    for (auto q : b.queries) EXPECT_LT(q, 4U);
  }
}

TEST(GenQuery, SingleSourceIsFixed) {
  const auto s = scheme_from_sldc(build_sldc(3, 1));
  std::mt19937_64 rng(107);
  const auto first = gen_query(s, 0, rng);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(gen_query(s, 0, rng).queries, first.queries);
}

TEST(Answer, Basics) {
  const auto s = scheme_from_sldc(build_sldc(2, 3));
  const BitVector zero(s.code.message_bits());
  for (std::uint32_t n = 0; n < 2; ++n) {
    for (std::uint32_t q = 0; q < 4; ++q) {
      const auto a = answer(s, n, q, zero);
      EXPECT_EQ(a.size(), 7U);
      EXPECT_FALSE(a.any());
    }
  }
  EXPECT_THROW(answer(s, 0, 4, zero), QueryRangeError);
}

TEST(Answer, IsTheAddressedSymbol) {
  const auto s = scheme_from_sldc(build_sldc(2, 2));
  BitVector msg(8);
  msg.set(0);  // a_1 at gamma (0,0)
  EXPECT_EQ(answer(s, 0, 1, msg).to_string(), "100");  // X_11
  EXPECT_EQ(answer(s, 1, 1, msg).to_string(), "100");  // X_10
  EXPECT_EQ(answer(s, 0, 0, msg).to_string(), "000");  // X_00
  const auto table = answer_table(s, 1, msg);
  ASSERT_EQ(table.size(), 2U);
  EXPECT_EQ(table[1], answer(s, 1, 1, msg));
}

TEST(Reconstruct, RoundTripOverGrid) {
  std::mt19937_64 rng(109);
  for (std::uint32_t n : {2U, 3U, 4U}) {
    for (std::uint32_t k : {1U, 2U, 3U}) {
      if (n == 4 && k == 3) continue;
      const auto s = scheme_from_sldc(build_sldc(n, k));
      const auto msg = random_bits(rng, s.code.message_bits());
      for (std::uint32_t theta = 0; theta < k; ++theta) {
        for (int trial = 0; trial < 4; ++trial) {
          const auto b = gen_query(s, theta, rng);
          std::vector<BitVector> answers;
          for (std::uint32_t db = 0; db < n; ++db) answers.push_back(answer(s, db, b.queries[db], msg));
          EXPECT_EQ(reconstruct(s, b, answers), source_slice(s.code, msg, theta));
        }
      }
    }
  }
}

TEST(Reconstruct, RetrievedMessageIsEightBits) {
  const auto s = scheme_from_sldc(build_sldc(2, 3));
  std::mt19937_64 rng(113);
  const auto msg = random_bits(rng, s.code.message_bits());
  const auto b = gen_query(s, 2, rng);
  std::vector<BitVector> answers;
  for (std::uint32_t db = 0; db < 2; ++db) answers.push_back(answer(s, db, b.queries[db], msg));
  EXPECT_EQ(reconstruct(s, b, answers).size(), 8U);
}

TEST(Reconstruct, TamperedAnswerIsNotSilentlyAccepted) {
  const auto s = scheme_from_sldc(build_sldc(2, 3));
  std::mt19937_64 rng(127);
  const auto msg = random_bits(rng, s.code.message_bits());
  for (int trial = 0; trial < 20; ++trial) {
    const auto b = gen_query(s, 0, rng);
    std::vector<BitVector> answers;
    for (std::uint32_t db = 0; db < 2; ++db) answers.push_back(answer(s, db, b.queries[db], msg));
    answers[trial % 2].flip(static_cast<std::size_t>(trial) % 7);
    try {
      EXPECT_NE(reconstruct(s, b, answers), source_slice(s.code, msg, 0));
    } catch (const DecodeError&) {
    }
  }
}

TEST(PrivacyAudit, UniformOnSldcSchemes) {
  for (auto [n, k, den] : {std::tuple{2U, 2U, 2}, {2U, 3U, 4}}) {
    const auto r = privacy_audit(scheme_from_sldc(build_sldc(n, k)));
    EXPECT_TRUE(r.pass);
    EXPECT_TRUE(r.uniform);
    for (const auto& db : r.table) {
      for (const auto& row : db) {
        for (const auto& p : row) EXPECT_EQ(p, Rational(1, den));
      }
    }
  }
}

TEST(PrivacyAudit, MissingSetIsCaught) {
  const auto s = drop_set(scheme_from_sldc(build_sldc(2, 3)), 0, 0);
  const auto r = privacy_audit(s);
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->source, 0U);
  EXPECT_LT(r.witness->source, r.witness->other_source);
  const auto& w = *r.witness;
  EXPECT_NE(r.table[w.database][w.source][w.query], r.table[w.database][w.other_source][w.query]);
  // each row still sums to one
  for (const auto& db : r.table) {
    for (const auto& row : db) {
      Rational sum;
      for (const auto& p : row) sum += p;
      EXPECT_EQ(sum, Rational(1));
    }
  }
}

TEST(DeniabilityAudit, Examples) {
  EXPECT_TRUE(deniability_audit(replicated_scheme(load_fixture("intro_nonsmooth"))).pass);
  EXPECT_FALSE(privacy_audit(replicated_scheme(load_fixture("intro_nonsmooth"))).pass);

  // Answer (database 1, q = 0) never serves W_2.
  auto s = scheme_from_sldc(build_sldc(2, 2));
  std::size_t victim = 0;
  for (std::size_t i = 0; i < s.sets[1].size(); ++i) {
    if (s.sets[1][i].queries[0] == 0) victim = i;
  }
  const auto r = deniability_audit(drop_set(s, 1, victim));
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->database, 0U);
  EXPECT_EQ(r.witness->query, 0U);
  EXPECT_EQ(r.witness->source, 1U);

  // Zero probability counts as never used.
  std::vector<std::vector<Rational>> probs = s.probability;
  probs[1][victim] = Rational(0);
  probs[1][1 - victim] = Rational(1);
  EXPECT_FALSE(deniability_audit(with_probabilities(s, probs)).pass);
}

TEST(Audits, GridInvariants) {
  for (std::uint32_t n : {2U, 3U, 4U}) {
    for (std::uint32_t k : {1U, 2U, 3U}) {
      if (n == 4 && k == 3) continue;
      const auto s = scheme_from_sldc(build_sldc(n, k));
      const auto p = privacy_audit(s);
      EXPECT_TRUE(p.pass && p.uniform) << n << "," << k;
      EXPECT_TRUE(deniability_audit(s).pass);
      const auto c = cost_metrics(s);
      EXPECT_EQ(c.rate, pir_capacity(n, k));
      for (double u : c.upload_bits) EXPECT_NEAR(u, min_upload_bits(n, k), 1e-12);
      // Scheme-level smoothness: every answer serves the same number of sets for each message.
      for (std::uint32_t db = 0; db < n; ++db) {
        for (std::uint32_t q = 0; q < s.queries(db); ++q) {
          std::vector<std::size_t> uses(k);
          for (std::uint32_t src = 0; src < k; ++src) {
            for (const auto& set : s.sets[src]) uses[src] += set.queries[db] == q;
          }
          for (auto u : uses) EXPECT_EQ(u, uses[0]);
        }
      }
    }
  }
}

TEST(CostMetrics, Examples) {
  const auto c23 = cost_metrics(scheme_from_sldc(build_sldc(2, 3)));
  EXPECT_DOUBLE_EQ(c23.max_upload_bits, 2.0);
  EXPECT_EQ(c23.max_download_bits, 7U);
  EXPECT_EQ(c23.rate, Rational(4, 7));
  const auto c33 = cost_metrics(scheme_from_sldc(build_sldc(3, 3)));
  EXPECT_NEAR(c33.max_upload_bits, std::log2(9.0), 1e-12);
  EXPECT_EQ(c33.rate, Rational(9, 13));
  const auto c1 = cost_metrics(scheme_from_sldc(build_sldc(3, 1)));
  EXPECT_DOUBLE_EQ(c1.max_upload_bits, 0.0);
  EXPECT_EQ(c1.rate, Rational(1));
}

TEST(SchemeJson, RoundTrip) {
  const auto s = scheme_from_sldc(load_fixture("fig4"));
  const auto back = scheme_from_json(scheme_to_json(s));
  EXPECT_EQ(back.databases, s.databases);
  EXPECT_EQ(back.replicated, s.replicated);
  EXPECT_EQ(back.sets.size(), s.sets.size());
  const auto rep = replicated_scheme(load_fixture("intro_nonsmooth"));
  const auto rep_back = scheme_from_json(scheme_to_json(rep));
  EXPECT_TRUE(rep_back.replicated);
  EXPECT_EQ(rep_back.databases, rep.databases);
}

TEST(SchemeJson, BareCodeDocumentIsAccepted) {
  const auto code = build_sldc(2, 2);
  const auto s = scheme_from_json(code_to_json(code));
  EXPECT_EQ(s.databases, scheme_from_sldc(code).databases);
}

TEST(SchemeJson, EditedDatabasesAreRejected) {
  auto doc = scheme_to_json(scheme_from_sldc(build_sldc(2, 2)));
  std::swap(doc["databases"][0][0], doc["databases"][1][0]);
  EXPECT_THROW(scheme_from_json(doc), CodeError);
}

}  // namespace
}  // namespace pirmax
