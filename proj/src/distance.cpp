#include "pirmax/distance.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "pirmax/entropy.hpp"

namespace pirmax {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

std::vector<std::uint32_t> unrank_combination(std::uint64_t r, std::uint32_t n, std::uint32_t k) {
  std::vector<std::uint32_t> out;
  out.reserve(k);
  std::uint32_t next = 0;
  for (std::uint32_t slot = 0; slot < k; ++slot) {
    for (std::uint32_t x = next; x < n; ++x) {
      const std::uint64_t with_x = binomial(n - x - 1, k - slot - 1);
      if (r < with_x) {
        out.push_back(x);
        next = x + 1;
        break;
      }
      r -= with_x;
    }
  }
  return out;
}

namespace {

std::vector<std::uint32_t> random_subset(std::mt19937_64& rng, std::uint32_t n, std::uint32_t k) {
  std::vector<std::uint32_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0U);
  for (std::uint32_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng() % (n - i)]);
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

// Bit k set when W_k is not determined by the symbols outside `erased`.
std::uint64_t lost_messages(const EntropyOracle& oracle, const std::vector<std::uint32_t>& erased) {
  const auto m = static_cast<std::uint32_t>(oracle.code().length());
  std::vector<std::uint32_t> survivors;
  survivors.reserve(m - erased.size());
  for (std::uint32_t i = 0, j = 0; i < m; ++i) {
    if (j < erased.size() && erased[j] == i) {
      ++j;
    } else {
      survivors.push_back(i);
    }
  }
  std::uint64_t lost = 0;
  for (std::uint32_t k = 0; k < oracle.code().sources(); ++k) {
    if (oracle.residual(k, survivors) > 0) lost |= std::uint64_t{1} << k;
  }
  return lost;
}

// Witness order: fewer lost messages, then smaller lowest lost message, then pattern order.
bool better(std::uint64_t a, std::uint64_t b) {
  const int pa = std::popcount(a);
  const int pb = std::popcount(b);
  if (pa != pb) return pa < pb;
  return std::countr_zero(a) < std::countr_zero(b);
}

void fill_witness(DistanceReport& r, const std::vector<std::uint32_t>& erasure, std::uint64_t lost) {
  r.distance = erasure.size();
  r.erasure = erasure;
  r.lost.clear();
  for (std::uint32_t k = 0; k < 64; ++k) {
    if ((lost >> k) & 1U) r.lost.push_back(k);
  }
}

}  // namespace

DistanceReport min_distance(const LinearCode& code, const DistanceOptions& options) {
  const EntropyOracle oracle(code);
  const auto m = static_cast<std::uint32_t>(code.length());
  DistanceReport report;
  if (!options.sampled) {
    if (m > options.exact_limit) {
      throw SearchBudgetError("exact minimum-distance search is limited to M <= " +
                              std::to_string(options.exact_limit) + " (M=" + std::to_string(m) +
                              "); use sampled mode");
    }
    for (std::uint32_t e = 1; e <= m; ++e) {
      const std::uint64_t count = binomial(m, e);
      const auto lost = map_indices<std::uint64_t>(count, options.exec, [&](std::size_t r) {
        return lost_messages(oracle, unrank_combination(r, m, e));
      });
      report.patterns_checked += count;
      std::optional<std::size_t> best;
      for (std::size_t r = 0; r < count; ++r) {
        if (lost[r] != 0 && (!best || better(lost[r], lost[*best]))) best = r;
      }
      if (best) {
        fill_witness(report, unrank_combination(*best, m, e), lost[*best]);
        return report;
      }
    }
    return report;
  }

  report.exact = false;
  std::mt19937_64 rng(options.seed);
  for (std::uint32_t e = 1; e <= m; ++e) {
    std::vector<std::vector<std::uint32_t>> patterns;
    const std::uint64_t total = binomial(m, e);
    if (total <= options.samples) {
      for (std::uint64_t r = 0; r < total; ++r) patterns.push_back(unrank_combination(r, m, e));
    } else {
      for (std::size_t s = 0; s < options.samples; ++s) patterns.push_back(random_subset(rng, m, e));
      std::sort(patterns.begin(), patterns.end());
      patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());
    }
    const auto lost = map_indices<std::uint64_t>(patterns.size(), options.exec,
                                                 [&](std::size_t i) { return lost_messages(oracle, patterns[i]); });
    report.patterns_checked += patterns.size();
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < patterns.size(); ++i) {
      if (lost[i] != 0 && (!best || better(lost[i], lost[*best]))) best = i;
    }
    if (best) {
      fill_witness(report, patterns[*best], lost[*best]);
      report.exact = total <= options.samples;
      return report;
    }
  }
  return report;
}

namespace {

struct ChunkResult {
  std::vector<std::size_t> min_clean;   // per message
  std::vector<std::uint64_t> at;        // pattern id reaching it first
};

}  // namespace

CorruptionReport corruption_trial(const LinearCode& code, const Rational& delta, const CorruptionOptions& options) {
  if (delta < Rational(0) || Rational(1) < delta) throw DomainError("corruption fraction must lie in [0, 1]");
  const auto m = static_cast<std::uint32_t>(code.length());
  const std::uint32_t kk = code.sources();
  CorruptionReport report;
  report.delta = delta;
  report.corrupted = static_cast<std::size_t>(
      static_cast<unsigned __int128>(delta.num()) * m / static_cast<unsigned __int128>(delta.den()));
  report.guarantee = Rational(1) - delta * Rational(code.locality());
  if (!(delta < Rational(1, code.locality()))) {
    report.warning = "delta=" + delta.str() + " >= 1/N: the 1 - delta N guarantee is void";
  }
  const auto c = static_cast<std::uint32_t>(report.corrupted);

  std::vector<std::vector<std::uint32_t>> sampled;
  std::uint64_t count = binomial(m, c);
  if (options.sampled && count > options.samples) {
    std::mt19937_64 rng(options.seed);
    for (std::size_t s = 0; s < options.samples; ++s) sampled.push_back(random_subset(rng, m, c));
    count = sampled.size();
    report.exact = false;
  } else if (!options.sampled && m > options.exact_limit) {
    throw SearchBudgetError("exact corruption enumeration is limited to M <= " + std::to_string(options.exact_limit) +
                            " (M=" + std::to_string(m) + "); use sampled mode");
  }
  report.patterns = count;
  const auto pattern = [&](std::uint64_t id) { return sampled.empty() ? unrank_combination(id, m, c) : sampled[id]; };

  constexpr std::uint64_t kChunks = 256;
  const std::uint64_t chunk = (count + kChunks - 1) / kChunks;
  const std::uint64_t nchunks = chunk == 0 ? 0 : (count + chunk - 1) / chunk;
  const auto parts = map_indices<ChunkResult>(nchunks, options.exec, [&](std::size_t ci) {
    ChunkResult out{std::vector<std::size_t>(kk, std::numeric_limits<std::size_t>::max()),
                    std::vector<std::uint64_t>(kk, 0)};
    std::vector<char> bad(m);
    for (std::uint64_t id = ci * chunk; id < std::min<std::uint64_t>(count, (ci + 1) * chunk); ++id) {
      std::fill(bad.begin(), bad.end(), 0);
      for (auto x : pattern(id)) bad[x] = 1;
      for (std::uint32_t k = 0; k < kk; ++k) {
        std::size_t clean = 0;
        for (const auto& set : code.superset(k).sets) {
          clean += std::none_of(set.begin(), set.end(), [&](std::uint32_t x) { return bad[x] != 0; });
        }
        if (clean < out.min_clean[k]) {
          out.min_clean[k] = clean;
          out.at[k] = id;
        }
      }
    }
    return out;
  });

  std::vector<std::size_t> min_clean(kk, std::numeric_limits<std::size_t>::max());
  std::vector<std::uint64_t> at(kk, 0);
  for (const auto& p : parts) {
    for (std::uint32_t k = 0; k < kk; ++k) {
      if (p.min_clean[k] < min_clean[k]) {
        min_clean[k] = p.min_clean[k];
        at[k] = p.at[k];
      }
    }
  }
  report.worst = Rational(1);
  for (std::uint32_t k = 0; k < kk; ++k) {
    const auto total = static_cast<std::int64_t>(code.superset(k).sets.size());
    const Rational p(static_cast<std::int64_t>(min_clean[k]), total);
    report.min_success.push_back(p);
    if (min_clean[k] == 0) report.clean_set_always = false;
    if (k == 0 || p < report.worst) {
      report.worst = p;
      report.worst_source = k;
      report.worst_pattern = pattern(at[k]);
    }
  }
  return report;
}

}  // namespace pirmax
