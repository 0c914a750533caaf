#include "pirmax/checks.hpp"

#include <algorithm>
#include <tuple>

namespace pirmax {

namespace {

std::string cond(std::uint32_t a, std::optional<std::uint32_t> b, SourceSet given) {
  std::string s = "H(" + LinearCode::symbol_label(a);
  std::string rhs;
  if (b) rhs = LinearCode::symbol_label(*b);
  if (given.size() > 0) rhs += (rhs.empty() ? "" : ", ") + given.label();
  if (!rhs.empty()) s += " | " + rhs;
  return s + ")";
}

// A pair inside one decoding set: (k, set index, member positions).
struct SetPair {
  std::uint32_t k;
  std::size_t set;
  std::uint32_t i1;
  std::uint32_t i2;
};

std::vector<SetPair> set_pairs(const LinearCode& code, bool ordered) {
  std::vector<SetPair> out;
  for (std::uint32_t k = 0; k < code.sources(); ++k) {
    const auto& sets = code.superset(k).sets;
    for (std::size_t s = 0; s < sets.size(); ++s) {
      for (std::size_t a = 0; a < sets[s].size(); ++a) {
        for (std::size_t b = ordered ? 0 : a + 1; b < sets[s].size(); ++b) {
          if (a != b) out.push_back({k, s, sets[s][a], sets[s][b]});
        }
      }
    }
  }
  return out;
}

}  // namespace

CorrectnessReport check_correctness(const LinearCode& code, Exec exec) {
  const EntropyOracle oracle(code);
  std::vector<std::pair<std::uint32_t, std::size_t>> items;
  for (std::uint32_t k = 0; k < code.sources(); ++k) {
    for (std::size_t s = 0; s < code.superset(k).sets.size(); ++s) items.emplace_back(k, s);
  }
  const auto residual = map_indices<std::size_t>(items.size(), exec, [&](std::size_t i) {
    const auto [k, s] = items[i];
    return oracle.residual(k, code.superset(k).sets[s]);
  });
  CorrectnessReport report;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (residual[i] != 0) report.violations.push_back({items[i].first, items[i].second, residual[i]});
  }
  report.pass = report.violations.empty();
  return report;
}

std::vector<std::vector<std::size_t>> membership_counts(const LinearCode& code) {
  std::vector<std::vector<std::size_t>> counts(code.sources(), std::vector<std::size_t>(code.length(), 0));
  for (std::uint32_t k = 0; k < code.sources(); ++k) {
    for (const auto& set : code.superset(k).sets) {
      for (auto m : set) ++counts[k][m];
    }
  }
  return counts;
}

SmoothnessReport check_smoothness(const LinearCode& code) {
  SmoothnessReport r;
  r.membership = membership_counts(code);
  for (std::uint32_t k = 0; k < code.sources() && !r.witness; ++k) {
    for (std::uint32_t m = 1; m < code.length(); ++m) {
      if (r.membership[k][m] != r.membership[k][0]) {
        r.witness = {k, m};
        break;
      }
    }
  }
  r.pass = !r.witness;
  return r;
}

UniversalityReport check_universality(const LinearCode& code) {
  UniversalityReport r;
  const auto counts = membership_counts(code);
  for (std::uint32_t k = 0; k < code.sources() && !r.witness; ++k) {
    for (std::uint32_t m = 0; m < code.length(); ++m) {
      if (counts[k][m] == 0) {
        r.witness = {k, m};
        break;
      }
    }
  }
  r.pass = !r.witness;
  return r;
}

bool same_information(const EntropyOracle& oracle, std::uint32_t i1, std::uint32_t i2, SourceSet about) {
  if (i1 == i2) return true;
  const SourceSet given = about.complement(oracle.code().sources());
  const std::uint32_t a[] = {i1};
  const std::uint32_t b[] = {i2};
  return oracle.h_given(a, b, given) == 0 && oracle.h_given(b, a, given) == 0;
}

bool distinct_information(const EntropyOracle& oracle, std::uint32_t i1, std::uint32_t i2, std::uint32_t k) {
  const SourceSet given = SourceSet::all_but(k, oracle.code().sources());
  const std::uint32_t a[] = {i1};
  const std::uint32_t b[] = {i2};
  return oracle.h_given(a, b, given) == oracle.h(a, given);
}

const char* property_id(Property p) {
  switch (p) {
    case Property::kNonZeroEntropy: return "P1";
    case Property::kSameInterference: return "P2a";
    case Property::kDistinctDesired: return "P2b";
    case Property::kIndependence: return "P2c";
    case Property::kIncompatibility: return "P3";
  }
  return "?";
}

const char* property_name(Property p) {
  switch (p) {
    case Property::kNonZeroEntropy: return "non-zero entropy";
    case Property::kSameInterference: return "same interference";
    case Property::kDistinctDesired: return "distinct desired information";
    case Property::kIndependence: return "independence of coded symbols";
    case Property::kIncompatibility: return "incompatibility of same and distinct information";
  }
  return "?";
}

bool PropertyReport::all_pass() const {
  return universal && std::all_of(verdicts.begin(), verdicts.end(), [](const PropertyVerdict& v) { return v.pass; });
}

PropertyReport check_capacity_properties(const LinearCode& code, Exec exec) {
  const EntropyOracle oracle(code);
  const std::uint32_t kk = code.sources();
  const auto m = static_cast<std::uint32_t>(code.length());
  PropertyReport report;
  report.universal = check_universality(code).pass;

  // P1: order (i, k).
  {
    PropertyVerdict v{Property::kNonZeroEntropy, true, std::nullopt};
    auto hit = find_first(std::size_t{m} * kk, exec, [&](std::size_t idx) {
      const auto i = static_cast<std::uint32_t>(idx / kk);
      const auto k = static_cast<std::uint32_t>(idx % kk);
      return oracle.h({i}, SourceSet::all_but(k, kk)) == 0;
    });
    if (hit) {
      const auto i = static_cast<std::uint32_t>(*hit / kk);
      const auto k = static_cast<std::uint32_t>(*hit % kk);
      v.pass = false;
      v.witness = PropertyWitness{k, {}, {}, i, i, cond(i, {}, SourceSet::all_but(k, kk)) + " = 0"};
    }
    report.verdicts.push_back(std::move(v));
  }

  // P2a: order (k, set, unordered member pair, k').
  {
    PropertyVerdict v{Property::kSameInterference, true, std::nullopt};
    std::vector<std::tuple<SetPair, std::uint32_t>> items;
    for (const auto& sp : set_pairs(code, false)) {
      for (std::uint32_t k2 = 0; k2 < kk; ++k2) {
        if (k2 != sp.k) items.emplace_back(sp, k2);
      }
    }
    auto hit = find_first(items.size(), exec, [&](std::size_t idx) {
      const auto& [sp, k2] = items[idx];
      return !same_information(oracle, sp.i1, sp.i2, SourceSet::only(k2));
    });
    if (hit) {
      const auto& [sp, k2] = items[*hit];
      const SourceSet given = SourceSet::all_but(k2, kk);
      const std::uint32_t a[] = {sp.i1};
      const std::uint32_t b[] = {sp.i2};
      v.pass = false;
      v.witness = PropertyWitness{sp.k, k2, sp.set, sp.i1, sp.i2,
                                  cond(sp.i2, sp.i1, given) + " = " + std::to_string(oracle.h_given(b, a, given)) + ", " +
                                      cond(sp.i1, sp.i2, given) + " = " + std::to_string(oracle.h_given(a, b, given)) +
                                      " (both must be 0)"};
    }
    report.verdicts.push_back(std::move(v));
  }

  const auto ordered = set_pairs(code, true);

  // P2b: order (k, set, ordered member pair).
  {
    PropertyVerdict v{Property::kDistinctDesired, true, std::nullopt};
    auto hit = find_first(ordered.size(), exec, [&](std::size_t idx) {
      const auto& sp = ordered[idx];
      return !distinct_information(oracle, sp.i1, sp.i2, sp.k);
    });
    if (hit) {
      const auto& sp = ordered[*hit];
      const SourceSet given = SourceSet::all_but(sp.k, kk);
      const std::uint32_t a[] = {sp.i1};
      const std::uint32_t b[] = {sp.i2};
      v.pass = false;
      v.witness = PropertyWitness{sp.k, {}, sp.set, sp.i1, sp.i2,
                                  cond(sp.i1, sp.i2, given) + " = " + std::to_string(oracle.h_given(a, b, given)) +
                                      " != " + cond(sp.i1, {}, given) + " = " + std::to_string(oracle.h(a, given))};
    }
    report.verdicts.push_back(std::move(v));
  }

  // P2c: order (k, set, ordered member pair).
  {
    PropertyVerdict v{Property::kIndependence, true, std::nullopt};
    auto hit = find_first(ordered.size(), exec, [&](std::size_t idx) {
      const auto& sp = ordered[idx];
      const std::uint32_t a[] = {sp.i1};
      const std::uint32_t b[] = {sp.i2};
      return oracle.h_given(a, b, {}) != oracle.h(a);
    });
    if (hit) {
      const auto& sp = ordered[*hit];
      const std::uint32_t a[] = {sp.i1};
      const std::uint32_t b[] = {sp.i2};
      v.pass = false;
      v.witness = PropertyWitness{sp.k, {}, sp.set, sp.i1, sp.i2,
                                  cond(sp.i1, sp.i2, {}) + " = " + std::to_string(oracle.h_given(a, b, {})) + " != " +
                                      cond(sp.i1, {}, {}) + " = " + std::to_string(oracle.h(a))};
    }
    report.verdicts.push_back(std::move(v));
  }

  // P3: order (k, i1, i2), i1 == i2 included.
  {
    PropertyVerdict v{Property::kIncompatibility, true, std::nullopt};
    const std::size_t mm = m;
    auto hit = find_first(std::size_t{kk} * mm * mm, exec, [&](std::size_t idx) {
      const auto k = static_cast<std::uint32_t>(idx / (mm * mm));
      const auto i1 = static_cast<std::uint32_t>(idx / mm % mm);
      const auto i2 = static_cast<std::uint32_t>(idx % mm);
      return same_information(oracle, i1, i2, SourceSet::only(k)) && distinct_information(oracle, i1, i2, k);
    });
    if (hit) {
      const auto k = static_cast<std::uint32_t>(*hit / (mm * mm));
      const auto i1 = static_cast<std::uint32_t>(*hit / mm % mm);
      const auto i2 = static_cast<std::uint32_t>(*hit % mm);
      v.pass = false;
      v.witness = PropertyWitness{k, {}, {}, i1, i2,
                                  LinearCode::symbol_label(i1) + " and " + LinearCode::symbol_label(i2) +
                                      " carry both the same and distinct information about " + LinearCode::source_label(k)};
    }
    report.verdicts.push_back(std::move(v));
  }
  return report;
}

}  // namespace pirmax
