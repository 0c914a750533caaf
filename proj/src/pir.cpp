#include "pirmax/pir.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "pirmax/codec.hpp"
#include "pirmax/construct.hpp"

namespace pirmax {

namespace {

std::vector<std::vector<Rational>> uniform(const std::vector<std::vector<PirDecodingSet>>& sets) {
  std::vector<std::vector<Rational>> out;
  for (const auto& s : sets) {
    out.emplace_back(s.size(), Rational(1, static_cast<std::int64_t>(s.size())));
  }
  return out;
}

}  // namespace

std::vector<std::uint32_t> find_transversal_partition(const LinearCode& code) {
  const std::size_t m = code.length();
  const std::uint32_t n = code.locality();
  // Two symbols conflict when some decoding set holds both.
  std::vector<std::vector<std::uint32_t>> conflicts(m);
  for (const auto& ss : code.supersets()) {
    for (const auto& set : ss.sets) {
      for (auto a : set) {
        for (auto b : set) {
          if (a != b) conflicts[a].push_back(b);
        }
      }
    }
  }
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> group(m, kUnset);
  // Groups are opened in order, so the first assignment found is canonical.
  std::function<bool(std::size_t, std::uint32_t)> place = [&](std::size_t i, std::uint32_t opened) {
    if (i == m) return true;
    for (std::uint32_t g = 0; g < std::min(n, opened + 1); ++g) {
      const bool clash = std::any_of(conflicts[i].begin(), conflicts[i].end(),
                                     [&](std::uint32_t o) { return group[o] == g; });
      if (clash) continue;
      group[i] = g;
      if (place(i + 1, std::max(opened, g + 1))) return true;
    }
    group[i] = kUnset;
    return false;
  };
  if (!place(0, 0)) {
    throw PartitionError("no split of the " + std::to_string(m) + " symbols of " + code.name() + " into " +
                         std::to_string(n) + " databases makes every decoding set take one symbol per database");
  }
  return group;
}

PirScheme scheme_from_sldc(const LinearCode& code) {
  std::vector<std::uint32_t> group(code.length());
  if (code.has_groups()) {
    for (std::size_t m = 0; m < code.length(); ++m) group[m] = *code.group(m);
  } else {
    group = find_transversal_partition(code);
  }
  const std::uint32_t n = code.locality();
  std::vector<std::vector<std::uint32_t>> databases(n);
  std::vector<std::uint32_t> rank_in_group(code.length());
  for (std::uint32_t m = 0; m < code.length(); ++m) {
    rank_in_group[m] = static_cast<std::uint32_t>(databases[group[m]].size());
    databases[group[m]].push_back(m);
  }
  std::vector<std::vector<PirDecodingSet>> sets(code.sources());
  for (std::uint32_t k = 0; k < code.sources(); ++k) {
    const auto& family = code.superset(k).sets;
    for (std::size_t s = 0; s < family.size(); ++s) {
      PirDecodingSet ps{std::vector<std::uint32_t>(n, std::numeric_limits<std::uint32_t>::max()), s};
      for (auto m : family[s]) {
        if (ps.queries[group[m]] != std::numeric_limits<std::uint32_t>::max()) {
          throw PartitionError("decoding set " + std::to_string(s) + " of " + LinearCode::source_label(k) +
                               " has two symbols in group " + std::to_string(group[m]));
        }
        ps.queries[group[m]] = rank_in_group[m];
      }
      sets[k].push_back(std::move(ps));
    }
  }
  auto probability = uniform(sets);
  return PirScheme{code, std::move(databases), std::move(sets), std::move(probability), false};
}

PirScheme replicated_scheme(const LinearCode& code) {
  const std::uint32_t n = code.locality();
  std::vector<std::uint32_t> all(code.length());
  std::iota(all.begin(), all.end(), 0U);
  std::vector<std::vector<std::uint32_t>> databases(n, all);
  std::vector<std::vector<PirDecodingSet>> sets(code.sources());
  for (std::uint32_t k = 0; k < code.sources(); ++k) {
    const auto& family = code.superset(k).sets;
    for (std::size_t s = 0; s < family.size(); ++s) {
      std::vector<std::uint32_t> order(family[s].begin(), family[s].end());
      std::sort(order.begin(), order.end());
      do {
        sets[k].push_back({order, s});
      } while (std::next_permutation(order.begin(), order.end()));
    }
  }
  auto probability = uniform(sets);
  return PirScheme{code, std::move(databases), std::move(sets), std::move(probability), true};
}

PirScheme with_probabilities(PirScheme scheme, std::vector<std::vector<Rational>> probability) {
  if (probability.size() != scheme.sets.size()) throw std::invalid_argument("one distribution per message required");
  for (std::size_t k = 0; k < probability.size(); ++k) {
    if (probability[k].size() != scheme.sets[k].size()) {
      throw std::invalid_argument("distribution for " + LinearCode::source_label(k) + " has the wrong length");
    }
    Rational total;
    for (const auto& p : probability[k]) total += p;
    if (total != Rational(1)) throw std::invalid_argument("distribution for " + LinearCode::source_label(k) + " sums to " + total.str());
  }
  scheme.probability = std::move(probability);
  return scheme;
}

std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index over an empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

QueryBundle gen_query(const PirScheme& scheme, std::uint32_t theta, std::mt19937_64& rng) {
  if (theta >= scheme.sets.size()) throw std::out_of_range("message index out of range: " + std::to_string(theta));
  const auto id = static_cast<std::size_t>(uniform_index(rng, scheme.sets[theta].size()));
  return {theta, id, scheme.sets[theta][id].queries};
}

BitVector answer(const PirScheme& scheme, std::uint32_t n, std::uint32_t q, const MessageBlock& messages) {
  if (n >= scheme.servers()) throw QueryRangeError("database index out of range: " + std::to_string(n));
  if (q >= scheme.queries(n)) {
    throw QueryRangeError("query " + std::to_string(q) + " out of range for database " + std::to_string(n + 1) +
                          " (" + std::to_string(scheme.queries(n)) + " answers)");
  }
  return encode_symbol(scheme.code, scheme.databases[n][q], messages);
}

std::vector<BitVector> answer_table(const PirScheme& scheme, std::uint32_t n, const MessageBlock& messages) {
  std::vector<BitVector> out;
  for (std::uint32_t q = 0; q < scheme.queries(n); ++q) out.push_back(answer(scheme, n, q, messages));
  return out;
}

BitVector reconstruct(const PirScheme& scheme, const QueryBundle& bundle, const std::vector<BitVector>& answers) {
  const auto& ps = scheme.sets.at(bundle.theta).at(bundle.set_id);
  if (answers.size() != scheme.servers()) throw DecodeError("expected one answer per database");
  const auto& members = scheme.code.superset(bundle.theta).sets.at(ps.code_set);
  std::vector<BitVector> values(members.size());
  for (std::uint32_t n = 0; n < scheme.servers(); ++n) {
    const std::uint32_t symbol = scheme.databases[n].at(ps.queries[n]);
    const auto it = std::find(members.begin(), members.end(), symbol);
    if (it == members.end()) throw DecodeError("query bundle does not match its decoding set");
    values[static_cast<std::size_t>(it - members.begin())] = answers[n];
  }
  return decode(scheme.code, bundle.theta, ps.code_set, values);
}

namespace {

AuditResult tabulate(const PirScheme& scheme) {
  AuditResult r;
  for (std::uint32_t n = 0; n < scheme.servers(); ++n) {
    std::vector<std::vector<Rational>> per_k;
    for (std::size_t k = 0; k < scheme.sets.size(); ++k) {
      std::vector<Rational> dist(scheme.queries(n));
      for (std::size_t s = 0; s < scheme.sets[k].size(); ++s) dist[scheme.sets[k][s].queries[n]] += scheme.probability[k][s];
      per_k.push_back(std::move(dist));
    }
    r.table.push_back(std::move(per_k));
  }
  for (std::uint32_t n = 0; n < scheme.servers(); ++n) {
    const Rational u(1, static_cast<std::int64_t>(scheme.queries(n)));
    for (const auto& dist : r.table[n]) {
      r.uniform = r.uniform && std::all_of(dist.begin(), dist.end(), [&](const Rational& p) { return p == u; });
    }
  }
  return r;
}

}  // namespace

AuditResult privacy_audit(const PirScheme& scheme) {
  AuditResult r = tabulate(scheme);
  const auto kk = static_cast<std::uint32_t>(scheme.sets.size());
  for (std::uint32_t n = 0; n < scheme.servers() && r.pass; ++n) {
    for (std::uint32_t q = 0; q < scheme.queries(n) && r.pass; ++q) {
      for (std::uint32_t k = 0; k < kk && r.pass; ++k) {
        for (std::uint32_t k2 = k + 1; k2 < kk; ++k2) {
          if (r.table[n][k][q] != r.table[n][k2][q]) {
            r.pass = false;
            r.witness = PrivacyWitness{n, q, k, k2};
            break;
          }
        }
      }
    }
  }
  return r;
}

AuditResult deniability_audit(const PirScheme& scheme) {
  AuditResult r = tabulate(scheme);
  const auto kk = static_cast<std::uint32_t>(scheme.sets.size());
  for (std::uint32_t n = 0; n < scheme.servers() && r.pass; ++n) {
    for (std::uint32_t q = 0; q < scheme.queries(n) && r.pass; ++q) {
      for (std::uint32_t k = 0; k < kk; ++k) {
        bool used = false;
        for (std::size_t i = 0; i < scheme.sets[k].size() && !used; ++i) {
          used = scheme.sets[k][i].queries[n] == q && scheme.probability[k][i] > Rational(0);
        }
        if (!used) {
          r.pass = false;
          r.witness = PrivacyWitness{n, q, k, k};
          break;
        }
      }
    }
  }
  return r;
}

CostMetrics cost_metrics(const PirScheme& scheme) {
  CostMetrics c;
  for (std::uint32_t n = 0; n < scheme.servers(); ++n) {
    const double bits = std::log2(static_cast<double>(scheme.queries(n)));
    c.upload_bits.push_back(bits);
    c.max_upload_bits = std::max(c.max_upload_bits, bits);
  }
  c.max_download_bits = scheme.code.symbol_bits();
  c.rate = Rational(static_cast<std::int64_t>(scheme.code.source_bits()),
                    static_cast<std::int64_t>(scheme.servers() * scheme.code.symbol_bits()));
  return c;
}

nlohmann::json scheme_to_json(const PirScheme& scheme) {
  nlohmann::json doc;
  doc["version"] = kFormatVersion;
  doc["kind"] = "scheme";
  doc["code"] = code_to_json(scheme.code);
  doc["databases"] = scheme.databases;
  doc["replicated"] = scheme.replicated;
  return doc;
}

PirScheme scheme_from_json(const nlohmann::json& doc) {
  if (doc.value("kind", "code") != "scheme") return scheme_from_sldc(code_from_json(doc));
  const LinearCode code = code_from_json(doc.at("code"));
  PirScheme scheme = doc.value("replicated", false) ? replicated_scheme(code) : scheme_from_sldc(code);
  if (doc.contains("databases") && doc.at("databases").get<std::vector<std::vector<std::uint32_t>>>() != scheme.databases) {
    throw CodeError("scheme databases do not match the layout derived from its code");
  }
  return scheme;
}

}  // namespace pirmax
