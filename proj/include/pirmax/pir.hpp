#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pirmax/capacity.hpp"
#include "pirmax/code.hpp"

namespace pirmax {

/// The code's symbols cannot be split over N databases with every decoding set a transversal.
class PartitionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Query index outside a database's answer list.
class QueryRangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// One way to retrieve W_k: a query per database plus the code set it realizes.
struct PirDecodingSet {
  std::vector<std::uint32_t> queries;  ///< queries[n] indexes databases[n]
  std::size_t code_set = 0;            ///< index in the code's superset for k
};

/**
 * A PIR_max scheme over a linear code. Database n answers query q with coded
 * symbol databases[n][q]. Retrieving W_k picks one of sets[k] with the
 * probabilities in probability[k].
 */
struct PirScheme {
  LinearCode code;
  std::vector<std::vector<std::uint32_t>> databases;
  std::vector<std::vector<PirDecodingSet>> sets;
  std::vector<std::vector<Rational>> probability;
  bool replicated = false;

  std::uint32_t servers() const { return static_cast<std::uint32_t>(databases.size()); }
  std::size_t queries(std::uint32_t n) const { return databases.at(n).size(); }
};

/**
 * Group n of the code becomes database n; answers in symbol order. Codes
 * without group metadata are partitioned by exhaustive search (first
 * assignment in symbol order). Uniform choice over each superset.
 */
PirScheme scheme_from_sldc(const LinearCode& code);

/// Group id per symbol making every decoding set a transversal of N groups.
std::vector<std::uint32_t> find_transversal_partition(const LinearCode& code);

/**
 * Every database stores every symbol; each decoding set is used with each of
 * its N! assignments of members to databases. Gives deniability for any
 * universal code, at N times the storage.
 */
PirScheme replicated_scheme(const LinearCode& code);

/// Same scheme with the given choice distribution for each message (audits accept any).
PirScheme with_probabilities(PirScheme scheme, std::vector<std::vector<Rational>> probability);

struct QueryBundle {
  std::uint32_t theta = 0;  ///< 0-based desired message, client side only
  std::size_t set_id = 0;   ///< index into scheme.sets[theta]
  std::vector<std::uint32_t> queries;
};

/// Uniform index in [0, n) by rejection sampling; identical on every platform.
std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n);

QueryBundle gen_query(const PirScheme& scheme, std::uint32_t theta, std::mt19937_64& rng);

BitVector answer(const PirScheme& scheme, std::uint32_t n, std::uint32_t q, const MessageBlock& messages);

/// answer(scheme, n, q, messages) for every q of database n.
std::vector<BitVector> answer_table(const PirScheme& scheme, std::uint32_t n, const MessageBlock& messages);

/// W_theta from the N answers (answers[n] = reply of database n).
BitVector reconstruct(const PirScheme& scheme, const QueryBundle& bundle, const std::vector<BitVector>& answers);

struct PrivacyWitness {
  std::uint32_t database = 0;
  std::uint32_t query = 0;
  std::uint32_t source = 0;
  std::uint32_t other_source = 0;
};

struct AuditResult {
  bool pass = true;
  bool uniform = true;  ///< every row equals 1 / queries(n)
  /// table[n][k][q] = Prob(q_n = q | desired W_k)
  std::vector<std::vector<std::vector<Rational>>> table;
  std::optional<PrivacyWitness> witness;
};

/// Exact query distributions per database and message; pass iff identical across messages.
AuditResult privacy_audit(const PirScheme& scheme);
/// Pass iff every (n, q) is used by some positive-probability set of every message.
AuditResult deniability_audit(const PirScheme& scheme);

struct CostMetrics {
  std::vector<double> upload_bits;  ///< log2 of each database's query count
  double max_upload_bits = 0;
  std::size_t max_download_bits = 0;  ///< L_x
  Rational rate;                      ///< L_w / (N L_x)
};

CostMetrics cost_metrics(const PirScheme& scheme);

/// {"version", "kind": "scheme", "code": code document, "databases": [[symbol, ...] per database], "replicated"}.
nlohmann::json scheme_to_json(const PirScheme& scheme);
/// Accepts a scheme document or a bare code document (scheme_from_sldc of it).
PirScheme scheme_from_json(const nlohmann::json& doc);

}  // namespace pirmax
