#pragma once

#include <cstddef>
#include <vector>

#include "pirmax/net/client.hpp"

namespace pirmax::net {

/**
 * Empirical shadow of the exact privacy audit: per database, the observed
 * query distribution for each desired message and the largest total
 * variation distance between two messages. Advisory only.
 */
struct TranscriptAudit {
  std::vector<std::size_t> samples;  ///< per message
  /// freq[n][theta][q]
  std::vector<std::vector<std::vector<double>>> freq;
  std::vector<double> max_tv;        ///< per database, max over message pairs
  double worst_tv = 0;
  bool low_power = false;            ///< some message has fewer than min_samples transcripts
  /// Per database: pooled query marginal is farther from uniform than sampling noise explains.
  std::vector<bool> nonuniform_marginal;
  std::vector<double> marginal_tv;   ///< TV of the pooled marginal to uniform
  bool constant_upload = true;       ///< wire upload identical across all transcripts, per database
};

/// query_counts[n] = number of possible queries of database n.
TranscriptAudit transcript_audit(const std::vector<Transcript>& transcripts, std::size_t messages,
                                 const std::vector<std::size_t>& query_counts, std::size_t min_samples = 1000);

}  // namespace pirmax::net
