#include "pirmax/net/transcript.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pirmax::net {

namespace {

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s / 2;
}

}  // namespace

TranscriptAudit transcript_audit(const std::vector<Transcript>& transcripts, std::size_t messages,
                                 const std::vector<std::size_t>& query_counts, std::size_t min_samples) {
  const std::size_t servers = query_counts.size();
  TranscriptAudit a;
  a.samples.assign(messages, 0);
  std::vector<std::vector<std::vector<std::size_t>>> counts(servers);
  std::vector<std::vector<std::size_t>> pooled(servers);
  for (std::size_t n = 0; n < servers; ++n) {
    counts[n].assign(messages, std::vector<std::size_t>(query_counts[n], 0));
    pooled[n].assign(query_counts[n], 0);
  }
  for (const auto& t : transcripts) {
    if (t.theta >= messages || t.queries.size() != servers) throw std::invalid_argument("transcript does not fit the scheme");
    ++a.samples[t.theta];
    for (std::size_t n = 0; n < servers; ++n) {
      const auto q = t.queries[n];
      if (q >= query_counts[n]) throw std::invalid_argument("transcript query out of range");
      ++counts[n][t.theta][q];
      ++pooled[n][q];
      if (t.upload_wire_bytes.at(n) != transcripts.front().upload_wire_bytes.at(n)) a.constant_upload = false;
    }
  }
  a.low_power = std::any_of(a.samples.begin(), a.samples.end(), [&](std::size_t s) { return s < min_samples; });

  for (std::size_t n = 0; n < servers; ++n) {
    std::vector<std::vector<double>> per_theta;
    for (std::size_t k = 0; k < messages; ++k) {
      std::vector<double> f(query_counts[n], 0.0);
      for (std::size_t q = 0; q < f.size(); ++q) {
        if (a.samples[k] > 0) f[q] = static_cast<double>(counts[n][k][q]) / static_cast<double>(a.samples[k]);
      }
      per_theta.push_back(std::move(f));
    }
    double tv = 0;
    for (std::size_t k = 0; k < messages; ++k) {
      for (std::size_t k2 = k + 1; k2 < messages; ++k2) {
        if (a.samples[k] > 0 && a.samples[k2] > 0) tv = std::max(tv, total_variation(per_theta[k], per_theta[k2]));
      }
    }
    a.max_tv.push_back(tv);
    a.worst_tv = std::max(a.worst_tv, tv);
    a.freq.push_back(std::move(per_theta));

    // Sampling noise of the pooled marginal is about sqrt(Q / T); flag anything three times larger.
    const double total = static_cast<double>(transcripts.size());
    const double q = static_cast<double>(query_counts[n]);
    std::vector<double> marginal(query_counts[n]);
    std::vector<double> uniform(query_counts[n], 1.0 / q);
    for (std::size_t i = 0; i < marginal.size(); ++i) marginal[i] = total > 0 ? static_cast<double>(pooled[n][i]) / total : 0;
    const double mtv = total > 0 ? total_variation(marginal, uniform) : 0;
    a.marginal_tv.push_back(mtv);
    a.nonuniform_marginal.push_back(total > 0 && mtv > 3 * std::sqrt(q / total));
  }
  return a;
}

}  // namespace pirmax::net
