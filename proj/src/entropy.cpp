#include "pirmax/entropy.hpp"

#include <algorithm>

namespace pirmax {

std::vector<std::uint32_t> SourceSet::members() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t k = 0; k < 64; ++k) {
    if (contains(k)) out.push_back(k);
  }
  return out;
}

std::string SourceSet::label() const {
  std::string s;
  for (auto k : members()) s += (s.empty() ? "" : ",") + LinearCode::source_label(k);
  return s.empty() ? "-" : s;
}

EntropyOracle::EntropyOracle(const LinearCode& code) : code_(&code) {
  if (code.sources() > 64) throw CodeError("entropy oracle supports at most 64 sources");
}

std::size_t EntropyOracle::masked_rank(std::span<const std::uint32_t> a, SourceSet removed) const {
  const std::size_t cols = code_->message_bits();
  std::size_t rows = 0;
  for (auto m : a) rows += code_->stored_generator(m).rows();
  if (rows == 0 || cols == 0) return 0;

  BitVector keep(cols);
  for (std::uint32_t k = 0; k < code_->sources(); ++k) {
    if (removed.contains(k)) continue;
    for (std::size_t b = 0; b < code_->source_bits(); ++b) keep.set(code_->source_column(k, b));
  }
  BitMatrix stacked(0, cols);
  for (auto m : a) {
    const BitMatrix& g = code_->stored_generator(m);
    for (std::size_t r = 0; r < g.rows(); ++r) stacked.append_row(g.row(r));
  }
  return rank_masked(stacked, keep);
}

std::size_t EntropyOracle::h(std::span<const std::uint32_t> a, SourceSet given) const { return masked_rank(a, given); }

std::size_t EntropyOracle::joint(std::span<const std::uint32_t> a, SourceSet sources, SourceSet given) const {
  const SourceSet extra = sources.minus(given);
  return extra.size() * code_->source_bits() + masked_rank(a, given | sources);
}

std::size_t EntropyOracle::h_given(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                                   SourceSet given) const {
  std::vector<std::uint32_t> both(a.begin(), a.end());
  both.insert(both.end(), b.begin(), b.end());
  return masked_rank(both, given) - masked_rank(b, given);
}

std::size_t EntropyOracle::residual(std::uint32_t k, std::span<const std::uint32_t> a, SourceSet given) const {
  if (given.contains(k)) return 0;
  // H(W_k | X_A, W_J) = H(X_A, W_k | W_J) - H(X_A | W_J)
  return joint(a, SourceSet::only(k), given) - masked_rank(a, given);
}

std::size_t conditional_entropy(const LinearCode& code, const EntropyQuery& q) {
  for (auto m : q.symbols) {
    if (m >= code.length()) throw std::out_of_range("symbol index out of range in entropy query");
  }
  if (q.given.minus(SourceSet::all(code.sources())).bits() != 0) {
    throw std::out_of_range("source index out of range in entropy query");
  }
  return EntropyOracle(code).h(q.symbols, q.given);
}

}  // namespace pirmax
