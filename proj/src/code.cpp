#include "pirmax/code.hpp"

#include <algorithm>

namespace pirmax {

namespace {

std::string where(const std::string& name) { return name.empty() ? std::string("code") : "code '" + name + "'"; }

}  // namespace

LinearCode::LinearCode(Parts parts) : parts_(std::move(parts)) {}

LinearCode LinearCode::make(Parts parts) {
  const auto& p = parts.params;
  const std::string ctx = where(parts.name);
  if (p.locality < 1 || p.sources < 1) throw CodeError(ctx + ": N and K must be at least 1");
  if (parts.generators.size() != p.length) {
    throw CodeError(ctx + ": params say M=" + std::to_string(p.length) + " but " +
                    std::to_string(parts.generators.size()) + " generators given");
  }
  if (p.length < p.locality) throw CodeError(ctx + ": M must be at least N");
  if (p.source_bits < 1) throw CodeError(ctx + ": L_w must be at least 1");
  if (parts.symbols.empty()) {
    parts.symbols.resize(p.length);
    for (std::uint32_t m = 0; m < p.length; ++m) parts.symbols[m].digits = {m};
  }
  if (parts.symbols.size() != p.length) throw CodeError(ctx + ": symbol metadata count != M");

  LinearCode code(std::move(parts));
  const auto& q = code.parts_;
  const std::size_t cols = static_cast<std::size_t>(p.sources) * p.source_bits;
  code.stored_.reserve(q.generators.size());
  code.dropped_.reserve(q.generators.size());
  for (std::size_t m = 0; m < q.generators.size(); ++m) {
    const BitMatrix& g = q.generators[m];
    if (g.cols() != cols) {
      throw CodeError(ctx + ": generator of " + symbol_label(m) + " has " + std::to_string(g.cols()) +
                      " columns, expected K*L_w=" + std::to_string(cols));
    }
    std::vector<std::size_t> keep;
    std::vector<std::size_t> dropped;
    for (std::size_t r = 0; r < g.rows(); ++r) {
      (g.row_is_zero(r) ? dropped : keep).push_back(r);
    }
    BitMatrix stored = g.select_rows(keep);
    const std::size_t rk = rank(stored);
    if (rk != p.symbol_bits || keep.size() != p.symbol_bits) {
      throw CodeError(ctx + ": " + symbol_label(m) + " has " + std::to_string(keep.size()) +
                      " nonzero rows of rank " + std::to_string(rk) + ", expected L_x=" +
                      std::to_string(p.symbol_bits) + " independent rows");
    }
    code.stored_.push_back(std::move(stored));
    code.dropped_.push_back(std::move(dropped));
  }

  if (q.supersets.size() != p.sources) {
    throw CodeError(ctx + ": expected " + std::to_string(p.sources) + " decoding supersets, got " +
                    std::to_string(q.supersets.size()));
  }
  for (std::size_t k = 0; k < q.supersets.size(); ++k) {
    const auto& ss = q.supersets[k];
    if (ss.source != k) throw CodeError(ctx + ": superset " + std::to_string(k) + " labelled for another source");
    if (ss.sets.empty()) throw CodeError(ctx + ": decoding superset of " + source_label(k) + " is empty");
    for (const auto& set : ss.sets) {
      if (set.size() != p.locality) {
        throw CodeError(ctx + ": a decoding set of " + source_label(k) + " has " + std::to_string(set.size()) +
                        " members, expected N=" + std::to_string(p.locality));
      }
      std::vector<std::uint32_t> sorted(set);
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw CodeError(ctx + ": a decoding set of " + source_label(k) + " repeats a symbol");
      }
      if (sorted.back() >= p.length) {
        throw CodeError(ctx + ": a decoding set of " + source_label(k) + " references symbol index " +
                        std::to_string(sorted.back()) + " >= M");
      }
    }
  }
  for (const auto& s : q.symbols) {
    if (s.group && *s.group >= p.locality) throw CodeError(ctx + ": group id out of range [0, N)");
  }
  const bool some = std::any_of(q.symbols.begin(), q.symbols.end(), [](const SymbolInfo& s) { return s.group.has_value(); });
  const bool all = std::all_of(q.symbols.begin(), q.symbols.end(), [](const SymbolInfo& s) { return s.group.has_value(); });
  if (some && !all) throw CodeError(ctx + ": group metadata must be given for every symbol or none");
  return code;
}

bool LinearCode::has_groups() const {
  return !parts_.symbols.empty() && parts_.symbols.front().group.has_value();
}

LinearCode LinearCode::with_supersets(std::vector<DecodingSuperset> supersets) const {
  Parts p = parts_;
  p.supersets = std::move(supersets);
  return make(std::move(p));
}

LinearCode LinearCode::with_groups(const std::vector<std::optional<std::uint32_t>>& groups) const {
  Parts p = parts_;
  if (groups.size() != p.symbols.size()) throw CodeError("group list length != M");
  for (std::size_t m = 0; m < groups.size(); ++m) p.symbols[m].group = groups[m];
  return make(std::move(p));
}

BitVector encode_symbol(const LinearCode& code, std::size_t m, const MessageBlock& msg) {
  if (msg.size() != code.message_bits()) {
    throw DimensionError("message block has " + std::to_string(msg.size()) + " bits, expected K*L_w=" +
                         std::to_string(code.message_bits()));
  }
  return mat_vec_mul(code.stored_generator(m), msg);
}

std::vector<BitVector> encode(const LinearCode& code, const MessageBlock& msg) {
  std::vector<BitVector> out;
  out.reserve(code.length());
  for (std::size_t m = 0; m < code.length(); ++m) out.push_back(encode_symbol(code, m, msg));
  return out;
}

BitVector source_slice(const LinearCode& code, const MessageBlock& msg, std::size_t k) {
  return msg.slice(code.source_column(k, 0), code.source_bits());
}

}  // namespace pirmax
