#include "pirmax/construct.hpp"

#include <algorithm>
#include <utility>

namespace pirmax {

std::vector<std::uint32_t> to_digits(std::uint64_t index, std::uint32_t base, std::uint32_t width) {
  std::vector<std::uint32_t> d(width, 0);
  for (std::uint32_t i = width; i-- > 0;) {
    d[i] = static_cast<std::uint32_t>(index % base);
    index /= base;
  }
  return d;
}

std::uint64_t from_digits(std::span<const std::uint32_t> digits, std::uint32_t base) {
  std::uint64_t v = 0;
  for (auto d : digits) v = v * base + d;
  return v;
}

namespace {

void check_budget(std::uint32_t n, std::uint32_t k, const BuildLimits& limits) {
  if (n < 2) throw DomainError("build_sldc needs N >= 2 (got N=" + std::to_string(n) + ")");
  if (k < 1) throw DomainError("build_sldc needs K >= 1");
  std::uint64_t symbols = 0;
  try {
    symbols = checked_power(n, k);
  } catch (const DomainError&) {
    throw BudgetError("size budget exceeded: N^K overflows (limit max_symbols=" +
                      std::to_string(limits.max_symbols) + ")");
  }
  if (symbols > limits.max_symbols) {
    throw BudgetError("size budget exceeded: N^K=" + std::to_string(symbols) + " > max_symbols=" +
                      std::to_string(limits.max_symbols));
  }
  const unsigned __int128 bits = static_cast<unsigned __int128>(symbols) * symbols * k * symbols * (n - 1);
  if (bits > limits.max_generator_bits) {
    throw BudgetError("size budget exceeded: dense generators need " +
                      std::to_string(static_cast<unsigned long long>(std::min<unsigned __int128>(bits, ~0ULL))) +
                      " bits > max_generator_bits=" + std::to_string(limits.max_generator_bits));
  }
}

}  // namespace

std::vector<DecodingSuperset> enumerate_supersets(std::uint32_t n, std::uint32_t k) {
  if (n < 2 || k < 1) throw DomainError("enumerate_supersets needs N >= 2, K >= 1");
  const std::uint64_t others = checked_power(n, k - 1);
  std::vector<DecodingSuperset> out(k);
  std::vector<std::uint32_t> p(k);
  for (std::uint32_t src = 0; src < k; ++src) {
    out[src].source = src;
    out[src].sets.reserve(others);
    for (std::uint64_t r = 0; r < others; ++r) {
      const auto rest = to_digits(r, n, k - 1);
      std::uint32_t sum = 0;
      for (std::uint32_t i = 0, j = 0; i < k; ++i) {
        if (i == src) continue;
        p[i] = rest[j++];
        sum += p[i];
      }
      const std::uint32_t pstar = (n - sum % n) % n;
      DecodingSet set(n);
      for (std::uint32_t j = 0; j < n; ++j) {
        p[src] = (pstar + j) % n;
        set[j] = static_cast<std::uint32_t>(from_digits(p, n));
      }
      out[src].sets.push_back(std::move(set));
    }
  }
  return out;
}

LinearCode build_sldc(std::uint32_t n, std::uint32_t k, const BuildLimits& limits) {
  check_budget(n, k, limits);
  const std::uint64_t count = checked_power(n, k);
  const std::size_t lw = count * (n - 1);
  const std::size_t cols = static_cast<std::size_t>(k) * lw;

  std::vector<std::vector<std::uint32_t>> digits(count);
  for (std::uint64_t i = 0; i < count; ++i) digits[i] = to_digits(i, n, k);

  LinearCode::Parts parts;
  parts.name = "sldc(" + std::to_string(n) + "," + std::to_string(k) + ")";
  parts.params = CodeParams{n, k, count, lw, count - 1};
  parts.column_order = kSldcColumnOrder;
  parts.layout = CodeLayout::kSldc;
  parts.generators.reserve(count);
  parts.symbols.reserve(count);
  for (std::uint64_t m = 0; m < count; ++m) {
    const auto& p = digits[m];
    BitMatrix gen(count, cols);
    for (std::uint64_t g = 0; g < count; ++g) {
      const auto& gamma = digits[g];
      for (std::uint32_t src = 0; src < k; ++src) {
        const std::uint32_t idx = (p[src] + gamma[src]) % n;
        if (idx != 0) gen.set(g, src * lw + g * (n - 1) + (idx - 1));
      }
    }
    parts.generators.push_back(std::move(gen));
    std::uint32_t sum = 0;
    for (auto d : p) sum += d;
    parts.symbols.push_back(SymbolInfo{p, sum % n});
  }
  parts.supersets = enumerate_supersets(n, k);
  return LinearCode::make(std::move(parts));
}

BitVector decode(const LinearCode& code, std::size_t k, std::size_t set_index,
                 std::span<const BitVector> symbol_values) {
  if (k >= code.sources()) throw DecodeError("source index out of range");
  const auto& sets = code.superset(k).sets;
  if (set_index >= sets.size()) {
    throw DecodeError("decoding set " + std::to_string(set_index) + " does not exist for " +
                      LinearCode::source_label(k));
  }
  if (code.layout() == CodeLayout::kSldc) return decode_sldc(code, k, set_index, symbol_values);
  return decode_generic(code, k, sets[set_index], symbol_values);
}

BitVector decode_generic(const LinearCode& code, std::size_t k, std::span<const std::uint32_t> set,
                         std::span<const BitVector> symbol_values) {
  if (symbol_values.size() != set.size()) throw DecodeError("expected one value per decoding-set member");
  const std::size_t lw = code.source_bits();
  const std::size_t cols = code.message_bits();
  const std::size_t lo = k * lw;
  // Interference columns first so that rows pivoting in W_k's block are pure W_k equations.
  auto position = [&](std::size_t c) { return c < lo ? c : (c < lo + lw ? cols - lw + (c - lo) : c - lw); };

  std::vector<BitVector> rows;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const BitMatrix& g = code.stored_generator(set[i]);
    if (symbol_values[i].size() != g.rows()) {
      throw DecodeError(LinearCode::symbol_label(set[i]) + " value has " + std::to_string(symbol_values[i].size()) +
                        " bits, expected L_x=" + std::to_string(g.rows()));
    }
    for (std::size_t r = 0; r < g.rows(); ++r) {
      BitVector row(cols + 1);
      for (std::size_t c = 0; c < cols; ++c) {
        if (g.get(r, c)) row.set(position(c));
      }
      if (symbol_values[i].get(r)) row.set(cols);
      rows.push_back(std::move(row));
    }
  }

  std::vector<std::size_t> pivot_row(cols, rows.size());
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && !rows[p].get(c)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && rows[r].get(c)) rows[r] ^= rows[rank];
    }
    pivot_row[c] = rank++;
  }
  for (std::size_t r = rank; r < rows.size(); ++r) {
    if (rows[r].get(cols)) {
      throw DecodeError("inconsistent symbol values: not a codeword restriction of the decoding set");
    }
  }
  BitVector out(lw);
  for (std::size_t b = 0; b < lw; ++b) {
    const std::size_t pr = pivot_row[cols - lw + b];
    if (pr == rows.size()) {
      throw DecodeError("decoding set does not determine " + LinearCode::source_label(k) + " (bit " +
                        std::to_string(b) + " free)");
    }
    if (rows[pr].get(cols)) out.set(b);
  }
  return out;
}

BitVector decode_sldc(const LinearCode& code, std::size_t k, std::size_t set_index,
                      std::span<const BitVector> symbol_values) {
  if (code.layout() != CodeLayout::kSldc) throw DecodeError("structured decoder needs a build_sldc code");
  const std::uint32_t n = code.locality();
  const std::uint32_t kk = code.sources();
  const auto& set = code.superset(k).sets.at(set_index);
  if (symbol_values.size() != n) throw DecodeError("expected N symbol values");
  for (std::size_t j = 0; j < n; ++j) {
    if (symbol_values[j].size() != code.symbol_bits()) {
      throw DecodeError(LinearCode::symbol_label(set[j]) + " value has " + std::to_string(symbol_values[j].size()) +
                        " bits, expected L_x=" + std::to_string(code.symbol_bits()));
    }
  }
  const std::uint64_t count = code.length();
  const std::size_t lw = code.source_bits();

  // Members are ordered by j with k-th digit p*_k + j; dropped row of member j sits at gamma = -p.
  std::vector<std::uint32_t> kdigit(n);
  std::vector<std::uint64_t> zero_row(n);
  for (std::size_t j = 0; j < n; ++j) {
    kdigit[j] = code.symbols()[set[j]].digits[k];
    zero_row[j] = code.dropped_rows(set[j]).front();
  }
  auto value = [&](std::size_t j, std::uint64_t g) -> bool {
    if (g == zero_row[j]) return false;
    return symbol_values[j].get(g < zero_row[j] ? g : g - 1);
  };

  BitVector out(lw);
  for (std::uint64_t g = 0; g < count; ++g) {
    // gamma_k is digit k of g.
    std::uint64_t t = g;
    for (std::uint32_t i = kk - 1; i > k; --i) t /= n;
    const std::uint32_t gamma_k = static_cast<std::uint32_t>(t % n);
    std::size_t j0 = n;
    for (std::size_t j = 0; j < n; ++j) {
      if ((kdigit[j] + gamma_k) % n == 0) j0 = j;
    }
    const bool interference = value(j0, g);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == j0) continue;
      const std::uint32_t idx = (kdigit[j] + gamma_k) % n;
      if (value(j, g) != interference) out.set(g * (n - 1) + idx - 1);
    }
  }
  return out;
}

}  // namespace pirmax
