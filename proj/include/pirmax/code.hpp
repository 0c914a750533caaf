#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pirmax/capacity.hpp"
#include "pirmax/gf2.hpp"

namespace pirmax {

/// Structural problem with a code description (shapes, ranges, rank profile).
class CodeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A decoding set: N distinct coded-symbol indices, in a fixed order.
using DecodingSet = std::vector<std::uint32_t>;

/// The family of decoding sets for one source symbol, in enumeration order.
struct DecodingSuperset {
  std::uint32_t source = 0;  ///< 0-based k
  std::vector<DecodingSet> sets;

  friend bool operator==(const DecodingSuperset&, const DecodingSuperset&) = default;
};

struct SymbolInfo {
  std::vector<std::uint32_t> digits;  ///< \vec p for constructed codes, {m} otherwise
  std::optional<std::uint32_t> group;

  friend bool operator==(const SymbolInfo&, const SymbolInfo&) = default;
};

/// How message bits map to generator columns and whether the structured decoder applies.
enum class CodeLayout {
  kGeneric,  ///< W_1 bits, then W_2 bits, ...
  kSldc,     ///< output of build_sldc: message k, \vec gamma lexicographic, bit i in [1, N-1]
};

/**
 * A linear code over GF(2): one generator matrix per coded symbol with
 * K * L_w columns (message bits W_1..W_K, L_w each). Rows are the coded
 * symbol's bit equations; identically-zero rows are kept in the matrix to
 * record their position but are not part of the stored/transmitted layout.
 *
 * Invariants enforced by make(): K supersets, each non-empty, every set of
 * exactly N distinct in-range symbols; every generator has rank L_x and
 * exactly L_x nonzero rows; group ids (if any) are in [0, N).
 */
class LinearCode {
 public:
  struct Parts {
    std::string name;
    CodeParams params;
    std::string column_order;
    CodeLayout layout = CodeLayout::kGeneric;
    std::vector<BitMatrix> generators;
    std::vector<SymbolInfo> symbols;
    std::vector<DecodingSuperset> supersets;
  };

  static LinearCode make(Parts parts);

  const std::string& name() const { return parts_.name; }
  const CodeParams& params() const { return parts_.params; }
  std::uint32_t locality() const { return parts_.params.locality; }
  std::uint32_t sources() const { return parts_.params.sources; }
  std::size_t length() const { return parts_.generators.size(); }
  std::size_t source_bits() const { return parts_.params.source_bits; }
  std::size_t symbol_bits() const { return parts_.params.symbol_bits; }
  std::size_t message_bits() const { return sources() * source_bits(); }
  const std::string& column_order() const { return parts_.column_order; }
  CodeLayout layout() const { return parts_.layout; }

  const BitMatrix& generator(std::size_t m) const { return parts_.generators.at(m); }
  const std::vector<BitMatrix>& generators() const { return parts_.generators; }
  /// The L_x nonzero rows of symbol m's generator, in row order.
  const BitMatrix& stored_generator(std::size_t m) const { return stored_.at(m); }
  /// Row indices of symbol m's generator that are identically zero.
  const std::vector<std::size_t>& dropped_rows(std::size_t m) const { return dropped_.at(m); }

  const std::vector<SymbolInfo>& symbols() const { return parts_.symbols; }
  const std::vector<DecodingSuperset>& supersets() const { return parts_.supersets; }
  const DecodingSuperset& superset(std::size_t k) const { return parts_.supersets.at(k); }
  bool has_groups() const;
  std::optional<std::uint32_t> group(std::size_t m) const { return parts_.symbols.at(m).group; }

  /// Columns of message k within the K * L_w message block.
  std::size_t source_column(std::size_t k, std::size_t bit) const { return k * source_bits() + bit; }

  /// Display label, 1-based as in the literature: "X_3".
  static std::string symbol_label(std::size_t m) { return "X_" + std::to_string(m + 1); }
  static std::string source_label(std::size_t k) { return "W_" + std::to_string(k + 1); }

  /// Copy with replaced supersets (used to build negative fixtures); re-validated.
  LinearCode with_supersets(std::vector<DecodingSuperset> supersets) const;
  /// Copy with replaced group metadata; re-validated.
  LinearCode with_groups(const std::vector<std::optional<std::uint32_t>>& groups) const;

  const Parts& parts() const { return parts_; }

 private:
  explicit LinearCode(Parts parts);

  Parts parts_;
  std::vector<BitMatrix> stored_;
  std::vector<std::vector<std::size_t>> dropped_;
};

using MessageBlock = BitVector;

/// Coded symbols: symbol m = stored_generator(m) * msg, L_x bits each.
std::vector<BitVector> encode(const LinearCode& code, const MessageBlock& msg);
BitVector encode_symbol(const LinearCode& code, std::size_t m, const MessageBlock& msg);

/// Bits of message k inside a message block.
BitVector source_slice(const LinearCode& code, const MessageBlock& msg, std::size_t k);

}  // namespace pirmax
