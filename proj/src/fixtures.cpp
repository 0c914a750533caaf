#include "pirmax/fixtures.hpp"

#include <cctype>
#include <optional>

#include "pirmax/construct.hpp"

namespace pirmax {

namespace {

struct Transcript {
  const char* name;
  std::uint32_t n;
  std::uint32_t k;
  std::size_t lw;
  std::size_t lx;
  std::vector<std::vector<std::string_view>> symbols;      // rows per X_m
  std::vector<std::vector<std::vector<std::uint32_t>>> sets;  // per W_k, 1-based labels
  std::vector<std::uint32_t> groups;                          // empty = none
};

const std::vector<Transcript>& transcripts() {
  static const std::vector<Transcript> all = {
      {"fig1", 2, 3, 1, 1,
       {{"a1"}, {"b1"}, {"c1"}, {"b1+c1"}, {"a1+b1"}, {"c1+a1"}},
       {{{1, 4}, {2, 5}, {3, 6}}, {{1, 5}, {2, 6}, {3, 4}}, {{1, 6}, {2, 4}, {3, 5}}},
       {0, 0, 0, 1, 1, 1}},
      {"fig2", 2, 3, 4, 6,
       {{"a1", "a2", "b1", "b2", "c1", "c2"},
        {"a3", "a4", "b1", "b3", "c1", "c3"},
        {"a1", "a3", "b3", "b4", "c2", "c4"},
        {"a2", "a4", "b2", "b4", "c3", "c4"}},
       {{{1, 2}, {3, 4}}, {{1, 3}, {2, 4}}, {{1, 4}, {2, 3}}},
       {}},
      {"intro_nonsmooth", 2, 3, 1, 1,
       {{"a1"}, {"b1"}, {"c1"}, {"b1+c1"}},
       {{{1, 2}, {1, 3}, {1, 4}}, {{1, 2}, {2, 3}, {3, 4}}, {{1, 3}, {2, 3}, {2, 4}}},
       {}},
      {"eq28", 2, 2, 4, 3,
       {{"0", "a2", "b3", "a4+b4"},
        {"a1", "0", "a3+b3", "b4"},
        {"a1+b1", "b2", "a3", "0"},
        {"b1", "a2+b2", "0", "a4"}},
       {{{1, 2}, {3, 4}}, {{1, 4}, {2, 3}}},
       {}},
      {"fig4", 2, 3, 8, 7,
       {{"a1", "b1", "c1", "a2+b2", "a3+c2", "b3+c3", "a4+b4+c4"},
        {"a6", "b6", "c4", "a5+b5", "a8+c3", "b8+c2", "a7+b7+c1"},
        {"a7", "b4", "c6", "a8+b3", "a5+c5", "b2+c8", "a6+b1+c7"},
        {"a4", "b7", "c7", "a3+b8", "a2+c8", "b5+c5", "a1+b6+c6"},
        {"a5", "b2", "c2", "a6+b1", "a7+c1", "b4+c4", "a8+b3+c3"},
        {"a2", "b5", "c3", "a1+b6", "a4+c4", "b7+c1", "a3+b8+c2"},
        {"a3", "b3", "c5", "a4+b4", "a1+c6", "b1+c7", "a2+b2+c8"},
        {"a8", "b8", "c8", "a7+b7", "a6+c7", "b6+c6", "a5+b5+c5"}},
       {{{1, 5}, {2, 6}, {3, 7}, {4, 8}}, {{1, 6}, {2, 5}, {3, 8}, {4, 7}}, {{1, 7}, {3, 5}, {2, 8}, {4, 6}}},
       {0, 0, 0, 0, 1, 1, 1, 1}},
  };
  return all;
}

}  // namespace

BitVector parse_equation(std::string_view expr, std::size_t sources, std::size_t source_bits) {
  BitVector row(sources * source_bits);
  if (expr == "0") return row;
  std::size_t pos = 0;
  while (pos < expr.size()) {
    const char letter = expr[pos++];
    if (letter < 'a' || static_cast<std::size_t>(letter - 'a') >= sources) {
      throw CodeError("bad source letter in '" + std::string(expr) + "'");
    }
    std::size_t index = 0;
    const std::size_t start = pos;
    while (pos < expr.size() && std::isdigit(static_cast<unsigned char>(expr[pos]))) {
      index = index * 10 + static_cast<std::size_t>(expr[pos++] - '0');
    }
    if (pos == start || index < 1 || index > source_bits) {
      throw CodeError("bad bit index in '" + std::string(expr) + "'");
    }
    row.flip(static_cast<std::size_t>(letter - 'a') * source_bits + index - 1);
    if (pos < expr.size() && expr[pos++] != '+') throw CodeError("expected '+' in '" + std::string(expr) + "'");
  }
  return row;
}

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& t : transcripts()) out.emplace_back(t.name);
    return out;
  }();
  return names;
}

LinearCode load_fixture(std::string_view name) {
  for (const auto& t : transcripts()) {
    if (name != t.name) continue;
    LinearCode::Parts parts;
    parts.name = t.name;
    parts.params = CodeParams{t.n, t.k, t.symbols.size(), t.lw, t.lx};
    parts.column_order = kGenericColumnOrder;
    const std::size_t cols = t.k * t.lw;
    for (std::uint32_t m = 0; m < t.symbols.size(); ++m) {
      BitMatrix g(0, cols);
      for (auto expr : t.symbols[m]) g.append_row(parse_equation(expr, t.k, t.lw));
      parts.generators.push_back(std::move(g));
      std::optional<std::uint32_t> group;
      if (!t.groups.empty()) group = t.groups[m];
      parts.symbols.push_back(SymbolInfo{{m}, group});
    }
    for (std::uint32_t k = 0; k < t.k; ++k) {
      DecodingSuperset ss{k, {}};
      for (const auto& labels : t.sets[k]) {
        DecodingSet set;
        for (auto l : labels) set.push_back(l - 1);
        ss.sets.push_back(std::move(set));
      }
      parts.supersets.push_back(std::move(ss));
    }
    return LinearCode::make(std::move(parts));
  }
  std::string valid;
  for (const auto& n : fixture_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw CodeError("unknown fixture '" + std::string(name) + "'; valid names: " + valid);
}

}  // namespace pirmax
