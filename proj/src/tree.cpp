#include "pirmax/tree.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>

#include "pirmax/entropy.hpp"

namespace pirmax {

std::vector<std::uint32_t> NaryTree::labels(std::size_t depth) const {
  if (depth == 0) return {root};
  std::vector<std::uint32_t> out;
  for (const auto& node : levels.at(depth - 1)) out.insert(out.end(), node.members.begin(), node.members.end());
  return out;
}

std::vector<std::size_t> qualifying_sets(const LinearCode& code, std::uint32_t k, std::uint32_t m) {
  std::vector<std::size_t> out;
  const auto& sets = code.superset(k).sets;
  for (std::size_t s = 0; s < sets.size(); ++s) {
    if (std::find(sets[s].begin(), sets[s].end(), m) != sets[s].end()) out.push_back(s);
  }
  return out;
}

namespace {

using Pick = std::function<std::size_t(std::size_t decision, std::size_t count)>;

void validate_perm(const LinearCode& code, const std::vector<std::uint32_t>& perm, std::uint32_t root) {
  std::vector<std::uint32_t> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::uint32_t> expect(code.sources());
  std::iota(expect.begin(), expect.end(), 0U);
  if (sorted != expect) throw TreeError("tree permutation must list every source exactly once");
  if (root >= code.length()) throw TreeError("tree root out of range: " + std::to_string(root));
}

// Builds the tree, asking `pick` at every decision; `counts` receives the
// number of qualifying sets seen at each decision and `picked` the choices.
NaryTree build_with(const LinearCode& code, const std::vector<std::uint32_t>& perm, std::uint32_t root,
                    const Pick& pick, std::vector<std::size_t>* counts, std::vector<std::size_t>* picked) {
  validate_perm(code, perm, root);
  NaryTree tree;
  tree.perm = perm;
  tree.root = root;
  std::vector<std::uint32_t> parents{root};
  std::size_t decision = 0;
  for (std::size_t d = 0; d < perm.size(); ++d) {
    const std::uint32_t k = perm[d];
    std::vector<TreeNode> level;
    level.reserve(parents.size());
    for (std::size_t pos = 0; pos < parents.size(); ++pos) {
      const std::uint32_t parent = parents[pos];
      const auto q = qualifying_sets(code, k, parent);
      if (q.empty()) {
        throw TreeError("no decoding set of " + LinearCode::source_label(k) + " contains " +
                        LinearCode::symbol_label(parent) + " (depth " + std::to_string(d + 1) + ", node " +
                        std::to_string(pos) + ")");
      }
      const std::size_t c = pick(decision, q.size());
      if (c >= q.size()) {
        throw TreeError("choice " + std::to_string(c) + " at decision " + std::to_string(decision) + " exceeds the " +
                        std::to_string(q.size()) + " qualifying sets");
      }
      if (counts) counts->push_back(q.size());
      if (picked) picked->push_back(c);
      ++decision;
      TreeNode node;
      node.set_index = q[c];
      node.members.push_back(parent);
      for (auto m : code.superset(k).sets[node.set_index]) {
        if (m != parent) node.members.push_back(m);
      }
      level.push_back(std::move(node));
    }
    parents.clear();
    for (const auto& node : level) parents.insert(parents.end(), node.members.begin(), node.members.end());
    tree.levels.push_back(std::move(level));
  }
  return tree;
}

// Odometer over all choice vectors for a fixed (perm, root). Returns false
// when `visit` asks to stop.
bool for_each_choice(const LinearCode& code, const std::vector<std::uint32_t>& perm, std::uint32_t root,
                     const std::function<bool(std::vector<std::size_t>)>& visit) {
  std::vector<std::size_t> prefix;
  for (;;) {
    std::vector<std::size_t> counts;
    std::vector<std::size_t> picked;
    build_with(
        code, perm, root, [&](std::size_t i, std::size_t) { return i < prefix.size() ? prefix[i] : 0; }, &counts,
        &picked);
    if (!visit(picked)) return false;
    std::size_t j = picked.size();
    while (j > 0 && picked[j - 1] + 1 >= counts[j - 1]) --j;
    if (j == 0) return true;
    prefix.assign(picked.begin(), picked.begin() + static_cast<std::ptrdiff_t>(j));
    ++prefix.back();
  }
}

std::vector<std::uint32_t> identity_perm(std::uint32_t k) {
  std::vector<std::uint32_t> p(k);
  std::iota(p.begin(), p.end(), 0U);
  return p;
}

}  // namespace

NaryTree build_nary_tree(const LinearCode& code, const std::vector<std::uint32_t>& perm, std::uint32_t root,
                         const TreeChooser& chooser) {
  switch (chooser.kind) {
    case TreeChooser::Kind::kFirst:
      return build_with(code, perm, root, [](std::size_t, std::size_t) { return std::size_t{0}; }, nullptr, nullptr);
    case TreeChooser::Kind::kExplicit:
      return build_with(
          code, perm, root,
          [&](std::size_t i, std::size_t) {
            if (i >= chooser.choices.size()) {
              throw TreeError("explicit chooser has " + std::to_string(chooser.choices.size()) +
                              " choices; more decisions needed");
            }
            return chooser.choices[i];
          },
          nullptr, nullptr);
    case TreeChooser::Kind::kRandom: {
      std::mt19937_64 rng(chooser.seed);
      return build_with(
          code, perm, root, [&](std::size_t, std::size_t count) { return static_cast<std::size_t>(rng() % count); },
          nullptr, nullptr);
    }
  }
  throw TreeError("unknown chooser");
}

std::uint64_t count_trees(const LinearCode& code, std::uint64_t cap) {
  std::uint64_t total = 0;
  auto perm = identity_perm(code.sources());
  do {
    for (std::uint32_t root = 0; root < code.length(); ++root) {
      const bool go_on = for_each_choice(code, perm, root, [&](const std::vector<std::size_t>&) { return ++total <= cap; });
      if (!go_on) return cap + 1;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

TreeEnumeration enumerate_trees(const LinearCode& code, std::uint64_t budget, std::size_t samples, std::uint64_t seed) {
  TreeEnumeration out;
  if (count_trees(code, budget) <= budget) {
    out.exhaustive = true;
    auto perm = identity_perm(code.sources());
    do {
      for (std::uint32_t root = 0; root < code.length(); ++root) {
        for_each_choice(code, perm, root, [&](std::vector<std::size_t> c) {
          out.trees.push_back({perm, root, std::move(c)});
          return true;
        });
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    auto perm = identity_perm(code.sources());
    for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng() % i]);
    const auto root = static_cast<std::uint32_t>(rng() % code.length());
    std::vector<std::size_t> picked;
    build_with(
        code, perm, root, [&](std::size_t, std::size_t count) { return static_cast<std::size_t>(rng() % count); },
        nullptr, &picked);
    out.trees.push_back({std::move(perm), root, std::move(picked)});
  }
  return out;
}

LeafReport leaf_distinctness(const NaryTree& tree) {
  LeafReport r;
  for (std::size_t d = 1; d <= tree.levels.size(); ++d) {
    std::map<std::uint32_t, std::size_t> seen;
    for (auto m : tree.labels(d)) ++seen[m];
    for (const auto& [m, n] : seen) {
      if (n < 2) continue;
      if (!r.first_repeat) r.first_repeat = {d, m};
      if (d == tree.levels.size()) {
        r.duplicate = m;
        r.distinct = false;
      }
      break;
    }
  }
  return r;
}

bool ConverseReport::tight() const {
  return final_slack == 0 &&
         std::all_of(levels.begin(), levels.end(), [](const ConverseLevel& l) { return l.slack == 0; });
}

ConverseReport audit_converse_chain(const LinearCode& code, const NaryTree& tree) {
  const EntropyOracle oracle(code);
  const auto kk = static_cast<std::uint32_t>(tree.perm.size());
  if (kk != code.sources() || tree.levels.size() != kk) throw TreeError("tree does not match the code's source count");
  const auto lw = static_cast<std::int64_t>(code.source_bits());
  const auto as_i = [](std::size_t v) { return static_cast<std::int64_t>(v); };

  ConverseReport report;
  for (std::size_t d = kk; d >= 1; --d) {
    ConverseLevel level;
    level.depth = d;
    level.source = tree.perm[d - 1];
    SourceSet given;
    for (std::size_t j = d; j < kk; ++j) {
      given = given.with(tree.perm[j]);
      level.conditioned.push_back(tree.perm[j]);
    }
    const SourceSet with_k = given.with(level.source);
    for (const auto& node : tree.levels[d - 1]) {
      std::int64_t sum = 0;
      for (auto m : node.members) sum += as_i(oracle.h({m}, given));
      const std::int64_t h_set = as_i(oracle.h(node.members, given));
      const std::int64_t h_set_k = as_i(oracle.h(node.members, with_k));
      const std::int64_t h_parent = as_i(oracle.h({node.members.front()}, with_k));
      level.lhs += sum;
      level.rhs += lw + h_parent;
      level.subadditivity_gap += sum - h_set;
      level.interference_gap += h_set_k - h_parent;
      level.decoding_residual += as_i(oracle.residual(level.source, node.members, given));
    }
    level.slack = level.lhs - level.rhs;
    report.levels.push_back(std::move(level));
  }
  for (auto m : tree.leaves()) report.leaf_total += as_i(oracle.h({m}));
  std::int64_t width = 1;
  for (std::uint32_t d = 0; d < kk; ++d) {
    report.bound += width * lw;
    width *= code.locality();
  }
  report.final_slack = as_i(oracle.h({tree.root}, SourceSet::all(kk)));
  report.total_slack = report.leaf_total - report.bound;
  return report;
}

std::vector<ConverseReport> audit_trees(const LinearCode& code, const std::vector<TreeSpec>& trees, Exec exec) {
  return map_indices<ConverseReport>(trees.size(), exec, [&](std::size_t i) {
    const auto& t = trees[i];
    return audit_converse_chain(code, build_nary_tree(code, t.perm, t.root, TreeChooser::explicit_choices(t.choices)));
  });
}

}  // namespace pirmax
