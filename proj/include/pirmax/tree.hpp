#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pirmax/code.hpp"
#include "pirmax/exec.hpp"

namespace pirmax {

/// No decoding set of the required source contains a node's symbol.
class TreeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One decoding set placed in the tree. members[0] is the parent's label.
struct TreeNode {
  std::size_t set_index = 0;          ///< index in the superset of this depth's source
  std::vector<std::uint32_t> members; ///< child labels, leftmost = parent
};

/**
 * Full N-ary tree of depth K over decoding sets. Depth d (1-based) holds
 * N^{d-1} decoding sets of source perm[d-1], in breadth-first order; the
 * children of level d, read left to right, are the parents of level d+1.
 */
struct NaryTree {
  std::vector<std::uint32_t> perm;  ///< 0-based sources, depth 1 first
  std::uint32_t root = 0;
  std::vector<std::vector<TreeNode>> levels;

  /// Node labels at depth d in [1, K], left to right (N^d entries).
  std::vector<std::uint32_t> labels(std::size_t depth) const;
  std::vector<std::uint32_t> leaves() const { return labels(levels.size()); }
};

/// How to pick among the decoding sets that contain a node's symbol.
struct TreeChooser {
  enum class Kind { kFirst, kExplicit, kRandom };
  Kind kind = Kind::kFirst;
  /// kExplicit: one entry per decision, breadth-first; each is an index among
  /// the qualifying sets (in superset order).
  std::vector<std::size_t> choices;
  std::uint64_t seed = 0;  ///< kRandom

  static TreeChooser first() { return {}; }
  static TreeChooser explicit_choices(std::vector<std::size_t> c) { return {Kind::kExplicit, std::move(c), 0}; }
  static TreeChooser random(std::uint64_t seed) { return {Kind::kRandom, {}, seed}; }
};

/// Indices (in superset order) of the sets of source k that contain symbol m.
std::vector<std::size_t> qualifying_sets(const LinearCode& code, std::uint32_t k, std::uint32_t m);

NaryTree build_nary_tree(const LinearCode& code, const std::vector<std::uint32_t>& perm, std::uint32_t root,
                         const TreeChooser& chooser);

/// A tree realization: permutation, root and one choice per decision.
struct TreeSpec {
  std::vector<std::uint32_t> perm;
  std::uint32_t root = 0;
  std::vector<std::size_t> choices;
};

struct TreeEnumeration {
  bool exhaustive = false;
  std::vector<TreeSpec> trees;
};

/// Number of distinct realizations over all permutations, roots and choices;
/// stops counting past `cap` and returns cap + 1.
std::uint64_t count_trees(const LinearCode& code, std::uint64_t cap);

/**
 * Every realization when there are at most `budget` of them, otherwise
 * `samples` seeded random ones (uniform permutation, root and choices).
 */
TreeEnumeration enumerate_trees(const LinearCode& code, std::uint64_t budget, std::size_t samples = 100,
                                std::uint64_t seed = 1);

struct LeafReport {
  bool distinct = true;
  std::optional<std::uint32_t> duplicate;  ///< smallest leaf label that occurs more than once
  /// Shallowest depth with a repeated label, and the smallest such label.
  std::optional<std::pair<std::size_t, std::uint32_t>> first_repeat;
};

LeafReport leaf_distinctness(const NaryTree& tree);

/**
 * One inequality of the converse chain at depth d, for the N^{d-1} sets S of
 * source k = perm[d-1] with J = {perm[d], ..., perm[K-1]}:
 *
 *   lhs   = sum_S sum_{i in S} H(X_i | W_J)
 *   rhs   = N^{d-1} L_w + sum_S H(X_parent(S) | W_{k, J})
 *   slack = lhs - rhs
 *         = subadditivity_gap + interference_gap - decoding_residual
 */
struct ConverseLevel {
  std::size_t depth = 0;
  std::uint32_t source = 0;
  std::vector<std::uint32_t> conditioned;
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
  std::int64_t slack = 0;
  std::int64_t subadditivity_gap = 0;  ///< sum_i H(X_i|W_J) - H(S|W_J)
  std::int64_t interference_gap = 0;   ///< H(S|W_{k,J}) - H(X_parent|W_{k,J})
  std::int64_t decoding_residual = 0;  ///< sum_S H(W_k | S, W_J)
};

struct ConverseReport {
  std::vector<ConverseLevel> levels;  ///< depth K first
  std::int64_t leaf_total = 0;        ///< sum of H(X_leaf) over the N^K leaves
  std::int64_t bound = 0;             ///< (N^{K-1} + ... + 1) L_w
  std::int64_t final_slack = 0;       ///< H(X_root | W_1..W_K)
  std::int64_t total_slack = 0;       ///< leaf_total - bound = sum of level slacks + final_slack
  bool tight() const;
};

ConverseReport audit_converse_chain(const LinearCode& code, const NaryTree& tree);

/// Batch audit over many realizations; results in input order.
std::vector<ConverseReport> audit_trees(const LinearCode& code, const std::vector<TreeSpec>& trees,
                                        Exec exec = Exec::kParallel);

}  // namespace pirmax
