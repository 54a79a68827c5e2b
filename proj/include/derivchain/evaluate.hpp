#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "derivchain/chain.hpp"
#include "derivchain/percent.hpp"

namespace derivchain {

/// Manually verified relations of one root. The dotted root stands in as
/// the parent lemma of relations that hang directly off the root.
struct GoldTree {
  Root root;
  std::vector<RelationTriple> relations;  // sorted, unique
};

/// Detected is a share of gold lemmas; the three correctness buckets are
/// shares of detected lemmas and always sum to it.
struct MetricsReport {
  std::size_t roots = 0;
  std::size_t lemmas = 0;
  std::size_t detected = 0;
  std::size_t single_correct = 0;
  std::size_t multiple_correct = 0;
  std::size_t no_correct = 0;
  Percent detected_pct, single_pct, multiple_pct, no_correct_pct;

  std::vector<std::string> unpredicted_roots;  // gold roots with no predicted tree
  std::vector<std::string> ungraded_roots;     // predicted roots with no gold tree

  /// Throws ValidationError unless single + multiple + none == detected <= lemmas.
  static MetricsReport from_counts(std::size_t roots, std::size_t lemmas, std::size_t detected,
                                   std::size_t single_correct, std::size_t multiple_correct,
                                   std::size_t no_correct);

  std::string to_table() const;
  std::string to_json() const;
};

struct EvalOptions {
  bool parent_only = false;      // match on parent lemma, ignoring the relation label
  bool strict_multiple = false;  // ambiguous lemmas count only with exactly one matching relation
};

MetricsReport evaluate(std::span<const FamilyTree> predicted, std::span<const GoldTree> gold,
                       const EvalOptions& options = {});

/// Accepts a JSON array of {root, relations: [{child, parent, relation}]}
/// objects or one such object per line. Throws on duplicate roots, unknown
/// relation labels, repeated triples and cyclic relations.
std::vector<GoldTree> load_gold(std::istream& in, const Alphabet& alphabet);
std::vector<GoldTree> load_gold(const std::filesystem::path& path, const Alphabet& alphabet);
std::string gold_to_json(std::span<const GoldTree> gold);

/// Distinct predicted triples of the tree as a gold tree.
GoldTree gold_from_tree(const FamilyTree& tree);

struct TreeDelta {
  std::vector<RelationTriple> missing;   // in gold, not predicted
  std::vector<RelationTriple> spurious;  // predicted, not in gold
  std::vector<std::pair<std::string, std::size_t>> ambiguous;  // lemma, predicted relation count

  bool empty() const { return missing.empty() && spurious.empty() && ambiguous.empty(); }
  std::string to_string() const;
};

/// Throws ValidationError when the roots differ.
TreeDelta diff_trees(const FamilyTree& predicted, const GoldTree& gold);

}  // namespace derivchain
