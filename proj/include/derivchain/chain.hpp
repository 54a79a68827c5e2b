#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "derivchain/lexicon.hpp"
#include "derivchain/network.hpp"
#include "derivchain/percent.hpp"

namespace derivchain {

struct ChainNode {
  std::string node_id;
  std::string lemma;
  std::string entry_ref;   // LexEntry::key(); empty for the root node
  std::string pattern_id;  // empty only for force-attached lemmas with no network pattern
  DerivClass deriv_class = DerivClass::unknown;
  Pos pos = Pos::none;

  friend bool operator==(const ChainNode&, const ChainNode&) = default;
};

struct ChainEdge {
  std::string parent_node_id;
  std::string child_node_id;
  Relation relation = Relation::unknown;
  BaseForm base_form_used = BaseForm::lemma;

  friend bool operator==(const ChainEdge&, const ChainEdge&) = default;
};

/// (child lemma, parent lemma, relation), the unit shared with gold trees.
struct RelationTriple {
  std::string child;
  std::string parent;
  Relation relation = Relation::unknown;

  friend bool operator==(const RelationTriple&, const RelationTriple&) = default;
  friend auto operator<=>(const RelationTriple&, const RelationTriple&) = default;
};

/// Derivational family of one root. Nodes are sorted by id, edges by
/// (child, parent); the root node's id and lemma are the dotted root.
struct FamilyTree {
  Root root;
  std::vector<ChainNode> nodes;
  std::vector<ChainEdge> edges;
  std::vector<std::string> orphans;  // LexEntry keys, sorted

  const ChainNode* find(std::string_view node_id) const;
  const ChainNode& root_node() const;
  std::vector<RelationTriple> triples() const;  // sorted, with multiplicity
};

struct Pairing {
  const ChainNode* parent = nullptr;
  const DerivEdge* edge = nullptr;
  const PatternEntry* child_pattern = nullptr;
};

/// Maps a ChainNode::entry_ref back to its lexicon entry (nullptr if unknown).
using EntryLookup = std::function<const LexEntry*(std::string_view)>;

/// Every (attached node, network edge) that licenses attaching `entry`:
/// the child pattern has the entry's template, pos and (when the entry
/// declares one) class, the root realizes the lemma, the node carries the
/// edge's parent pattern, and for inflected-base edges the parent's lexicon
/// entry supplies that form, realized by a boundary-delimited prefix of the
/// child template. A node backed by `entry` itself never pairs.
std::vector<Pairing> candidate_pairings(const LexEntry& entry, std::span<const ChainNode> attached,
                                        const AbstractNetwork& network, const EntryLookup& lookup);

struct BuildOptions {
  bool attach_orphans = false;  // link disconnected subtrees to the root via Relation::unknown
  unsigned threads = 1;
};

/// Grows the family tree of `root` to the least fixpoint of candidate_pairings.
/// A lemma gets one node per pairing; lemmas with none end up in `orphans`.
FamilyTree build_family(const Root& root, std::span<const LexEntry> entries, const AbstractNetwork& network,
                        const BuildOptions& options = {});

struct BankStats {
  std::size_t root_count = 0;
  std::size_t lemma_count = 0;
  std::size_t relation_count = 0;   // chain edges
  std::size_t detected_lemmas = 0;  // lemmas backing at least one non-root node
  std::size_t orphan_count = 0;
  std::size_t quarantined_count = 0;
  Percent detected_pct;             // detected_lemmas / lemma_count

  friend bool operator==(const BankStats&, const BankStats&) = default;
};

struct Bank {
  std::vector<FamilyTree> trees;  // sorted by root
  BankStats stats;
};

/// Groups the lexicon by root and builds every family, in parallel when
/// options.threads > 1. Output order and content do not depend on threads.
Bank build_bank(std::span<const LexEntry> lexicon, const AbstractNetwork& network, const BuildOptions& options = {});

BankStats compute_stats(std::span<const FamilyTree> trees);

/// Reported full-scale run over the external analyzer database (documentation only).
struct ReferenceBankFigures {
  static constexpr std::size_t roots = 4924;
  static constexpr std::size_t roots_in_prose = 4926;
  static constexpr std::size_t lemmas = 34453;
  static constexpr std::size_t relations = 23333;
  static constexpr std::int64_t detected_hundredths = 6772;
};

std::string tree_to_json(const FamilyTree& tree);
FamilyTree tree_from_json(std::string_view text, const Alphabet& alphabet);

/// Tab-separated child_lemma, parent_lemma, relation lines for every tree.
std::string relations_tsv(std::span<const FamilyTree> trees);
std::string stats_to_json(const BankStats& stats);

}  // namespace derivchain
