#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "derivchain/alphabet.hpp"
#include "derivchain/pattern.hpp"
#include "derivchain/taxonomy.hpp"

namespace derivchain {

/// Id of the distinguished apex entry every family tree grows from.
inline constexpr std::string_view kRootId = "ROOT";

/// Suffix that realizes the feminine singular of a nominal pattern.
inline constexpr std::string_view kFeminineSuffix = "+a(h)";

struct PatternEntry {
  std::string id;
  std::string tag;
  DerivClass deriv_class = DerivClass::unknown;
  Pos pos = Pos::none;
  PatternTemplate tmpl;
  std::optional<std::string> augmentation_form;
  Canonicality canonicality = Canonicality::canonical;
  SourceTable origin = SourceTable::canonical;

  bool is_root() const { return id == kRootId; }
};

struct DerivEdge {
  std::string parent_id;
  std::string child_id;
  Relation relation = Relation::unknown;
  SourceTable source_table = SourceTable::canonical;
  BaseForm base_form_requirement = BaseForm::lemma;

  friend bool operator==(const DerivEdge&, const DerivEdge&) = default;
};

/// Appends a derivational suffix (e.g. "+iy~") to every entry of the listed classes.
struct AffixRule {
  PatternTemplate affix;
  std::set<DerivClass> applicable_classes;
  DerivClass result_class = DerivClass::attributive_adjective;
  Pos result_pos = Pos::adjective;
  Relation relation = Relation::attributive_of;
};

/// Re-labels a pattern's class and/or part of speech while keeping its stem.
/// An empty `base_classes` set accepts every class.
struct SemSpecRule {
  std::set<DerivClass> base_classes;
  std::optional<Pos> base_pos;
  Pos result_pos = Pos::noun;
  DerivClass result_class = DerivClass::specified_noun;
  BaseForm base_form_requirement = BaseForm::lemma;
  Relation relation = Relation::semantic_specification_of;

  bool accepts(const PatternEntry& entry) const;
};

/// Raw entry and edge lists before compilation. `entries.front()` is ROOT.
struct NetworkTables {
  std::vector<PatternEntry> entries;
  std::vector<DerivEdge> edges;

  static NetworkTables with_root();
};

NetworkTables load_canonical(std::istream& in, const Alphabet& alphabet);
NetworkTables load_canonical(const std::filesystem::path& path, const Alphabet& alphabet);

std::vector<AffixRule> load_affix_rules(std::istream& in, const Alphabet& alphabet);
std::vector<AffixRule> load_affix_rules(const std::filesystem::path& path, const Alphabet& alphabet);

std::vector<SemSpecRule> load_semspec_rules(std::istream& in);
std::vector<SemSpecRule> load_semspec_rules(const std::filesystem::path& path);

void validate(const AffixRule& rule);
void validate(const SemSpecRule& rule);

/// Appends one entry and one edge per (canonical entry, applicable rule).
/// Generated ids are the base id followed by the affix text.
NetworkTables expand_affixational(const NetworkTables& tables, std::span<const AffixRule> rules,
                                  const Alphabet& alphabet);

/// Appends one entry and one edge per (canonical or affixational entry, accepting rule).
/// Feminine-singular rules extend the template with kFeminineSuffix; lemma rules keep it.
NetworkTables expand_semantic_spec(const NetworkTables& tables, std::span<const SemSpecRule> rules,
                                   const Alphabet& alphabet);

/// Throws ValidationError naming the cycle, if any.
void check_acyclic(const NetworkTables& tables);

/// Frozen, queryable rule graph. Immutable after compile().
class AbstractNetwork {
 public:
  struct Incoming {
    const DerivEdge* edge;
    const PatternEntry* parent;
  };

  static AbstractNetwork compile(NetworkTables tables);

  const PatternEntry* find(std::string_view id) const;
  const PatternEntry& entry(std::string_view id) const;

  /// All edges whose child entry has this template text, ordered by (parent id, relation).
  std::vector<Incoming> incoming(std::string_view child_template) const;

  const std::map<std::string, PatternEntry, std::less<>>& entries() const { return entries_; }
  const std::vector<DerivEdge>& edges() const { return edges_; }
  const std::map<std::string, std::vector<std::size_t>, std::less<>>& child_index() const {
    return child_index_;
  }

  /// Distinct templates of the given origin (all origins when nullopt), sorted.
  std::vector<PatternTemplate> templates(std::optional<SourceTable> origin = std::nullopt) const;

  /// Deterministic JSON (sorted keys, sorted edges).
  std::string export_json() const;

 private:
  std::map<std::string, PatternEntry, std::less<>> entries_;
  std::vector<DerivEdge> edges_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> child_index_;
};

struct NetworkSources {
  std::filesystem::path canonical;
  std::filesystem::path affix_rules;
  std::filesystem::path semspec_rules;
};

/// load_canonical -> expand_affixational -> expand_semantic_spec -> compile.
AbstractNetwork load_network(const NetworkSources& sources, const Alphabet& alphabet);

}  // namespace derivchain
