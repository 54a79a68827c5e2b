#pragma once

// Shared fixtures and independent oracles for the test suites.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "derivchain/chain.hpp"
#include "derivchain/error.hpp"
#include "derivchain/evaluate.hpp"
#include "derivchain/lexicon.hpp"
#include "derivchain/network.hpp"

namespace derivchain::testing {

inline std::filesystem::path data_dir() { return DERIVCHAIN_DATA_DIR; }

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline const Alphabet& fixture_alphabet() {
  static const Alphabet a = Alphabet::load(data_dir() / "alphabet.tsv");
  return a;
}

inline NetworkSources fixture_sources() {
  return {data_dir() / "canonical.tsv", data_dir() / "affix_rules.tsv", data_dir() / "semspec_rules.tsv"};
}

inline const AbstractNetwork& fixture_network() {
  static const AbstractNetwork n = load_network(fixture_sources(), fixture_alphabet());
  return n;
}

/// Compiles a network from in-memory tables text using the fixture rules files.
inline AbstractNetwork network_from_canonical(const std::string& canonical_text) {
  std::istringstream in(canonical_text);
  auto tables = load_canonical(in, fixture_alphabet());
  auto affixes = load_affix_rules(data_dir() / "affix_rules.tsv", fixture_alphabet());
  auto specs = load_semspec_rules(data_dir() / "semspec_rules.tsv");
  tables = expand_affixational(tables, affixes, fixture_alphabet());
  tables = expand_semantic_spec(tables, specs, fixture_alphabet());
  return AbstractNetwork::compile(std::move(tables));
}

inline const std::vector<LexEntry>& fixture_lexicon() {
  static const std::vector<LexEntry> lex = [] {
    auto load = load_lexicon(data_dir() / "lexicon.jsonl", fixture_alphabet());
    if (!load.quarantined.empty()) throw Error("fixture lexicon has quarantined lines");
    return load.entries;
  }();
  return lex;
}

inline std::vector<LexEntry> family(std::string_view root) {
  std::vector<LexEntry> out;
  for (const auto& e : fixture_lexicon()) {
    if (e.root.to_string() == root) out.push_back(e);
  }
  return out;
}

inline Root root(std::string_view dotted) { return Root::parse(dotted, fixture_alphabet()); }

inline LexEntry lex(const std::string& json_line) {
  std::istringstream in(json_line + "\n");
  auto load = load_lexicon(in, fixture_alphabet());
  if (load.entries.size() != 1) throw Error("bad test lexicon line: " + json_line);
  return load.entries.front();
}

/// Exhaustive oracle: every consonant tuple of the template's arity whose
/// interdigitation equals the surface.
inline std::set<std::vector<std::string>> brute_force_match(const std::string& surface, const PatternTemplate& t,
                                                            const Alphabet& alphabet) {
  std::set<std::vector<std::string>> out;
  const auto& cons = alphabet.consonants();
  const auto arity = static_cast<std::size_t>(t.arity());
  if (arity < 2) return out;
  std::vector<std::size_t> idx(arity, 0);
  while (true) {
    std::vector<std::string> radicals;
    for (auto i : idx) radicals.push_back(cons[i]);
    if (interdigitate(Root::make(radicals, alphabet), t).text == surface) out.insert(radicals);
    std::size_t k = 0;
    while (k < arity && ++idx[k] == cons.size()) idx[k++] = 0;
    if (k == arity) break;
  }
  return out;
}

/// True when `form` spells the root interdigitated into the template cut at
/// one of its '+' boundaries, or into the whole template.
inline bool spells_prefix(const Root& root, const std::string& template_text, const std::string& form) {
  std::vector<std::string> prefixes{template_text};
  for (std::size_t i = 1; i < template_text.size(); ++i) {
    if (template_text[i] == '+') prefixes.push_back(template_text.substr(0, i));
  }
  for (const auto& p : prefixes) {
    auto t = PatternTemplate::parse(p, fixture_alphabet());
    if (t.arity() == static_cast<int>(root.size()) && interdigitate(root, t).text == form) return true;
  }
  return false;
}

/// Post-hoc pairing checker. Scans the raw edge list (not the child index) and
/// returns one message per violation of: acyclicity, reachability from the
/// root node, unique (child, parent, relation), and pairing soundness.
inline std::vector<std::string> check_tree(const FamilyTree& tree, std::span<const LexEntry> entries,
                                           const AbstractNetwork& network) {
  std::vector<std::string> problems;
  std::map<std::string, const ChainNode*> nodes;
  for (const auto& n : tree.nodes) nodes[n.node_id] = &n;
  std::map<std::string, const LexEntry*> by_key;
  for (const auto& e : entries) by_key[e.key()] = &e;

  std::map<std::string, std::vector<std::string>> parents;
  std::set<std::tuple<std::string, std::string, Relation>> seen;
  for (const auto& e : tree.edges) {
    if (!nodes.count(e.parent_node_id) || !nodes.count(e.child_node_id)) {
      problems.push_back("dangling edge " + e.parent_node_id + " -> " + e.child_node_id);
      continue;
    }
    if (!seen.emplace(e.child_node_id, e.parent_node_id, e.relation).second) {
      problems.push_back("repeated edge into " + e.child_node_id);
    }
    parents[e.child_node_id].push_back(e.parent_node_id);
    if (e.relation == Relation::unknown) continue;

    const ChainNode& child = *nodes[e.child_node_id];
    const ChainNode& parent = *nodes[e.parent_node_id];
    const LexEntry* entry = by_key.count(child.entry_ref) ? by_key[child.entry_ref] : nullptr;
    const PatternEntry* cp = network.find(child.pattern_id);
    bool licensed = false;
    for (const auto& de : network.edges()) {
      licensed = licensed || (de.parent_id == parent.pattern_id && de.child_id == child.pattern_id &&
                              de.relation == e.relation && de.base_form_requirement == e.base_form_used);
    }
    if (!licensed) problems.push_back("no network edge licenses " + e.child_node_id);
    if (!cp || !entry) {
      problems.push_back("unresolvable node " + e.child_node_id);
      continue;
    }
    if (cp->pos != entry->pos || cp->pos != child.pos || cp->deriv_class != child.deriv_class) {
      problems.push_back("attribute mismatch on " + e.child_node_id);
    }
    if (entry->deriv_class && *entry->deriv_class != cp->deriv_class) {
      problems.push_back("class mismatch on " + e.child_node_id);
    }
    if (cp->tmpl.source_text() != entry->template_text() ||
        interdigitate(entry->root, cp->tmpl).text != entry->lemma.text) {
      problems.push_back("template mismatch on " + e.child_node_id);
    }
    if (e.base_form_used != BaseForm::lemma) {
      const LexEntry* pe = by_key.count(parent.entry_ref) ? by_key[parent.entry_ref] : nullptr;
      const SurfaceForm* form = pe ? pe->inflected_forms.get(e.base_form_used) : nullptr;
      if (!form || !spells_prefix(entry->root, entry->template_text(), form->text)) {
        problems.push_back("inflected base does not match for " + e.child_node_id);
      }
    }
  }

  const std::string root_id = tree.root.to_string();
  for (const auto& n : tree.nodes) {
    if (n.node_id == root_id) {
      if (parents.count(n.node_id)) problems.push_back("root node has a parent");
      continue;
    }
    if (parents[n.node_id].size() != 1) problems.push_back("node " + n.node_id + " needs exactly one parent");
    std::set<std::string> visited;
    std::string cur = n.node_id;
    while (cur != root_id) {
      if (!visited.insert(cur).second || parents[cur].empty()) {
        problems.push_back("node " + n.node_id + " is not reachable from the root");
        break;
      }
      cur = parents[cur].front();
    }
  }
  return problems;
}

/// Number of (parent node, network edge) derivations available to `entry`
/// among the nodes of `tree`, counted by scanning the raw edge list.
inline std::size_t licensed_derivations(const LexEntry& entry, const FamilyTree& tree, std::span<const LexEntry> entries,
                                        const AbstractNetwork& network) {
  std::size_t n = 0;
  for (const auto& parent : tree.nodes) {
    if (parent.entry_ref == entry.key() || parent.pattern_id.empty()) continue;
    const LexEntry* pe = nullptr;
    for (const auto& e : entries) {
      if (e.key() == parent.entry_ref) pe = &e;
    }
    for (const auto& de : network.edges()) {
      if (de.parent_id != parent.pattern_id) continue;
      const PatternEntry& child = network.entry(de.child_id);
      if (child.tmpl.source_text() != entry.template_text() || child.pos != entry.pos) continue;
      if (entry.deriv_class && *entry.deriv_class != child.deriv_class) continue;
      if (interdigitate(entry.root, child.tmpl).text != entry.lemma.text) continue;
      if (de.base_form_requirement != BaseForm::lemma) {
        const SurfaceForm* form = pe ? pe->inflected_forms.get(de.base_form_requirement) : nullptr;
        if (!form || !spells_prefix(entry.root, entry.template_text(), form->text)) continue;
      }
      ++n;
    }
  }
  return n;
}

/// Random lexicon over `roots` random triliteral roots: each family instantiates
/// a fixed derivational chain of fixture templates.
inline std::vector<LexEntry> synthetic_lexicon(std::size_t roots, unsigned seed) {
  const Alphabet& a = fixture_alphabet();
  std::mt19937 rng(seed);
  std::vector<std::string> cons;
  for (const auto& c : a.consonants()) {
    if (c != "w" && c != "y") cons.push_back(c);
  }
  std::uniform_int_distribution<std::size_t> pick(0, cons.size() - 1);
  struct Item {
    const char* tmpl;
    Pos pos;
  };
  const std::vector<Item> chain = {
      {"1a2a3", Pos::verb},       {"1a2~a3", Pos::verb},      {"1a23", Pos::noun},
      {"1a23+iy~", Pos::adjective}, {"1A2i3", Pos::adjective}, {"ma12uw3", Pos::adjective},
      {"ta12iy3", Pos::noun},     {"ma12a3", Pos::noun},      {"Ai12aA3", Pos::noun},
      {"Â12a3", Pos::verb},       {"mu12i3", Pos::adjective},
  };
  std::set<std::vector<std::string>> used;
  std::vector<LexEntry> out;
  while (used.size() < roots) {
    std::vector<std::string> radicals{cons[pick(rng)], cons[pick(rng)], cons[pick(rng)]};
    if (!used.insert(radicals).second) continue;
    Root r = Root::make(radicals, a);
    for (const auto& item : chain) {
      auto t = PatternTemplate::parse(item.tmpl, a);
      out.push_back({interdigitate(r, t), r, t, item.pos, std::nullopt, std::nullopt, {}});
    }
  }
  return out;
}

}  // namespace derivchain::testing
