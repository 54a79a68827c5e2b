#include "derivchain/network.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <unordered_map>

#include <json.hpp>

#include "derivchain/error.hpp"
#include "tsv.hpp"

namespace derivchain {

namespace {

using detail::is_blank_field;

std::ifstream open(const std::filesystem::path& path, std::string_view what) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + std::string(what) + " " + path.string());
  return in;
}

template <typename T>
T require(std::optional<T> v, std::string_view field, const std::string& text, std::size_t line) {
  if (!v) throw ParseError("unknown " + std::string(field) + " '" + text + "'", line);
  return *v;
}

std::set<DerivClass> parse_class_list(const std::string& text, std::size_t line) {
  std::set<DerivClass> out;
  if (is_blank_field(text)) return out;
  for (const auto& item : detail::split(text, ',')) {
    out.insert(require(parse_deriv_class(item), "derivational class", item, line));
  }
  return out;
}

}  // namespace

bool SemSpecRule::accepts(const PatternEntry& entry) const {
  if (entry.is_root()) return false;
  if (!base_classes.empty() && !base_classes.count(entry.deriv_class)) return false;
  if (base_pos && entry.pos != *base_pos) return false;
  return !(entry.deriv_class == result_class && entry.pos == result_pos);
}

NetworkTables NetworkTables::with_root() {
  NetworkTables t;
  PatternEntry root;
  root.id = std::string(kRootId);
  root.tag = std::string(kRootId);
  root.deriv_class = DerivClass::root;
  root.pos = Pos::none;
  t.entries.push_back(std::move(root));
  return t;
}

void check_acyclic(const NetworkTables& tables) {
  std::unordered_map<std::string_view, std::vector<std::string_view>> children;
  for (const auto& e : tables.edges) children[e.parent_id].push_back(e.child_id);

  enum class Mark { fresh, active, done };
  std::unordered_map<std::string_view, Mark> mark;
  std::vector<std::string_view> path;

  std::function<void(std::string_view)> visit = [&](std::string_view id) {
    mark[id] = Mark::active;
    path.push_back(id);
    for (auto child : children[id]) {
      auto m = mark[child];
      if (m == Mark::active) {
        std::string msg = "cycle detected: ";
        auto from = std::find(path.begin(), path.end(), child);
        for (auto it = from; it != path.end(); ++it) msg += std::string(*it) + " -> ";
        msg += std::string(child);
        throw ValidationError(msg);
      }
      if (m == Mark::fresh) visit(child);
    }
    path.pop_back();
    mark[id] = Mark::done;
  };

  std::vector<std::string_view> ids;
  for (const auto& e : tables.entries) ids.push_back(e.id);
  for (const auto& e : tables.edges) {
    ids.push_back(e.parent_id);
    ids.push_back(e.child_id);
  }
  for (auto id : ids) {
    if (mark[id] == Mark::fresh) visit(id);
  }
}

// Columns: id, tag, deriv_class, pos, template, augmentation_form,
// canonicality, parent_id (comma list), relation, [base_form].
NetworkTables load_canonical(std::istream& in, const Alphabet& alphabet) {
  NetworkTables tables = NetworkTables::with_root();
  std::unordered_map<std::string, std::size_t> line_of{{std::string(kRootId), 0}};
  std::vector<std::size_t> edge_lines;

  for (auto& row : detail::read_tsv(in, "id")) {
    const auto& f = row.fields;
    if (f.size() < 9 || f.size() > 10) {
      throw ParseError("canonical row needs 9 or 10 tab-separated fields, got " + std::to_string(f.size()),
                       row.line);
    }
    PatternEntry entry;
    entry.id = f[0];
    if (entry.id.empty()) throw ParseError("empty id", row.line);
    if (line_of.count(entry.id)) throw ParseError("duplicate id '" + entry.id + "'", row.line);
    entry.tag = f[1];
    entry.deriv_class = require(parse_deriv_class(f[2]), "derivational class", f[2], row.line);
    entry.pos = require(parse_pos(f[3]), "part of speech", f[3], row.line);
    if (entry.deriv_class == DerivClass::root || entry.deriv_class == DerivClass::unknown) {
      throw ParseError("class '" + f[2] + "' is reserved", row.line);
    }
    if (pos_of(entry.deriv_class) != entry.pos) {
      throw ParseError("class " + f[2] + " requires pos " + std::string(to_string(pos_of(entry.deriv_class))) +
                           ", got " + f[3],
                       row.line);
    }
    try {
      entry.tmpl = PatternTemplate::parse(f[4], alphabet);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), row.line);
    }
    if (!entry.tmpl.has_radicals()) throw ParseError("template '" + f[4] + "' has no radical slots", row.line);
    if (!is_blank_field(f[5])) entry.augmentation_form = f[5];
    entry.canonicality = require(parse_canonicality(f[6]), "canonicality", f[6], row.line);
    entry.origin = SourceTable::canonical;

    const Relation relation = require(parse_relation(f[8]), "relation", f[8], row.line);
    BaseForm base_form = BaseForm::lemma;
    if (f.size() == 10 && !is_blank_field(f[9])) {
      base_form = require(parse_base_form(f[9]), "base form", f[9], row.line);
    }
    if (is_blank_field(f[7])) throw ParseError("row '" + entry.id + "' has no parent", row.line);
    for (const auto& parent : detail::split(f[7], ',')) {
      if (parent == entry.id) throw ParseError("entry '" + entry.id + "' lists itself as parent", row.line);
      tables.edges.push_back({parent, entry.id, relation, SourceTable::canonical, base_form});
      edge_lines.push_back(row.line);
    }
    line_of.emplace(entry.id, row.line);
    tables.entries.push_back(std::move(entry));
  }

  for (std::size_t i = 0; i < tables.edges.size(); ++i) {
    if (!line_of.count(tables.edges[i].parent_id)) {
      throw ParseError("dangling parent reference '" + tables.edges[i].parent_id + "'", edge_lines[i]);
    }
  }
  check_acyclic(tables);
  return tables;
}

NetworkTables load_canonical(const std::filesystem::path& path, const Alphabet& alphabet) {
  auto in = open(path, "canonical table");
  return load_canonical(in, alphabet);
}

void validate(const AffixRule& rule) {
  if (!rule.affix.starts_with_boundary()) {
    throw ValidationError("affix '" + rule.affix.source_text() + "' must begin with '+'");
  }
  if (rule.affix.has_radicals()) {
    throw ValidationError("affix '" + rule.affix.source_text() + "' must not contain radical slots");
  }
  if (pos_of(rule.result_class) != rule.result_pos) {
    throw ValidationError("affix rule result class " + std::string(to_string(rule.result_class)) +
                          " is inconsistent with pos " + std::string(to_string(rule.result_pos)));
  }
}

// Columns: affix, applicable_classes, result_class, result_pos, relation.
std::vector<AffixRule> load_affix_rules(std::istream& in, const Alphabet& alphabet) {
  std::vector<AffixRule> rules;
  for (auto& row : detail::read_tsv(in, "affix")) {
    const auto& f = row.fields;
    if (f.size() != 5) throw ParseError("affix rule needs 5 fields, got " + std::to_string(f.size()), row.line);
    AffixRule rule;
    try {
      rule.affix = PatternTemplate::parse(f[0], alphabet);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), row.line);
    }
    rule.applicable_classes = parse_class_list(f[1], row.line);
    rule.result_class = require(parse_deriv_class(f[2]), "derivational class", f[2], row.line);
    rule.result_pos = require(parse_pos(f[3]), "part of speech", f[3], row.line);
    rule.relation = require(parse_relation(f[4]), "relation", f[4], row.line);
    try {
      validate(rule);
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), row.line);
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

std::vector<AffixRule> load_affix_rules(const std::filesystem::path& path, const Alphabet& alphabet) {
  auto in = open(path, "affix rules");
  return load_affix_rules(in, alphabet);
}

void validate(const SemSpecRule& rule) {
  if (pos_of(rule.result_class) != rule.result_pos) {
    throw ValidationError("semantic-specification result class " + std::string(to_string(rule.result_class)) +
                          " is inconsistent with pos " + std::string(to_string(rule.result_pos)));
  }
  if (rule.base_form_requirement == BaseForm::broken_plural) {
    throw ValidationError("broken-plural bases are lexical; declare them as canonical rows with base_form");
  }
  if (rule.base_pos) {
    for (auto cls : rule.base_classes) {
      if (pos_of(cls) != *rule.base_pos) {
        throw ValidationError("base pos " + std::string(to_string(*rule.base_pos)) + " contradicts base class " +
                              std::string(to_string(cls)));
      }
    }
  }
  const bool class_fixed = rule.base_classes.size() == 1 && *rule.base_classes.begin() == rule.result_class;
  const bool pos_fixed = rule.base_pos && *rule.base_pos == rule.result_pos;
  if (class_fixed && (pos_fixed || !rule.base_pos)) {
    throw ValidationError("semantic-specification rule changes neither class nor pos");
  }
}

// Columns: base_classes, base_pos, result_pos, result_class, base_form_requirement, relation.
std::vector<SemSpecRule> load_semspec_rules(std::istream& in) {
  std::vector<SemSpecRule> rules;
  for (auto& row : detail::read_tsv(in, "base_classes")) {
    const auto& f = row.fields;
    if (f.size() != 6) {
      throw ParseError("semantic-specification rule needs 6 fields, got " + std::to_string(f.size()), row.line);
    }
    SemSpecRule rule;
    rule.base_classes = parse_class_list(f[0], row.line);
    if (!is_blank_field(f[1])) rule.base_pos = require(parse_pos(f[1]), "part of speech", f[1], row.line);
    rule.result_pos = require(parse_pos(f[2]), "part of speech", f[2], row.line);
    rule.result_class = require(parse_deriv_class(f[3]), "derivational class", f[3], row.line);
    rule.base_form_requirement = require(parse_base_form(f[4]), "base form", f[4], row.line);
    rule.relation = require(parse_relation(f[5]), "relation", f[5], row.line);
    try {
      validate(rule);
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), row.line);
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

std::vector<SemSpecRule> load_semspec_rules(const std::filesystem::path& path) {
  auto in = open(path, "semantic-specification rules");
  return load_semspec_rules(in);
}

NetworkTables expand_affixational(const NetworkTables& tables, std::span<const AffixRule> rules,
                                  const Alphabet& alphabet) {
  NetworkTables out = tables;
  std::set<std::string, std::less<>> ids;
  for (const auto& e : tables.entries) ids.insert(e.id);

  for (const auto& rule : rules) validate(rule);
  for (const auto& base : tables.entries) {
    if (base.is_root() || base.origin != SourceTable::canonical) continue;
    for (const auto& rule : rules) {
      if (!rule.applicable_classes.count(base.deriv_class)) continue;
      PatternEntry entry;
      entry.id = base.id + rule.affix.source_text();
      if (!ids.insert(entry.id).second) throw ValidationError("generated id '" + entry.id + "' already exists");
      entry.tag = base.tag + rule.affix.source_text();
      entry.deriv_class = rule.result_class;
      entry.pos = rule.result_pos;
      try {
        entry.tmpl = base.tmpl.concat(rule.affix, alphabet);
      } catch (const ParseError& e) {
        throw ValidationError("affixation of '" + base.id + "' is unparsable: " + e.what());
      }
      entry.augmentation_form = base.augmentation_form;
      entry.canonicality = base.canonicality;
      entry.origin = SourceTable::affixational;
      out.edges.push_back({base.id, entry.id, rule.relation, SourceTable::affixational, BaseForm::lemma});
      out.entries.push_back(std::move(entry));
    }
  }
  return out;
}

NetworkTables expand_semantic_spec(const NetworkTables& tables, std::span<const SemSpecRule> rules,
                                   const Alphabet& alphabet) {
  NetworkTables out = tables;
  std::set<std::string, std::less<>> ids;
  for (const auto& e : tables.entries) ids.insert(e.id);

  for (const auto& rule : rules) validate(rule);
  std::optional<PatternTemplate> feminine;
  for (const auto& base : tables.entries) {
    if (base.origin == SourceTable::semantic_spec) continue;
    for (const auto& rule : rules) {
      if (!rule.accepts(base)) continue;
      PatternEntry entry;
      entry.id = base.id + ">" + std::string(to_string(rule.result_class)) + ":" +
                 std::string(to_string(rule.base_form_requirement));
      if (!ids.insert(entry.id).second) throw ValidationError("generated id '" + entry.id + "' already exists");
      entry.tag = base.tag + ">" + std::string(to_string(rule.result_class));
      entry.deriv_class = rule.result_class;
      entry.pos = rule.result_pos;
      entry.tmpl = base.tmpl;
      if (rule.base_form_requirement == BaseForm::feminine_singular) {
        try {
          if (!feminine) feminine = PatternTemplate::parse(kFeminineSuffix, alphabet);
          entry.tmpl = base.tmpl.concat(*feminine, alphabet);
        } catch (const ParseError& e) {
          throw ValidationError("feminine form of '" + base.id + "' is unparsable: " + e.what());
        }
      }
      entry.augmentation_form = base.augmentation_form;
      entry.canonicality = base.canonicality;
      entry.origin = SourceTable::semantic_spec;
      out.edges.push_back({base.id, entry.id, rule.relation, SourceTable::semantic_spec, rule.base_form_requirement});
      out.entries.push_back(std::move(entry));
    }
  }
  return out;
}

AbstractNetwork AbstractNetwork::compile(NetworkTables tables) {
  AbstractNetwork net;
  for (auto& e : tables.entries) {
    std::string id = e.id;
    if (!net.entries_.emplace(id, std::move(e)).second) throw ValidationError("duplicate id '" + id + "'");
  }
  auto root = net.entries_.find(kRootId);
  if (root == net.entries_.end() || root->second.deriv_class != DerivClass::root) {
    throw ValidationError("network has no ROOT entry");
  }

  std::set<std::tuple<std::string, std::string, Relation>> seen;
  std::map<std::string, std::size_t, std::less<>> indegree;
  for (const auto& edge : tables.edges) {
    auto parent = net.entries_.find(edge.parent_id);
    auto child = net.entries_.find(edge.child_id);
    if (parent == net.entries_.end()) throw ValidationError("edge references unknown parent '" + edge.parent_id + "'");
    if (child == net.entries_.end()) throw ValidationError("edge references unknown child '" + edge.child_id + "'");
    if (edge.parent_id == edge.child_id) throw ValidationError("self edge on '" + edge.parent_id + "'");
    if (child->second.is_root()) throw ValidationError("ROOT cannot have a parent ('" + edge.parent_id + "')");
    if (child->second.deriv_class == DerivClass::unaugmented_verb && !parent->second.is_root()) {
      throw ValidationError("unaugmented verb '" + edge.child_id + "' must attach to ROOT, not '" +
                            edge.parent_id + "'");
    }
    if (!seen.emplace(edge.parent_id, edge.child_id, edge.relation).second) {
      throw ValidationError("duplicate edge " + edge.parent_id + " -> " + edge.child_id);
    }
    ++indegree[edge.child_id];
  }

  std::vector<std::string> sources;
  for (const auto& [id, e] : net.entries_) {
    if (!e.is_root() && !indegree.count(id)) sources.push_back(id);
  }
  if (!sources.empty()) {
    std::string msg = "multiple source nodes; no incoming edge for:";
    for (const auto& s : sources) msg += " " + s;
    throw ValidationError(msg);
  }
  check_acyclic(tables);

  // Reachability from ROOT; implied by the checks above for finite DAGs but
  // reported separately so a bad table names the unreachable entries.
  std::map<std::string_view, std::vector<std::string_view>> children;
  for (const auto& e : tables.edges) children[e.parent_id].push_back(e.child_id);
  std::set<std::string_view> reached{kRootId};
  std::vector<std::string_view> stack{kRootId};
  while (!stack.empty()) {
    auto id = stack.back();
    stack.pop_back();
    for (auto c : children[id]) {
      if (reached.insert(c).second) stack.push_back(c);
    }
  }
  for (const auto& [id, e] : net.entries_) {
    if (!reached.count(id)) throw ValidationError("orphan entry '" + id + "' has no path from ROOT");
  }

  net.edges_ = std::move(tables.edges);
  std::sort(net.edges_.begin(), net.edges_.end(), [](const DerivEdge& a, const DerivEdge& b) {
    return std::tie(a.child_id, a.parent_id, a.relation) < std::tie(b.child_id, b.parent_id, b.relation);
  });
  for (std::size_t i = 0; i < net.edges_.size(); ++i) {
    const auto& child = net.entries_.at(net.edges_[i].child_id);
    net.child_index_[child.tmpl.source_text()].push_back(i);
  }
  for (auto& [key, list] : net.child_index_) {
    std::sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
      const auto& ea = net.edges_[a];
      const auto& eb = net.edges_[b];
      return std::tie(ea.parent_id, ea.relation, ea.child_id) < std::tie(eb.parent_id, eb.relation, eb.child_id);
    });
  }
  return net;
}

const PatternEntry* AbstractNetwork::find(std::string_view id) const {
  auto it = entries_.find(id);
  return it == entries_.end() ? nullptr : &it->second;
}

const PatternEntry& AbstractNetwork::entry(std::string_view id) const {
  if (const auto* e = find(id)) return *e;
  throw ValidationError("unknown pattern entry '" + std::string(id) + "'");
}

std::vector<AbstractNetwork::Incoming> AbstractNetwork::incoming(std::string_view child_template) const {
  std::vector<Incoming> out;
  auto it = child_index_.find(child_template);
  if (it == child_index_.end()) return out;
  for (auto i : it->second) out.push_back({&edges_[i], &entries_.at(edges_[i].parent_id)});
  return out;
}

std::vector<PatternTemplate> AbstractNetwork::templates(std::optional<SourceTable> origin) const {
  std::set<PatternTemplate> set;
  for (const auto& [id, e] : entries_) {
    if (e.is_root()) continue;
    if (origin && e.origin != *origin) continue;
    set.insert(e.tmpl);
  }
  return {set.begin(), set.end()};
}

std::string AbstractNetwork::export_json() const {
  using nlohmann::json;
  json entries = json::object();
  for (const auto& [id, e] : entries_) {
    entries[id] = {
        {"tag", e.tag},
        {"deriv_class", to_string(e.deriv_class)},
        {"pos", to_string(e.pos)},
        {"template", e.tmpl.source_text()},
        {"augmentation_form", e.augmentation_form ? json(*e.augmentation_form) : json(nullptr)},
        {"canonicality", to_string(e.canonicality)},
        {"origin", to_string(e.origin)},
    };
  }
  json edges = json::array();
  for (const auto& e : edges_) {
    edges.push_back({
        {"parent_id", e.parent_id},
        {"child_id", e.child_id},
        {"relation", to_string(e.relation)},
        {"source_table", to_string(e.source_table)},
        {"base_form_requirement", to_string(e.base_form_requirement)},
    });
  }
  json index = json::object();
  for (const auto& [key, list] : child_index_) {
    json items = json::array();
    for (auto i : list) items.push_back({{"parent_id", edges_[i].parent_id}, {"child_id", edges_[i].child_id},
                                         {"relation", to_string(edges_[i].relation)}});
    index[key] = std::move(items);
  }
  json doc = {{"entries", std::move(entries)}, {"edges", std::move(edges)}, {"child_index", std::move(index)}};
  return doc.dump(2) + "\n";
}

AbstractNetwork load_network(const NetworkSources& sources, const Alphabet& alphabet) {
  auto tables = load_canonical(sources.canonical, alphabet);
  auto affixes = load_affix_rules(sources.affix_rules, alphabet);
  auto specs = load_semspec_rules(sources.semspec_rules);
  tables = expand_affixational(tables, affixes, alphabet);
  tables = expand_semantic_spec(tables, specs, alphabet);
  return AbstractNetwork::compile(std::move(tables));
}

}  // namespace derivchain
