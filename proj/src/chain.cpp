#include "derivchain/chain.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <thread>

#include <json.hpp>

#include "derivchain/error.hpp"

namespace derivchain {

namespace {

// Network edges whose child pattern can carry `entry`, independent of parents.
std::vector<AbstractNetwork::Incoming> edge_candidates(const LexEntry& entry, const AbstractNetwork& network) {
  std::vector<AbstractNetwork::Incoming> out;
  for (const auto& in : network.incoming(entry.template_text())) {
    const PatternEntry& child = network.entry(in.edge->child_id);
    if (child.pos != entry.pos) continue;
    if (entry.deriv_class && *entry.deriv_class != child.deriv_class) continue;
    if (!realizes(entry.root, child.tmpl, entry.lemma.text)) continue;
    out.push_back(in);
  }
  return out;
}

// The parent's inflected form must be realized by the child template up to
// one of its affix boundaries (or in full).
bool inflected_base_ok(const LexEntry& entry, const LexEntry* parent, const PatternEntry& child,
                       BaseForm requirement) {
  if (requirement == BaseForm::lemma) return true;
  if (!parent) return false;
  const SurfaceForm* form = parent->inflected_forms.get(requirement);
  if (!form) return false;
  for (auto cut : child.tmpl.boundary_cuts()) {
    if (interdigitate_prefix(entry.root, child.tmpl, cut) == form->text) return true;
  }
  return false;
}

// Distinct network patterns an entry could instantiate, sorted by id.
std::vector<const PatternEntry*> patterns_for(const std::vector<AbstractNetwork::Incoming>& candidates,
                                              const AbstractNetwork& network) {
  std::set<std::string_view> ids;
  for (const auto& c : candidates) ids.insert(c.edge->child_id);
  std::vector<const PatternEntry*> out;
  for (auto id : ids) out.push_back(&network.entry(id));
  return out;
}

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

struct WorkNode {
  std::size_t entry = kNone;  // index into the sorted entry list; kNone for the root
  std::size_t parent = kNone;
  const DerivEdge* edge = nullptr;  // nullptr for root and force-attached nodes
  const PatternEntry* pattern = nullptr;
  std::string signature;
};

class FamilyBuilder {
 public:
  FamilyBuilder(const Root& root, std::span<const LexEntry> entries, const AbstractNetwork& network)
      : root_(root), network_(network) {
    for (const auto& e : entries) entries_.push_back(&e);
    std::sort(entries_.begin(), entries_.end(),
              [](const LexEntry* a, const LexEntry* b) { return a->key() < b->key(); });
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i]->root != root) {
        throw ValidationError("entry " + entries_[i]->key() + " does not belong to root " + root.to_string());
      }
      if (i && entries_[i]->key() == entries_[i - 1]->key()) {
        throw ValidationError("duplicate entry " + entries_[i]->key());
      }
      candidates_.push_back(edge_candidates(*entries_[i], network));
    }
    nodes_.push_back({kNone, kNone, nullptr, &network.entry(kRootId), root.to_string()});
    by_pattern_[std::string(kRootId)].push_back(0);
  }

  void run_fixpoint() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < entries_.size(); ++i) {
        for (const auto& cand : candidates_[i]) {
          auto it = by_pattern_.find(cand.edge->parent_id);
          if (it == by_pattern_.end()) continue;
          const auto parents = it->second;  // by_pattern_ may grow below
          const PatternEntry& child = network_.entry(cand.edge->child_id);
          for (auto p : parents) {
            if (nodes_[p].entry == i) continue;
            if (!seen_.emplace(i, p, cand.edge).second) continue;
            const LexEntry* parent_entry = nodes_[p].entry == kNone ? nullptr : entries_[nodes_[p].entry];
            if (!inflected_base_ok(*entries_[i], parent_entry, child, cand.edge->base_form_requirement)) continue;
            add_node(i, p, cand.edge, &child);
            changed = true;
          }
        }
      }
    }
  }

  void attach_orphans() {
    while (true) {
      auto orphans = orphan_indices();
      if (orphans.empty()) return;
      std::set<std::size_t> orphan_set(orphans.begin(), orphans.end());
      std::vector<std::size_t> heads;
      for (auto c : orphans) {
        bool has_parent = false;
        for (const auto& cand : candidates_[c]) {
          for (auto p : orphans) {
            if (p == c) continue;
            for (const auto* pat : patterns_for(candidates_[p], network_)) {
              has_parent = has_parent || pat->id == cand.edge->parent_id;
            }
          }
        }
        if (!has_parent) heads.push_back(c);
      }
      if (heads.empty()) heads = orphans;
      for (auto h : heads) {
        auto pats = patterns_for(candidates_[h], network_);
        if (pats.empty()) pats.push_back(nullptr);
        for (const auto* pat : pats) add_node(h, 0, nullptr, pat);
      }
      run_fixpoint();
    }
  }

  FamilyTree finish() const {
    FamilyTree tree{root_, {}, {}, {}};
    // Ordinals per lemma follow the sorted path signatures, so ids do not
    // depend on the order entries were supplied in.
    std::map<std::string, std::vector<std::size_t>> by_lemma;
    for (std::size_t n = 1; n < nodes_.size(); ++n) by_lemma[entries_[nodes_[n].entry]->lemma.text].push_back(n);
    std::vector<std::string> ids(nodes_.size());
    ids[0] = root_.to_string();
    for (auto& [lemma, list] : by_lemma) {
      std::sort(list.begin(), list.end(),
                [&](std::size_t a, std::size_t b) { return nodes_[a].signature < nodes_[b].signature; });
      for (std::size_t k = 0; k < list.size(); ++k) {
        ids[list[k]] = root_.to_string() + "|" + lemma + "#" + std::to_string(k + 1);
      }
    }

    for (std::size_t n = 0; n < nodes_.size(); ++n) {
      const auto& w = nodes_[n];
      ChainNode node;
      node.node_id = ids[n];
      if (w.entry == kNone) {
        node.lemma = root_.to_string();
        node.pattern_id = std::string(kRootId);
        node.deriv_class = DerivClass::root;
        node.pos = Pos::none;
      } else {
        const LexEntry& e = *entries_[w.entry];
        node.lemma = e.lemma.text;
        node.entry_ref = e.key();
        if (w.pattern) {
          node.pattern_id = w.pattern->id;
          node.deriv_class = w.pattern->deriv_class;
          node.pos = w.pattern->pos;
        } else {
          node.deriv_class = e.deriv_class.value_or(DerivClass::unknown);
          node.pos = e.pos;
        }
        tree.edges.push_back({ids[w.parent], ids[n], w.edge ? w.edge->relation : Relation::unknown,
                              w.edge ? w.edge->base_form_requirement : BaseForm::lemma});
      }
      tree.nodes.push_back(std::move(node));
    }
    std::sort(tree.nodes.begin(), tree.nodes.end(),
              [](const ChainNode& a, const ChainNode& b) { return a.node_id < b.node_id; });
    std::sort(tree.edges.begin(), tree.edges.end(), [](const ChainEdge& a, const ChainEdge& b) {
      return std::tie(a.child_node_id, a.parent_node_id) < std::tie(b.child_node_id, b.parent_node_id);
    });
    for (auto i : orphan_indices()) tree.orphans.push_back(entries_[i]->key());
    return tree;
  }

 private:
  void add_node(std::size_t entry, std::size_t parent, const DerivEdge* edge, const PatternEntry* pattern) {
    WorkNode w{entry, parent, edge, pattern, {}};
    w.signature = nodes_[parent].signature + " > " + entries_[entry]->key() + " [" +
                  std::string(edge ? to_string(edge->relation) : to_string(Relation::unknown)) + "/" +
                  (pattern ? pattern->id : std::string("-")) + "]";
    nodes_.push_back(std::move(w));
    attached_.insert(entry);
    if (pattern) by_pattern_[pattern->id].push_back(nodes_.size() - 1);
  }

  std::vector<std::size_t> orphan_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (!attached_.count(i)) out.push_back(i);
    }
    return out;
  }

  const Root& root_;
  const AbstractNetwork& network_;
  std::vector<const LexEntry*> entries_;
  std::vector<std::vector<AbstractNetwork::Incoming>> candidates_;
  std::vector<WorkNode> nodes_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_pattern_;
  std::set<std::tuple<std::size_t, std::size_t, const DerivEdge*>> seen_;
  std::set<std::size_t> attached_;
};

}  // namespace

const ChainNode* FamilyTree::find(std::string_view node_id) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), node_id,
                             [](const ChainNode& n, std::string_view id) { return n.node_id < id; });
  if (it != nodes.end() && it->node_id == node_id) return &*it;
  for (const auto& n : nodes) {
    if (n.node_id == node_id) return &n;
  }
  return nullptr;
}

const ChainNode& FamilyTree::root_node() const {
  if (const auto* n = find(root.to_string())) return *n;
  throw ValidationError("tree for " + root.to_string() + " has no root node");
}

std::vector<RelationTriple> FamilyTree::triples() const {
  std::vector<RelationTriple> out;
  for (const auto& e : edges) {
    const auto* child = find(e.child_node_id);
    const auto* parent = find(e.parent_node_id);
    if (!child || !parent) throw ValidationError("edge references a missing node in tree " + root.to_string());
    out.push_back({child->lemma, parent->lemma, e.relation});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Pairing> candidate_pairings(const LexEntry& entry, std::span<const ChainNode> attached,
                                        const AbstractNetwork& network, const EntryLookup& lookup) {
  std::vector<Pairing> out;
  const std::string key = entry.key();
  for (const auto& cand : edge_candidates(entry, network)) {
    const PatternEntry& child = network.entry(cand.edge->child_id);
    for (const auto& node : attached) {
      if (node.pattern_id != cand.edge->parent_id) continue;
      if (!node.entry_ref.empty() && node.entry_ref == key) continue;
      const LexEntry* parent = node.entry_ref.empty() ? nullptr : lookup(node.entry_ref);
      if (!inflected_base_ok(entry, parent, child, cand.edge->base_form_requirement)) continue;
      out.push_back({&node, cand.edge, &child});
    }
  }
  return out;
}

FamilyTree build_family(const Root& root, std::span<const LexEntry> entries, const AbstractNetwork& network,
                        const BuildOptions& options) {
  FamilyBuilder builder(root, entries, network);
  builder.run_fixpoint();
  if (options.attach_orphans) builder.attach_orphans();
  return builder.finish();
}

BankStats compute_stats(std::span<const FamilyTree> trees) {
  BankStats s;
  s.root_count = trees.size();
  for (const auto& t : trees) {
    std::set<std::string> detected;
    for (const auto& n : t.nodes) {
      if (!n.entry_ref.empty()) detected.insert(n.entry_ref);
    }
    s.relation_count += t.edges.size();
    s.detected_lemmas += detected.size();
    s.orphan_count += t.orphans.size();
    s.lemma_count += detected.size() + t.orphans.size();
  }
  s.detected_pct = Percent::of(static_cast<std::int64_t>(s.detected_lemmas), static_cast<std::int64_t>(s.lemma_count));
  return s;
}

Bank build_bank(std::span<const LexEntry> lexicon, const AbstractNetwork& network, const BuildOptions& options) {
  std::map<Root, std::vector<LexEntry>> families;
  for (const auto& e : lexicon) families[e.root].push_back(e);

  std::vector<const Root*> roots;
  std::vector<const std::vector<LexEntry>*> groups;
  for (const auto& [root, list] : families) {
    roots.push_back(&root);
    groups.push_back(&list);
  }

  std::vector<std::optional<FamilyTree>> built(roots.size());
  std::vector<std::exception_ptr> errors(roots.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < roots.size(); i = next++) {
      try {
        built[i] = build_family(*roots[i], *groups[i], network, options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(roots.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }

  Bank bank;
  for (auto& t : built) bank.trees.push_back(std::move(*t));
  bank.stats = compute_stats(bank.trees);
  return bank;
}

std::string tree_to_json(const FamilyTree& tree) {
  using nlohmann::json;
  json nodes = json::array();
  for (const auto& n : tree.nodes) {
    nodes.push_back({{"node_id", n.node_id},
                     {"lemma", n.lemma},
                     {"entry_ref", n.entry_ref},
                     {"pattern_id", n.pattern_id},
                     {"deriv_class", to_string(n.deriv_class)},
                     {"pos", to_string(n.pos)}});
  }
  json edges = json::array();
  for (const auto& e : tree.edges) {
    edges.push_back({{"parent", e.parent_node_id},
                     {"child", e.child_node_id},
                     {"relation", to_string(e.relation)},
                     {"base_form_used", to_string(e.base_form_used)}});
  }
  json doc = {{"root", tree.root.to_string()}, {"nodes", std::move(nodes)}, {"edges", std::move(edges)},
              {"orphans", tree.orphans}};
  return doc.dump(2) + "\n";
}

FamilyTree tree_from_json(std::string_view text, const Alphabet& alphabet) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid tree JSON: ") + e.what());
  }
  auto label = [](const json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_string()) {
      throw ParseError(std::string("tree JSON: missing string field '") + field + "'");
    }
    return j[field].get<std::string>();
  };
  auto parse_or = [](auto parsed, const std::string& text, const char* what) {
    if (!parsed) throw ParseError(std::string("tree JSON: unknown ") + what + " '" + text + "'");
    return *parsed;
  };
  try {
    FamilyTree tree{Root::parse(label(doc, "root"), alphabet), {}, {}, {}};
    for (const auto& n : doc.at("nodes")) {
      ChainNode node{label(n, "node_id"), label(n, "lemma"), label(n, "entry_ref"), label(n, "pattern_id"),
                     DerivClass::unknown, Pos::none};
      auto cls = label(n, "deriv_class");
      auto pos = label(n, "pos");
      node.deriv_class = parse_or(parse_deriv_class(cls), cls, "class");
      node.pos = parse_or(parse_pos(pos), pos, "pos");
      tree.nodes.push_back(std::move(node));
    }
    for (const auto& e : doc.at("edges")) {
      auto rel = label(e, "relation");
      auto base = label(e, "base_form_used");
      tree.edges.push_back({label(e, "parent"), label(e, "child"), parse_or(parse_relation(rel), rel, "relation"),
                            parse_or(parse_base_form(base), base, "base form")});
    }
    tree.orphans = doc.at("orphans").get<std::vector<std::string>>();
    std::sort(tree.nodes.begin(), tree.nodes.end(),
              [](const ChainNode& a, const ChainNode& b) { return a.node_id < b.node_id; });
    return tree;
  } catch (const json::exception& e) {
    throw ParseError(std::string("tree JSON: ") + e.what());
  } catch (const ValidationError& e) {
    throw ParseError(std::string("tree JSON: ") + e.what());
  }
}

std::string relations_tsv(std::span<const FamilyTree> trees) {
  std::string out = "# child_lemma\tparent_lemma\trelation\n";
  for (const auto& t : trees) {
    for (const auto& r : t.triples()) {
      out += r.child + "\t" + r.parent + "\t" + std::string(to_string(r.relation)) + "\n";
    }
  }
  return out;
}

std::string stats_to_json(const BankStats& s) {
  nlohmann::json doc = {{"root_count", s.root_count},
                        {"lemma_count", s.lemma_count},
                        {"relation_count", s.relation_count},
                        {"detected_lemmas", s.detected_lemmas},
                        {"detected_pct", s.detected_pct.value()},
                        {"orphan_count", s.orphan_count},
                        {"quarantined_count", s.quarantined_count}};
  return doc.dump(2) + "\n";
}

}  // namespace derivchain
