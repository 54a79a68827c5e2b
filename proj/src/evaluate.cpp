#include "derivchain/evaluate.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "derivchain/error.hpp"

namespace derivchain {

using nlohmann::json;

MetricsReport MetricsReport::from_counts(std::size_t roots, std::size_t lemmas, std::size_t detected,
                                         std::size_t single_correct, std::size_t multiple_correct,
                                         std::size_t no_correct) {
  if (single_correct + multiple_correct + no_correct != detected) {
    throw ValidationError("single + multiple + none must equal detected");
  }
  if (detected > lemmas) throw ValidationError("detected exceeds lemmas");
  MetricsReport r;
  r.roots = roots;
  r.lemmas = lemmas;
  r.detected = detected;
  r.single_correct = single_correct;
  r.multiple_correct = multiple_correct;
  r.no_correct = no_correct;
  auto det = static_cast<std::int64_t>(detected);
  r.detected_pct = Percent::of(det, static_cast<std::int64_t>(lemmas));
  r.single_pct = Percent::of(static_cast<std::int64_t>(single_correct), det);
  r.multiple_pct = Percent::of(static_cast<std::int64_t>(multiple_correct), det);
  r.no_correct_pct = Percent::of(static_cast<std::int64_t>(no_correct), det);
  return r;
}

std::string MetricsReport::to_table() const {
  std::ostringstream out;
  auto row = [&](const char* name, std::size_t count, const Percent* pct) {
    out << std::left << std::setw(28) << name << std::right << std::setw(8) << count;
    if (pct) out << std::setw(10) << ("(" + pct->to_string() + "%)");
    out << "\n";
  };
  row("Roots", roots, nullptr);
  row("Lemmas", lemmas, nullptr);
  row("Detected Relations", detected, &detected_pct);
  row("Single Relation Correct", single_correct, &single_pct);
  row("Multiple Relation Correct", multiple_correct, &multiple_pct);
  row("No Correct Relation", no_correct, &no_correct_pct);
  for (const auto& r : unpredicted_roots) out << "gold root without prediction: " << r << "\n";
  for (const auto& r : ungraded_roots) out << "predicted root without gold: " << r << "\n";
  return out.str();
}

std::string MetricsReport::to_json() const {
  auto bucket = [](std::size_t count, Percent pct) { return json{{"count", count}, {"pct", pct.value()}}; };
  json doc = {
      {"roots", roots},
      {"lemmas", lemmas},
      {"detected", bucket(detected, detected_pct)},
      {"single_correct", bucket(single_correct, single_pct)},
      {"multiple_correct", bucket(multiple_correct, multiple_pct)},
      {"no_correct", bucket(no_correct, no_correct_pct)},
      {"unpredicted_roots", unpredicted_roots},
      {"ungraded_roots", ungraded_roots},
  };
  return doc.dump(2) + "\n";
}

MetricsReport evaluate(std::span<const FamilyTree> predicted, std::span<const GoldTree> gold,
                       const EvalOptions& options) {
  std::map<std::string, const FamilyTree*> by_root;
  for (const auto& t : predicted) by_root[t.root.to_string()] = &t;

  std::set<std::string> gold_roots;
  std::size_t lemmas = 0, detected = 0, single = 0, multiple = 0, none = 0;
  std::vector<std::string> unpredicted;

  for (const auto& g : gold) {
    const std::string root = g.root.to_string();
    if (!gold_roots.insert(root).second) throw ValidationError("duplicate gold root " + root);

    std::map<std::string, std::vector<const RelationTriple*>> gold_by_child;
    for (const auto& r : g.relations) gold_by_child[r.child].push_back(&r);

    std::map<std::string, std::vector<RelationTriple>> predicted_by_child;
    auto it = by_root.find(root);
    if (it == by_root.end()) {
      unpredicted.push_back(root);
    } else {
      for (auto& t : it->second->triples()) predicted_by_child[t.child].push_back(std::move(t));
    }

    for (const auto& [lemma, golds] : gold_by_child) {
      ++lemmas;
      auto p = predicted_by_child.find(lemma);
      if (p == predicted_by_child.end() || p->second.empty()) continue;
      ++detected;
      std::size_t matches = 0;
      for (const auto& pred : p->second) {
        bool ok = std::any_of(golds.begin(), golds.end(), [&](const RelationTriple* g) {
          return g->parent == pred.parent && (options.parent_only || g->relation == pred.relation);
        });
        matches += ok ? 1 : 0;
      }
      const std::size_t n = p->second.size();
      if (n == 1 && matches == 1) {
        ++single;
      } else if (n > 1 && (options.strict_multiple ? matches == 1 : matches >= 1)) {
        ++multiple;
      } else {
        ++none;
      }
    }
  }

  auto report = MetricsReport::from_counts(gold.size(), lemmas, detected, single, multiple, none);
  report.unpredicted_roots = std::move(unpredicted);
  for (const auto& [root, tree] : by_root) {
    if (!gold_roots.count(root)) report.ungraded_roots.push_back(root);
  }
  return report;
}

namespace {

void check_gold(const GoldTree& g) {
  for (std::size_t i = 1; i < g.relations.size(); ++i) {
    if (g.relations[i] == g.relations[i - 1]) {
      throw ValidationError("gold tree " + g.root.to_string() + " repeats relation " + g.relations[i].child + " <- " +
                            g.relations[i].parent);
    }
  }
  std::map<std::string_view, std::vector<std::string_view>> children;
  for (const auto& r : g.relations) {
    // Same-spelling semantic specification (adjective -> noun) links a lemma
    // to itself; only longer cycles are rejected.
    if (r.child != r.parent) children[r.parent].push_back(r.child);
  }
  std::map<std::string_view, int> state;  // 1 active, 2 done
  auto visit = [&](auto&& self, std::string_view v) -> void {
    state[v] = 1;
    for (auto c : children[v]) {
      if (state[c] == 1) throw ValidationError("gold tree " + g.root.to_string() + " has a cycle through " + std::string(c));
      if (state[c] == 0) self(self, c);
    }
    state[v] = 2;
  };
  for (const auto& [v, _] : children) {
    if (state[v] == 0) visit(visit, v);
  }
}

GoldTree gold_from_object(const json& obj, const Alphabet& alphabet) {
  if (!obj.is_object() || !obj.contains("root") || !obj["root"].is_string() || !obj.contains("relations") ||
      !obj["relations"].is_array()) {
    throw ParseError("gold tree must be {root, relations: [...]}");
  }
  GoldTree g{Root::parse(obj["root"].get<std::string>(), alphabet), {}};
  for (const auto& r : obj["relations"]) {
    for (const char* f : {"child", "parent", "relation"}) {
      if (!r.contains(f) || !r[f].is_string()) throw ParseError(std::string("gold relation missing '") + f + "'");
    }
    auto label = r["relation"].get<std::string>();
    auto rel = parse_relation(label);
    if (!rel) throw ValidationError("gold tree " + g.root.to_string() + ": unknown relation label '" + label + "'");
    g.relations.push_back({r["child"].get<std::string>(), r["parent"].get<std::string>(), *rel});
  }
  std::sort(g.relations.begin(), g.relations.end());
  check_gold(g);
  return g;
}

}  // namespace

std::vector<GoldTree> load_gold(std::istream& in, const Alphabet& alphabet) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<GoldTree> out;
  auto first = text.find_first_not_of(" \t\r\n");
  try {
    if (first != std::string::npos && text[first] == '[') {
      for (const auto& obj : json::parse(text)) out.push_back(gold_from_object(obj, alphabet));
    } else {
      std::istringstream lines(text);
      std::string line;
      std::size_t lineno = 0;
      while (std::getline(lines, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
          out.push_back(gold_from_object(json::parse(line), alphabet));
        } catch (const json::exception& e) {
          throw ParseError(std::string("invalid gold JSON: ") + e.what(), lineno);
        }
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid gold JSON: ") + e.what());
  }
  std::set<Root> seen;
  for (const auto& g : out) {
    if (!seen.insert(g.root).second) throw ValidationError("duplicate gold root " + g.root.to_string());
  }
  return out;
}

std::vector<GoldTree> load_gold(const std::filesystem::path& path, const Alphabet& alphabet) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open gold file " + path.string());
  return load_gold(in, alphabet);
}

std::string gold_to_json(std::span<const GoldTree> gold) {
  json doc = json::array();
  for (const auto& g : gold) {
    json rels = json::array();
    for (const auto& r : g.relations) {
      rels.push_back({{"child", r.child}, {"parent", r.parent}, {"relation", to_string(r.relation)}});
    }
    doc.push_back({{"root", g.root.to_string()}, {"relations", std::move(rels)}});
  }
  return doc.dump(2) + "\n";
}

GoldTree gold_from_tree(const FamilyTree& tree) {
  GoldTree g{tree.root, tree.triples()};
  g.relations.erase(std::unique(g.relations.begin(), g.relations.end()), g.relations.end());
  return g;
}

TreeDelta diff_trees(const FamilyTree& predicted, const GoldTree& gold) {
  if (predicted.root != gold.root) {
    throw ValidationError("root mismatch: predicted " + predicted.root.to_string() + ", gold " + gold.root.to_string());
  }
  auto triples = predicted.triples();
  std::map<std::string, std::size_t> per_child;
  for (const auto& t : triples) ++per_child[t.child];
  std::set<RelationTriple> pred(triples.begin(), triples.end());
  std::set<RelationTriple> ref(gold.relations.begin(), gold.relations.end());

  TreeDelta d;
  std::set_difference(ref.begin(), ref.end(), pred.begin(), pred.end(), std::back_inserter(d.missing));
  std::set_difference(pred.begin(), pred.end(), ref.begin(), ref.end(), std::back_inserter(d.spurious));
  for (const auto& [lemma, n] : per_child) {
    if (n > 1) d.ambiguous.emplace_back(lemma, n);
  }
  return d;
}

std::string TreeDelta::to_string() const {
  std::string out;
  auto line = [&](const char* kind, const RelationTriple& t) {
    out += std::string(kind) + "\t" + t.child + "\t" + t.parent + "\t" + std::string(derivchain::to_string(t.relation)) + "\n";
  };
  for (const auto& t : missing) line("missing", t);
  for (const auto& t : spurious) line("spurious", t);
  for (const auto& [lemma, n] : ambiguous) out += "ambiguous\t" + lemma + "\t" + std::to_string(n) + "\n";
  return out;
}

}  // namespace derivchain
