#include "derivchain/commands.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "derivchain/error.hpp"

namespace derivchain {

namespace fs = std::filesystem;

namespace {

void require_file(const fs::path& path, const char* what) {
  if (path.empty()) throw ValidationError(std::string("no ") + what + " given");
  if (!fs::is_regular_file(path)) throw ValidationError(std::string(what) + " not found: " + path.string());
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string quarantine_tsv(const std::vector<QuarantineRecord>& records) {
  std::string out = "# line\tlemma\treason\n";
  for (const auto& q : records) out += std::to_string(q.line) + "\t" + q.lemma + "\t" + q.reason + "\n";
  return out;
}

void report_quarantine(const std::vector<QuarantineRecord>& records, std::ostream& err) {
  for (const auto& q : records) err << "quarantined line " << q.line << " (" << q.lemma << "): " << q.reason << "\n";
}

BuildOptions build_options(const RunConfig& c) { return {c.attach_orphans, std::max(1u, c.threads)}; }

// Trees either read from a built bank or built from the configured inputs.
std::vector<FamilyTree> predicted_trees(const RunConfig& config, Alphabet& alphabet, std::ostream& err) {
  if (config.bank_dir) {
    require_file(config.alphabet_path, "alphabet file");
    alphabet = Alphabet::load(config.alphabet_path);
    return read_bank_trees(*config.bank_dir, alphabet);
  }
  Inputs inputs = load_inputs(config);
  report_quarantine(inputs.lexicon.quarantined, err);
  alphabet = inputs.alphabet;
  return build_bank(inputs.lexicon.entries, inputs.network, build_options(config)).trees;
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace

RunConfig RunConfig::from_data_dir(const fs::path& dir) {
  RunConfig c;
  c.alphabet_path = dir / "alphabet.tsv";
  c.canonical_path = dir / "canonical.tsv";
  c.affix_rules_path = dir / "affix_rules.tsv";
  c.semspec_rules_path = dir / "semspec_rules.tsv";
  c.lexicon_path = dir / "lexicon.jsonl";
  return c;
}

Inputs load_inputs(const RunConfig& config) {
  require_file(config.alphabet_path, "alphabet file");
  require_file(config.canonical_path, "canonical table");
  require_file(config.affix_rules_path, "affix rules");
  require_file(config.semspec_rules_path, "semantic-specification rules");
  require_file(config.lexicon_path, "lexicon");
  if (config.gold_path) require_file(*config.gold_path, "gold file");

  auto alphabet = Alphabet::load(config.alphabet_path);
  auto network = load_network({config.canonical_path, config.affix_rules_path, config.semspec_rules_path}, alphabet);
  auto lexicon = load_lexicon(config.lexicon_path, alphabet);
  return {std::move(alphabet), std::move(network), std::move(lexicon)};
}

void write_bank(const fs::path& dir, const Bank& bank, const AbstractNetwork& network,
                const std::vector<QuarantineRecord>& quarantined) {
  fs::create_directories(dir / "trees");
  for (const auto& entry : fs::directory_iterator(dir / "trees")) {
    if (entry.path().extension() == ".json") fs::remove(entry.path());
  }
  for (const auto& t : bank.trees) write_file(dir / "trees" / (t.root.to_string() + ".json"), tree_to_json(t));
  write_file(dir / "relations.tsv", relations_tsv(bank.trees));
  BankStats stats = bank.stats;
  stats.quarantined_count = quarantined.size();
  write_file(dir / "stats.json", stats_to_json(stats));
  write_file(dir / "quarantine.tsv", quarantine_tsv(quarantined));
  write_file(dir / "network.json", network.export_json());
}

std::vector<FamilyTree> read_bank_trees(const fs::path& dir, const Alphabet& alphabet) {
  const fs::path trees = dir / "trees";
  if (!fs::is_directory(trees)) throw ValidationError("no bank at " + dir.string() + " (missing trees/)");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(trees)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<FamilyTree> out;
  for (const auto& f : files) out.push_back(tree_from_json(read_file(f), alphabet));
  std::sort(out.begin(), out.end(), [](const FamilyTree& a, const FamilyTree& b) { return a.root < b.root; });
  return out;
}

std::vector<std::string> query_paths(std::span<const FamilyTree> trees, std::string_view target) {
  std::vector<std::string> out;
  for (const auto& t : trees) {
    const std::string root = t.root.to_string();
    if (root == target) {
      out.push_back(root);
      continue;
    }
    std::map<std::string_view, const ChainEdge*> parent_edge;
    for (const auto& e : t.edges) parent_edge[e.child_node_id] = &e;
    for (const auto& n : t.nodes) {
      if (n.lemma != target || n.entry_ref.empty()) continue;
      std::vector<const ChainNode*> chain{&n};
      std::vector<Relation> relations;
      for (auto it = parent_edge.find(n.node_id); it != parent_edge.end(); it = parent_edge.find(chain.back()->node_id)) {
        const ChainNode* parent = t.find(it->second->parent_node_id);
        if (!parent || chain.size() > t.nodes.size()) break;
        relations.push_back(it->second->relation);
        chain.push_back(parent);
      }
      std::reverse(chain.begin(), chain.end());
      std::reverse(relations.begin(), relations.end());
      std::string line;
      for (std::size_t i = 0; i < chain.size(); ++i) line += (i ? " → " : "") + chain[i]->lemma;
      line += "\n  [" + n.node_id + "] ";
      for (std::size_t i = 0; i < relations.size(); ++i) line += (i ? ", " : "") + std::string(to_string(relations[i]));
      out.push_back(std::move(line));
    }
  }
  return out;
}

int cmd_build(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Inputs inputs = load_inputs(config);
    Bank bank = build_bank(inputs.lexicon.entries, inputs.network, build_options(config));
    bank.stats.quarantined_count = inputs.lexicon.quarantined.size();
    write_bank(config.output_dir, bank, inputs.network, inputs.lexicon.quarantined);
    report_quarantine(inputs.lexicon.quarantined, err);
    out << "built " << bank.stats.root_count << " trees, " << bank.stats.relation_count << " relations, "
        << bank.stats.detected_lemmas << "/" << bank.stats.lemma_count << " lemmas detected ("
        << bank.stats.detected_pct.to_string() << "%), " << bank.stats.quarantined_count << " quarantined -> "
        << config.output_dir.string() << "\n";
    return int{kExitOk};
  });
}

int cmd_evaluate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (!config.gold_path) {
    err << "error: evaluate needs --gold\n";
    return kExitUsage;
  }
  return guarded(err, [&] {
    require_file(*config.gold_path, "gold file");
    Alphabet alphabet;
    auto trees = predicted_trees(config, alphabet, err);
    auto gold = load_gold(*config.gold_path, alphabet);
    auto report = evaluate(trees, gold, {config.parent_only_eval, config.strict_multiple});

    std::string diffs;
    std::map<Root, const FamilyTree*> by_root;
    for (const auto& t : trees) by_root.emplace(t.root, &t);
    for (const auto& g : gold) {
      auto it = by_root.find(g.root);
      if (it == by_root.end()) continue;
      auto delta = diff_trees(*it->second, g);
      if (!delta.empty()) diffs += "## " + g.root.to_string() + "\n" + delta.to_string();
    }

    fs::create_directories(config.output_dir);
    write_file(config.output_dir / "report.txt", report.to_table());
    write_file(config.output_dir / "report.json", report.to_json());
    write_file(config.output_dir / "diffs.txt", diffs);
    out << report.to_table();
    return int{kExitOk};
  });
}

int cmd_query(const RunConfig& config, std::string_view target, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_file(config.alphabet_path, "alphabet file");
    auto alphabet = Alphabet::load(config.alphabet_path);
    auto trees = read_bank_trees(config.bank_dir.value_or(config.output_dir), alphabet);
    auto paths = query_paths(trees, target);
    if (paths.empty()) {
      err << "not found: " << target << "\n";
      return int{kExitUsage};
    }
    for (const auto& p : paths) out << p << "\n";
    return int{kExitOk};
  });
}

int cmd_stats(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    BankStats stats;
    if (config.bank_dir) {
      require_file(config.alphabet_path, "alphabet file");
      auto alphabet = Alphabet::load(config.alphabet_path);
      auto trees = read_bank_trees(*config.bank_dir, alphabet);
      stats = compute_stats(trees);
      const fs::path q = *config.bank_dir / "quarantine.tsv";
      if (fs::is_regular_file(q)) {
        std::istringstream lines(read_file(q));
        std::string line;
        while (std::getline(lines, line)) stats.quarantined_count += (!line.empty() && line[0] != '#') ? 1 : 0;
      }
    } else {
      Inputs inputs = load_inputs(config);
      stats = build_bank(inputs.lexicon.entries, inputs.network, build_options(config)).stats;
      stats.quarantined_count = inputs.lexicon.quarantined.size();
    }
    out << stats_to_json(stats);
    return int{kExitOk};
  });
}

}  // namespace derivchain
