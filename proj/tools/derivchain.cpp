// derivchain: build, evaluate and query derivational chain banks.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "derivchain/commands.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
  CLI::App app{"Derivational chain bank builder for templatic morphology"};
  app.require_subcommand(1);

  std::string data_dir = "data";
  std::string alphabet, canonical, affix_rules, semspec_rules, lexicon, gold, bank_dir;
  std::string output_dir = "bank";
  bool attach_orphans = false, parent_only = false, strict_multiple = false;
  unsigned threads = 1;
  std::string target;

  auto add_inputs = [&](CLI::App* cmd) {
    cmd->add_option("--data-dir", data_dir, "Directory holding the standard input files")->capture_default_str();
    cmd->add_option("--alphabet", alphabet, "Alphabet file (default <data-dir>/alphabet.tsv)");
    cmd->add_option("--canonical", canonical, "Canonical table (default <data-dir>/canonical.tsv)");
    cmd->add_option("--affix-rules", affix_rules, "Affix rules (default <data-dir>/affix_rules.tsv)");
    cmd->add_option("--semspec-rules", semspec_rules, "Semantic-specification rules (default <data-dir>/semspec_rules.tsv)");
    cmd->add_option("--lexicon", lexicon, "Lexicon JSON Lines (default <data-dir>/lexicon.jsonl)");
    cmd->add_option("--threads", threads, "Worker threads for family construction")->check(CLI::PositiveNumber);
    cmd->add_flag("--attach-orphans", attach_orphans, "Attach disconnected subtrees to the root with the unknown relation");
  };

  auto* build = app.add_subcommand("build", "Build the bank and write it to --output-dir");
  add_inputs(build);
  build->add_option("--output-dir", output_dir, "Output directory")->capture_default_str();

  auto* eval = app.add_subcommand("evaluate", "Score a bank against gold trees");
  add_inputs(eval);
  eval->add_option("--gold", gold, "Gold trees (JSON array or JSON Lines)")->required();
  eval->add_option("--bank-dir", bank_dir, "Evaluate a built bank instead of building one");
  eval->add_option("--output-dir", output_dir, "Where report.txt/report.json/diffs.txt go")->capture_default_str();
  eval->add_flag("--parent-only-eval", parent_only, "Judge correctness on the parent lemma alone");
  eval->add_flag("--strict-multiple", strict_multiple, "Multiple-correct needs exactly one matching relation");

  auto* query = app.add_subcommand("query", "Print every chain from the root to a lemma");
  query->add_option("target", target, "Lemma or dotted root")->required();
  query->add_option("--data-dir", data_dir, "Directory holding alphabet.tsv")->capture_default_str();
  query->add_option("--alphabet", alphabet, "Alphabet file");
  query->add_option("--bank-dir", bank_dir, "Built bank directory (default: --output-dir)");
  query->add_option("--output-dir", output_dir, "Built bank directory")->capture_default_str();

  auto* stats = app.add_subcommand("stats", "Print bank statistics");
  add_inputs(stats);
  stats->add_option("--bank-dir", bank_dir, "Read statistics from a built bank");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : derivchain::kExitUsage;
  }

  auto config = derivchain::RunConfig::from_data_dir(data_dir);
  auto pick = [](fs::path& slot, const std::string& value) {
    if (!value.empty()) slot = value;
  };
  pick(config.alphabet_path, alphabet);
  pick(config.canonical_path, canonical);
  pick(config.affix_rules_path, affix_rules);
  pick(config.semspec_rules_path, semspec_rules);
  pick(config.lexicon_path, lexicon);
  if (!gold.empty()) config.gold_path = gold;
  if (!bank_dir.empty()) config.bank_dir = bank_dir;
  config.output_dir = output_dir;
  config.attach_orphans = attach_orphans;
  config.parent_only_eval = parent_only;
  config.strict_multiple = strict_multiple;
  config.threads = threads;

  if (*build) return derivchain::cmd_build(config, std::cout, std::cerr);
  if (*eval) return derivchain::cmd_evaluate(config, std::cout, std::cerr);
  if (*query) return derivchain::cmd_query(config, target, std::cout, std::cerr);
  return derivchain::cmd_stats(config, std::cout, std::cerr);
}
