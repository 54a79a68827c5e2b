#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "derivchain/chain.hpp"
#include "derivchain/evaluate.hpp"
#include "derivchain/lexicon.hpp"
#include "derivchain/network.hpp"

namespace derivchain {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitValidation = 2 };

struct RunConfig {
  std::filesystem::path alphabet_path;
  std::filesystem::path canonical_path;
  std::filesystem::path affix_rules_path;
  std::filesystem::path semspec_rules_path;
  std::filesystem::path lexicon_path;
  std::optional<std::filesystem::path> gold_path;
  std::optional<std::filesystem::path> bank_dir;  // read a built bank instead of building
  std::filesystem::path output_dir = "bank";

  bool attach_orphans = false;
  bool parent_only_eval = false;
  bool strict_multiple = false;
  unsigned threads = 1;

  /// Input paths set to the standard file names inside `dir`.
  static RunConfig from_data_dir(const std::filesystem::path& dir);
};

struct Inputs {
  Alphabet alphabet;
  AbstractNetwork network;
  LexiconLoad lexicon;
};

/// Loads and validates every input named by the config, throwing on the first problem.
Inputs load_inputs(const RunConfig& config);

/// Writes trees/<root>.json, relations.tsv, stats.json, quarantine.tsv and network.json.
void write_bank(const std::filesystem::path& dir, const Bank& bank, const AbstractNetwork& network,
                const std::vector<QuarantineRecord>& quarantined);

std::vector<FamilyTree> read_bank_trees(const std::filesystem::path& dir, const Alphabet& alphabet);

/// Every path from the root to a node with this lemma, or the root itself,
/// formatted one path per line followed by its relation labels.
std::vector<std::string> query_paths(std::span<const FamilyTree> trees, std::string_view root_or_lemma);

int cmd_build(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_evaluate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_query(const RunConfig& config, std::string_view root_or_lemma, std::ostream& out, std::ostream& err);
int cmd_stats(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace derivchain
