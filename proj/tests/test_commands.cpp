#include <gtest/gtest.h>

#include <cstdlib>
#include <random>
#include <sstream>

#include <json.hpp>

#include "derivchain/commands.hpp"
#include "support.hpp"

namespace derivchain {
namespace {

namespace fs = std::filesystem;
using testing::data_dir;
using testing::read_text;

class Workspace {
 public:
  Workspace() {
    static int counter = 0;
    dir_ = fs::temp_directory_path() /
           ("derivchain-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(dir_);
    fs::create_directories(dir_ / "data");
    for (const char* f : {"alphabet.tsv", "canonical.tsv", "affix_rules.tsv", "semspec_rules.tsv", "lexicon.jsonl"}) {
      fs::copy_file(data_dir() / f, dir_ / "data" / f);
    }
  }
  ~Workspace() { fs::remove_all(dir_); }

  fs::path data() const { return dir_ / "data"; }
  fs::path out() const { return dir_ / "out"; }

  RunConfig config() const {
    auto c = RunConfig::from_data_dir(data());
    c.output_dir = out();
    return c;
  }

  void write(const std::string& name, const std::string& text) const { std::ofstream(data() / name) << text; }

  // Lexicon lines whose root is one of `roots`.
  void keep_roots(const std::set<std::string>& roots) const {
    std::istringstream in(read_text(data_dir() / "lexicon.jsonl"));
    std::string line, kept;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (roots.count(nlohmann::json::parse(line).at("root").get<std::string>())) kept += line + "\n";
    }
    write("lexicon.jsonl", kept);
  }

 private:
  fs::path dir_;
};

int run(int (*cmd)(const RunConfig&, std::ostream&, std::ostream&), const RunConfig& c, std::string* out = nullptr) {
  std::ostringstream o, e;
  int code = cmd(c, o, e);
  if (out) *out = o.str();
  return code;
}

std::size_t file_count(const fs::path& dir) {
  if (!fs::exists(dir)) return 0;
  return static_cast<std::size_t>(std::distance(fs::recursive_directory_iterator(dir), fs::recursive_directory_iterator()));
}

TEST(Build, FiveRootFixtureWritesFiveTrees) {
  Workspace w;
  w.keep_roots({"b.d.ع", "k.t.b", "ع.l.m", "f.l.H", "H.d.d"});
  ASSERT_EQ(run(cmd_build, w.config()), kExitOk);
  std::size_t trees = 0;
  for (const auto& f : fs::directory_iterator(w.out() / "trees")) trees += f.path().extension() == ".json";
  EXPECT_EQ(trees, 5u);
  auto stats = nlohmann::json::parse(read_text(w.out() / "stats.json"));
  EXPECT_EQ(stats.at("root_count"), 5);
  for (const char* f : {"relations.tsv", "quarantine.tsv", "network.json"}) EXPECT_TRUE(fs::exists(w.out() / f)) << f;
}

TEST(Build, EmptyLexiconGivesEmptyBank) {
  Workspace w;
  w.write("lexicon.jsonl", "");
  std::string out;
  ASSERT_EQ(run(cmd_build, w.config(), &out), kExitOk);
  auto stats = nlohmann::json::parse(read_text(w.out() / "stats.json"));
  EXPECT_EQ(stats.at("root_count"), 0);
  EXPECT_EQ(stats.at("lemma_count"), 0);
  EXPECT_EQ(stats.at("relation_count"), 0);
}

TEST(Build, MismatchedLineIsQuarantined) {
  Workspace w;
  std::ofstream(w.data() / "lexicon.jsonl", std::ios::app)
      << R"({"lemma": "kutub", "root": "k.t.b", "template_text": "1a2a3", "pos": "verb"})" << "\n";
  ASSERT_EQ(run(cmd_build, w.config()), kExitOk);
  auto quarantine = read_text(w.out() / "quarantine.tsv");
  EXPECT_NE(quarantine.find("kutub"), std::string::npos);
  auto stats = nlohmann::json::parse(read_text(w.out() / "stats.json"));
  EXPECT_EQ(stats.at("quarantined_count"), 1);
  EXPECT_EQ(stats.at("root_count"), 9);
}

TEST(Build, InvalidInputWritesNothing) {
  Workspace w;
  std::ofstream(w.data() / "canonical.tsv", std::ios::app)
      << "X.m\tMX\tmasdar\tnoun\t1a23\tI\tcanonical\tNOPE\tmasdar-of\t-\n";
  EXPECT_EQ(run(cmd_build, w.config()), kExitValidation);
  EXPECT_EQ(file_count(w.out()), 0u);

  Workspace v;
  v.write("lexicon.jsonl", "{not json\n");
  EXPECT_EQ(run(cmd_build, v.config()), kExitValidation);
  EXPECT_EQ(file_count(v.out()), 0u);

  Workspace m;
  fs::remove(m.data() / "alphabet.tsv");
  EXPECT_EQ(run(cmd_build, m.config()), kExitValidation);
  EXPECT_EQ(file_count(m.out()), 0u);
}

TEST(Build, RepeatedRunsAreByteIdentical) {
  Workspace a, b;
  auto cb = b.config();
  cb.threads = 4;
  ASSERT_EQ(run(cmd_build, a.config()), kExitOk);
  ASSERT_EQ(run(cmd_build, cb), kExitOk);
  std::vector<fs::path> files;
  for (const auto& f : fs::recursive_directory_iterator(a.out())) {
    if (f.is_regular_file()) files.push_back(fs::relative(f.path(), a.out()));
  }
  EXPECT_EQ(file_count(a.out()), file_count(b.out()));
  for (const auto& f : files) EXPECT_EQ(read_text(a.out() / f), read_text(b.out() / f)) << f;
}

TEST(Evaluate, GoldEqualToPredictionsIsPerfect) {
  Workspace w;
  ASSERT_EQ(run(cmd_build, w.config()), kExitOk);
  auto trees = read_bank_trees(w.out(), testing::fixture_alphabet());
  std::vector<GoldTree> gold;
  for (const auto& t : trees) gold.push_back(gold_from_tree(t));
  w.write("self_gold.json", gold_to_json(gold));

  auto c = w.config();
  c.gold_path = w.data() / "self_gold.json";
  c.bank_dir = w.out();
  c.output_dir = w.out() / "eval";
  ASSERT_EQ(run(cmd_evaluate, c), kExitOk);
  auto report = nlohmann::json::parse(read_text(c.output_dir / "report.json"));
  EXPECT_EQ(report.at("detected").at("pct"), 100.0);
  EXPECT_EQ(report.at("no_correct").at("count"), 0);
}

TEST(Evaluate, DeletingOneEdgeDropsOneDetection) {
  Workspace w;
  auto c = w.config();
  c.gold_path = data_dir() / "gold.json";
  c.output_dir = w.out() / "full";
  ASSERT_EQ(run(cmd_evaluate, c), kExitOk);
  auto full = nlohmann::json::parse(read_text(c.output_dir / "report.json"));

  // Remove the lone network edge that yields the attributive AibdaAعiy~.
  ASSERT_EQ(run(cmd_build, w.config()), kExitOk);
  auto trees = read_bank_trees(w.out(), testing::fixture_alphabet());
  for (auto& t : trees) {
    std::erase_if(t.edges, [&](const ChainEdge& e) { return t.find(e.child_node_id)->lemma == "AibdaAعiy~"; });
    std::erase_if(t.nodes, [](const ChainNode& n) { return n.lemma == "AibdaAعiy~"; });
  }
  Bank pruned{trees, compute_stats(trees)};
  fs::path bank = w.out() / "pruned";
  write_bank(bank, pruned, testing::fixture_network(), {});
  c.bank_dir = bank;
  c.output_dir = w.out() / "pruned-eval";
  ASSERT_EQ(run(cmd_evaluate, c), kExitOk);
  auto less = nlohmann::json::parse(read_text(c.output_dir / "report.json"));
  EXPECT_EQ(less.at("detected").at("count").get<int>(), full.at("detected").at("count").get<int>() - 1);
  EXPECT_NE(read_text(c.output_dir / "diffs.txt").find("missing\tAibdaAعiy~\tAibdaAع\tattributive-of"),
            std::string::npos);
}

TEST(Evaluate, MissingGoldIsUsageError) {
  Workspace w;
  EXPECT_EQ(run(cmd_evaluate, w.config()), kExitUsage);
}

TEST(Query, PrintsChainsAndHandlesMisses) {
  Workspace w;
  ASSERT_EQ(run(cmd_build, w.config()), kExitOk);
  std::ostringstream out, err;
  ASSERT_EQ(cmd_query(w.config(), "AibdaAعiy~", out, err), kExitOk);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "b.d.ع → badaع → Âbdaع → AibdaAع → AibdaAعiy~");
  EXPECT_NE(out.str().find("form-I-of, form-IV-of, masdar-of, attributive-of"), std::string::npos);

  std::ostringstream root_out;
  ASSERT_EQ(cmd_query(w.config(), "k.t.b", root_out, err), kExitOk);
  EXPECT_EQ(root_out.str().substr(0, root_out.str().find('\n')), "k.t.b");

  std::ostringstream miss_out, miss_err;
  EXPECT_EQ(cmd_query(w.config(), "zzz", miss_out, miss_err), kExitUsage);
  EXPECT_NE(miss_err.str().find("not found"), std::string::npos);

  std::ostringstream two;
  ASSERT_EQ(cmd_query(w.config(), "falAH", two, err), kExitOk);
  const std::string paths = two.str();
  EXPECT_EQ(std::count(paths.begin(), paths.end(), '\n'), 4);
}

TEST(Stats, BuiltAndFreshAgree) {
  Workspace w;
  ASSERT_EQ(run(cmd_build, w.config()), kExitOk);
  std::string fresh, stored;
  ASSERT_EQ(run(cmd_stats, w.config(), &fresh), kExitOk);
  auto c = w.config();
  c.bank_dir = w.out();
  ASSERT_EQ(run(cmd_stats, c, &stored), kExitOk);
  EXPECT_EQ(fresh, stored);
  EXPECT_EQ(fresh, read_text(w.out() / "stats.json"));
}

int cli(const std::string& args) {
  int status = std::system((std::string("\"") + DERIVCHAIN_CLI + "\" " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Cli, ExitCodes) {
  Workspace w;
  const std::string data = "--data-dir \"" + w.data().string() + "\"";
  const std::string out = "--output-dir \"" + w.out().string() + "\"";
  EXPECT_EQ(cli(""), 1);
  EXPECT_EQ(cli("frobnicate"), 1);
  EXPECT_EQ(cli("build --threads nope " + data), 1);
  EXPECT_EQ(cli("build " + data + " " + out + " --threads 2 --attach-orphans"), 0);
  EXPECT_EQ(cli("query AibdaAعiy~ " + data + " " + out), 0);
  EXPECT_EQ(cli("query nope " + data + " " + out), 1);
  EXPECT_EQ(cli("stats " + data), 0);
  EXPECT_EQ(cli("evaluate " + data + " --gold \"" + (data_dir() / "gold.json").string() + "\" --parent-only-eval " +
                "--output-dir \"" + (w.out() / "eval").string() + "\""),
            0);
  w.write("canonical.tsv", "id\ttag\nbroken\trow\n");
  EXPECT_EQ(cli("build " + data + " " + out), 2);
}

}  // namespace
}  // namespace derivchain
