#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "derivchain/error.hpp"
#include "derivchain/pattern.hpp"
#include "support.hpp"

namespace derivchain {
namespace {

using testing::fixture_alphabet;
using testing::root;

PatternTemplate tmpl(std::string_view s) { return PatternTemplate::parse(s, fixture_alphabet()); }

TEST(Alphabet, TokenizesMultiByteAndMultiCharSymbols) {
  const auto& a = fixture_alphabet();
  EXPECT_EQ(a.tokenize("katiyba(h)"),
            (std::vector<std::string>{"k", "a", "t", "i", "y", "b", "a", "(h)"}));
  EXPECT_EQ(a.tokenize("Âbdaع"), (std::vector<std::string>{"Â", "b", "d", "a", "ع"}));
  EXPECT_TRUE(a.is_consonant("ع"));
  EXPECT_FALSE(a.is_consonant("a"));
  EXPECT_THROW(a.tokenize("kat?b"), ParseError);
}

TEST(Alphabet, RejectsReservedSymbols) {
  std::istringstream in("b consonant\n1 consonant\n");
  EXPECT_THROW(Alphabet::parse(in), Error);
}

TEST(Pattern, ParsesSlots) {
  auto t = tmpl("1a2A3");
  ASSERT_EQ(t.slots().size(), 5u);
  EXPECT_EQ(t.slots()[0], Slot::radical_ref(1));
  EXPECT_EQ(t.slots()[1], Slot::literal("a"));
  EXPECT_EQ(t.slots()[3], Slot::literal("A"));
  EXPECT_EQ(t.arity(), 3);

  auto single = tmpl("1");
  EXPECT_EQ(single.slots(), std::vector<Slot>{Slot::radical_ref(1)});
  EXPECT_EQ(single.arity(), 1);

  auto affixed = tmpl("1i23+iy~");
  EXPECT_EQ(affixed.slots()[4], Slot::boundary());
  EXPECT_EQ(affixed.boundary_cuts(), (std::vector<std::size_t>{4, 8}));  // the whole template is a cut too
  EXPECT_EQ(affixed.arity(), 3);
}

TEST(Pattern, RejectsMalformedTemplates) {
  for (const char* bad : {"1a5", "1a9", "2a1", "1a3", "1a?2", ""}) {
    EXPECT_THROW(tmpl(bad), Error) << bad;
  }
}

TEST(Pattern, SerializeRoundTrips) {
  for (const char* s : {"1a2A3", "ta1a2~a3", "1u2uw3+iy~", "1i2A3a(h)", "Aista12a3", "+iy~", "1a23a4"}) {
    auto t = tmpl(s);
    EXPECT_EQ(t.serialize(), s);
    EXPECT_EQ(tmpl(t.serialize()), t);
  }
}

TEST(Pattern, ConcatJoinsAtBoundary) {
  auto t = tmpl("1a23").concat(tmpl("+iy~"), fixture_alphabet());
  EXPECT_EQ(t.source_text(), "1a23+iy~");
}

TEST(Interdigitate, FillsRadicalsAndDropsBoundaries) {
  EXPECT_EQ(interdigitate(root("j.b.n"), tmpl("1a2A3")).text, "jabAn");
  EXPECT_EQ(interdigitate(root("ع.l.m"), tmpl("1i23+iy~")).text, "عilmiy~");
  EXPECT_EQ(interdigitate(root("k.t.b"), tmpl("1a2iy3a(h)")).text, "katiyba(h)");
  EXPECT_THROW(interdigitate(root("k.t.b"), tmpl("1a23a4")), Error);
}

TEST(Interdigitate, PrefixStopsAtSlotCount) {
  EXPECT_EQ(interdigitate_prefix(root("H.d.d"), tmpl("1u2uw3+iy~"), 6), "Huduwd");
}

TEST(MatchSurface, FindsUniqueRoot) {
  auto roots = match_surface({"HaSAd"}, tmpl("1a2A3"), fixture_alphabet());
  ASSERT_EQ(roots.size(), 1u);
  EXPECT_EQ(roots.begin()->to_string(), "H.S.d");
}

TEST(MatchSurface, WrongLengthYieldsNothing) {
  EXPECT_TRUE(match_surface({"jabAn"}, tmpl("1a23"), fixture_alphabet()).empty());
}

TEST(MatchSurface, AgreesWithExhaustiveSearch) {
  const auto& a = fixture_alphabet();
  auto t = tmpl("ma12uw3");
  auto expected = testing::brute_force_match("maعluwm", t, a);
  ASSERT_EQ(expected, (std::set<std::vector<std::string>>{{"ع", "l", "m"}}));
  std::set<std::vector<std::string>> got;
  for (const auto& r : match_surface({"maعluwm"}, t, a)) got.insert(r.radicals());
  EXPECT_EQ(got, expected);
}

TEST(MatchSurface, ArityBelowTwoNeverMatches) {
  EXPECT_TRUE(match_surface({"b"}, tmpl("1"), fixture_alphabet()).empty());
  EXPECT_TRUE(match_surface({"bal"}, tmpl("1al"), fixture_alphabet()).empty());
}

TEST(InferTemplates, FindsCanonicalTemplate) {
  const auto inventory = testing::fixture_network().templates(SourceTable::canonical);
  auto got = infer_templates({"Darb"}, root("D.r.b"), inventory);
  EXPECT_EQ(got, std::vector<PatternTemplate>{tmpl("1a23")});
  EXPECT_TRUE(infer_templates({"xyz"}, root("D.r.b"), inventory).empty());
}

TEST(InferTemplates, AgreesWithMatchOracle) {
  const auto inventory = testing::fixture_network().templates(SourceTable::canonical);
  const auto r = root("k.t.b");
  const SurfaceForm s{"katiyba(h)"};
  std::vector<PatternTemplate> oracle;
  for (const auto& t : inventory) {
    if (match_surface(s, t, fixture_alphabet()).count(r)) oracle.push_back(t);
  }
  EXPECT_EQ(oracle, std::vector<PatternTemplate>{tmpl("1a2iy3a(h)")});
  EXPECT_EQ(infer_templates(s, r, inventory), oracle);
}

// Random roots interdigitated into every fixture template.
TEST(PatternProperties, RoundTripLengthAndSoundness) {
  const auto& a = fixture_alphabet();
  const auto& cons = a.consonants();
  std::mt19937 rng(20261014);
  std::uniform_int_distribution<std::size_t> pick(0, cons.size() - 1);
  auto inventory = testing::fixture_network().templates();
  int checked = 0;
  for (int round = 0; round < 40; ++round) {
    for (const auto& t : inventory) {
      if (t.arity() < 2) continue;
      std::vector<std::string> radicals;
      for (int i = 0; i < t.arity(); ++i) radicals.push_back(cons[pick(rng)]);
      Root r = Root::make(radicals, a);
      SurfaceForm s = interdigitate(r, t);

      std::size_t expected_len = 0;
      for (const auto& slot : t.slots()) expected_len += slot.kind != Slot::Kind::boundary;
      ASSERT_EQ(a.tokenize(s.text).size(), expected_len) << t.source_text();

      auto roots = match_surface(s, t, a);
      ASSERT_TRUE(roots.count(r)) << s.text << " " << t.source_text();
      for (const auto& m : roots) ASSERT_EQ(interdigitate(m, t), s);
      ++checked;
    }
  }
  EXPECT_GT(checked, 1000);
}

}  // namespace
}  // namespace derivchain
