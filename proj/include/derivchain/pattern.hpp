#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "derivchain/alphabet.hpp"

namespace derivchain {

/// Consonantal root: 2 to 4 radicals, each a consonant of the alphabet.
/// Written in dotted notation, e.g. "k.t.b". Ordering and equality ignore
/// the gloss.
class Root {
 public:
  static constexpr std::size_t kMinRadicals = 2;
  static constexpr std::size_t kMaxRadicals = 4;

  static Root make(std::vector<std::string> radicals, const Alphabet& alphabet,
                   std::optional<std::string> gloss = std::nullopt);
  static Root parse(std::string_view dotted, const Alphabet& alphabet,
                    std::optional<std::string> gloss = std::nullopt);

  const std::vector<std::string>& radicals() const { return radicals_; }
  const std::optional<std::string>& gloss() const { return gloss_; }
  std::size_t size() const { return radicals_.size(); }
  std::string to_string() const;

  friend bool operator==(const Root& a, const Root& b) { return a.radicals_ == b.radicals_; }
  friend auto operator<=>(const Root& a, const Root& b) { return a.radicals_ <=> b.radicals_; }

 private:
  Root(std::vector<std::string> radicals, std::optional<std::string> gloss)
      : radicals_(std::move(radicals)), gloss_(std::move(gloss)) {}

  std::vector<std::string> radicals_;
  std::optional<std::string> gloss_;
};

struct Slot {
  enum class Kind { radical, literal, boundary };

  Kind kind = Kind::literal;
  int radical = 0;   // 1-based, radical slots only
  std::string text;  // literal symbol, literal slots only

  static Slot radical_ref(int k) { return {Kind::radical, k, {}}; }
  static Slot literal(std::string s) { return {Kind::literal, 0, std::move(s)}; }
  static Slot boundary() { return {Kind::boundary, 0, {}}; }

  friend bool operator==(const Slot&, const Slot&) = default;
};

/// Abstract pattern such as "1a2A3" or "ma12uw3+a(h)": digits 1-4 are radical
/// slots, '+' is an affix boundary, anything else is a literal alphabet symbol.
class PatternTemplate {
 public:
  PatternTemplate() = default;

  /// Throws ParseError on an empty source, a character outside the alphabet,
  /// a radical index above 4, or radicals introduced out of order.
  static PatternTemplate parse(std::string_view source, const Alphabet& alphabet);

  const std::vector<Slot>& slots() const { return slots_; }
  const std::string& source_text() const { return source_; }
  bool empty() const { return slots_.empty(); }

  /// Highest radical index referenced (0 for a pure affix fragment).
  int arity() const { return arity_; }
  bool has_radicals() const { return arity_ > 0; }
  bool starts_with_boundary() const {
    return !slots_.empty() && slots_.front().kind == Slot::Kind::boundary;
  }

  /// Slot counts at which a boundary-delimited prefix ends, ascending; the
  /// full template is always the last one.
  std::vector<std::size_t> boundary_cuts() const;

  /// Re-serializes the slot sequence; equals source_text() for parsed templates.
  std::string serialize() const;

  PatternTemplate concat(const PatternTemplate& suffix, const Alphabet& alphabet) const;

  friend bool operator==(const PatternTemplate& a, const PatternTemplate& b) {
    return a.source_ == b.source_;
  }
  friend auto operator<=>(const PatternTemplate& a, const PatternTemplate& b) {
    return a.source_ <=> b.source_;
  }

 private:
  std::vector<Slot> slots_;
  std::string source_;
  int arity_ = 0;
};

struct SurfaceForm {
  std::string text;

  /// Throws ParseError unless `text` is non-empty and spelled in `alphabet`.
  static SurfaceForm make(std::string text, const Alphabet& alphabet);

  friend bool operator==(const SurfaceForm&, const SurfaceForm&) = default;
  friend auto operator<=>(const SurfaceForm&, const SurfaceForm&) = default;
};

/// Substitutes radical k for every slot k, copies literals and drops boundaries.
/// Throws ValidationError when the template references a radical the root lacks.
SurfaceForm interdigitate(const Root& root, const PatternTemplate& tmpl);

/// Surface text of the first `slot_count` slots of `tmpl`.
std::string interdigitate_prefix(const Root& root, const PatternTemplate& tmpl,
                                 std::size_t slot_count);

/// True when interdigitating `root` into `tmpl` yields `surface`. Unlike
/// match_surface this accepts roots longer than the template's arity, which
/// is how collapsed variants such as "1a2~" for geminate roots are listed.
bool realizes(const Root& root, const PatternTemplate& tmpl, std::string_view surface);

/// Every root r with |r| == tmpl.arity() such that interdigitate(r, tmpl) == surface.
/// Templates of arity below 2 never match.
std::set<Root> match_surface(const SurfaceForm& surface, const PatternTemplate& tmpl,
                             const Alphabet& alphabet);

/// Templates of `inventory` that the root realizes as `surface`, in inventory order.
std::vector<PatternTemplate> infer_templates(const SurfaceForm& surface, const Root& root,
                                             std::span<const PatternTemplate> inventory);

}  // namespace derivchain
