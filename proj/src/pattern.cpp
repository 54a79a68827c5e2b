#include "derivchain/pattern.hpp"

#include <array>

#include "derivchain/error.hpp"

namespace derivchain {

Root Root::make(std::vector<std::string> radicals, const Alphabet& alphabet,
                std::optional<std::string> gloss) {
  if (radicals.size() < kMinRadicals || radicals.size() > kMaxRadicals) {
    throw ValidationError("root must have 2 to 4 radicals, got " + std::to_string(radicals.size()));
  }
  for (const auto& r : radicals) {
    if (!alphabet.is_consonant(r)) {
      throw ValidationError("radical '" + r + "' is not a consonant of the alphabet");
    }
  }
  return Root(std::move(radicals), std::move(gloss));
}

Root Root::parse(std::string_view dotted, const Alphabet& alphabet, std::optional<std::string> gloss) {
  std::vector<std::string> radicals;
  std::size_t start = 0;
  while (true) {
    auto dot = dotted.find('.', start);
    radicals.emplace_back(dotted.substr(start, dot - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return make(std::move(radicals), alphabet, std::move(gloss));
}

std::string Root::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < radicals_.size(); ++i) {
    if (i) out += '.';
    out += radicals_[i];
  }
  return out;
}

PatternTemplate PatternTemplate::parse(std::string_view source, const Alphabet& alphabet) {
  if (source.empty()) throw ParseError("empty template");
  PatternTemplate t;
  t.source_ = std::string(source);
  std::size_t pos = 0;
  while (pos < source.size()) {
    char c = source[pos];
    if (c >= '1' && c <= '4') {
      int k = c - '0';
      if (k > t.arity_ + 1) {
        throw ParseError("template '" + t.source_ + "': radical " + std::to_string(k) +
                         " appears before radical " + std::to_string(t.arity_ + 1));
      }
      t.arity_ = std::max(t.arity_, k);
      t.slots_.push_back(Slot::radical_ref(k));
      ++pos;
    } else if (c >= '5' && c <= '9') {
      throw ParseError("template '" + t.source_ + "': radical index " + std::string(1, c) + " exceeds 4");
    } else if (c == '+') {
      t.slots_.push_back(Slot::boundary());
      ++pos;
    } else {
      auto candidates = alphabet.prefixes_of(source.substr(pos));
      if (candidates.empty()) {
        throw ParseError("template '" + t.source_ + "': malformed character at offset " +
                         std::to_string(pos));
      }
      t.slots_.push_back(Slot::literal(std::string(candidates.front())));
      pos += candidates.front().size();
    }
  }
  return t;
}

std::vector<std::size_t> PatternTemplate::boundary_cuts() const {
  std::vector<std::size_t> cuts;
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    if (slots_[i].kind == Slot::Kind::boundary && i > 0) cuts.push_back(i);
  }
  cuts.push_back(slots_.size());
  return cuts;
}

std::string PatternTemplate::serialize() const {
  std::string out;
  for (const auto& s : slots_) {
    switch (s.kind) {
      case Slot::Kind::radical:
        out += static_cast<char>('0' + s.radical);
        break;
      case Slot::Kind::literal:
        out += s.text;
        break;
      case Slot::Kind::boundary:
        out += '+';
        break;
    }
  }
  return out;
}

PatternTemplate PatternTemplate::concat(const PatternTemplate& suffix, const Alphabet& alphabet) const {
  return parse(source_ + suffix.source_, alphabet);
}

SurfaceForm SurfaceForm::make(std::string text, const Alphabet& alphabet) {
  if (text.empty()) throw ParseError("empty surface form");
  alphabet.tokenize(text);
  return SurfaceForm{std::move(text)};
}

std::string interdigitate_prefix(const Root& root, const PatternTemplate& tmpl, std::size_t slot_count) {
  if (tmpl.arity() > static_cast<int>(root.size())) {
    throw ValidationError("template '" + tmpl.source_text() + "' needs " + std::to_string(tmpl.arity()) +
                          " radicals but root " + root.to_string() + " has " + std::to_string(root.size()));
  }
  std::string out;
  const auto& slots = tmpl.slots();
  for (std::size_t i = 0; i < slot_count && i < slots.size(); ++i) {
    const auto& s = slots[i];
    if (s.kind == Slot::Kind::radical) {
      out += root.radicals()[static_cast<std::size_t>(s.radical - 1)];
    } else if (s.kind == Slot::Kind::literal) {
      out += s.text;
    }
  }
  return out;
}

SurfaceForm interdigitate(const Root& root, const PatternTemplate& tmpl) {
  return SurfaceForm{interdigitate_prefix(root, tmpl, tmpl.slots().size())};
}

bool realizes(const Root& root, const PatternTemplate& tmpl, std::string_view surface) {
  if (tmpl.arity() > static_cast<int>(root.size())) return false;
  return interdigitate(root, tmpl).text == surface;
}

std::set<Root> match_surface(const SurfaceForm& surface, const PatternTemplate& tmpl,
                             const Alphabet& alphabet) {
  std::set<Root> out;
  if (tmpl.arity() < static_cast<int>(Root::kMinRadicals)) return out;

  std::vector<const Slot*> slots;
  for (const auto& s : tmpl.slots()) {
    if (s.kind != Slot::Kind::boundary) slots.push_back(&s);
  }
  std::array<std::string_view, Root::kMaxRadicals> bound{};
  const std::string_view text = surface.text;

  auto walk = [&](auto&& self, std::size_t slot, std::size_t pos) -> void {
    if (slot == slots.size()) {
      if (pos != text.size()) return;
      std::vector<std::string> radicals;
      for (int k = 0; k < tmpl.arity(); ++k) radicals.emplace_back(bound[static_cast<std::size_t>(k)]);
      out.insert(Root::make(std::move(radicals), alphabet));
      return;
    }
    const Slot& s = *slots[slot];
    const auto rest = text.substr(pos);
    if (s.kind == Slot::Kind::literal) {
      if (rest.starts_with(s.text)) self(self, slot + 1, pos + s.text.size());
      return;
    }
    auto& binding = bound[static_cast<std::size_t>(s.radical - 1)];
    if (!binding.empty()) {
      if (rest.starts_with(binding)) self(self, slot + 1, pos + binding.size());
      return;
    }
    for (auto sym : alphabet.prefixes_of(rest)) {
      if (!alphabet.is_consonant(sym)) continue;
      binding = sym;
      self(self, slot + 1, pos + sym.size());
      binding = {};
    }
  };
  walk(walk, 0, 0);
  return out;
}

std::vector<PatternTemplate> infer_templates(const SurfaceForm& surface, const Root& root,
                                             std::span<const PatternTemplate> inventory) {
  std::vector<PatternTemplate> out;
  for (const auto& t : inventory) {
    if (!realizes(root, t, surface.text)) continue;
    bool seen = false;
    for (const auto& o : out) seen = seen || o == t;
    if (!seen) out.push_back(t);
  }
  return out;
}

}  // namespace derivchain
