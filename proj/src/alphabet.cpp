#include "derivchain/alphabet.hpp"

#include <fstream>
#include <sstream>

#include "derivchain/error.hpp"

namespace derivchain {

namespace {

std::optional<SymbolClass> parse_class(std::string_view text) {
  if (text == "consonant") return SymbolClass::consonant;
  if (text == "vowel") return SymbolClass::vowel;
  if (text == "marker") return SymbolClass::marker;
  return std::nullopt;
}

bool is_reserved(std::string_view symbol) {
  for (char c : symbol) {
    if ((c >= '0' && c <= '9') || c == '+' || c == '.' || c == ' ' || c == '\t') return true;
  }
  return false;
}

}  // namespace

Alphabet Alphabet::parse(std::istream& in) {
  Alphabet alphabet;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::istringstream fields(line);
    std::string symbol, cls, extra;
    if (!(fields >> symbol >> cls) || (fields >> extra)) {
      throw ParseError("expected '<symbol> <class>'", lineno);
    }
    auto parsed = parse_class(cls);
    if (!parsed) throw ParseError("unknown symbol class '" + cls + "'", lineno);
    try {
      alphabet.add(symbol, *parsed);
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  return alphabet;
}

Alphabet Alphabet::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open alphabet file " + path.string());
  return parse(in);
}

void Alphabet::add(std::string symbol, SymbolClass cls) {
  if (symbol.empty()) throw ValidationError("empty symbol");
  if (is_reserved(symbol)) throw ValidationError("symbol '" + symbol + "' uses a reserved character");
  if (classes_.count(symbol)) throw ValidationError("duplicate symbol '" + symbol + "'");
  longest_ = std::max(longest_, symbol.size());
  if (cls == SymbolClass::consonant) consonants_.push_back(symbol);
  classes_.emplace(std::move(symbol), cls);
}

bool Alphabet::contains(std::string_view symbol) const { return classes_.find(symbol) != classes_.end(); }

std::optional<SymbolClass> Alphabet::class_of(std::string_view symbol) const {
  auto it = classes_.find(symbol);
  if (it == classes_.end()) return std::nullopt;
  return it->second;
}

bool Alphabet::is_consonant(std::string_view symbol) const {
  return class_of(symbol) == SymbolClass::consonant;
}

std::vector<std::string_view> Alphabet::prefixes_of(std::string_view text) const {
  std::vector<std::string_view> out;
  for (std::size_t len = std::min(longest_, text.size()); len > 0; --len) {
    auto it = classes_.find(text.substr(0, len));
    if (it != classes_.end()) out.emplace_back(it->first);
  }
  return out;
}

std::vector<std::string> Alphabet::tokenize(std::string_view text) const {
  // Longest-first backtracking; `dead[i]` marks offsets known not to segment.
  std::vector<char> dead(text.size() + 1, 0);
  std::vector<std::string> out;
  auto walk = [&](auto&& self, std::size_t pos) -> bool {
    if (pos == text.size()) return true;
    if (dead[pos]) return false;
    for (auto sym : prefixes_of(text.substr(pos))) {
      out.emplace_back(sym);
      if (self(self, pos + sym.size())) return true;
      out.pop_back();
    }
    dead[pos] = 1;
    return false;
  };
  if (!walk(walk, 0)) {
    throw ParseError("'" + std::string(text) + "' is not spelled in the transliteration alphabet");
  }
  return out;
}

bool Alphabet::is_valid(std::string_view text) const {
  if (text.empty()) return false;
  try {
    tokenize(text);
    return true;
  } catch (const ParseError&) {
    return false;
  }
}

}  // namespace derivchain
