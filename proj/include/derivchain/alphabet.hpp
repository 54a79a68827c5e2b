#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace derivchain {

enum class SymbolClass { consonant, vowel, marker };

/// Transliteration alphabet. A symbol is one phoneme-level unit and may span
/// several bytes ("ع", "š") or several characters ("(h)" for ta marbuta).
/// Digits, '+' and '.' are reserved for template and root notation.
class Alphabet {
 public:
  Alphabet() = default;

  /// Lines are `<symbol><TAB or spaces><class>`; `#` starts a comment.
  static Alphabet parse(std::istream& in);
  static Alphabet load(const std::filesystem::path& path);

  void add(std::string symbol, SymbolClass cls);

  bool contains(std::string_view symbol) const;
  std::optional<SymbolClass> class_of(std::string_view symbol) const;
  bool is_consonant(std::string_view symbol) const;

  /// Every symbol that is a prefix of `text`, longest first.
  std::vector<std::string_view> prefixes_of(std::string_view text) const;

  /// Splits `text` into symbols. Throws ParseError when no segmentation exists.
  std::vector<std::string> tokenize(std::string_view text) const;
  bool is_valid(std::string_view text) const;

  const std::vector<std::string>& consonants() const { return consonants_; }
  std::size_t size() const { return classes_.size(); }

 private:
  std::map<std::string, SymbolClass, std::less<>> classes_;
  std::vector<std::string> consonants_;
  std::size_t longest_ = 0;
};

}  // namespace derivchain
