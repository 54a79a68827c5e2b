#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "derivchain/alphabet.hpp"
#include "derivchain/pattern.hpp"
#include "derivchain/taxonomy.hpp"

namespace derivchain {

struct InflectedForms {
  std::optional<SurfaceForm> feminine_singular;
  std::optional<SurfaceForm> broken_plural;

  /// nullptr for BaseForm::lemma or a form the entry does not supply.
  const SurfaceForm* get(BaseForm form) const;
};

/// One lexicon lemma annotated with its root and pattern.
/// Identity is (lemma, template, pos, gloss): homographs with distinct glosses
/// are distinct entries.
struct LexEntry {
  SurfaceForm lemma;
  Root root;
  PatternTemplate tmpl;
  Pos pos = Pos::none;
  std::optional<std::string> gloss;
  std::optional<DerivClass> deriv_class;  // constrains matching when present
  InflectedForms inflected_forms;

  const std::string& template_text() const { return tmpl.source_text(); }
  std::string key() const;
};

struct QuarantineRecord {
  std::size_t line = 0;
  std::string lemma;
  std::string reason;
};

struct LexiconLoad {
  std::vector<LexEntry> entries;
  std::vector<QuarantineRecord> quarantined;
};

/// Reads JSON Lines. Structural problems (bad JSON, missing or mistyped
/// fields, unknown labels) throw ParseError with the line number; entries
/// whose content is inconsistent (root does not interdigitate into the
/// template to give the lemma, symbols outside the alphabet, duplicates) are
/// quarantined and loading continues.
LexiconLoad load_lexicon(std::istream& in, const Alphabet& alphabet);
LexiconLoad load_lexicon(const std::filesystem::path& path, const Alphabet& alphabet);

/// Single-line JSON with the same field names load_lexicon reads.
std::string to_json_line(const LexEntry& entry);

}  // namespace derivchain
