#include "derivchain/lexicon.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "derivchain/error.hpp"

namespace derivchain {

using nlohmann::json;

const SurfaceForm* InflectedForms::get(BaseForm form) const {
  switch (form) {
    case BaseForm::feminine_singular:
      return feminine_singular ? &*feminine_singular : nullptr;
    case BaseForm::broken_plural:
      return broken_plural ? &*broken_plural : nullptr;
    case BaseForm::lemma:
      break;
  }
  return nullptr;
}

std::string LexEntry::key() const {
  std::string k = lemma.text + "|" + tmpl.source_text() + "|" + std::string(to_string(pos));
  if (gloss) k += "|" + *gloss;
  return k;
}

namespace {

struct RawEntry {
  std::string lemma, root, tmpl;
  Pos pos = Pos::none;
  std::optional<std::string> gloss;
  std::optional<DerivClass> deriv_class;
  std::optional<std::string> feminine_singular, broken_plural;
};

std::string required_string(const json& obj, const char* field, std::size_t line) {
  auto it = obj.find(field);
  if (it == obj.end()) throw ParseError(std::string("missing field '") + field + "'", line);
  if (!it->is_string()) throw ParseError(std::string("field '") + field + "' must be a string", line);
  return it->get<std::string>();
}

std::optional<std::string> optional_string(const json& obj, const char* field, std::size_t line) {
  auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw ParseError(std::string("field '") + field + "' must be a string", line);
  return it->get<std::string>();
}

RawEntry parse_raw(const std::string& text, std::size_t line) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), line);
  }
  if (!obj.is_object()) throw ParseError("lexicon line must be a JSON object", line);

  RawEntry raw;
  raw.lemma = required_string(obj, "lemma", line);
  raw.root = required_string(obj, "root", line);
  raw.tmpl = required_string(obj, "template_text", line);
  auto pos = required_string(obj, "pos", line);
  auto parsed_pos = parse_pos(pos);
  if (!parsed_pos || *parsed_pos == Pos::none) throw ParseError("unknown pos '" + pos + "'", line);
  raw.pos = *parsed_pos;
  raw.gloss = optional_string(obj, "gloss", line);
  if (auto cls = optional_string(obj, "deriv_class", line)) {
    raw.deriv_class = parse_deriv_class(*cls);
    if (!raw.deriv_class) throw ParseError("unknown deriv_class '" + *cls + "'", line);
  }
  if (auto it = obj.find("inflected_forms"); it != obj.end() && !it->is_null()) {
    if (!it->is_object()) throw ParseError("inflected_forms must be an object", line);
    for (const auto& [k, v] : it->items()) {
      if (k != "feminine_singular" && k != "broken_plural") {
        throw ParseError("unknown inflected form '" + k + "'", line);
      }
    }
    raw.feminine_singular = optional_string(*it, "feminine_singular", line);
    raw.broken_plural = optional_string(*it, "broken_plural", line);
  }
  return raw;
}

LexEntry validate_raw(RawEntry raw, const Alphabet& alphabet) {
  auto root = Root::parse(raw.root, alphabet);
  auto lemma = SurfaceForm::make(raw.lemma, alphabet);
  auto tmpl = PatternTemplate::parse(raw.tmpl, alphabet);
  if (!tmpl.has_radicals()) throw ValidationError("template '" + raw.tmpl + "' has no radical slots");
  if (tmpl.arity() > static_cast<int>(root.size())) {
    throw ValidationError("template '" + raw.tmpl + "' needs more radicals than root " + raw.root);
  }
  auto produced = interdigitate(root, tmpl);
  if (produced != lemma) {
    throw ValidationError("root " + raw.root + " in template " + raw.tmpl + " gives '" + produced.text +
                          "', not '" + raw.lemma + "'");
  }
  LexEntry entry{std::move(lemma), std::move(root), std::move(tmpl), raw.pos, std::move(raw.gloss),
                 raw.deriv_class, {}};
  if (entry.deriv_class && pos_of(*entry.deriv_class) != entry.pos) {
    throw ValidationError("deriv_class " + std::string(to_string(*entry.deriv_class)) +
                          " is inconsistent with pos " + std::string(to_string(entry.pos)));
  }
  if (raw.feminine_singular) {
    entry.inflected_forms.feminine_singular = SurfaceForm::make(*raw.feminine_singular, alphabet);
  }
  if (raw.broken_plural) entry.inflected_forms.broken_plural = SurfaceForm::make(*raw.broken_plural, alphabet);
  return entry;
}

}  // namespace

LexiconLoad load_lexicon(std::istream& in, const Alphabet& alphabet) {
  LexiconLoad out;
  std::set<std::string> keys;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    RawEntry raw = parse_raw(line, lineno);
    std::string lemma = raw.lemma;
    try {
      LexEntry entry = validate_raw(std::move(raw), alphabet);
      if (!keys.insert(entry.key()).second) throw ValidationError("duplicate entry " + entry.key());
      out.entries.push_back(std::move(entry));
    } catch (const Error& e) {
      out.quarantined.push_back({lineno, lemma, e.what()});
    }
  }
  return out;
}

LexiconLoad load_lexicon(const std::filesystem::path& path, const Alphabet& alphabet) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open lexicon " + path.string());
  return load_lexicon(in, alphabet);
}

std::string to_json_line(const LexEntry& entry) {
  json obj = {
      {"lemma", entry.lemma.text},
      {"root", entry.root.to_string()},
      {"template_text", entry.template_text()},
      {"pos", to_string(entry.pos)},
  };
  if (entry.gloss) obj["gloss"] = *entry.gloss;
  if (entry.deriv_class) obj["deriv_class"] = to_string(*entry.deriv_class);
  json forms = json::object();
  if (entry.inflected_forms.feminine_singular) forms["feminine_singular"] = entry.inflected_forms.feminine_singular->text;
  if (entry.inflected_forms.broken_plural) forms["broken_plural"] = entry.inflected_forms.broken_plural->text;
  if (!forms.empty()) obj["inflected_forms"] = std::move(forms);
  return obj.dump();
}

}  // namespace derivchain
