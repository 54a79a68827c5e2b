#include "derivchain/taxonomy.hpp"

#include <array>
#include <utility>

namespace derivchain {

namespace {

template <typename E, std::size_t N>
using Table = std::array<std::pair<E, std::string_view>, N>;

constexpr Table<DerivClass, 14> kClasses{{
    {DerivClass::root, "root"},
    {DerivClass::unaugmented_verb, "unaugmented-verb"},
    {DerivClass::augmented_verb, "augmented-verb"},
    {DerivClass::masdar, "masdar"},
    {DerivClass::active_participle, "active-participle"},
    {DerivClass::passive_participle, "passive-participle"},
    {DerivClass::descriptive_adjective, "descriptive-adjective"},
    {DerivClass::attributive_adjective, "attributive-adjective"},
    {DerivClass::elative, "elative"},
    {DerivClass::noun_of_location, "noun-of-location"},
    {DerivClass::noun_of_instrument, "noun-of-instrument"},
    {DerivClass::primary_noun, "primary-noun"},
    {DerivClass::specified_noun, "specified-noun"},
    {DerivClass::unknown, "unknown"},
}};

constexpr Table<Pos, 4> kPos{{
    {Pos::none, "none"},
    {Pos::verb, "verb"},
    {Pos::noun, "noun"},
    {Pos::adjective, "adjective"},
}};

constexpr Table<Relation, 25> kRelations{{
    {Relation::form_I_of, "form-I-of"},
    {Relation::form_II_of, "form-II-of"},
    {Relation::form_III_of, "form-III-of"},
    {Relation::form_IV_of, "form-IV-of"},
    {Relation::form_V_of, "form-V-of"},
    {Relation::form_VI_of, "form-VI-of"},
    {Relation::form_VII_of, "form-VII-of"},
    {Relation::form_VIII_of, "form-VIII-of"},
    {Relation::form_IX_of, "form-IX-of"},
    {Relation::form_X_of, "form-X-of"},
    {Relation::form_QI_of, "form-QI-of"},
    {Relation::form_QII_of, "form-QII-of"},
    {Relation::form_QIII_of, "form-QIII-of"},
    {Relation::form_QIV_of, "form-QIV-of"},
    {Relation::masdar_of, "masdar-of"},
    {Relation::active_participle_of, "active-participle-of"},
    {Relation::passive_participle_of, "passive-participle-of"},
    {Relation::descriptive_adjective_of, "descriptive-adjective-of"},
    {Relation::elative_of, "elative-of"},
    {Relation::noun_of_location_of, "noun-of-location-of"},
    {Relation::noun_of_instrument_of, "noun-of-instrument-of"},
    {Relation::primary_noun_of, "primary-noun-of"},
    {Relation::attributive_of, "attributive-of"},
    {Relation::semantic_specification_of, "semantic-specification-of"},
    {Relation::unknown, "unknown"},
}};

constexpr Table<BaseForm, 3> kBaseForms{{
    {BaseForm::lemma, "lemma"},
    {BaseForm::feminine_singular, "feminine_singular"},
    {BaseForm::broken_plural, "broken_plural"},
}};

constexpr Table<SourceTable, 3> kSourceTables{{
    {SourceTable::canonical, "canonical"},
    {SourceTable::affixational, "affixational"},
    {SourceTable::semantic_spec, "semantic_spec"},
}};

constexpr Table<Canonicality, 2> kCanonicality{{
    {Canonicality::canonical, "canonical"},
    {Canonicality::non_canonical, "non-canonical"},
}};

template <typename E, std::size_t N>
std::string_view label(const Table<E, N>& table, E value) {
  for (const auto& [e, name] : table) {
    if (e == value) return name;
  }
  return "?";
}

template <typename E, std::size_t N>
std::optional<E> lookup(const Table<E, N>& table, std::string_view name) {
  for (const auto& [e, n] : table) {
    if (n == name) return e;
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(DerivClass v) { return label(kClasses, v); }
std::string_view to_string(Pos v) { return label(kPos, v); }
std::string_view to_string(Relation v) { return label(kRelations, v); }
std::string_view to_string(BaseForm v) { return label(kBaseForms, v); }
std::string_view to_string(SourceTable v) { return label(kSourceTables, v); }
std::string_view to_string(Canonicality v) { return label(kCanonicality, v); }

std::optional<DerivClass> parse_deriv_class(std::string_view s) { return lookup(kClasses, s); }
std::optional<Pos> parse_pos(std::string_view s) { return lookup(kPos, s); }
std::optional<Relation> parse_relation(std::string_view s) { return lookup(kRelations, s); }
std::optional<BaseForm> parse_base_form(std::string_view s) { return lookup(kBaseForms, s); }
std::optional<Canonicality> parse_canonicality(std::string_view s) { return lookup(kCanonicality, s); }

Pos pos_of(DerivClass cls) {
  switch (cls) {
    case DerivClass::unaugmented_verb:
    case DerivClass::augmented_verb:
      return Pos::verb;
    case DerivClass::masdar:
    case DerivClass::noun_of_location:
    case DerivClass::noun_of_instrument:
    case DerivClass::primary_noun:
    case DerivClass::specified_noun:
      return Pos::noun;
    case DerivClass::active_participle:
    case DerivClass::passive_participle:
    case DerivClass::descriptive_adjective:
    case DerivClass::attributive_adjective:
    case DerivClass::elative:
      return Pos::adjective;
    case DerivClass::root:
    case DerivClass::unknown:
      return Pos::none;
  }
  return Pos::none;
}

}  // namespace derivchain
