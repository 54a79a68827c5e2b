#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace derivchain {

// Closed vocabularies shared by the network, the chain builder and the
// evaluator. Each enum has a lower-case hyphenated label used in every file
// format; `parse_*` returns nullopt for an unknown label.

enum class DerivClass {
  root,
  unaugmented_verb,
  augmented_verb,
  masdar,
  active_participle,
  passive_participle,
  descriptive_adjective,
  attributive_adjective,
  elative,
  noun_of_location,
  noun_of_instrument,
  primary_noun,
  specified_noun,
  unknown,
};

enum class Pos { none, verb, noun, adjective };

enum class Relation {
  form_I_of,
  form_II_of,
  form_III_of,
  form_IV_of,
  form_V_of,
  form_VI_of,
  form_VII_of,
  form_VIII_of,
  form_IX_of,
  form_X_of,
  form_QI_of,
  form_QII_of,
  form_QIII_of,
  form_QIV_of,
  masdar_of,
  active_participle_of,
  passive_participle_of,
  descriptive_adjective_of,
  elative_of,
  noun_of_location_of,
  noun_of_instrument_of,
  primary_noun_of,
  attributive_of,
  semantic_specification_of,
  unknown,
};

enum class BaseForm { lemma, feminine_singular, broken_plural };

enum class SourceTable { canonical, affixational, semantic_spec };

enum class Canonicality { canonical, non_canonical };

std::string_view to_string(DerivClass v);
std::string_view to_string(Pos v);
std::string_view to_string(Relation v);
std::string_view to_string(BaseForm v);
std::string_view to_string(SourceTable v);
std::string_view to_string(Canonicality v);

std::optional<DerivClass> parse_deriv_class(std::string_view s);
std::optional<Pos> parse_pos(std::string_view s);
std::optional<Relation> parse_relation(std::string_view s);
std::optional<BaseForm> parse_base_form(std::string_view s);
std::optional<Canonicality> parse_canonicality(std::string_view s);

/// Part of speech every pattern of the class carries (masdar => noun, ...).
Pos pos_of(DerivClass cls);

}  // namespace derivchain
