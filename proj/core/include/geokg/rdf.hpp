/*
 * Copyright 2026 The geokg Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "geokg/prefixes.hpp"

namespace geokg {

/// An RDF term. IRIs are always held in expanded form.
struct Term {
  enum class Kind : unsigned char { kIri, kBlank, kLiteral };

  Kind kind = Kind::kIri;
  std::string value;     // IRI, blank node label, or literal lexical form
  std::string datatype;  // literal datatype IRI; empty for plain strings
  std::string language;  // literal language tag; empty if none

  static Term iri(std::string v) { return {Kind::kIri, std::move(v), {}, {}}; }
  static Term blank(std::string label) { return {Kind::kBlank, std::move(label), {}, {}}; }
  static Term literal(std::string lexical, std::string datatype = {}, std::string lang = {}) {
    return {Kind::kLiteral, std::move(lexical), std::move(datatype), std::move(lang)};
  }

  bool is_iri() const noexcept { return kind == Kind::kIri; }
  bool is_literal() const noexcept { return kind == Kind::kLiteral; }
  bool is_blank() const noexcept { return kind == Kind::kBlank; }

  friend auto operator<=>(const Term&, const Term&) = default;
  friend bool operator==(const Term&, const Term&) = default;
};

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  friend auto operator<=>(const Triple&, const Triple&) = default;
  friend bool operator==(const Triple&, const Triple&) = default;
};

namespace vocab {
std::string iri(std::string_view ns, std::string_view local);

extern const std::string kRdfType;
extern const std::string kRdfsLabel;
extern const std::string kRdfsSubClassOf;
extern const std::string kOwlClass;
extern const std::string kOwlEquivalentClass;
extern const std::string kOwlAnnotationProperty;
extern const std::string kDctermsSource;
extern const std::string kWkgObject;
extern const std::string kWkgProperty;
extern const std::string kSpatialObject;
extern const std::string kOsmLink;
extern const std::string kOsmKey;
extern const std::string kOsmValue;
extern const std::string kSfPoint;
extern const std::string kAsWkt;
extern const std::string kWktLiteral;
}  // namespace vocab

}  // namespace geokg
