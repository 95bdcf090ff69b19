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

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace geokg {

namespace ns {
inline constexpr std::string_view kDcterms = "http://purl.org/dc/terms/";
inline constexpr std::string_view kGeo = "http://www.opengis.net/ont/geosparql#";
inline constexpr std::string_view kOsmNode = "https://www.openstreetmap.org/node/";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kSf = "http://www.opengis.net/ont/sf#";
inline constexpr std::string_view kUom = "http://www.opengis.net/def/uom/OGC/1.0/";
inline constexpr std::string_view kWikidata = "http://www.wikidata.org/wiki/";
inline constexpr std::string_view kResource = "http://www.worldkg.org/resource/";
inline constexpr std::string_view kSchema = "http://www.worldkg.org/schema/";
inline constexpr std::string_view kDbpedia = "http://dbpedia.org/ontology/";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
}  // namespace ns

/// Ordered prefix -> namespace bindings used for compact Turtle output.
class PrefixTable {
 public:
  PrefixTable() = default;
  explicit PrefixTable(std::vector<std::pair<std::string, std::string>> bindings);

  /// The twelve bindings used by every document this library writes:
  /// dcterms geo osmn owl rdf rdfs sf uom wd wkg wkgs, plus dbo.
  static const PrefixTable& standard();

  void bind(std::string prefix, std::string namespace_iri);

  /// Namespace bound to `prefix`; throws ValidationError if unbound.
  const std::string& namespace_of(std::string_view prefix) const;
  bool contains(std::string_view prefix) const;

  /// "wkgs:Peak" -> full IRI. Throws ValidationError for unknown prefixes.
  std::string expand(std::string_view prefixed_name) const;

  /// Longest-namespace match, returned as (prefix, local part).
  std::optional<std::pair<std::string_view, std::string_view>> split(std::string_view iri) const;

  const std::vector<std::pair<std::string, std::string>>& bindings() const noexcept { return bindings_; }
  std::size_t size() const noexcept { return bindings_.size(); }

 private:
  std::vector<std::pair<std::string, std::string>> bindings_;
};

}  // namespace geokg
