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

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <string>

namespace geokg {

/// Graph-level counts over an emitted KG and its ontology.
struct KgStats {
  std::size_t total_triples = 0;      // KG document triples
  std::size_t total_entities = 0;     // subjects typed with an ontology class
  std::size_t top_level_classes = 0;
  std::size_t subclasses = 0;
  std::size_t unique_properties = 0;  // distinct wkgs: predicates used, minus spatialObject/osmLink
  std::size_t links_wikidata = 0;     // owl:equivalentClass triples into wd:
  std::size_t links_dbpedia = 0;      // owl:equivalentClass triples into dbo:

  std::string to_text() const;
  std::string to_json() const;

  friend bool operator==(const KgStats&, const KgStats&) = default;
};

KgStats compute_stats(std::istream& kg, std::istream& ontology);
KgStats compute_stats_files(const std::filesystem::path& kg, const std::filesystem::path& ontology);

/// Typed-entity count per class local name.
std::map<std::string, std::size_t> class_counts(std::istream& kg);

}  // namespace geokg
