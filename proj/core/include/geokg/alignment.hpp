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

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "geokg/ontology.hpp"

namespace geokg {

/// Curated equivalence between an OSM tag and an external KG class.
struct AlignmentMapping {
  std::string osm_key;
  std::string osm_value;
  TargetGraph target = TargetGraph::kWikidata;
  std::string class_id;
  std::optional<std::string> label;

  friend bool operator==(const AlignmentMapping&, const AlignmentMapping&) = default;
};

/// Reads the alignment table: header `key value target class_id label`,
/// tab separated, '#' comment lines allowed (provenance notes live there).
/// Wikidata ids must look like Q123; DBpedia ids like an ontology class name.
std::vector<AlignmentMapping> load_alignments(std::istream& in);
std::vector<AlignmentMapping> load_alignments_file(const std::string& path);

/// Adds one owl:equivalentClass link per mapping. A mapping resolves to the
/// subclass for (key, value), or to the key's top-level class when the value
/// is not categorical. Every unresolvable mapping is reported in one error.
Ontology attach_equivalences(const Ontology& onto, const std::vector<AlignmentMapping>& mappings);

}  // namespace geokg
