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
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "geokg/prefixes.hpp"

namespace geokg {

enum class FeatureCategory { kFeature, kAdditionalAttribute, kAttribute, kAdditionalProperty };

std::string_view to_string(FeatureCategory c);
FeatureCategory parse_feature_category(std::string_view token);

/// One row of a map-features table.
struct MapFeatureEntry {
  std::string key;
  std::string value;
  FeatureCategory category = FeatureCategory::kFeature;
  std::optional<std::string> wiki_url;

  friend bool operator==(const MapFeatureEntry&, const MapFeatureEntry&) = default;
};

/// Reads the tab-separated map-features table: header `key value category
/// wiki_url`, one entry per line, empty cell = absent. Lines starting with
/// '#' and blank lines are ignored. Duplicate (key, value) pairs are rejected.
std::vector<MapFeatureEntry> load_map_features(std::istream& in);
std::vector<MapFeatureEntry> load_map_features_file(const std::string& path);

enum class TargetGraph { kWikidata, kDbpedia };

std::string_view to_string(TargetGraph g);
std::optional<TargetGraph> parse_target_graph(std::string_view token);

/// External class an ontology class is declared equivalent to.
struct Equivalence {
  TargetGraph graph = TargetGraph::kWikidata;
  std::string class_id;

  /// Full IRI of the external class (wd: or dbo: namespace).
  std::string iri() const;

  friend auto operator<=>(const Equivalence&, const Equivalence&) = default;
};

struct OntologyClass {
  std::string local_name;
  std::string source_key;
  std::optional<std::string> source_value;  // absent for top-level classes
  std::optional<std::string> parent;        // local name of the top-level parent
  std::set<Equivalence> equivalents;
  std::optional<std::string> wiki_url;

  bool top_level() const noexcept { return !parent.has_value(); }
  std::string iri() const;

  friend bool operator==(const OntologyClass&, const OntologyClass&) = default;
};

struct OntologyProperty {
  std::string local_name;
  std::string source_key;
  std::optional<std::string> wiki_url;

  std::string iri() const;

  friend bool operator==(const OntologyProperty&, const OntologyProperty&) = default;
};

/// Immutable class/property catalogue with tag lookups. Every class is
/// reachable by local name; top-level classes by key, subclasses by
/// (key, value); properties by key.
class Ontology {
 public:
  Ontology() = default;

  /// Validates the invariants (identifier shape, unique names, depth-one
  /// hierarchy, keys not shared between classes and properties) and indexes.
  static Ontology from_parts(std::vector<OntologyClass> classes, std::vector<OntologyProperty> properties);

  const std::vector<OntologyClass>& classes() const noexcept { return classes_; }
  const std::vector<OntologyProperty>& properties() const noexcept { return properties_; }

  const OntologyClass* find_class(std::string_view local_name) const;
  const OntologyProperty* find_property(std::string_view local_name) const;
  const OntologyClass* class_for_key(std::string_view key) const;
  const OntologyClass* class_for_tag(std::string_view key, std::string_view value) const;
  const OntologyProperty* property_for_key(std::string_view key) const;

  std::size_t top_level_count() const noexcept;
  std::size_t subclass_count() const noexcept { return classes_.size() - top_level_count(); }

  /// Copy with `eq` added to the named class. Throws ValidationError if absent.
  Ontology with_equivalence(std::string_view local_name, const Equivalence& eq) const;

  friend bool operator==(const Ontology& a, const Ontology& b) {
    return a.classes_ == b.classes_ && a.properties_ == b.properties_;
  }

 private:
  void index();

  std::vector<OntologyClass> classes_;        // sorted by local_name
  std::vector<OntologyProperty> properties_;  // sorted by local_name
  std::map<std::string, std::size_t, std::less<>> class_by_name_;
  std::map<std::string, std::size_t, std::less<>> property_by_name_;
  std::map<std::string, std::size_t, std::less<>> class_by_key_;
  std::unordered_map<std::string, std::size_t> class_by_tag_;
  std::map<std::string, std::size_t, std::less<>> property_by_key_;
};

/// Induces the class hierarchy and property set from map-features entries.
/// Feature keys become top-level classes, categorical feature values become
/// subclasses, documented keys of the other categories become properties.
/// Subclass names arising under more than one key (or equal to a top-level
/// class name) are all prefixed with their key: BuildingSchool, AmenitySchool.
Ontology build_ontology(const std::vector<MapFeatureEntry>& entries);

/// Writes the ontology as Turtle: root class, classes and properties ordered
/// by local name. Throws ValidationError if `prefixes` lacks a binding the
/// document needs.
void serialize_ontology(std::ostream& out, const Ontology& onto,
                        const PrefixTable& prefixes = PrefixTable::standard());
std::string serialize_ontology(const Ontology& onto, const PrefixTable& prefixes = PrefixTable::standard());

/// Rebuilds an ontology from a document written by serialize_ontology.
Ontology ontology_from_turtle(std::istream& in);
Ontology ontology_from_turtle_file(const std::string& path);

}  // namespace geokg
