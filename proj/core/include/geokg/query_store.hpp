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

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "geokg/geo.hpp"
#include "geokg/ontology.hpp"
#include "geokg/osm_corpus.hpp"

namespace geokg {

struct StoredEntity {
  NodeId id = 0;
  std::vector<std::string> types;  // class IRIs, sorted
  std::optional<std::string> label;
  std::string osm_link;  // IRI, may be empty
  SpatialPoint point;
};

struct Neighbor {
  const StoredEntity* entity = nullptr;
  double distance_m = 0.0;
};

struct SampleRow {
  NodeId id = 0;
  std::string type;      // class IRI
  std::string osm_link;  // IRI
  std::string name;      // label, empty if absent

  friend bool operator==(const SampleRow&, const SampleRow&) = default;
};

/// Either an entity label (must identify exactly one entity) or a point.
using Anchor = std::variant<std::string, SpatialPoint>;

/// Immutable in-memory view of a knowledge graph: entity table plus class,
/// label, external-class and per-class lon/lat grid indexes. Safe for any
/// number of concurrent readers.
class QueryStore {
 public:
  static constexpr double kDefaultCellDegrees = 0.05;

  /// Loads the KG and ontology documents. Throws ValidationError when an entity
  /// lacks a geometry or references a geometry that has no WKT point.
  static QueryStore load(std::istream& kg, std::istream& ontology, double cell_degrees = kDefaultCellDegrees);
  static QueryStore load_files(const std::filesystem::path& kg, const std::filesystem::path& ontology,
                               double cell_degrees = kDefaultCellDegrees);
  static QueryStore from_entities(std::vector<StoredEntity> entities, Ontology ontology,
                                  double cell_degrees = kDefaultCellDegrees);

  std::size_t size() const noexcept { return entities_.size(); }
  const std::vector<StoredEntity>& entities() const noexcept { return entities_; }
  const Ontology& ontology() const noexcept { return ontology_; }
  const StoredEntity* find(NodeId id) const;
  std::vector<const StoredEntity*> find_by_label(std::string_view label) const;

  /// Accepts a local name ("Restaurant"), a prefixed name or a full IRI.
  /// Throws QueryError if the class is neither declared nor used.
  std::string resolve_class(std::string_view name) const;

  /// Accepts "Q556186", "Tower", "wd:Q556186", "dbo:Tower" or a full IRI.
  /// Throws QueryError if no ontology class is equivalent to it.
  std::string resolve_external_class(std::string_view name) const;

  /// Entities typed with `class_iri`, ascending id.
  std::vector<const StoredEntity*> members(std::string_view class_name) const;

  /// The k class members closest to the anchor, ascending (distance, id).
  /// A label anchor is excluded from its own result.
  std::vector<Neighbor> nearest_k(const Anchor& anchor, std::string_view class_name, std::size_t k) const;

  /// Class members with distance <= radius_m, ascending (distance, id).
  std::vector<Neighbor> within_radius(const SpatialPoint& center, double radius_m,
                                      std::string_view class_name) const;

  /// Same contracts, answered by scanning every member without the grid.
  std::vector<Neighbor> nearest_k_scan(const Anchor& anchor, std::string_view class_name, std::size_t k) const;
  std::vector<Neighbor> within_radius_scan(const SpatialPoint& center, double radius_m,
                                           std::string_view class_name) const;

  /// Uniform sample without replacement of min(n, population) entities typed
  /// with a class equivalent to the external class. Deterministic per seed.
  std::vector<SampleRow> sample(std::string_view external_class, std::size_t n, std::uint64_t seed) const;

  /// Population that `sample` draws from, ascending id.
  std::vector<const StoredEntity*> external_population(std::string_view external_class) const;

 private:
  struct ClassIndex {
    std::vector<std::uint32_t> members;  // entity positions, ascending id
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> cells;
  };

  struct ResolvedAnchor {
    SpatialPoint point;
    std::optional<NodeId> exclude;
  };

  void build_indexes();
  const ClassIndex& class_index(std::string_view class_name) const;
  ResolvedAnchor resolve_anchor(const Anchor& anchor) const;
  std::uint64_t cell_of(const SpatialPoint& p) const;
  std::int64_t row_of(double lat) const;
  std::int64_t col_of(double lon) const;

  std::vector<StoredEntity> entities_;  // ascending id
  Ontology ontology_;
  double cell_deg_ = kDefaultCellDegrees;
  std::int64_t rows_ = 0;
  std::int64_t cols_ = 0;
  std::unordered_map<NodeId, std::uint32_t> by_id_;
  std::unordered_map<std::string, std::vector<std::uint32_t>> by_label_;
  std::map<std::string, ClassIndex, std::less<>> by_class_;
  std::map<std::string, std::vector<std::string>, std::less<>> equivalent_classes_;  // external IRI -> class IRIs
};

}  // namespace geokg
