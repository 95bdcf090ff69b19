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
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "geokg/geo.hpp"
#include "geokg/ontology.hpp"
#include "geokg/osm_corpus.hpp"
#include "geokg/rdf.hpp"

namespace geokg {

/// A typed knowledge-graph entity derived from one OSM node.
struct Entity {
  NodeId id = 0;
  std::vector<std::string> types;  // class local names, sorted, non-empty
  std::vector<std::pair<std::string, std::string>> properties;  // (property local name, value), sorted
  std::optional<std::string> label;
  SpatialPoint point;

  std::string iri() const;
  std::string geometry_iri() const;

  friend bool operator==(const Entity&, const Entity&) = default;
};

struct NodeMapping {
  std::optional<Entity> entity;
  std::size_t dropped_tags = 0;
};

/// Classifies every tag of `node`: a subclass tag or a non-categorical value of a
/// class key adds a type, the name tag becomes the label, property keys become
/// properties, everything else is dropped. No entity results without a type.
NodeMapping map_node(const OsmNode& node, const Ontology& onto);
std::optional<Entity> node_to_entity(const OsmNode& node, const Ontology& onto);

/// Entity triples (types, label, properties, spatialObject, osmLink) followed
/// by the two geometry triples (sf:Point type, WKT literal, longitude first).
std::vector<Triple> entity_to_triples(const Entity& e);

/// |types| + |properties| + [label] + 4.
std::size_t triple_count(const Entity& e) noexcept;

/// Serializes a triple multiset as a canonical Turtle document.
void serialize_kg(std::ostream& out, std::vector<Triple> triples,
                  const PrefixTable& prefixes = PrefixTable::standard());
std::string serialize_kg(std::vector<Triple> triples, const PrefixTable& prefixes = PrefixTable::standard());

struct BuildReport {
  std::size_t nodes_read = 0;
  std::size_t nodes_tagged = 0;
  std::size_t entities_emitted = 0;
  std::size_t triples_emitted = 0;
  std::size_t tags_dropped = 0;

  /// Lines of `key<TAB>value`.
  std::string to_text() const;
  std::string to_json() const;

  friend bool operator==(const BuildReport&, const BuildReport&) = default;
};

struct KgBuildOptions {
  /// Worker threads mapping node batches; 0 = hardware concurrency.
  std::size_t threads = 0;
  std::size_t batch_nodes = 4096;
  /// Serialized entities held in memory before a sorted run is spilled to disk.
  std::size_t run_bytes = 8u << 20;
  /// Maximum runs merged at once.
  std::size_t merge_fan_in = 32;
  /// Directory for spill files; defaults to the system temp directory.
  std::filesystem::path temp_dir;
};

/// Streams nodes from OSM XML, maps them against `onto` and writes the KG
/// document to `out` in ascending node-id order, whatever the input order.
/// Memory is bounded by the options, not by the input size.
BuildReport build_kg(std::istream& osm_xml, const Ontology& onto, std::ostream& out,
                     const KgBuildOptions& options = {});

inline constexpr std::string_view kOntologyFileName = "ontology.ttl";
inline constexpr std::string_view kKgFileName = "kg.ttl";

/// Builds kg.ttl in `out_dir` against an existing ontology document.
/// On failure no kg.ttl from this run is left behind.
BuildReport build_kg_files(const std::filesystem::path& osm_xml, const std::filesystem::path& ontology_ttl,
                           const std::filesystem::path& out_dir, const KgBuildOptions& options = {});

/// Full pipeline: map features + alignments -> ontology.ttl, then OSM -> kg.ttl.
/// Both files are written under temporary names and renamed only on success.
BuildReport run_pipeline(const std::filesystem::path& osm_xml, const std::filesystem::path& features_tsv,
                         const std::filesystem::path& alignment_tsv, const std::filesystem::path& out_dir,
                         const KgBuildOptions& options = {});

/// Ontology from map features with alignments attached.
Ontology build_aligned_ontology(const std::filesystem::path& features_tsv,
                                const std::filesystem::path& alignment_tsv);

}  // namespace geokg
