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
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "geokg/kg_builder.hpp"
#include "geokg/query_store.hpp"
#include "geokg/rdf.hpp"
#include "oracle.hpp"

namespace testsupport {

std::filesystem::path fixture(const std::string& name);

// Removes itself on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

void write_file(const std::filesystem::path& path, const std::string& content);

oracle::Term to_oracle(const geokg::Term& t);
std::vector<oracle::Triple> to_oracle(const std::vector<geokg::Triple>& triples);

// Strings drawn from a pool that mixes ASCII, Turtle metacharacters,
// control characters and multi-byte UTF-8.
std::string random_text(std::mt19937_64& rng, std::size_t max_len);

geokg::Entity random_entity(std::mt19937_64& rng, geokg::NodeId id);

struct RandomStore {
  std::vector<geokg::StoredEntity> entities;
  geokg::Ontology ontology;
  std::vector<std::string> class_names;  // local names
};

// Entities clustered in a random region with a few duplicated positions and
// class memberships drawn from a small ontology.
RandomStore random_store(std::mt19937_64& rng, std::size_t n);

std::vector<oracle::Place> places_of(const RandomStore& s, const std::string& class_local_name);

// OSM XML with `tagged` of `total` nodes carrying tags from the fixture vocabulary.
std::string synthetic_osm(std::mt19937_64& rng, std::size_t total, std::size_t tagged);
void write_synthetic_osm(std::ostream& out, std::mt19937_64& rng, std::size_t total, std::size_t tagged);

// Tags of the synthetic vocabulary that give a node a class under map_features.tsv.
bool synthetic_class_tag(std::string_view key, std::string_view value);

// `members` man_made=mineshaft nodes interleaved with `others` nodes of other classes.
std::string mineshaft_osm(std::size_t members, std::size_t others, std::uint64_t seed);

}  // namespace testsupport
