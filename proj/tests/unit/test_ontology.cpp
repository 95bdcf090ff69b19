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

#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "geokg/error.hpp"
#include "geokg/ontology.hpp"
#include "geokg/rdf.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace geokg;

namespace {

MapFeatureEntry feature(std::string key, std::string value) {
  return {std::move(key), std::move(value), FeatureCategory::kFeature,
          "https://wiki.openstreetmap.org/wiki/Tag:x"};
}

std::size_t count_predicate(const std::vector<oracle::Triple>& triples, const std::string& predicate) {
  return static_cast<std::size_t>(std::count_if(triples.begin(), triples.end(),
                                                [&](const oracle::Triple& t) { return t.p.value == predicate; }));
}

}  // namespace

TEST_CASE("a key with categorical values yields a class and subclasses") {
  const Ontology onto = build_ontology({feature("natural", "peak"), feature("natural", "cave_entrance")});
  CHECK(onto.top_level_count() == 1);
  CHECK(onto.subclass_count() == 2);
  const auto* natural = onto.find_class("Natural");
  REQUIRE(natural);
  CHECK(natural->top_level());
  const auto* cave = onto.find_class("CaveEntrance");
  REQUIRE(cave);
  CHECK(cave->parent == "Natural");
  CHECK(onto.class_for_tag("natural", "cave_entrance") == cave);
  CHECK(onto.class_for_key("natural") == natural);
}

TEST_CASE("shared value names are prefixed with their key") {
  const Ontology onto = build_ontology({feature("building", "school"), feature("amenity", "school")});
  REQUIRE(onto.find_class("BuildingSchool"));
  REQUIRE(onto.find_class("AmenitySchool"));
  CHECK(onto.find_class("BuildingSchool")->parent == "Building");
  CHECK(onto.find_class("AmenitySchool")->parent == "Amenity");
  CHECK(onto.find_class("School") == nullptr);
}

TEST_CASE("a value named like a top-level class is prefixed") {
  const Ontology onto = build_ontology({feature("building", "yes"), feature("historic", "building")});
  CHECK(onto.find_class("HistoricBuilding"));
  CHECK(onto.find_class("Building")->top_level());
}

TEST_CASE("non-categorical values add no subclass") {
  const Ontology onto = build_ontology({feature("building", "yes"), feature("building", "user defined"),
                                        feature("building", "3")});
  CHECK(onto.top_level_count() == 1);
  CHECK(onto.subclass_count() == 0);
}

TEST_CASE("properties come from non-feature keys with a wiki page") {
  const Ontology onto = build_ontology({
      {"addr:country", "user defined", FeatureCategory::kAdditionalProperty, "https://wiki/Key:addr:country"},
      {"fixme", "user defined", FeatureCategory::kAttribute, std::nullopt},
      {"wheelchair", "yes", FeatureCategory::kAttribute, "https://wiki/b"},
      {"wheelchair", "no", FeatureCategory::kAttribute, "https://wiki/a"},
  });
  REQUIRE(onto.properties().size() == 2);
  CHECK(onto.find_property("addrCountry"));
  CHECK(onto.find_property("fixme") == nullptr);
  CHECK(onto.property_for_key("wheelchair")->wiki_url == "https://wiki/a");
}

TEST_CASE("a key cannot be both a class and a property") {
  CHECK_THROWS_AS(build_ontology({feature("shop", "bakery"),
                                  {"shop", "user defined", FeatureCategory::kAttribute, "https://wiki/shop"}}),
                  ValidationError);
}

TEST_CASE("empty specification") {
  const Ontology onto = build_ontology({});
  CHECK(onto.classes().empty());
  CHECK(onto.properties().empty());
  const auto triples = oracle::parse_turtle(serialize_ontology(onto));
  REQUIRE(triples.size() == 1);
  CHECK(triples[0].s.value == vocab::kWkgObject);
  CHECK(triples[0].o.value == vocab::kOwlClass);
}

TEST_CASE("build order does not matter") {
  std::vector<MapFeatureEntry> entries = load_map_features_file(testsupport::fixture("map_features.tsv").string());
  const Ontology reference = build_ontology(entries);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 10; ++i) {
    std::shuffle(entries.begin(), entries.end(), rng);
    CHECK(build_ontology(entries) == reference);
  }
}

TEST_CASE("pinned map-features fixture matches its manifest") {
  const Ontology onto = build_ontology(load_map_features_file(testsupport::fixture("map_features.tsv").string()));
  std::ifstream manifest(testsupport::fixture("map_features.manifest"));
  std::map<std::string, std::size_t> counts;
  std::vector<std::string> prefixed;
  std::string key, value;
  for (std::string line; std::getline(manifest, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::getline(row, key, '\t');
    std::getline(row, value);
    if (key == "prefixed") {
      prefixed.push_back(value);
    } else {
      counts[key] = std::stoul(value);
    }
  }
  CHECK(onto.top_level_count() == counts.at("top_level"));
  CHECK(onto.subclass_count() == counts.at("subclasses"));
  CHECK(onto.properties().size() == counts.at("properties"));
  CHECK(prefixed.size() == counts.at("collisions"));
  for (const auto& name : prefixed) CHECK(onto.find_class(name) != nullptr);
}

TEST_CASE("serialized ontology carries hierarchy and equivalences") {
  Ontology onto = build_ontology({feature("natural", "peak")});
  onto = onto.with_equivalence("Peak", {TargetGraph::kWikidata, "Q8502"});
  const auto triples = oracle::parse_turtle(serialize_ontology(onto));
  const oracle::Term peak{'I', vocab::iri(ns::kSchema, "Peak"), {}, {}};
  const auto has = [&](const std::string& p, const oracle::Term& o) {
    return std::find(triples.begin(), triples.end(), oracle::Triple{peak, {'I', p, {}, {}}, o}) != triples.end();
  };
  CHECK(has(vocab::kRdfsSubClassOf, {'I', vocab::iri(ns::kSchema, "Natural"), {}, {}}));
  CHECK(has(vocab::kOwlEquivalentClass, {'I', vocab::iri(ns::kWikidata, "Q8502"), {}, {}}));
  CHECK(has(vocab::kRdfType, {'I', vocab::kOwlClass, {}, {}}));
}

TEST_CASE("ontology document round-trips") {
  Ontology onto = build_ontology(load_map_features_file(testsupport::fixture("map_features.tsv").string()));
  onto = onto.with_equivalence("Peak", {TargetGraph::kWikidata, "Q8502"});
  onto = onto.with_equivalence("Peak", {TargetGraph::kDbpedia, "Mountain"});
  const std::string doc = serialize_ontology(onto);
  std::istringstream in(doc);
  const Ontology back = ontology_from_turtle(in);
  CHECK(back == onto);
  CHECK(serialize_ontology(back) == doc);

  const auto triples = oracle::parse_turtle(doc);
  std::size_t subclass_of = count_predicate(triples, vocab::kRdfsSubClassOf);
  CHECK(subclass_of == onto.classes().size());
  CHECK(count_predicate(triples, vocab::kOwlEquivalentClass) == 2);
  CHECK(count_predicate(triples, vocab::kDctermsSource) ==
        static_cast<std::size_t>(std::count_if(onto.classes().begin(), onto.classes().end(),
                                               [](const auto& c) { return c.wiki_url.has_value(); })) +
            onto.properties().size());
}

TEST_CASE("serialization is deterministic") {
  const auto entries = load_map_features_file(testsupport::fixture("map_features.tsv").string());
  CHECK(serialize_ontology(build_ontology(entries)) == serialize_ontology(build_ontology(entries)));
}

TEST_CASE("missing prefix bindings are reported") {
  Ontology onto = build_ontology({feature("natural", "peak")});
  onto = onto.with_equivalence("Peak", {TargetGraph::kWikidata, "Q8502"});
  PrefixTable partial;
  for (const auto& [p, iri] : PrefixTable::standard().bindings()) {
    if (p != "wd") partial.bind(p, iri);
  }
  CHECK_THROWS_AS(serialize_ontology(onto, partial), ValidationError);
}

TEST_CASE("map-features loader validation") {
  std::istringstream bad_header("k\tv\tc\tu\n");
  CHECK_THROWS_AS(load_map_features(bad_header), ValidationError);
  std::istringstream bad_category("key\tvalue\tcategory\twiki_url\nnatural\tpeak\tthing\t\n");
  CHECK_THROWS_AS(load_map_features(bad_category), ValidationError);
  std::istringstream dup("key\tvalue\tcategory\twiki_url\nnatural\tpeak\tfeature\t\nnatural\tpeak\tfeature\t\n");
  CHECK_THROWS_AS(load_map_features(dup), ValidationError);
  std::istringstream ok("# c\nkey\tvalue\tcategory\twiki_url\r\nnatural\tpeak\tfeature\t\r\n");
  const auto entries = load_map_features(ok);
  REQUIRE(entries.size() == 1);
  CHECK_FALSE(entries[0].wiki_url.has_value());
  CHECK_THROWS_AS(load_map_features_file("/nonexistent/features.tsv"), Error);
}
