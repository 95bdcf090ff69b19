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
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "geokg/error.hpp"
#include "geokg/kg_builder.hpp"
#include "geokg/query_store.hpp"
#include "geokg/rdf.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace geokg;

namespace {

QueryStore build_store(const std::string& osm_fixture, testsupport::TempDir& dir) {
  run_pipeline(testsupport::fixture(osm_fixture), testsupport::fixture("map_features.tsv"),
               testsupport::fixture("alignments.tsv"), dir.path());
  return QueryStore::load_files(dir / "kg.ttl", dir / "ontology.ttl");
}

QueryStore store_from_osm(const std::string& xml, testsupport::TempDir& dir) {
  testsupport::write_file(dir / "in.osm", xml);
  run_pipeline(dir / "in.osm", testsupport::fixture("map_features.tsv"), testsupport::fixture("alignments.tsv"),
               dir.path());
  return QueryStore::load_files(dir / "kg.ttl", dir / "ontology.ttl");
}

std::vector<std::uint64_t> ids(const std::vector<Neighbor>& rows) {
  std::vector<std::uint64_t> out;
  for (const auto& r : rows) out.push_back(r.entity->id);
  return out;
}

std::vector<std::uint64_t> ids(const std::vector<oracle::Hit>& rows) {
  std::vector<std::uint64_t> out;
  for (const auto& r : rows) out.push_back(r.id);
  return out;
}

std::string restaurant() { return vocab::iri(ns::kSchema, "Restaurant"); }

}  // namespace

TEST_CASE("single restaurant store") {
  testsupport::TempDir dir;
  const QueryStore store = build_store("krishna_restaurant.osm", dir);
  CHECK(store.size() == 1);
  const auto members = store.members("Restaurant");
  REQUIRE(members.size() == 1);
  CHECK(members[0]->id == 1014675277u);
  CHECK(members[0]->label == "Krishna");
  CHECK(members[0]->osm_link == "https://www.openstreetmap.org/node/1014675277");
  CHECK(members[0]->point == SpatialPoint{8.7938916, 53.073794});
  CHECK(store.members("wkgs:Restaurant").size() == 1);
  CHECK(store.members(restaurant()).size() == 1);
  CHECK(store.find(1014675277u) == members[0]);
}

TEST_CASE("empty store") {
  std::istringstream kg(""), onto("");
  const QueryStore store = QueryStore::load(kg, onto);
  CHECK(store.size() == 0);
  CHECK_THROWS_AS(store.nearest_k(SpatialPoint{0, 0}, "Restaurant", 3), QueryError);
}

TEST_CASE("empty knowledge graph with an ontology answers nothing") {
  testsupport::TempDir dir;
  const QueryStore store = build_store("untagged.osm", dir);
  CHECK(store.size() == 0);
  CHECK(store.nearest_k(SpatialPoint{0, 0}, "Restaurant", 3).empty());
  CHECK(store.within_radius(SpatialPoint{0, 0}, 1e7, "Restaurant").empty());
  CHECK(store.sample("Q556186", 10, 1).empty());
}

TEST_CASE("class index sizes match a count of type lines") {
  testsupport::TempDir dir;
  std::mt19937_64 rng(17);
  const QueryStore store = store_from_osm(testsupport::synthetic_osm(rng, 1000, 600), dir);
  const auto counts = oracle::count_class_lines(oracle::read_file((dir / "kg.ttl").string()));
  for (const auto& [cls, n] : counts) {
    INFO(cls);
    CHECK(store.members(cls).size() == n);
  }
}

TEST_CASE("restaurant ordering around the Brandenburger Tor") {
  testsupport::TempDir dir;
  const QueryStore store = build_store("berlin.osm", dir);
  const auto rows = store.nearest_k(std::string("Brandenburger Tor"), "Restaurant", 3);
  REQUIRE(rows.size() == 3);
  CHECK(*rows[0].entity->label == "Hopfingerbräu im Palais");
  CHECK(*rows[1].entity->label == "Restaurant Quarré");
  CHECK(*rows[2].entity->label == "Lorenz Adlon Esszimer");
  const SpatialPoint tor{13.3777041, 52.5162746};
  for (const auto& r : rows) {
    const double ref = oracle::great_circle_m(tor.lon, tor.lat, r.entity->point.lon, r.entity->point.lat);
    CHECK(std::abs(r.distance_m - ref) <= 1e-6 * ref);
  }
}

TEST_CASE("k edge cases") {
  testsupport::TempDir dir;
  const QueryStore store = build_store("berlin.osm", dir);
  CHECK(store.nearest_k(std::string("Brandenburger Tor"), "Restaurant", 0).empty());
  const auto all = store.nearest_k(std::string("Brandenburger Tor"), "Restaurant", 100);
  CHECK(all.size() == store.members("Restaurant").size());
  CHECK(ids(all) == ids(store.nearest_k_scan(std::string("Brandenburger Tor"), "Restaurant", 100)));
  CHECK_THROWS_AS(store.nearest_k(std::string("Unknown Place"), "Restaurant", 3), QueryError);
  CHECK_THROWS_AS(store.nearest_k(std::string("Brandenburger Tor"), "Spaceport", 3), QueryError);
}

TEST_CASE("anchor is excluded only from its own class") {
  testsupport::TempDir dir;
  const QueryStore store = build_store("berlin.osm", dir);
  const auto rows = store.nearest_k(std::string("Restaurant Quarré"), "Restaurant", 10);
  for (const auto& r : rows) CHECK(r.entity->label != "Restaurant Quarré");
  const auto point_rows = store.nearest_k(SpatialPoint{13.381171, 52.515675}, "Restaurant", 1);
  REQUIRE(point_rows.size() == 1);
  CHECK(point_rows[0].entity->label == "Restaurant Quarré");
  CHECK(point_rows[0].distance_m == 0.0);
}

TEST_CASE("radius edge cases") {
  testsupport::TempDir dir;
  const QueryStore store = build_store("berlin.osm", dir);
  const auto members = store.members("Restaurant");
  const auto exact = store.within_radius(members[1]->point, 0.0, "Restaurant");
  REQUIRE(exact.size() == 1);
  CHECK(exact[0].entity == members[1]);
  double max_pair = 0;
  for (const auto* a : members) {
    for (const auto* b : members) max_pair = std::max(max_pair, haversine_m(a->point, b->point));
  }
  CHECK(store.within_radius(members[0]->point, max_pair + 1, "Restaurant").size() == members.size());
  CHECK_THROWS_AS(store.within_radius(members[0]->point, -1, "Restaurant"), QueryError);
}

TEST_CASE("grid queries equal brute force on random fixtures") {
  std::mt19937_64 rng(1234);
  for (int round = 0; round < 30; ++round) {
    const auto fx = testsupport::random_store(rng, 1 + rng() % 500);
    const double cell = round % 3 == 0 ? 1.0 : QueryStore::kDefaultCellDegrees;
    const QueryStore store = QueryStore::from_entities(fx.entities, fx.ontology, cell);
    for (const auto& cls : fx.class_names) {
      const auto places = testsupport::places_of(fx, cls);
      for (int q = 0; q < 5; ++q) {
        const auto& e = fx.entities[rng() % fx.entities.size()];
        const SpatialPoint at{e.point.lon + 0.001 * (q - 2), std::clamp(e.point.lat + 0.001, -90.0, 90.0)};
        for (std::size_t k : {1u, 3u, 10u}) {
          const auto grid = store.nearest_k(at, cls, k);
          const auto scan = store.nearest_k_scan(at, cls, k);
          REQUIRE(ids(grid) == ids(scan));
          const auto ref = oracle::brute_nearest(places, at.lon, at.lat, k);
          CHECK(ids(grid) == ids(ref));
          for (std::size_t i = 0; i < grid.size() && i < ref.size(); ++i) {
            CHECK(grid[i].distance_m == scan[i].distance_m);
            CHECK(std::abs(grid[i].distance_m - ref[i].distance_m) <= 1e-6 * std::max(ref[i].distance_m, 1.0));
          }
        }
        const double radius = std::exp(std::uniform_real_distribution<double>(0, 15)(rng));
        const auto grid = store.within_radius(at, radius, cls);
        CHECK(ids(grid) == ids(store.within_radius_scan(at, radius, cls)));
        CHECK(ids(grid) == ids(oracle::brute_within(places, at.lon, at.lat, radius)));
      }
    }
  }
}

TEST_CASE("nearest k is a prefix of nearest k+1") {
  std::mt19937_64 rng(99);
  const auto fx = testsupport::random_store(rng, 300);
  const QueryStore store = QueryStore::from_entities(fx.entities, fx.ontology);
  const SpatialPoint at = fx.entities[0].point;
  auto prev = ids(store.nearest_k(at, "Cafe", 0));
  for (std::size_t k = 1; k < 40; ++k) {
    const auto cur = ids(store.nearest_k(at, "Cafe", k));
    REQUIRE(cur.size() >= prev.size());
    CHECK(std::equal(prev.begin(), prev.end(), cur.begin()));
    prev = cur;
  }
}

TEST_CASE("class name resolution") {
  testsupport::TempDir dir;
  const QueryStore store = build_store("berlin.osm", dir);
  CHECK(store.resolve_class("Restaurant") == restaurant());
  CHECK(store.resolve_class("wkgs:Restaurant") == restaurant());
  CHECK(store.resolve_class(restaurant()) == restaurant());
  CHECK_THROWS_AS(store.resolve_class("restaurant"), QueryError);
  CHECK(store.resolve_external_class("Q556186") == "http://www.wikidata.org/wiki/Q556186");
  CHECK(store.resolve_external_class("wd:Q556186") == "http://www.wikidata.org/wiki/Q556186");
  CHECK(store.resolve_external_class("dbo:Tower") == "http://dbpedia.org/ontology/Tower");
  CHECK_THROWS_AS(store.resolve_external_class("Q1"), QueryError);
}

TEST_CASE("ambiguous labels are rejected as anchors") {
  std::istringstream onto(
      "@prefix wkgs: <http://www.worldkg.org/schema/> .\n"
      "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
      "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n"
      "wkgs:Amenity a owl:Class ; rdfs:subClassOf wkgs:WKGObject ; wkgs:osmKey \"amenity\" .\n");
  const Ontology ontology = ontology_from_turtle(onto);
  std::vector<StoredEntity> entities = {
      {1, {vocab::iri(ns::kSchema, "Amenity")}, "Twin", "", {0, 0}},
      {2, {vocab::iri(ns::kSchema, "Amenity")}, "Twin", "", {1, 1}},
  };
  const QueryStore store = QueryStore::from_entities(entities, ontology);
  CHECK(store.find_by_label("Twin").size() == 2);
  CHECK_THROWS_AS(store.nearest_k(std::string("Twin"), "Amenity", 1), QueryError);
}

TEST_CASE("malformed knowledge graphs are rejected at load") {
  const std::string prefixes =
      "@prefix wkg: <http://www.worldkg.org/resource/> .\n@prefix wkgs: <http://www.worldkg.org/schema/> .\n"
      "@prefix geo: <http://www.opengis.net/ont/geosparql#> .\n";
  testsupport::TempDir dir;
  run_pipeline(testsupport::fixture("untagged.osm"), testsupport::fixture("map_features.tsv"),
               testsupport::fixture("alignments.tsv"), dir.path());
  const std::string onto_doc = oracle::read_file((dir / "ontology.ttl").string());
  for (const std::string body : {
           "wkg:1 a wkgs:Peak .\n",
           "wkg:1 a wkgs:Peak ; wkgs:spatialObject wkg:geo1 .\n",
           "wkg:1 a wkgs:Peak ; wkgs:spatialObject wkg:geo1 .\nwkg:geo1 geo:asWKT \"Point(1 100)\" .\n",
       }) {
    std::istringstream kg(prefixes + body), onto(onto_doc);
    CHECK_THROWS_AS(QueryStore::load(kg, onto), ValidationError);
  }
}

TEST_CASE("sampling") {
  testsupport::TempDir dir;
  const QueryStore store = store_from_osm(testsupport::mineshaft_osm(677, 300, 5), dir);
  CHECK(store.external_population("Q556186").size() == 677);

  const auto rows = store.sample("Q556186", 100, 7);
  REQUIRE(rows.size() == 100);
  std::set<NodeId> distinct;
  for (const auto& r : rows) {
    distinct.insert(r.id);
    CHECK(r.type == vocab::iri(ns::kSchema, "Mineshaft"));
    CHECK(r.osm_link == vocab::iri(ns::kOsmNode, std::to_string(r.id)));
  }
  CHECK(distinct.size() == 100);
  CHECK(store.sample("Q556186", 100, 7) == rows);
  CHECK(store.sample("wd:Q556186", 100, 7) == rows);
  CHECK(store.sample("Q556186", 100, 8) != rows);
  CHECK(store.sample("Q556186", 0, 7).empty());
  CHECK(store.sample("Q556186", 5000, 7).size() == 677);
  CHECK(store.sample("dbo:Tower", 1000, 1).size() == store.members("ManMadeTower").size());
}
