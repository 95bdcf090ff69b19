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

#include <benchmark/benchmark.h>

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "geokg/geo.hpp"
#include "geokg/kg_builder.hpp"
#include "geokg/ontology.hpp"
#include "geokg/osm_corpus.hpp"
#include "geokg/query_store.hpp"
#include "geokg/rdf.hpp"
#include "geokg/turtle.hpp"

namespace {

using namespace geokg;

Ontology small_ontology() {
  std::vector<MapFeatureEntry> entries = {
      {"amenity", "restaurant", FeatureCategory::kFeature, std::nullopt},
      {"amenity", "cafe", FeatureCategory::kFeature, std::nullopt},
      {"natural", "peak", FeatureCategory::kFeature, std::nullopt},
      {"building", "yes", FeatureCategory::kFeature, std::nullopt},
      {"cuisine", "user defined", FeatureCategory::kAttribute, "https://wiki.openstreetmap.org/wiki/Key:cuisine"},
      {"ele", "user defined", FeatureCategory::kAttribute, "https://wiki.openstreetmap.org/wiki/Key:ele"},
  };
  return build_ontology(entries);
}

std::string osm_document(std::size_t nodes) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> lon(-180, 180), lat(-90, 90);
  static const char* const kTags[] = {"<tag k=\"amenity\" v=\"restaurant\"/><tag k=\"cuisine\" v=\"thai\"/>",
                                      "<tag k=\"natural\" v=\"peak\"/><tag k=\"ele\" v=\"2962\"/>",
                                      "<tag k=\"building\" v=\"yes\"/>", ""};
  std::ostringstream out;
  out.precision(9);
  out << "<osm>";
  for (std::size_t i = 0; i < nodes; ++i) {
    const char* tags = kTags[rng() % 4];
    out << "<node id=\"" << i + 1 << "\" lat=\"" << lat(rng) << "\" lon=\"" << lon(rng) << "\"";
    if (*tags == '\0') {
      out << "/>";
    } else {
      out << '>' << tags << "</node>";
    }
  }
  out << "</osm>";
  return out.str();
}

QueryStore city_store(std::size_t n) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> dlon(13.4, 0.1), dlat(52.5, 0.06);
  std::vector<StoredEntity> entities;
  for (std::size_t i = 0; i < n; ++i) {
    entities.push_back({i + 1, {vocab::iri(ns::kSchema, i % 3 ? "Restaurant" : "Cafe")}, std::nullopt, {},
                        SpatialPoint{dlon(rng), dlat(rng)}});
  }
  return QueryStore::from_entities(std::move(entities), small_ontology());
}

void BM_ParseOsm(benchmark::State& state) {
  const std::string doc = osm_document(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    std::istringstream in(doc);
    OsmXmlReader reader(in);
    std::size_t n = 0;
    while (auto node = reader.next()) n += node->tags.size();
    benchmark::DoNotOptimize(n);
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * doc.size()));
}
BENCHMARK(BM_ParseOsm)->Arg(10'000);

void BM_BuildKg(benchmark::State& state) {
  const std::string doc = osm_document(static_cast<std::size_t>(state.range(0)));
  const Ontology onto = small_ontology();
  for (auto _ : state) {
    std::istringstream in(doc);
    std::ostringstream out;
    KgBuildOptions opts;
    opts.threads = 1;
    benchmark::DoNotOptimize(build_kg(in, onto, out, opts));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildKg)->Arg(10'000);

void BM_ParseTurtle(benchmark::State& state) {
  const std::string doc = [] {
    std::istringstream in(osm_document(10'000));
    std::ostringstream out;
    build_kg(in, small_ontology(), out);
    return out.str();
  }();
  for (auto _ : state) {
    std::size_t n = 0;
    std::istringstream in(doc);
    parse_turtle(in, [&](Triple&&) { ++n; });
    benchmark::DoNotOptimize(n);
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * doc.size()));
}
BENCHMARK(BM_ParseTurtle);

void BM_Haversine(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lon(-180, 180), lat(-90, 90);
  std::vector<SpatialPoint> pts(1024);
  for (auto& p : pts) p = {lon(rng), lat(rng)};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(haversine_m(pts[i & 1023], pts[(i + 1) & 1023]));
    ++i;
  }
}
BENCHMARK(BM_Haversine);

void BM_NearestGrid(benchmark::State& state) {
  const QueryStore store = city_store(static_cast<std::size_t>(state.range(0)));
  const SpatialPoint tor{13.3777041, 52.5162746};
  for (auto _ : state) benchmark::DoNotOptimize(store.nearest_k(tor, "Restaurant", 3));
}
BENCHMARK(BM_NearestGrid)->Arg(10'000)->Arg(100'000);

void BM_NearestScan(benchmark::State& state) {
  const QueryStore store = city_store(static_cast<std::size_t>(state.range(0)));
  const SpatialPoint tor{13.3777041, 52.5162746};
  for (auto _ : state) benchmark::DoNotOptimize(store.nearest_k_scan(tor, "Restaurant", 3));
}
BENCHMARK(BM_NearestScan)->Arg(10'000)->Arg(100'000);

void BM_WithinRadius(benchmark::State& state) {
  const QueryStore store = city_store(100'000);
  const SpatialPoint tor{13.3777041, 52.5162746};
  for (auto _ : state) benchmark::DoNotOptimize(store.within_radius(tor, 500.0, "Restaurant"));
}
BENCHMARK(BM_WithinRadius);

}  // namespace

BENCHMARK_MAIN();
