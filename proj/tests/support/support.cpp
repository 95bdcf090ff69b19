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

#include "support.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

#include "geokg/prefixes.hpp"

namespace testsupport {

namespace fs = std::filesystem;

fs::path fixture(const std::string& name) { return fs::path(GEOKG_FIXTURE_DIR) / name; }

TempDir::TempDir() {
  static std::atomic<unsigned> counter{0};
  path_ = fs::temp_directory_path() /
          ("geokg-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

oracle::Term to_oracle(const geokg::Term& t) {
  const char kind = t.is_iri() ? 'I' : t.is_blank() ? 'B' : 'L';
  return oracle::Term{kind, t.value, t.datatype, t.language};
}

std::vector<oracle::Triple> to_oracle(const std::vector<geokg::Triple>& triples) {
  std::vector<oracle::Triple> out;
  out.reserve(triples.size());
  for (const auto& t : triples) out.push_back({to_oracle(t.subject), to_oracle(t.predicate), to_oracle(t.object)});
  return out;
}

std::string random_text(std::mt19937_64& rng, std::size_t max_len) {
  static const std::vector<std::string> pool = {
      "a", "b", "z", "Q", "0", "7", " ", "-", ";", ".", ",", ":", "\"", "\\", "'", "#", "<", ">", "@",
      "^", "\n", "\t", "\r", "\x01", "\x7f", "é", "ß", "ü", "北", "京", "🗺", " ", "_", "%", "{", "}"};
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::string s;
  const std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) s += pool[pick(rng)];
  return s;
}

geokg::Entity random_entity(std::mt19937_64& rng, geokg::NodeId id) {
  static const std::vector<std::string> classes = {"Restaurant", "Peak", "Building", "TourismHotel",
                                                   "Mineshaft", "CaveEntrance", "Amenity"};
  static const std::vector<std::string> props = {"addrCountry", "cuisine", "ele", "openingHours",
                                                 "phone", "summitCross", "website", "wheelchair"};
  geokg::Entity e;
  e.id = id;
  std::uniform_int_distribution<int> ntypes(1, 3);
  for (int i = 0, n = ntypes(rng); i < n; ++i) {
    e.types.push_back(classes[std::uniform_int_distribution<std::size_t>(0, classes.size() - 1)(rng)]);
  }
  std::sort(e.types.begin(), e.types.end());
  e.types.erase(std::unique(e.types.begin(), e.types.end()), e.types.end());
  for (const auto& p : props) {
    if (std::bernoulli_distribution(0.4)(rng)) e.properties.emplace_back(p, random_text(rng, 12));
  }
  if (std::bernoulli_distribution(0.8)(rng)) e.label = random_text(rng, 16);
  std::uniform_real_distribution<double> lon(-180.0, 180.0);
  std::uniform_real_distribution<double> lat(-90.0, 90.0);
  e.point = geokg::SpatialPoint{lon(rng), lat(rng)};
  return e;
}

RandomStore random_store(std::mt19937_64& rng, std::size_t n) {
  using geokg::OntologyClass;
  RandomStore s;
  s.class_names = {"Restaurant", "Cafe", "Peak"};
  std::vector<OntologyClass> classes;
  classes.push_back(OntologyClass{"Amenity", "amenity", std::nullopt, std::nullopt, {}, std::nullopt});
  classes.push_back(OntologyClass{"Natural", "natural", std::nullopt, std::nullopt, {}, std::nullopt});
  classes.push_back(OntologyClass{"Restaurant", "amenity", "restaurant", "Amenity", {}, std::nullopt});
  classes.push_back(OntologyClass{"Cafe", "amenity", "cafe", "Amenity", {}, std::nullopt});
  classes.push_back(OntologyClass{"Peak", "natural", "peak", "Natural", {}, std::nullopt});
  s.ontology = geokg::Ontology::from_parts(std::move(classes), {});

  // Regions range from a city block to the whole globe, and include the poles
  // and the antimeridian.
  std::uniform_int_distribution<int> region(0, 4);
  double lon0 = 0, lat0 = 0, span = 0;
  switch (region(rng)) {
    case 0: lon0 = 13.4; lat0 = 52.5; span = 0.02; break;
    case 1: lon0 = std::uniform_real_distribution<double>(-170, 170)(rng);
            lat0 = std::uniform_real_distribution<double>(-70, 70)(rng); span = 2.0; break;
    case 2: lon0 = 179.9; lat0 = -16.0; span = 0.5; break;
    case 3: lon0 = 0.0; lat0 = 89.5; span = 1.0; break;
    default: lon0 = 0.0; lat0 = 0.0; span = 360.0; break;
  }
  std::uniform_real_distribution<double> jitter(-0.5, 0.5);
  std::uniform_int_distribution<std::size_t> cls(0, s.class_names.size() - 1);
  for (std::size_t i = 0; i < n; ++i) {
    geokg::StoredEntity e;
    e.id = 1000 + i * 7 + (rng() % 5);
    if (i > 0 && e.id <= s.entities.back().id) e.id = s.entities.back().id + 1;
    double lon = lon0 + jitter(rng) * span;
    double lat = lat0 + jitter(rng) * span / 2.0;
    while (lon >= 180.0) lon -= 360.0;
    while (lon < -180.0) lon += 360.0;
    lat = std::clamp(lat, -90.0, 90.0);
    if (i > 0 && rng() % 20 == 0) {
      const auto& twin = s.entities[rng() % s.entities.size()];
      lon = twin.point.lon;
      lat = twin.point.lat;
    }
    e.point = geokg::SpatialPoint{lon, lat};
    e.types.push_back(geokg::vocab::iri(geokg::ns::kSchema, s.class_names[cls(rng)]));
    if (rng() % 4 == 0) {
      e.types.push_back(geokg::vocab::iri(geokg::ns::kSchema, s.class_names[cls(rng)]));
      std::sort(e.types.begin(), e.types.end());
      e.types.erase(std::unique(e.types.begin(), e.types.end()), e.types.end());
    }
    e.label = "place " + std::to_string(e.id);
    e.osm_link = geokg::vocab::iri(geokg::ns::kOsmNode, std::to_string(e.id));
    s.entities.push_back(std::move(e));
  }
  return s;
}

std::vector<oracle::Place> places_of(const RandomStore& s, const std::string& class_local_name) {
  const std::string iri = geokg::vocab::iri(geokg::ns::kSchema, class_local_name);
  std::vector<oracle::Place> places;
  for (const auto& e : s.entities) {
    if (std::find(e.types.begin(), e.types.end(), iri) != e.types.end()) {
      places.push_back({e.id, e.point.lon, e.point.lat});
    }
  }
  return places;
}

std::string synthetic_osm(std::mt19937_64& rng, std::size_t total, std::size_t tagged) {
  std::ostringstream out;
  write_synthetic_osm(out, rng, total, tagged);
  return out.str();
}

bool synthetic_class_tag(std::string_view key, std::string_view value) {
  return (key == "amenity" && value == "restaurant") || (key == "natural" && value == "peak") ||
         (key == "building" && value == "yes") || (key == "tourism" && value == "hotel") ||
         (key == "man_made" && value == "mineshaft");
}

void write_synthetic_osm(std::ostream& out, std::mt19937_64& rng, std::size_t total, std::size_t tagged) {
  static const std::vector<std::pair<std::string, std::string>> tags = {
      {"amenity", "restaurant"}, {"natural", "peak"}, {"building", "yes"}, {"tourism", "hotel"},
      {"man_made", "mineshaft"}, {"cuisine", "thai"}, {"ele", "312"},      {"note", "fixme &amp; check"},
      {"name", "Ort &lt;1&gt;"}, {"wheelchair", "limited"}};
  std::vector<bool> is_tagged(total, false);
  std::fill(is_tagged.begin(), is_tagged.begin() + static_cast<std::ptrdiff_t>(tagged), true);
  std::shuffle(is_tagged.begin(), is_tagged.end(), rng);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<osm version=\"0.6\">\n";
  std::uniform_real_distribution<double> lon(-180.0, 180.0);
  std::uniform_real_distribution<double> lat(-90.0, 90.0);
  out << std::fixed << std::setprecision(7);
  for (std::size_t i = 0; i < total; ++i) {
    out << "  <node id=\"" << (i + 1) << "\" lat=\"" << lat(rng) << "\" lon=\"" << lon(rng) << "\"";
    if (!is_tagged[i]) {
      out << "/>\n";
      continue;
    }
    out << ">\n";
    std::vector<std::size_t> idx(tags.size());
    for (std::size_t j = 0; j < idx.size(); ++j) idx[j] = j;
    std::shuffle(idx.begin(), idx.end(), rng);
    const std::size_t n = 1 + rng() % 4;
    for (std::size_t j = 0; j < n; ++j) {
      out << "    <tag k=\"" << tags[idx[j]].first << "\" v=\"" << tags[idx[j]].second << "\"/>\n";
    }
    out << "  </node>\n";
  }
  out << "  <way id=\"1\"><nd ref=\"1\"/><tag k=\"highway\" v=\"path\"/></way>\n</osm>\n";
}

std::string mineshaft_osm(std::size_t members, std::size_t others, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> lon(5.0, 15.0);
  std::uniform_real_distribution<double> lat(47.0, 55.0);
  std::vector<bool> is_member(members + others, false);
  std::fill(is_member.begin(), is_member.begin() + static_cast<std::ptrdiff_t>(members), true);
  std::shuffle(is_member.begin(), is_member.end(), rng);
  static const char* const kOther[][2] = {{"man_made", "tower"}, {"historic", "tomb"}, {"amenity", "restaurant"}};
  std::ostringstream out;
  out.precision(9);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<osm version=\"0.6\">\n";
  for (std::size_t i = 0; i < is_member.size(); ++i) {
    const std::size_t id = 5000000 + i * 3;
    out << "  <node id=\"" << id << "\" lat=\"" << lat(rng) << "\" lon=\"" << lon(rng) << "\">\n";
    if (is_member[i]) {
      out << "    <tag k=\"man_made\" v=\"mineshaft\"/>\n";
      if (i % 10 != 0) out << "    <tag k=\"name\" v=\"Schacht " << id << "\"/>\n";
    } else {
      const auto* tag = kOther[i % 3];
      out << "    <tag k=\"" << tag[0] << "\" v=\"" << tag[1] << "\"/>\n";
    }
    out << "  </node>\n";
  }
  out << "</osm>\n";
  return out.str();
}

}  // namespace testsupport
