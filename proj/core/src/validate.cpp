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

#include "geokg/validate.hpp"

#include <map>
#include <optional>
#include <set>

#include "geokg/geo.hpp"
#include "geokg/rdf.hpp"
#include "geokg/turtle.hpp"

namespace geokg {

namespace {

struct Subject {
  std::vector<std::string> schema_types;
  std::vector<std::string> other_types;
  std::vector<std::string> geometries;
  std::vector<std::string> osm_links;
  std::vector<std::string> wkts;
};

std::string local(std::string_view iri, std::string_view ns) { return std::string(iri.substr(ns.size())); }

}  // namespace

ValidationReport validate_kg(std::istream& kg, const Ontology* ontology) {
  ValidationReport report;
  std::map<std::string, Subject> subjects;
  std::set<std::string> predicates;
  parse_turtle(kg, [&](Triple&& t) {
    ++report.triples;
    auto& s = subjects[t.subject.value];
    const std::string& p = t.predicate.value;
    if (p == vocab::kRdfType) {
      (t.object.value.starts_with(ns::kSchema) ? s.schema_types : s.other_types).push_back(t.object.value);
    } else if (p == vocab::kSpatialObject) {
      s.geometries.push_back(t.object.value);
    } else if (p == vocab::kOsmLink) {
      s.osm_links.push_back(t.object.value);
    } else if (p == vocab::kAsWkt) {
      s.wkts.push_back(t.object.value);
    }
    if (p.starts_with(ns::kSchema)) predicates.insert(p);
  });

  auto violation = [&](std::string msg) { report.violations.push_back(std::move(msg)); };
  std::map<std::string, std::size_t> geometry_owners;
  for (const auto& [iri, s] : subjects) {
    if (!s.wkts.empty()) ++report.geometries;
    if (s.schema_types.empty()) continue;
    ++report.entities;
    if (s.geometries.size() != 1) {
      violation("<" + iri + "> has " + std::to_string(s.geometries.size()) + " geometries (expected 1)");
      continue;
    }
    const std::string& g = s.geometries.front();
    ++geometry_owners[g];
    const auto it = subjects.find(g);
    if (it == subjects.end() || it->second.wkts.size() != 1) {
      violation("<" + iri + "> geometry <" + g + "> does not carry exactly one geo:asWKT");
    } else {
      const auto& geom = it->second;
      if (!parse_wkt_point(geom.wkts.front())) {
        violation("<" + g + "> WKT '" + geom.wkts.front() + "' is not an in-range Point(lon lat)");
      }
      if (geom.other_types != std::vector<std::string>{vocab::kSfPoint}) {
        violation("<" + g + "> is not typed as exactly sf:Point");
      }
    }
    if (iri.starts_with(ns::kResource)) {
      const std::string expected = vocab::iri(ns::kOsmNode, local(iri, ns::kResource));
      if (s.osm_links != std::vector<std::string>{expected}) {
        violation("<" + iri + "> osmLink does not point at <" + expected + ">");
      }
    }
    if (ontology != nullptr) {
      for (const auto& t : s.schema_types) {
        if (ontology->find_class(local(t, ns::kSchema)) == nullptr) {
          violation("<" + iri + "> is typed with undeclared class <" + t + ">");
        }
      }
    }
  }
  for (const auto& [g, owners] : geometry_owners) {
    if (owners > 1) violation("geometry <" + g + "> is shared by " + std::to_string(owners) + " entities");
  }
  if (ontology != nullptr) {
    for (const auto& p : predicates) {
      if (p == vocab::kSpatialObject || p == vocab::kOsmLink) continue;
      if (ontology->find_property(local(p, ns::kSchema)) == nullptr) {
        violation("predicate <" + p + "> is not a declared property");
      }
    }
  }
  return report;
}

}  // namespace geokg
