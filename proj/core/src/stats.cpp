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

#include "geokg/stats.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "geokg/error.hpp"
#include "geokg/ontology.hpp"
#include "geokg/rdf.hpp"
#include "geokg/turtle.hpp"

namespace geokg {

std::string KgStats::to_text() const {
  std::ostringstream out;
  out << "total_triples\t" << total_triples << '\n'
      << "total_entities\t" << total_entities << '\n'
      << "top_level_classes\t" << top_level_classes << '\n'
      << "subclasses\t" << subclasses << '\n'
      << "unique_properties\t" << unique_properties << '\n'
      << "links_wikidata\t" << links_wikidata << '\n'
      << "links_dbpedia\t" << links_dbpedia << '\n';
  return out.str();
}

std::string KgStats::to_json() const {
  std::ostringstream out;
  out << "{\"total_triples\":" << total_triples << ",\"total_entities\":" << total_entities
      << ",\"top_level_classes\":" << top_level_classes << ",\"subclasses\":" << subclasses
      << ",\"unique_properties\":" << unique_properties << ",\"links_wikidata\":" << links_wikidata
      << ",\"links_dbpedia\":" << links_dbpedia << "}";
  return out.str();
}

KgStats compute_stats(std::istream& kg, std::istream& ontology) {
  KgStats stats;
  std::string onto_text{std::istreambuf_iterator<char>(ontology), std::istreambuf_iterator<char>()};
  {
    std::istringstream in(onto_text);
    const Ontology onto = ontology_from_turtle(in);
    stats.top_level_classes = onto.top_level_count();
    stats.subclasses = onto.subclass_count();
  }
  std::unordered_set<std::string> class_iris;
  {
    std::istringstream in(onto_text);
    parse_turtle(in, [&](Triple&& t) {
      if (t.predicate.value == vocab::kRdfsSubClassOf) class_iris.insert(t.subject.value);
      if (t.predicate.value != vocab::kOwlEquivalentClass) return;
      if (t.object.value.starts_with(ns::kWikidata)) ++stats.links_wikidata;
      else if (t.object.value.starts_with(ns::kDbpedia)) ++stats.links_dbpedia;
    });
  }

  std::unordered_set<std::string> entities;
  std::set<std::string> properties;
  parse_turtle(kg, [&](Triple&& t) {
    ++stats.total_triples;
    const std::string& p = t.predicate.value;
    if (p == vocab::kRdfType) {
      if (class_iris.contains(t.object.value)) entities.insert(std::move(t.subject.value));
    } else if (p.starts_with(ns::kSchema) && p != vocab::kSpatialObject && p != vocab::kOsmLink) {
      properties.insert(p);
    }
  });
  stats.total_entities = entities.size();
  stats.unique_properties = properties.size();
  return stats;
}

KgStats compute_stats_files(const std::filesystem::path& kg, const std::filesystem::path& ontology) {
  std::ifstream kin(kg, std::ios::binary);
  if (!kin) throw Error("cannot open knowledge graph '" + kg.string() + "'");
  std::ifstream oin(ontology, std::ios::binary);
  if (!oin) throw Error("cannot open ontology '" + ontology.string() + "'");
  return compute_stats(kin, oin);
}

std::map<std::string, std::size_t> class_counts(std::istream& kg) {
  std::set<std::pair<std::string, std::string>> typed;
  parse_turtle(kg, [&](Triple&& t) {
    if (t.predicate.value == vocab::kRdfType && t.object.is_iri() && t.object.value.starts_with(ns::kSchema)) {
      typed.emplace(t.object.value.substr(ns::kSchema.size()), std::move(t.subject.value));
    }
  });
  std::map<std::string, std::size_t> counts;
  for (const auto& [cls, subject] : typed) ++counts[cls];
  return counts;
}

}  // namespace geokg
