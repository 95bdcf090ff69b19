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

#include "geokg/ontology.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "geokg/error.hpp"
#include "geokg/naming.hpp"
#include "geokg/rdf.hpp"
#include "geokg/turtle.hpp"
#include "tsv.hpp"

namespace geokg {

namespace {

std::string tag_key(std::string_view key, std::string_view value) {
  std::string k(key);
  k.push_back('\0');
  k.append(value);
  return k;
}

bool upper_identifier(std::string_view s) {
  return !s.empty() && s.front() >= 'A' && s.front() <= 'Z' &&
         std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)); });
}

bool lower_identifier(std::string_view s) {
  return !s.empty() && s.front() >= 'a' && s.front() <= 'z' &&
         std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)); });
}

std::optional<std::string> min_url(const std::optional<std::string>& current,
                                   const std::optional<std::string>& candidate) {
  if (!candidate) return current;
  if (!current || *candidate < *current) return candidate;
  return current;
}

}  // namespace

std::string_view to_string(FeatureCategory c) {
  switch (c) {
    case FeatureCategory::kFeature: return "feature";
    case FeatureCategory::kAdditionalAttribute: return "additional-attribute";
    case FeatureCategory::kAttribute: return "attribute";
    case FeatureCategory::kAdditionalProperty: return "additional-property";
  }
  return "feature";
}

FeatureCategory parse_feature_category(std::string_view token) {
  for (auto c : {FeatureCategory::kFeature, FeatureCategory::kAdditionalAttribute,
                 FeatureCategory::kAttribute, FeatureCategory::kAdditionalProperty}) {
    if (to_string(c) == token) return c;
  }
  throw ValidationError("unknown map-features category '" + std::string(token) + "'");
}

std::string_view to_string(TargetGraph g) {
  return g == TargetGraph::kWikidata ? "wikidata" : "dbpedia";
}

std::optional<TargetGraph> parse_target_graph(std::string_view token) {
  if (token == "wikidata") return TargetGraph::kWikidata;
  if (token == "dbpedia") return TargetGraph::kDbpedia;
  return std::nullopt;
}

std::string Equivalence::iri() const {
  return vocab::iri(graph == TargetGraph::kWikidata ? ns::kWikidata : ns::kDbpedia, class_id);
}

std::string OntologyClass::iri() const { return vocab::iri(ns::kSchema, local_name); }
std::string OntologyProperty::iri() const { return vocab::iri(ns::kSchema, local_name); }

std::vector<MapFeatureEntry> load_map_features(std::istream& in) {
  std::vector<MapFeatureEntry> entries;
  std::set<std::pair<std::string, std::string>> seen;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (detail::read_line(in, line)) {
    ++line_no;
    if (detail::skippable(line)) continue;
    auto cells = detail::split_tabs(line);
    const std::string where = "map features line " + std::to_string(line_no) + ": ";
    if (!header_seen) {
      if (cells != std::vector<std::string>{"key", "value", "category", "wiki_url"}) {
        throw ValidationError(where + "expected header 'key<TAB>value<TAB>category<TAB>wiki_url'");
      }
      header_seen = true;
      continue;
    }
    if (cells.size() != 4) {
      throw ValidationError(where + "expected 4 columns, found " + std::to_string(cells.size()));
    }
    MapFeatureEntry e;
    e.key = std::move(cells[0]);
    e.value = std::move(cells[1]);
    if (e.key.empty()) throw ValidationError(where + "empty key");
    if (e.value.empty()) throw ValidationError(where + "empty value");
    try {
      e.category = parse_feature_category(cells[2]);
    } catch (const ValidationError& err) {
      throw ValidationError(where + err.what());
    }
    if (!cells[3].empty()) e.wiki_url = std::move(cells[3]);
    if (!seen.emplace(e.key, e.value).second) {
      throw ValidationError(where + "duplicate entry " + e.key + "=" + e.value);
    }
    entries.push_back(std::move(e));
  }
  if (!header_seen) throw ValidationError("map features: missing header row");
  return entries;
}

std::vector<MapFeatureEntry> load_map_features_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open map features file '" + path + "'");
  return load_map_features(in);
}

Ontology Ontology::from_parts(std::vector<OntologyClass> classes,
                              std::vector<OntologyProperty> properties) {
  Ontology o;
  o.classes_ = std::move(classes);
  o.properties_ = std::move(properties);
  auto by_name = [](const auto& a, const auto& b) { return a.local_name < b.local_name; };
  std::sort(o.classes_.begin(), o.classes_.end(), by_name);
  std::sort(o.properties_.begin(), o.properties_.end(), by_name);
  o.index();
  return o;
}

void Ontology::index() {
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    const auto& c = classes_[i];
    if (!upper_identifier(c.local_name)) {
      throw ValidationError("class name '" + c.local_name + "' is not an upper-camel identifier");
    }
    if (!class_by_name_.emplace(c.local_name, i).second) {
      throw ValidationError("class name '" + c.local_name + "' is not unique");
    }
  }
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    const auto& c = classes_[i];
    if (c.top_level()) {
      if (c.source_value) {
        throw ValidationError("top-level class " + c.local_name + " must not carry a source value");
      }
      if (!class_by_key_.emplace(c.source_key, i).second) {
        throw ValidationError("key '" + c.source_key + "' is claimed by two top-level classes");
      }
    } else {
      const auto* parent = find_class(*c.parent);
      if (parent == nullptr || !parent->top_level()) {
        throw ValidationError("class " + c.local_name + " has parent '" + *c.parent +
                              "' which is not a top-level class");
      }
      if (!c.source_value) throw ValidationError("subclass " + c.local_name + " lacks a source value");
      if (parent->source_key != c.source_key) {
        throw ValidationError("subclass " + c.local_name + " key differs from its parent's key");
      }
      if (!class_by_tag_.emplace(tag_key(c.source_key, *c.source_value), i).second) {
        throw ValidationError("tag " + c.source_key + "=" + *c.source_value + " maps to two classes");
      }
    }
  }
  for (std::size_t i = 0; i < properties_.size(); ++i) {
    const auto& p = properties_[i];
    if (!lower_identifier(p.local_name)) {
      throw ValidationError("property name '" + p.local_name + "' is not a lower-camel identifier");
    }
    if (!property_by_name_.emplace(p.local_name, i).second) {
      throw ValidationError("property name '" + p.local_name + "' is not unique");
    }
    if (!property_by_key_.emplace(p.source_key, i).second) {
      throw ValidationError("key '" + p.source_key + "' is claimed by two properties");
    }
    if (class_by_key_.contains(p.source_key)) {
      throw ValidationError("key '" + p.source_key + "' is both a class key and a property");
    }
  }
}

const OntologyClass* Ontology::find_class(std::string_view local_name) const {
  const auto it = class_by_name_.find(local_name);
  return it == class_by_name_.end() ? nullptr : &classes_[it->second];
}

const OntologyProperty* Ontology::find_property(std::string_view local_name) const {
  const auto it = property_by_name_.find(local_name);
  return it == property_by_name_.end() ? nullptr : &properties_[it->second];
}

const OntologyClass* Ontology::class_for_key(std::string_view key) const {
  const auto it = class_by_key_.find(key);
  return it == class_by_key_.end() ? nullptr : &classes_[it->second];
}

const OntologyClass* Ontology::class_for_tag(std::string_view key, std::string_view value) const {
  const auto it = class_by_tag_.find(tag_key(key, value));
  return it == class_by_tag_.end() ? nullptr : &classes_[it->second];
}

const OntologyProperty* Ontology::property_for_key(std::string_view key) const {
  const auto it = property_by_key_.find(key);
  return it == property_by_key_.end() ? nullptr : &properties_[it->second];
}

std::size_t Ontology::top_level_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(classes_.begin(), classes_.end(), [](const auto& c) { return c.top_level(); }));
}

Ontology Ontology::with_equivalence(std::string_view local_name, const Equivalence& eq) const {
  Ontology copy = *this;
  const auto it = copy.class_by_name_.find(local_name);
  if (it == copy.class_by_name_.end()) {
    throw ValidationError("no class named '" + std::string(local_name) + "'");
  }
  copy.classes_[it->second].equivalents.insert(eq);
  return copy;
}

Ontology build_ontology(const std::vector<MapFeatureEntry>& entries) {
  std::set<std::pair<std::string_view, std::string_view>> pairs;
  std::map<std::string, std::vector<const MapFeatureEntry*>, std::less<>> feature_rows;
  std::map<std::string, std::vector<const MapFeatureEntry*>, std::less<>> other_rows;
  for (const auto& e : entries) {
    if (e.key.empty()) throw ValidationError("map features entry with empty key");
    if (!pairs.emplace(e.key, e.value).second) {
      throw ValidationError("duplicate map features entry " + e.key + "=" + e.value);
    }
    (e.category == FeatureCategory::kFeature ? feature_rows : other_rows)[e.key].push_back(&e);
  }
  for (const auto& [key, rows] : other_rows) {
    if (feature_rows.contains(key)) {
      throw ValidationError("key '" + key + "' is listed both as a feature and as an attribute/property");
    }
  }

  std::vector<OntologyClass> classes;
  std::set<std::string> top_names;
  for (const auto& [key, rows] : feature_rows) {
    OntologyClass top;
    top.local_name = to_upper_camel(key);
    top.source_key = key;
    for (const auto* row : rows) {
      if (!is_categorical(row->value)) top.wiki_url = min_url(top.wiki_url, row->wiki_url);
    }
    top_names.insert(top.local_name);
    classes.push_back(std::move(top));
  }

  struct Candidate {
    const MapFeatureEntry* entry;
    std::string parent;
    std::string base_name;
  };
  std::vector<Candidate> candidates;
  std::map<std::string, std::set<std::string_view>> keys_by_name;
  for (const auto& [key, rows] : feature_rows) {
    const std::string parent = to_upper_camel(key);
    for (const auto* row : rows) {
      if (!is_categorical(row->value)) continue;
      Candidate c{row, parent, to_upper_camel(row->value)};
      keys_by_name[c.base_name].insert(row->key);
      candidates.push_back(std::move(c));
    }
  }
  for (auto& c : candidates) {
    const bool collides = keys_by_name[c.base_name].size() > 1 || top_names.contains(c.base_name);
    OntologyClass sub;
    sub.local_name = collides ? c.parent + c.base_name : c.base_name;
    sub.source_key = c.entry->key;
    sub.source_value = c.entry->value;
    sub.parent = c.parent;
    sub.wiki_url = c.entry->wiki_url;
    classes.push_back(std::move(sub));
  }

  std::vector<OntologyProperty> properties;
  for (const auto& [key, rows] : other_rows) {
    std::optional<std::string> url;
    for (const auto* row : rows) url = min_url(url, row->wiki_url);
    if (!url) continue;
    properties.push_back(OntologyProperty{to_lower_camel(key), key, std::move(url)});
  }
  return Ontology::from_parts(std::move(classes), std::move(properties));
}

namespace {

void require_prefixes(const Ontology& onto, const PrefixTable& prefixes) {
  std::vector<std::string_view> needed = {"rdf", "rdfs", "owl", "dcterms", "wkgs"};
  for (const auto& c : onto.classes()) {
    for (const auto& eq : c.equivalents) {
      needed.push_back(eq.graph == TargetGraph::kWikidata ? "wd" : "dbo");
    }
  }
  for (const auto p : needed) {
    if (!prefixes.contains(p)) {
      throw ValidationError("ontology document references unknown prefix '" + std::string(p) + "'");
    }
  }
}

void write_block(std::ostream& out, std::vector<Triple> triples, const PrefixTable& prefixes) {
  std::sort(triples.begin(), triples.end(), predicate_order_less);
  write_subject_block(out, triples, prefixes);
}

}  // namespace

void serialize_ontology(std::ostream& out, const Ontology& onto, const PrefixTable& prefixes) {
  require_prefixes(onto, prefixes);
  const Term type = Term::iri(vocab::kRdfType);
  const Term owl_class = Term::iri(vocab::kOwlClass);
  auto t = [](const Term& s, const std::string& p, Term o) { return Triple{s, Term::iri(p), std::move(o)}; };

  write_prefix_block(out, prefixes);
  const Term root = Term::iri(vocab::kWkgObject);
  write_block(out, {Triple{root, type, owl_class}}, prefixes);

  for (const auto& c : onto.classes()) {
    const Term s = Term::iri(c.iri());
    std::vector<Triple> block;
    block.push_back(Triple{s, type, owl_class});
    const std::string parent = c.parent ? vocab::iri(ns::kSchema, *c.parent) : vocab::kWkgObject;
    block.push_back(t(s, vocab::kRdfsSubClassOf, Term::iri(parent)));
    if (c.wiki_url) block.push_back(t(s, vocab::kDctermsSource, Term::iri(*c.wiki_url)));
    for (const auto& eq : c.equivalents) block.push_back(t(s, vocab::kOwlEquivalentClass, Term::iri(eq.iri())));
    block.push_back(t(s, vocab::kOsmKey, Term::literal(c.source_key)));
    if (c.source_value) block.push_back(t(s, vocab::kOsmValue, Term::literal(*c.source_value)));
    write_block(out, std::move(block), prefixes);
  }

  const Term prop_type = Term::iri(vocab::kWkgProperty);
  for (const auto& p : onto.properties()) {
    const Term s = Term::iri(p.iri());
    std::vector<Triple> block;
    block.push_back(Triple{s, type, prop_type});
    if (p.wiki_url) block.push_back(t(s, vocab::kDctermsSource, Term::iri(*p.wiki_url)));
    block.push_back(t(s, vocab::kOsmKey, Term::literal(p.source_key)));
    write_block(out, std::move(block), prefixes);
  }
}

std::string serialize_ontology(const Ontology& onto, const PrefixTable& prefixes) {
  std::ostringstream out;
  serialize_ontology(out, onto, prefixes);
  return out.str();
}

Ontology ontology_from_turtle(std::istream& in) {
  struct Description {
    bool is_class = false;
    bool is_property = false;
    std::optional<std::string> parent_iri;
    std::optional<std::string> key;
    std::optional<std::string> value;
    std::optional<std::string> source;
    std::set<Equivalence> equivalents;
  };
  std::map<std::string, Description> subjects;
  parse_turtle(in, [&](Triple&& t) {
    if (!t.subject.is_iri() || !t.subject.value.starts_with(ns::kSchema)) return;
    const std::string& p = t.predicate.value;
    auto& d = subjects[t.subject.value];
    if (p == vocab::kRdfsSubClassOf) {
      d.is_class = true;
      d.parent_iri = t.object.value;
    } else if (p == vocab::kRdfType && t.object.value == vocab::kWkgProperty) {
      d.is_property = true;
    } else if (p == vocab::kOsmKey) {
      d.key = t.object.value;
    } else if (p == vocab::kOsmValue) {
      d.value = t.object.value;
    } else if (p == vocab::kDctermsSource) {
      d.source = t.object.value;
    } else if (p == vocab::kOwlEquivalentClass) {
      const std::string& o = t.object.value;
      if (o.starts_with(ns::kWikidata)) {
        d.equivalents.insert({TargetGraph::kWikidata, o.substr(ns::kWikidata.size())});
      } else if (o.starts_with(ns::kDbpedia)) {
        d.equivalents.insert({TargetGraph::kDbpedia, o.substr(ns::kDbpedia.size())});
      } else {
        throw ValidationError("equivalent class <" + o + "> is neither a Wikidata nor a DBpedia class");
      }
    }
  });

  std::vector<OntologyClass> classes;
  std::vector<OntologyProperty> properties;
  for (auto& [iri, d] : subjects) {
    const std::string local = iri.substr(ns::kSchema.size());
    if (d.is_class) {
      if (!d.key) throw ValidationError("class " + local + " has no wkgs:osmKey annotation");
      OntologyClass c;
      c.local_name = local;
      c.source_key = *d.key;
      c.source_value = d.value;
      if (*d.parent_iri != vocab::kWkgObject) {
        if (!d.parent_iri->starts_with(ns::kSchema)) {
          throw ValidationError("class " + local + " has a parent outside the schema namespace");
        }
        c.parent = d.parent_iri->substr(ns::kSchema.size());
      }
      c.equivalents = std::move(d.equivalents);
      c.wiki_url = d.source;
      classes.push_back(std::move(c));
    } else if (d.is_property) {
      if (!d.key) throw ValidationError("property " + local + " has no wkgs:osmKey annotation");
      properties.push_back(OntologyProperty{local, *d.key, d.source});
    }
  }
  return Ontology::from_parts(std::move(classes), std::move(properties));
}

Ontology ontology_from_turtle_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open ontology file '" + path + "'");
  return ontology_from_turtle(in);
}

}  // namespace geokg
