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

#include "geokg/alignment.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <tuple>

#include "geokg/error.hpp"
#include "geokg/naming.hpp"
#include "tsv.hpp"

namespace geokg {

namespace {

bool valid_class_id(TargetGraph g, std::string_view id) {
  if (id.empty()) return false;
  if (g == TargetGraph::kWikidata) {
    return id.size() > 1 && id.front() == 'Q' &&
           std::all_of(id.begin() + 1, id.end(), [](char c) { return c >= '0' && c <= '9'; });
  }
  return std::isupper(static_cast<unsigned char>(id.front())) &&
         std::all_of(id.begin(), id.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

const OntologyClass* resolve(const Ontology& onto, const AlignmentMapping& m) {
  if (const auto* sub = onto.class_for_tag(m.osm_key, m.osm_value)) return sub;
  if (!is_categorical(m.osm_value)) return onto.class_for_key(m.osm_key);
  return nullptr;
}

}  // namespace

std::vector<AlignmentMapping> load_alignments(std::istream& in) {
  std::vector<AlignmentMapping> out;
  std::set<std::tuple<std::string, std::string, TargetGraph>> seen;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (detail::read_line(in, line)) {
    ++line_no;
    if (detail::skippable(line)) continue;
    auto cells = detail::split_tabs(line);
    const std::string where = "alignments line " + std::to_string(line_no) + ": ";
    if (!header_seen) {
      if (cells != std::vector<std::string>{"key", "value", "target", "class_id", "label"}) {
        throw ValidationError(where + "expected header 'key<TAB>value<TAB>target<TAB>class_id<TAB>label'");
      }
      header_seen = true;
      continue;
    }
    if (cells.size() != 5) {
      throw ValidationError(where + "expected 5 columns, found " + std::to_string(cells.size()));
    }
    const auto target = parse_target_graph(cells[2]);
    if (!target) throw ValidationError(where + "unknown target graph '" + cells[2] + "'");
    AlignmentMapping m{std::move(cells[0]), std::move(cells[1]), *target, std::move(cells[3]), std::nullopt};
    if (!cells[4].empty()) m.label = std::move(cells[4]);
    if (m.osm_key.empty() || m.osm_value.empty()) throw ValidationError(where + "empty key or value");
    if (!valid_class_id(m.target, m.class_id)) {
      throw ValidationError(where + "'" + m.class_id + "' is not a valid " + std::string(to_string(m.target)) +
                            " class id");
    }
    if (!seen.emplace(m.osm_key, m.osm_value, m.target).second) {
      throw ValidationError(where + "duplicate mapping for " + m.osm_key + "=" + m.osm_value + " (" +
                            std::string(to_string(m.target)) + ")");
    }
    out.push_back(std::move(m));
  }
  if (!header_seen) throw ValidationError("alignments: missing header row");
  return out;
}

std::vector<AlignmentMapping> load_alignments_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open alignments file '" + path + "'");
  return load_alignments(in);
}

Ontology attach_equivalences(const Ontology& onto, const std::vector<AlignmentMapping>& mappings) {
  std::vector<std::pair<std::string, Equivalence>> resolved;
  std::string unmatched;
  for (const auto& m : mappings) {
    if (const auto* cls = resolve(onto, m)) {
      resolved.emplace_back(cls->local_name, Equivalence{m.target, m.class_id});
    } else {
      unmatched += "\n  " + m.osm_key + "=" + m.osm_value + " -> " + std::string(to_string(m.target)) + ":" +
                   m.class_id;
    }
  }
  if (!unmatched.empty()) {
    throw ValidationError("alignment mappings do not resolve to ontology classes:" + unmatched);
  }
  std::vector<OntologyClass> classes = onto.classes();
  for (auto& [name, eq] : resolved) {
    auto it = std::find_if(classes.begin(), classes.end(), [&](const auto& c) { return c.local_name == name; });
    it->equivalents.insert(std::move(eq));
  }
  return Ontology::from_parts(std::move(classes), onto.properties());
}

}  // namespace geokg
