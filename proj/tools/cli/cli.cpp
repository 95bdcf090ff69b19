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

#include "cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "geokg/alignment.hpp"
#include "geokg/error.hpp"
#include "geokg/geo.hpp"
#include "geokg/kg_builder.hpp"
#include "geokg/ontology.hpp"
#include "geokg/query_store.hpp"
#include "geokg/stats.hpp"
#include "geokg/turtle.hpp"
#include "geokg/validate.hpp"

namespace geokg::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

enum class Format { kText, kJson, kGeoJson };

struct CliConfig {
  std::string features;
  std::string alignments;
  std::string osm;
  std::string ontology;
  std::string kg;
  std::string out;
  std::string class_name;
  std::optional<std::string> label;
  std::optional<std::string> point;
  std::size_t k = 3;
  double radius_m = 0.0;
  std::size_t n = 100;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  bool class_counts = false;
  Format format = Format::kText;
};

std::string compact(const std::string& iri) {
  if (auto parts = PrefixTable::standard().split(iri)) {
    return std::string(parts->first) + ":" + std::string(parts->second);
  }
  return "<" + iri + ">";
}

std::size_t display_width(std::string_view s) {
  std::size_t n = 0;
  for (const char c : s) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::string fixed3(double v) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(3) << v;
  return o.str();
}

void write_atomically(const fs::path& target, const std::string& content) {
  const fs::path partial = target.parent_path() / (target.filename().string() + ".partial");
  {
    std::ofstream out(partial, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot create '" + partial.string() + "'");
    out << content;
    out.close();
    if (!out) {
      std::error_code ec;
      fs::remove(partial, ec);
      throw Error("failed writing '" + partial.string() + "'");
    }
  }
  fs::rename(partial, target);
}

void print_report(std::ostream& out, const BuildReport& report, Format format) {
  if (format == Format::kJson) {
    out << report.to_json() << '\n';
  } else {
    out << report.to_text();
  }
}

int cmd_build_ontology(const CliConfig& cfg, std::ostream& out) {
  const Ontology onto = build_aligned_ontology(cfg.features, cfg.alignments);
  fs::create_directories(cfg.out);
  const fs::path target = fs::path(cfg.out) / kOntologyFileName;
  write_atomically(target, serialize_ontology(onto));
  std::size_t equivalences = 0;
  for (const auto& c : onto.classes()) equivalences += c.equivalents.size();
  if (cfg.format == Format::kJson) {
    json j;
    j["ontology"] = target.string();
    j["top_level_classes"] = onto.top_level_count();
    j["subclasses"] = onto.subclass_count();
    j["properties"] = onto.properties().size();
    j["equivalences"] = equivalences;
    out << j.dump() << '\n';
  } else {
    out << "ontology\t" << target.string() << '\n'
        << "top_level_classes\t" << onto.top_level_count() << '\n'
        << "subclasses\t" << onto.subclass_count() << '\n'
        << "properties\t" << onto.properties().size() << '\n'
        << "equivalences\t" << equivalences << '\n';
  }
  return 0;
}

int cmd_build_kg(const CliConfig& cfg, std::ostream& out) {
  KgBuildOptions options;
  options.threads = cfg.threads;
  BuildReport report;
  if (!cfg.ontology.empty()) {
    report = build_kg_files(cfg.osm, cfg.ontology, cfg.out, options);
  } else if (!cfg.features.empty() && !cfg.alignments.empty()) {
    report = run_pipeline(cfg.osm, cfg.features, cfg.alignments, cfg.out, options);
  } else {
    throw Error("build-kg needs --ontology, or --features together with --alignments");
  }
  print_report(out, report, cfg.format);
  return 0;
}

int cmd_stats(const CliConfig& cfg, std::ostream& out) {
  const KgStats stats = compute_stats_files(cfg.kg, cfg.ontology);
  std::map<std::string, std::size_t> counts;
  if (cfg.class_counts) {
    std::ifstream in(cfg.kg, std::ios::binary);
    counts = class_counts(in);
  }
  if (cfg.format == Format::kJson) {
    json j = json::parse(stats.to_json());
    if (cfg.class_counts) j["class_counts"] = counts;
    out << j.dump() << '\n';
  } else {
    out << stats.to_text();
    for (const auto& [cls, n] : counts) out << "class\t" << cls << '\t' << n << '\n';
  }
  return 0;
}

SpatialPoint point_option(const std::string& text) {
  const auto p = parse_lon_lat(text);
  if (!p) throw Error("--point expects LON,LAT in degrees, got '" + text + "'");
  return *p;
}

std::string entity_name(const StoredEntity& e) { return e.label.value_or("wkg:" + std::to_string(e.id)); }

void print_neighbors(std::ostream& out, const std::vector<Neighbor>& rows, const std::string& class_iri,
                     Format format) {
  if (format == Format::kJson) {
    json arr = json::array();
    for (const auto& r : rows) {
      json row;
      row["id"] = "wkg:" + std::to_string(r.entity->id);
      row["name"] = r.entity->label ? json(*r.entity->label) : json(nullptr);
      row["class"] = compact(class_iri);
      row["distance_m"] = r.distance_m;
      row["lon"] = r.entity->point.lon;
      row["lat"] = r.entity->point.lat;
      arr.push_back(std::move(row));
    }
    out << arr.dump() << '\n';
    return;
  }
  if (format == Format::kGeoJson) {
    json features = json::array();
    for (const auto& r : rows) {
      json f;
      f["type"] = "Feature";
      f["geometry"] = {{"type", "Point"}, {"coordinates", {r.entity->point.lon, r.entity->point.lat}}};
      f["properties"] = {{"id", "wkg:" + std::to_string(r.entity->id)},
                         {"name", entity_name(*r.entity)},
                         {"class", compact(class_iri)},
                         {"distance_m", r.distance_m}};
      features.push_back(std::move(f));
    }
    out << json{{"type", "FeatureCollection"}, {"features", features}}.dump() << '\n';
    return;
  }
  std::size_t width = 4;
  for (const auto& r : rows) width = std::max(width, display_width(entity_name(*r.entity)));
  auto pad = [&](const std::string& s) { return s + std::string(width - display_width(s) + 2, ' '); };
  out << pad("name") << "distance_m\n";
  for (const auto& r : rows) out << pad(entity_name(*r.entity)) << fixed3(r.distance_m) << '\n';
}

int cmd_query(const CliConfig& cfg, bool nearest, std::ostream& out) {
  if (cfg.label.has_value() == cfg.point.has_value()) {
    throw Error("give exactly one anchor: --label or --point");
  }
  const QueryStore store = QueryStore::load_files(cfg.kg, cfg.ontology);
  const std::string class_iri = store.resolve_class(cfg.class_name);
  std::vector<Neighbor> rows;
  if (nearest) {
    const Anchor anchor = cfg.label ? Anchor{*cfg.label} : Anchor{point_option(*cfg.point)};
    rows = store.nearest_k(anchor, class_iri, cfg.k);
  } else {
    SpatialPoint center;
    if (cfg.label) {
      const auto hits = store.find_by_label(*cfg.label);
      if (hits.size() != 1) {
        throw QueryError("label '" + *cfg.label + "' matches " + std::to_string(hits.size()) + " entities");
      }
      center = hits.front()->point;
    } else {
      center = point_option(*cfg.point);
    }
    rows = store.within_radius(center, cfg.radius_m, class_iri);
  }
  print_neighbors(out, rows, class_iri, cfg.format);
  return 0;
}

int cmd_sample(const CliConfig& cfg, std::ostream& out) {
  const QueryStore store = QueryStore::load_files(cfg.kg, cfg.ontology);
  const auto rows = store.sample(cfg.class_name, cfg.n, cfg.seed);
  if (cfg.format == Format::kJson) {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"id", "wkg:" + std::to_string(r.id)},
                     {"type", compact(r.type)},
                     {"osmid", r.osm_link.empty() ? json(nullptr) : json(compact(r.osm_link))},
                     {"name", r.name}});
    }
    out << arr.dump() << '\n';
    return 0;
  }
  out << "id\ttype\tosmid\tname\n";
  for (const auto& r : rows) {
    out << "wkg:" << r.id << '\t' << compact(r.type) << '\t' << (r.osm_link.empty() ? "" : compact(r.osm_link))
        << '\t' << r.name << '\n';
  }
  return 0;
}

int cmd_validate(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  std::optional<Ontology> onto;
  if (!cfg.ontology.empty()) onto = ontology_from_turtle_file(cfg.ontology);
  std::ifstream in(cfg.kg, std::ios::binary);
  if (!in) throw Error("cannot open knowledge graph '" + cfg.kg + "'");
  const ValidationReport report = validate_kg(in, onto ? &*onto : nullptr);
  if (cfg.format == Format::kJson) {
    json j;
    j["triples"] = report.triples;
    j["entities"] = report.entities;
    j["geometries"] = report.geometries;
    j["violations"] = report.violations;
    out << j.dump() << '\n';
  } else {
    out << "triples\t" << report.triples << '\n'
        << "entities\t" << report.entities << '\n'
        << "geometries\t" << report.geometries << '\n'
        << "violations\t" << report.violations.size() << '\n';
  }
  for (const auto& v : report.violations) err << "violation: " << v << '\n';
  return report.ok() ? 0 : 1;
}

void add_format(CLI::App* cmd, CliConfig& cfg, bool geojson) {
  std::map<std::string, Format> choices{{"text", Format::kText}, {"json", Format::kJson}};
  if (geojson) choices.emplace("geojson", Format::kGeoJson);
  cmd->add_option("--format", cfg.format, "Output format")
      ->transform(CLI::CheckedTransformer(choices, CLI::ignore_case));
}

void add_store_inputs(CLI::App* cmd, CliConfig& cfg) {
  cmd->add_option("--kg", cfg.kg, "Knowledge graph Turtle file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--ontology", cfg.ontology, "Ontology Turtle file")->required()->check(CLI::ExistingFile);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Build and query a geographic knowledge graph from OpenStreetMap nodes", "geokg"};
  app.require_subcommand(1);
  CliConfig cfg;

  auto* build_onto = app.add_subcommand("build-ontology", "Build ontology.ttl from map features and alignments");
  build_onto->add_option("--features", cfg.features, "Map-features TSV")->required()->check(CLI::ExistingFile);
  build_onto->add_option("--alignments", cfg.alignments, "Alignment TSV")->required()->check(CLI::ExistingFile);
  build_onto->add_option("--out", cfg.out, "Output directory")->required();
  add_format(build_onto, cfg, false);

  auto* build_kg_cmd = app.add_subcommand("build-kg", "Convert OSM XML nodes into kg.ttl");
  build_kg_cmd->add_option("--osm", cfg.osm, "OSM XML input")->required()->check(CLI::ExistingFile);
  build_kg_cmd->add_option("--ontology", cfg.ontology, "Ontology Turtle file")->check(CLI::ExistingFile);
  build_kg_cmd->add_option("--features", cfg.features, "Map-features TSV (builds the ontology too)")
      ->check(CLI::ExistingFile);
  build_kg_cmd->add_option("--alignments", cfg.alignments, "Alignment TSV")->check(CLI::ExistingFile);
  build_kg_cmd->add_option("--out", cfg.out, "Output directory")->required();
  build_kg_cmd->add_option("--threads", cfg.threads, "Mapping threads (0 = all cores)");
  add_format(build_kg_cmd, cfg, false);

  auto* stats_cmd = app.add_subcommand("stats", "Print knowledge graph statistics");
  add_store_inputs(stats_cmd, cfg);
  stats_cmd->add_flag("--class-counts", cfg.class_counts, "Also print per-class entity counts");
  add_format(stats_cmd, cfg, false);

  auto* query_cmd = app.add_subcommand("query", "Spatial queries");
  query_cmd->require_subcommand(1);
  auto* nearest_cmd = query_cmd->add_subcommand("nearest", "k nearest entities of a class");
  auto* radius_cmd = query_cmd->add_subcommand("radius", "Entities of a class within a radius");
  for (auto* cmd : {nearest_cmd, radius_cmd}) {
    add_store_inputs(cmd, cfg);
    cmd->add_option("--class", cfg.class_name, "Class local name, prefixed name or IRI")->required();
    cmd->add_option("--label", cfg.label, "Anchor entity label");
    cmd->add_option("--point", cfg.point, "Anchor point LON,LAT");
    add_format(cmd, cfg, true);
  }
  nearest_cmd->add_option("--k", cfg.k, "Number of neighbours")->check(CLI::NonNegativeNumber);
  radius_cmd->add_option("--radius-m", cfg.radius_m, "Radius in metres")->required()->check(CLI::NonNegativeNumber);

  auto* sample_cmd = app.add_subcommand("sample", "Seeded uniform sample of entities of an external class");
  add_store_inputs(sample_cmd, cfg);
  sample_cmd->add_option("--class", cfg.class_name, "External class: Q556186, wd:Q556186, dbo:Tower, ...")
      ->required();
  sample_cmd->add_option("--n", cfg.n, "Sample size")->check(CLI::NonNegativeNumber);
  sample_cmd->add_option("--seed", cfg.seed, "Random seed")->required();
  add_format(sample_cmd, cfg, false);

  auto* validate_cmd = app.add_subcommand("validate", "Reparse a KG file and check its invariants");
  validate_cmd->add_option("--kg", cfg.kg, "Knowledge graph Turtle file")->required()->check(CLI::ExistingFile);
  validate_cmd->add_option("--ontology", cfg.ontology, "Ontology Turtle file")->check(CLI::ExistingFile);
  add_format(validate_cmd, cfg, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (build_onto->parsed()) return cmd_build_ontology(cfg, out);
    if (build_kg_cmd->parsed()) return cmd_build_kg(cfg, out);
    if (stats_cmd->parsed()) return cmd_stats(cfg, out);
    if (nearest_cmd->parsed()) return cmd_query(cfg, true, out);
    if (radius_cmd->parsed()) return cmd_query(cfg, false, out);
    if (sample_cmd->parsed()) return cmd_sample(cfg, out);
    if (validate_cmd->parsed()) return cmd_validate(cfg, out, err);
  } catch (const std::exception& e) {
    err << "geokg: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"geokg"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace geokg::cli
