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

#include "geokg/kg_builder.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <deque>
#include <fstream>
#include <future>
#include <map>
#include <queue>
#include <sstream>
#include <thread>

#include "geokg/alignment.hpp"
#include "geokg/error.hpp"
#include "geokg/naming.hpp"
#include "geokg/turtle.hpp"

namespace geokg {

namespace fs = std::filesystem;

std::string Entity::iri() const { return vocab::iri(ns::kResource, std::to_string(id)); }

std::string Entity::geometry_iri() const { return vocab::iri(ns::kResource, "geo" + std::to_string(id)); }

NodeMapping map_node(const OsmNode& node, const Ontology& onto) {
  NodeMapping result;
  std::vector<std::string> types;
  std::map<std::string, std::string> properties;
  std::optional<std::string> label;
  for (const auto& tag : node.tags) {
    if (tag.key == "name") {
      label = tag.value;
    } else if (const auto* sub = onto.class_for_tag(tag.key, tag.value)) {
      types.push_back(sub->local_name);
    } else if (const auto* top = onto.class_for_key(tag.key); top != nullptr && !is_categorical(tag.value)) {
      types.push_back(top->local_name);
    } else if (const auto* prop = onto.property_for_key(tag.key)) {
      properties[prop->local_name] = tag.value;
    } else {
      ++result.dropped_tags;
    }
  }
  if (types.empty()) {
    result.dropped_tags = node.tags.size();
    return result;
  }
  std::sort(types.begin(), types.end());
  types.erase(std::unique(types.begin(), types.end()), types.end());
  Entity e;
  e.id = node.id;
  e.types = std::move(types);
  e.properties.assign(properties.begin(), properties.end());
  e.label = std::move(label);
  e.point = SpatialPoint{node.lon, node.lat};
  result.entity = std::move(e);
  return result;
}

std::optional<Entity> node_to_entity(const OsmNode& node, const Ontology& onto) {
  return map_node(node, onto).entity;
}

std::vector<Triple> entity_to_triples(const Entity& e) {
  std::vector<Triple> out;
  out.reserve(triple_count(e));
  const Term s = Term::iri(e.iri());
  const Term geom = Term::iri(e.geometry_iri());
  const Term type = Term::iri(vocab::kRdfType);
  for (const auto& t : e.types) out.push_back({s, type, Term::iri(vocab::iri(ns::kSchema, t))});
  if (e.label) out.push_back({s, Term::iri(vocab::kRdfsLabel), Term::literal(*e.label)});
  for (const auto& [p, v] : e.properties) {
    out.push_back({s, Term::iri(vocab::iri(ns::kSchema, p)), Term::literal(v)});
  }
  out.push_back({s, Term::iri(vocab::kSpatialObject), geom});
  out.push_back({s, Term::iri(vocab::kOsmLink), Term::iri(vocab::iri(ns::kOsmNode, std::to_string(e.id)))});
  out.push_back({geom, type, Term::iri(vocab::kSfPoint)});
  out.push_back({geom, Term::iri(vocab::kAsWkt), Term::literal(format_wkt_point(e.point), vocab::kWktLiteral)});
  return out;
}

std::size_t triple_count(const Entity& e) noexcept {
  return e.types.size() + e.properties.size() + (e.label ? 1 : 0) + 4;
}

void serialize_kg(std::ostream& out, std::vector<Triple> triples, const PrefixTable& prefixes) {
  serialize_turtle(out, std::move(triples), prefixes);
}

std::string serialize_kg(std::vector<Triple> triples, const PrefixTable& prefixes) {
  return serialize_turtle(std::move(triples), prefixes);
}

std::string BuildReport::to_text() const {
  std::ostringstream out;
  out << "nodes_read\t" << nodes_read << '\n'
      << "nodes_tagged\t" << nodes_tagged << '\n'
      << "entities_emitted\t" << entities_emitted << '\n'
      << "triples_emitted\t" << triples_emitted << '\n'
      << "tags_dropped\t" << tags_dropped << '\n';
  return out.str();
}

std::string BuildReport::to_json() const {
  std::ostringstream out;
  out << "{\"nodes_read\":" << nodes_read << ",\"nodes_tagged\":" << nodes_tagged
      << ",\"entities_emitted\":" << entities_emitted << ",\"triples_emitted\":" << triples_emitted
      << ",\"tags_dropped\":" << tags_dropped << "}";
  return out.str();
}

namespace {

struct EntityBlock {
  NodeId id;
  std::string text;
};

struct BatchResult {
  std::vector<EntityBlock> blocks;
  BuildReport counts;
};

std::string render_entity(const Entity& e, const PrefixTable& prefixes) {
  auto triples = entity_to_triples(e);
  const auto geometry_begin = triples.end() - 2;
  std::sort(triples.begin(), geometry_begin, predicate_order_less);
  std::sort(geometry_begin, triples.end(), predicate_order_less);
  std::ostringstream out;
  write_subject_block(out, std::span<const Triple>(triples.data(), triples.size() - 2), prefixes);
  write_subject_block(out, std::span<const Triple>(triples.data() + triples.size() - 2, 2), prefixes);
  return out.str();
}

BatchResult map_batch(const std::vector<OsmNode>& nodes, const Ontology& onto) {
  BatchResult r;
  const auto& prefixes = PrefixTable::standard();
  for (const auto& node : nodes) {
    ++r.counts.nodes_read;
    if (!node.tagged()) continue;
    ++r.counts.nodes_tagged;
    auto m = map_node(node, onto);
    r.counts.tags_dropped += m.dropped_tags;
    if (!m.entity) continue;
    ++r.counts.entities_emitted;
    r.counts.triples_emitted += triple_count(*m.entity);
    r.blocks.push_back({node.id, render_entity(*m.entity, prefixes)});
  }
  return r;
}

// Spill files hold records of (id, length, bytes), ascending by id.
class RunFile {
 public:
  explicit RunFile(fs::path path) : path_(std::move(path)) {}
  RunFile(RunFile&& other) noexcept : path_(std::exchange(other.path_, {})) {}
  RunFile& operator=(RunFile&&) = delete;
  ~RunFile() {
    if (!path_.empty()) {
      std::error_code ec;
      fs::remove(path_, ec);
    }
  }
  const fs::path& path() const noexcept { return path_; }

 private:
  fs::path path_;
};

class RunReader {
 public:
  explicit RunReader(const fs::path& path) : in_(path, std::ios::binary) {
    if (!in_) throw Error("cannot reopen spill file '" + path.string() + "'");
    advance();
  }

  bool done() const noexcept { return done_; }
  const EntityBlock& current() const noexcept { return current_; }

  void advance() {
    std::uint64_t id = 0;
    std::uint32_t len = 0;
    if (!in_.read(reinterpret_cast<char*>(&id), sizeof id)) {
      done_ = true;
      return;
    }
    if (!in_.read(reinterpret_cast<char*>(&len), sizeof len)) throw Error("truncated spill file");
    current_.id = id;
    current_.text.resize(len);
    if (len > 0 && !in_.read(current_.text.data(), len)) throw Error("truncated spill file");
  }

 private:
  std::ifstream in_;
  EntityBlock current_;
  bool done_ = false;
};

class RunWriter {
 public:
  explicit RunWriter(const fs::path& path) : out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw Error("cannot create spill file '" + path.string() + "'");
  }
  void write(const EntityBlock& b) {
    const std::uint64_t id = b.id;
    const auto len = static_cast<std::uint32_t>(b.text.size());
    out_.write(reinterpret_cast<const char*>(&id), sizeof id);
    out_.write(reinterpret_cast<const char*>(&len), sizeof len);
    out_.write(b.text.data(), len);
  }
  void close() {
    out_.close();
    if (!out_) throw Error("failed writing spill file");
  }

 private:
  std::ofstream out_;
};

class RunSorter {
 public:
  explicit RunSorter(const KgBuildOptions& options)
      : options_(options),
        dir_(options.temp_dir.empty() ? fs::temp_directory_path() : options.temp_dir),
        stem_("geokg-" + std::to_string(::getpid()) + "-" + std::to_string(next_instance()) + "-") {}

  void add(std::vector<EntityBlock>&& blocks) {
    for (auto& b : blocks) {
      buffered_bytes_ += b.text.size() + sizeof(EntityBlock);
      buffer_.push_back(std::move(b));
    }
    if (buffered_bytes_ >= options_.run_bytes) spill();
  }

  void finish(std::ostream& out) {
    sort_buffer();
    if (runs_.empty()) {
      for (const auto& b : buffer_) out << b.text;
      buffer_.clear();
      return;
    }
    spill();
    while (runs_.size() > options_.merge_fan_in) {
      std::deque<RunFile> next;
      while (!runs_.empty()) {
        std::vector<RunFile> group;
        while (!runs_.empty() && group.size() < options_.merge_fan_in) {
          group.push_back(std::move(runs_.front()));
          runs_.pop_front();
        }
        RunFile merged(new_path());
        RunWriter writer(merged.path());
        merge(group, [&](const EntityBlock& b) { writer.write(b); });
        writer.close();
        next.push_back(std::move(merged));
      }
      runs_ = std::move(next);
    }
    std::vector<RunFile> all;
    for (auto& r : runs_) all.push_back(std::move(r));
    runs_.clear();
    merge(all, [&](const EntityBlock& b) { out << b.text; });
  }

 private:
  static std::size_t next_instance() {
    static std::atomic<std::size_t> counter{0};
    return counter++;
  }

  fs::path new_path() { return dir_ / (stem_ + std::to_string(file_counter_++) + ".run"); }

  void sort_buffer() {
    std::sort(buffer_.begin(), buffer_.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  }

  void spill() {
    if (buffer_.empty()) return;
    sort_buffer();
    RunFile run(new_path());
    RunWriter writer(run.path());
    for (const auto& b : buffer_) writer.write(b);
    writer.close();
    runs_.push_back(std::move(run));
    buffer_.clear();
    buffer_.shrink_to_fit();
    buffered_bytes_ = 0;
  }

  template <typename Emit>
  static void merge(const std::vector<RunFile>& runs, Emit&& emit) {
    std::vector<RunReader> readers;
    readers.reserve(runs.size());
    for (const auto& r : runs) readers.emplace_back(r.path());
    auto greater = [&](std::size_t a, std::size_t b) { return readers[a].current().id > readers[b].current().id; };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(greater)> heap(greater);
    for (std::size_t i = 0; i < readers.size(); ++i) {
      if (!readers[i].done()) heap.push(i);
    }
    while (!heap.empty()) {
      const auto i = heap.top();
      heap.pop();
      emit(readers[i].current());
      readers[i].advance();
      if (!readers[i].done()) heap.push(i);
    }
  }

  const KgBuildOptions& options_;
  fs::path dir_;
  std::string stem_;
  std::size_t file_counter_ = 0;
  std::vector<EntityBlock> buffer_;
  std::size_t buffered_bytes_ = 0;
  std::deque<RunFile> runs_;
};

void accumulate(BuildReport& total, const BuildReport& part) {
  total.nodes_read += part.nodes_read;
  total.nodes_tagged += part.nodes_tagged;
  total.entities_emitted += part.entities_emitted;
  total.triples_emitted += part.triples_emitted;
  total.tags_dropped += part.tags_dropped;
}

fs::path temporary_sibling(const fs::path& target) {
  return target.parent_path() / (target.filename().string() + ".partial");
}

}  // namespace

BuildReport build_kg(std::istream& osm_xml, const Ontology& onto, std::ostream& out,
                     const KgBuildOptions& options) {
  const std::size_t threads =
      options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  const std::size_t batch_nodes = std::max<std::size_t>(options.batch_nodes, 1);

  BuildReport report;
  RunSorter sorter(options);
  std::deque<std::future<BatchResult>> pending;
  auto collect = [&](BatchResult&& r) {
    accumulate(report, r.counts);
    sorter.add(std::move(r.blocks));
  };

  OsmXmlReader reader(osm_xml);
  std::vector<OsmNode> batch;
  batch.reserve(batch_nodes);
  auto dispatch = [&] {
    if (batch.empty()) return;
    if (threads <= 1) {
      collect(map_batch(batch, onto));
    } else {
      if (pending.size() >= threads) {
        collect(pending.front().get());
        pending.pop_front();
      }
      pending.push_back(std::async(std::launch::async,
                                   [nodes = std::move(batch), &onto] { return map_batch(nodes, onto); }));
    }
    batch = {};
    batch.reserve(batch_nodes);
  };

  try {
    while (auto node = reader.next()) {
      batch.push_back(std::move(*node));
      if (batch.size() >= batch_nodes) dispatch();
    }
    dispatch();
    while (!pending.empty()) {
      collect(pending.front().get());
      pending.pop_front();
    }
  } catch (...) {
    for (auto& f : pending) f.wait();
    throw;
  }

  write_prefix_block(out, PrefixTable::standard());
  sorter.finish(out);
  out.flush();
  if (!out) throw Error("failed writing knowledge graph output");
  return report;
}

BuildReport build_kg_files(const fs::path& osm_xml, const fs::path& ontology_ttl, const fs::path& out_dir,
                           const KgBuildOptions& options) {
  const Ontology onto = ontology_from_turtle_file(ontology_ttl.string());
  std::ifstream in(osm_xml, std::ios::binary);
  if (!in) throw Error("cannot open OSM input '" + osm_xml.string() + "'");
  fs::create_directories(out_dir);
  const fs::path target = out_dir / kKgFileName;
  const fs::path partial = temporary_sibling(target);
  try {
    std::ofstream out(partial, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot create '" + partial.string() + "'");
    KgBuildOptions opts = options;
    if (opts.temp_dir.empty()) opts.temp_dir = out_dir;
    const BuildReport report = build_kg(in, onto, out, opts);
    out.close();
    if (!out) throw Error("failed writing '" + partial.string() + "'");
    fs::rename(partial, target);
    return report;
  } catch (...) {
    std::error_code ec;
    fs::remove(partial, ec);
    throw;
  }
}

Ontology build_aligned_ontology(const fs::path& features_tsv, const fs::path& alignment_tsv) {
  const auto entries = load_map_features_file(features_tsv.string());
  const auto mappings = load_alignments_file(alignment_tsv.string());
  return attach_equivalences(build_ontology(entries), mappings);
}

BuildReport run_pipeline(const fs::path& osm_xml, const fs::path& features_tsv, const fs::path& alignment_tsv,
                         const fs::path& out_dir, const KgBuildOptions& options) {
  const Ontology onto = build_aligned_ontology(features_tsv, alignment_tsv);
  std::ifstream in(osm_xml, std::ios::binary);
  if (!in) throw Error("cannot open OSM input '" + osm_xml.string() + "'");
  fs::create_directories(out_dir);
  const fs::path onto_target = out_dir / kOntologyFileName;
  const fs::path kg_target = out_dir / kKgFileName;
  const fs::path onto_partial = temporary_sibling(onto_target);
  const fs::path kg_partial = temporary_sibling(kg_target);
  try {
    {
      std::ofstream out(onto_partial, std::ios::binary | std::ios::trunc);
      if (!out) throw Error("cannot create '" + onto_partial.string() + "'");
      serialize_ontology(out, onto);
      out.close();
      if (!out) throw Error("failed writing '" + onto_partial.string() + "'");
    }
    BuildReport report;
    {
      std::ofstream out(kg_partial, std::ios::binary | std::ios::trunc);
      if (!out) throw Error("cannot create '" + kg_partial.string() + "'");
      KgBuildOptions opts = options;
      if (opts.temp_dir.empty()) opts.temp_dir = out_dir;
      report = build_kg(in, onto, out, opts);
      out.close();
      if (!out) throw Error("failed writing '" + kg_partial.string() + "'");
    }
    fs::rename(onto_partial, onto_target);
    fs::rename(kg_partial, kg_target);
    return report;
  } catch (...) {
    std::error_code ec;
    fs::remove(onto_partial, ec);
    fs::remove(kg_partial, ec);
    throw;
  }
}

}  // namespace geokg
