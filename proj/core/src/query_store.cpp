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

#include "geokg/query_store.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <tuple>

#include "geokg/error.hpp"
#include "geokg/rdf.hpp"
#include "geokg/turtle.hpp"

namespace geokg {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;
// Slack for floating-point error in pruning bounds; never affects which
// points qualify, only how early the search may stop.
constexpr double kBoundSlackM = 1e-6;
constexpr double kWindowSlackDeg = 1e-6;

bool closer(const Neighbor& a, const Neighbor& b) {
  return std::tie(a.distance_m, a.entity->id) < std::tie(b.distance_m, b.entity->id);
}

std::optional<NodeId> resource_id(std::string_view iri) {
  if (!iri.starts_with(ns::kResource)) return std::nullopt;
  const auto local = iri.substr(ns::kResource.size());
  NodeId id = 0;
  const auto* end = local.data() + local.size();
  const auto [ptr, ec] = std::from_chars(local.data(), end, id);
  if (local.empty() || ec != std::errc{} || ptr != end) return std::nullopt;
  return id;
}

std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % n;
  }
}

std::string expand_name(std::string_view name, std::string_view default_ns) {
  if (name.starts_with("http://") || name.starts_with("https://")) return std::string(name);
  if (name.find(':') != std::string_view::npos) {
    try {
      return PrefixTable::standard().expand(name);
    } catch (const ValidationError& e) {
      throw QueryError(e.what());
    }
  }
  return vocab::iri(default_ns, name);
}

}  // namespace

QueryStore QueryStore::load(std::istream& kg, std::istream& ontology, double cell_degrees) {
  Ontology onto = ontology_from_turtle(ontology);

  struct Pending {
    std::vector<std::string> types;
    std::optional<std::string> label;
    std::optional<std::string> geometry;
    std::string osm_link;
    std::optional<std::string> wkt;
  };
  std::unordered_map<std::string, Pending> subjects;
  parse_turtle(kg, [&](Triple&& t) {
    if (!t.subject.is_iri()) return;
    const std::string& p = t.predicate.value;
    if (p == vocab::kRdfType) {
      if (t.object.is_iri() && t.object.value.starts_with(ns::kSchema)) {
        subjects[t.subject.value].types.push_back(std::move(t.object.value));
      }
    } else if (p == vocab::kRdfsLabel) {
      subjects[t.subject.value].label = std::move(t.object.value);
    } else if (p == vocab::kSpatialObject) {
      subjects[t.subject.value].geometry = std::move(t.object.value);
    } else if (p == vocab::kOsmLink) {
      subjects[t.subject.value].osm_link = std::move(t.object.value);
    } else if (p == vocab::kAsWkt) {
      subjects[t.subject.value].wkt = std::move(t.object.value);
    }
  });

  std::vector<StoredEntity> entities;
  for (auto& [iri, s] : subjects) {
    if (s.types.empty()) continue;
    const auto id = resource_id(iri);
    if (!id) throw ValidationError("entity <" + iri + "> is not a wkg:{node id} resource");
    if (!s.geometry) throw ValidationError("entity <" + iri + "> has no wkgs:spatialObject geometry");
    const auto g = subjects.find(*s.geometry);
    if (g == subjects.end() || !g->second.wkt) {
      throw ValidationError("entity <" + iri + "> references geometry <" + *s.geometry +
                            "> which has no geo:asWKT");
    }
    const auto point = parse_wkt_point(*g->second.wkt);
    if (!point) {
      throw ValidationError("geometry <" + *s.geometry + "> has an invalid WKT point '" + *g->second.wkt + "'");
    }
    StoredEntity e;
    e.id = *id;
    std::sort(s.types.begin(), s.types.end());
    s.types.erase(std::unique(s.types.begin(), s.types.end()), s.types.end());
    e.types = std::move(s.types);
    e.label = std::move(s.label);
    e.osm_link = std::move(s.osm_link);
    e.point = *point;
    entities.push_back(std::move(e));
  }
  return from_entities(std::move(entities), std::move(onto), cell_degrees);
}

QueryStore QueryStore::load_files(const std::filesystem::path& kg, const std::filesystem::path& ontology,
                                  double cell_degrees) {
  std::ifstream kin(kg, std::ios::binary);
  if (!kin) throw Error("cannot open knowledge graph '" + kg.string() + "'");
  std::ifstream oin(ontology, std::ios::binary);
  if (!oin) throw Error("cannot open ontology '" + ontology.string() + "'");
  return load(kin, oin, cell_degrees);
}

QueryStore QueryStore::from_entities(std::vector<StoredEntity> entities, Ontology ontology, double cell_degrees) {
  const double rows = 180.0 / cell_degrees;
  if (!(cell_degrees > 0.0) || std::abs(rows - std::round(rows)) > 1e-6 ||
      std::abs(360.0 / cell_degrees - std::round(360.0 / cell_degrees)) > 1e-6) {
    throw ValidationError("grid cell size must divide 180 degrees evenly");
  }
  QueryStore store;
  store.entities_ = std::move(entities);
  store.ontology_ = std::move(ontology);
  store.cell_deg_ = cell_degrees;
  store.rows_ = static_cast<std::int64_t>(std::llround(rows));
  store.cols_ = 2 * store.rows_;
  std::sort(store.entities_.begin(), store.entities_.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  store.build_indexes();
  return store;
}

void QueryStore::build_indexes() {
  for (std::uint32_t pos = 0; pos < entities_.size(); ++pos) {
    const auto& e = entities_[pos];
    if (!by_id_.emplace(e.id, pos).second) {
      throw ValidationError("entity wkg:" + std::to_string(e.id) + " appears twice");
    }
    if (e.label) by_label_[*e.label].push_back(pos);
    const auto cell = cell_of(e.point);
    for (const auto& t : e.types) {
      auto& idx = by_class_[t];
      idx.members.push_back(pos);
      idx.cells[cell].push_back(pos);
    }
  }
  for (const auto& c : ontology_.classes()) {
    for (const auto& eq : c.equivalents) equivalent_classes_[eq.iri()].push_back(c.iri());
  }
  for (auto& [ext, classes] : equivalent_classes_) std::sort(classes.begin(), classes.end());
}

const StoredEntity* QueryStore::find(NodeId id) const {
  const auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &entities_[it->second];
}

std::vector<const StoredEntity*> QueryStore::find_by_label(std::string_view label) const {
  std::vector<const StoredEntity*> out;
  if (const auto it = by_label_.find(std::string(label)); it != by_label_.end()) {
    for (const auto pos : it->second) out.push_back(&entities_[pos]);
  }
  return out;
}

std::string QueryStore::resolve_class(std::string_view name) const {
  std::string iri = expand_name(name, ns::kSchema);
  if (by_class_.contains(iri)) return iri;
  if (iri.starts_with(ns::kSchema) && ontology_.find_class(std::string_view(iri).substr(ns::kSchema.size()))) {
    return iri;
  }
  throw QueryError("unknown class '" + std::string(name) + "'");
}

std::string QueryStore::resolve_external_class(std::string_view name) const {
  std::string iri;
  if (name.starts_with("http://") || name.starts_with("https://") || name.find(':') != std::string_view::npos) {
    iri = expand_name(name, ns::kWikidata);
  } else {
    const bool wikidata = name.size() > 1 && name.front() == 'Q' &&
                          std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; });
    iri = vocab::iri(wikidata ? ns::kWikidata : ns::kDbpedia, name);
  }
  if (!equivalent_classes_.contains(iri)) {
    throw QueryError("no ontology class is equivalent to '" + std::string(name) + "'");
  }
  return iri;
}

const QueryStore::ClassIndex& QueryStore::class_index(std::string_view class_name) const {
  static const ClassIndex kEmpty;
  const std::string iri = resolve_class(class_name);
  const auto it = by_class_.find(iri);
  return it == by_class_.end() ? kEmpty : it->second;
}

std::vector<const StoredEntity*> QueryStore::members(std::string_view class_name) const {
  std::vector<const StoredEntity*> out;
  for (const auto pos : class_index(class_name).members) out.push_back(&entities_[pos]);
  return out;
}

QueryStore::ResolvedAnchor QueryStore::resolve_anchor(const Anchor& anchor) const {
  if (const auto* p = std::get_if<SpatialPoint>(&anchor)) return {*p, std::nullopt};
  const auto& label = std::get<std::string>(anchor);
  const auto hits = find_by_label(label);
  if (hits.empty()) throw QueryError("no entity is labelled '" + label + "'");
  if (hits.size() > 1) {
    std::string ids;
    for (const auto* e : hits) ids += " wkg:" + std::to_string(e->id);
    throw QueryError("label '" + label + "' is ambiguous; candidates:" + ids);
  }
  return {hits.front()->point, hits.front()->id};
}

std::int64_t QueryStore::row_of(double lat) const {
  const auto r = static_cast<std::int64_t>(std::floor((lat + 90.0) / cell_deg_));
  return std::clamp<std::int64_t>(r, 0, rows_ - 1);
}

std::int64_t QueryStore::col_of(double lon) const {
  const auto c = static_cast<std::int64_t>(std::floor((lon + 180.0) / cell_deg_));
  return std::clamp<std::int64_t>(c, 0, cols_ - 1);
}

std::uint64_t QueryStore::cell_of(const SpatialPoint& p) const {
  return static_cast<std::uint64_t>(row_of(p.lat)) * static_cast<std::uint64_t>(cols_) +
         static_cast<std::uint64_t>(col_of(p.lon));
}

std::vector<Neighbor> QueryStore::nearest_k(const Anchor& anchor, std::string_view class_name,
                                            std::size_t k) const {
  const auto& idx = class_index(class_name);
  const auto a = resolve_anchor(anchor);
  if (k == 0 || idx.members.empty()) return {};

  std::vector<Neighbor> heap;  // max-heap on (distance, id): front is the current k-th best
  auto offer = [&](std::uint32_t pos) {
    const auto& e = entities_[pos];
    if (a.exclude && e.id == *a.exclude) return;
    const Neighbor n{&e, haversine_m(a.point, e.point)};
    if (heap.size() < k) {
      heap.push_back(n);
      std::push_heap(heap.begin(), heap.end(), closer);
    } else if (closer(n, heap.front())) {
      std::pop_heap(heap.begin(), heap.end(), closer);
      heap.back() = n;
      std::push_heap(heap.begin(), heap.end(), closer);
    }
  };

  const std::int64_t r0 = row_of(a.point.lat);
  const std::int64_t c0 = col_of(a.point.lon);
  const double cos_lat = std::cos(a.point.lat * kDegToRad);
  const std::size_t cell_budget = 64 + 4 * idx.members.size();
  std::size_t cells_visited = 0;
  std::size_t members_seen = 0;

  auto visit = [&](std::int64_t row, std::int64_t col) {
    if (row < 0 || row >= rows_) return;
    ++cells_visited;
    col = ((col % cols_) + cols_) % cols_;
    const auto it = idx.cells.find(static_cast<std::uint64_t>(row) * static_cast<std::uint64_t>(cols_) +
                                   static_cast<std::uint64_t>(col));
    if (it == idx.cells.end()) return;
    members_seen += it->second.size();
    for (const auto pos : it->second) offer(pos);
  };

  for (std::int64_t r = 0;; ++r) {
    if (2 * r + 1 >= cols_ || cells_visited > cell_budget) {
      heap.clear();
      for (const auto pos : idx.members) offer(pos);
      break;
    }
    for (std::int64_t dr = -r; dr <= r; ++dr) {
      if (dr == -r || dr == r) {
        for (std::int64_t dc = -r; dc <= r; ++dc) visit(r0 + dr, c0 + dc);
      } else {
        visit(r0 + dr, c0 - r);
        visit(r0 + dr, c0 + r);
      }
    }
    if (members_seen == idx.members.size()) break;
    if (heap.size() < k) continue;

    // Lower bound on the distance to any point outside the visited window.
    constexpr double kInf = std::numeric_limits<double>::infinity();
    const double lat_south = -90.0 + static_cast<double>(r0 - r) * cell_deg_;
    const double lat_north = -90.0 + static_cast<double>(r0 + r + 1) * cell_deg_;
    const double lb_south = r0 - r <= 0 ? kInf : (a.point.lat - lat_south) * kDegToRad * kEarthRadiusM;
    const double lb_north = r0 + r + 1 >= rows_ ? kInf : (lat_north - a.point.lat) * kDegToRad * kEarthRadiusM;
    const double lon_west = -180.0 + static_cast<double>(c0 - r) * cell_deg_;
    const double lon_east = -180.0 + static_cast<double>(c0 + r + 1) * cell_deg_;
    const double dlon = std::min({a.point.lon - lon_west, lon_east - a.point.lon, 90.0});
    const double lb_lon = std::asin(std::clamp(cos_lat * std::sin(dlon * kDegToRad), 0.0, 1.0)) * kEarthRadiusM;
    const double bound = std::min({lb_south, lb_north, lb_lon}) - kBoundSlackM;
    if (heap.front().distance_m < bound) break;
  }

  std::sort_heap(heap.begin(), heap.end(), closer);
  return heap;
}

std::vector<Neighbor> QueryStore::nearest_k_scan(const Anchor& anchor, std::string_view class_name,
                                                 std::size_t k) const {
  const auto& idx = class_index(class_name);
  const auto a = resolve_anchor(anchor);
  std::vector<Neighbor> all;
  for (const auto pos : idx.members) {
    const auto& e = entities_[pos];
    if (a.exclude && e.id == *a.exclude) continue;
    all.push_back({&e, haversine_m(a.point, e.point)});
  }
  std::sort(all.begin(), all.end(), closer);
  if (all.size() > k) all.resize(k);
  return all;
}

std::vector<Neighbor> QueryStore::within_radius(const SpatialPoint& center, double radius_m,
                                                std::string_view class_name) const {
  if (!(radius_m >= 0.0)) throw QueryError("radius must be non-negative");
  const auto& idx = class_index(class_name);
  std::vector<Neighbor> out;
  auto consider = [&](std::uint32_t pos) {
    const auto& e = entities_[pos];
    const double d = haversine_m(center, e.point);
    if (d <= radius_m) out.push_back({&e, d});
  };

  const double angular = radius_m / kEarthRadiusM;
  const double dlat = angular * kRadToDeg + kWindowSlackDeg;
  const double lat_min = center.lat - dlat;
  const double lat_max = center.lat + dlat;
  bool full_lon = angular >= std::numbers::pi || lat_min <= -90.0 || lat_max >= 90.0;
  double dlon = 180.0;
  if (!full_lon) {
    const double s = std::sin(angular) / std::cos(center.lat * kDegToRad);
    if (s >= 1.0) {
      full_lon = true;
    } else {
      dlon = std::asin(s) * kRadToDeg + kWindowSlackDeg;
    }
  }
  const std::int64_t row_lo = row_of(std::max(lat_min, -90.0));
  const std::int64_t row_hi = row_of(std::min(lat_max, 90.0));
  std::int64_t col_lo = 0;
  std::int64_t col_hi = cols_ - 1;
  if (!full_lon) {
    col_lo = static_cast<std::int64_t>(std::floor((center.lon - dlon + 180.0) / cell_deg_));
    col_hi = static_cast<std::int64_t>(std::floor((center.lon + dlon + 180.0) / cell_deg_));
    if (col_hi - col_lo + 1 >= cols_) {
      col_lo = 0;
      col_hi = cols_ - 1;
    }
  }
  const auto window_cells = static_cast<std::size_t>((row_hi - row_lo + 1) * (col_hi - col_lo + 1));
  if (window_cells > 64 + 4 * idx.members.size()) {
    for (const auto pos : idx.members) consider(pos);
  } else {
    for (std::int64_t row = row_lo; row <= row_hi; ++row) {
      for (std::int64_t c = col_lo; c <= col_hi; ++c) {
        const std::int64_t col = ((c % cols_) + cols_) % cols_;
        const auto it = idx.cells.find(static_cast<std::uint64_t>(row) * static_cast<std::uint64_t>(cols_) +
                                       static_cast<std::uint64_t>(col));
        if (it == idx.cells.end()) continue;
        for (const auto pos : it->second) consider(pos);
      }
    }
  }
  std::sort(out.begin(), out.end(), closer);
  return out;
}

std::vector<Neighbor> QueryStore::within_radius_scan(const SpatialPoint& center, double radius_m,
                                                     std::string_view class_name) const {
  if (!(radius_m >= 0.0)) throw QueryError("radius must be non-negative");
  std::vector<Neighbor> out;
  for (const auto pos : class_index(class_name).members) {
    const auto& e = entities_[pos];
    const double d = haversine_m(center, e.point);
    if (d <= radius_m) out.push_back({&e, d});
  }
  std::sort(out.begin(), out.end(), closer);
  return out;
}

std::vector<const StoredEntity*> QueryStore::external_population(std::string_view external_class) const {
  const auto& classes = equivalent_classes_.find(resolve_external_class(external_class))->second;
  std::set<std::uint32_t> positions;
  for (const auto& c : classes) {
    if (const auto it = by_class_.find(c); it != by_class_.end()) {
      positions.insert(it->second.members.begin(), it->second.members.end());
    }
  }
  std::vector<const StoredEntity*> out;
  out.reserve(positions.size());
  for (const auto pos : positions) out.push_back(&entities_[pos]);
  return out;
}

std::vector<SampleRow> QueryStore::sample(std::string_view external_class, std::size_t n,
                                          std::uint64_t seed) const {
  const std::string ext = resolve_external_class(external_class);
  const auto& classes = equivalent_classes_.find(ext)->second;
  auto population = external_population(ext);
  const std::size_t m = std::min(n, population.size());
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < m; ++i) {
    const auto j = i + bounded_draw(rng, population.size() - i);
    std::swap(population[i], population[j]);
  }
  std::vector<SampleRow> rows;
  rows.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto* e = population[i];
    const auto type = std::find_first_of(e->types.begin(), e->types.end(), classes.begin(), classes.end());
    rows.push_back({e->id, *type, e->osm_link, e->label.value_or("")});
  }
  return rows;
}

}  // namespace geokg
