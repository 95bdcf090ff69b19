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

#include "geokg/osm_corpus.hpp"

#include <expat.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <exception>
#include <sstream>

#include "geokg/error.hpp"

namespace geokg {

namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

const char* find_attribute(const XML_Char** attrs, const char* name) {
  for (std::size_t i = 0; attrs[i] != nullptr; i += 2) {
    if (std::strcmp(attrs[i], name) == 0) return attrs[i + 1];
  }
  return nullptr;
}

std::string node_label(std::optional<NodeId> id) {
  return id ? "node " + std::to_string(*id) : std::string("node (unknown id)");
}

NodeId parse_node_id(const char* text) {
  const std::string_view s = trim(text);
  NodeId id = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, id);
  if (s.empty() || ec != std::errc{} || ptr != end || id == 0) {
    throw ValidationError("node id '" + std::string(text) + "' is not a positive integer");
  }
  return id;
}

double parse_degrees(const char* text, const char* what, NodeId id, double limit) {
  const std::string_view s = trim(text);
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw ValidationError(node_label(id) + ": " + what + " '" + text + "' is not a number");
  }
  if (v < -limit || v > limit) {
    throw ValidationError(node_label(id) + ": " + what + " " + std::string(s) +
                          " outside [-" + std::to_string(static_cast<int>(limit)) + ", " +
                          std::to_string(static_cast<int>(limit)) + "]");
  }
  return v;
}

}  // namespace

const std::string* OsmNode::find_tag(std::string_view key) const {
  for (const auto& t : tags) {
    if (t.key == key) return &t.value;
  }
  return nullptr;
}

bool NodeIdSet::insert(NodeId id) {
  auto& page = pages_[id >> kPageBits];
  if (page.empty()) page.resize((std::size_t{1} << kPageBits) / 64);
  const std::size_t bit = id & ((NodeId{1} << kPageBits) - 1);
  auto& word = page[bit / 64];
  const std::uint64_t mask = std::uint64_t{1} << (bit % 64);
  if (word & mask) return false;
  word |= mask;
  return true;
}

struct OsmXmlReader::State {
  XML_Parser parser = nullptr;
  std::deque<OsmNode> ready;
  std::optional<OsmNode> current;
  std::exception_ptr failure;
  NodeIdSet seen;
  int depth = 0;
  int node_depth = -1;

  void fail(std::exception_ptr e) {
    if (!failure) failure = std::move(e);
    XML_StopParser(parser, XML_FALSE);
  }

  void start(const XML_Char* name, const XML_Char** attrs) {
    ++depth;
    if (std::strcmp(name, "node") == 0 && !current) {
      const char* id_text = find_attribute(attrs, "id");
      if (id_text == nullptr) throw ValidationError("node element is missing the 'id' attribute");
      OsmNode node;
      node.id = parse_node_id(id_text);
      const char* lat = find_attribute(attrs, "lat");
      const char* lon = find_attribute(attrs, "lon");
      if (lat == nullptr) throw ValidationError(node_label(node.id) + ": missing 'lat' attribute");
      if (lon == nullptr) throw ValidationError(node_label(node.id) + ": missing 'lon' attribute");
      node.lat = parse_degrees(lat, "latitude", node.id, 90.0);
      node.lon = parse_degrees(lon, "longitude", node.id, 180.0);
      if (!seen.insert(node.id)) {
        throw ValidationError(node_label(node.id) + ": duplicate node id");
      }
      current = std::move(node);
      node_depth = depth;
    } else if (current && depth == node_depth + 1 && std::strcmp(name, "tag") == 0) {
      const char* k = find_attribute(attrs, "k");
      const char* v = find_attribute(attrs, "v");
      if (k == nullptr || v == nullptr) {
        throw ValidationError(node_label(current->id) + ": tag element without k/v attribute");
      }
      Tag tag{std::string(trim(k)), std::string(trim(v))};
      if (tag.key.empty()) throw ValidationError(node_label(current->id) + ": empty tag key");
      if (tag.value.empty()) {
        throw ValidationError(node_label(current->id) + ": empty value for key '" + tag.key + "'");
      }
      if (current->find_tag(tag.key) != nullptr) {
        throw ValidationError(node_label(current->id) + ": duplicate tag key '" + tag.key + "'");
      }
      current->tags.push_back(std::move(tag));
    }
  }

  void end() {
    if (current && depth == node_depth) {
      ready.push_back(std::move(*current));
      current.reset();
      node_depth = -1;
    }
    --depth;
  }

  static void XMLCALL on_start(void* self, const XML_Char* name, const XML_Char** attrs) {
    auto* s = static_cast<State*>(self);
    try {
      s->start(name, attrs);
    } catch (...) {
      s->fail(std::current_exception());
    }
  }

  static void XMLCALL on_end(void* self, const XML_Char*) { static_cast<State*>(self)->end(); }
};

OsmXmlReader::OsmXmlReader(std::istream& in, std::size_t chunk_size)
    : in_(in), buffer_(std::max<std::size_t>(chunk_size, 1)), state_(std::make_unique<State>()) {
  state_->parser = XML_ParserCreate(nullptr);
  if (state_->parser == nullptr) throw Error("unable to allocate XML parser");
  XML_SetUserData(state_->parser, state_.get());
  XML_SetElementHandler(state_->parser, &State::on_start, &State::on_end);
}

OsmXmlReader::~OsmXmlReader() {
  if (state_ && state_->parser != nullptr) XML_ParserFree(state_->parser);
}

std::optional<OsmNode> OsmXmlReader::next() {
  while (state_->ready.empty() && !finished_) {
    in_.read(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
    const auto got = static_cast<std::size_t>(in_.gcount());
    if (in_.bad()) throw Error("I/O error while reading OSM input");
    const bool last = got < buffer_.size();
    bytes_consumed_ += got;
    const auto status =
        XML_Parse(state_->parser, buffer_.data(), static_cast<int>(got), last ? XML_TRUE : XML_FALSE);
    if (state_->failure) {
      finished_ = true;
      std::rethrow_exception(state_->failure);
    }
    if (status != XML_STATUS_OK) {
      finished_ = true;
      const auto offset = XML_GetCurrentByteIndex(state_->parser);
      throw ParseError(std::string("malformed OSM XML: ") +
                           XML_ErrorString(XML_GetErrorCode(state_->parser)),
                       static_cast<std::uint64_t>(std::max<XML_Index>(offset, 0)));
    }
    if (last) finished_ = true;
  }
  if (state_->ready.empty()) return std::nullopt;
  OsmNode node = std::move(state_->ready.front());
  state_->ready.pop_front();
  return node;
}

std::vector<OsmNode> parse_osm_xml(std::istream& in) {
  OsmXmlReader reader(in);
  std::vector<OsmNode> nodes;
  while (auto n = reader.next()) nodes.push_back(std::move(*n));
  return nodes;
}

std::vector<OsmNode> parse_osm_xml(std::string_view document) {
  std::istringstream in{std::string(document)};
  return parse_osm_xml(in);
}

std::vector<OsmNode> filter_tagged(std::vector<OsmNode> nodes) {
  std::erase_if(nodes, [](const OsmNode& n) { return !n.tagged(); });
  return nodes;
}

}  // namespace geokg
