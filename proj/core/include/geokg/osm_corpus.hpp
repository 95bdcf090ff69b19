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

#pragma once

// OSM corpus model and a streaming reader for OSM XML node dumps.

#include <cstdint>
#include <deque>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace geokg {

using NodeId = std::uint64_t;

struct Tag {
  std::string key;
  std::string value;

  friend bool operator==(const Tag&, const Tag&) = default;
};

/// A point-located OSM element. Tags are kept in document order; keys are unique.
struct OsmNode {
  NodeId id = 0;
  double lat = 0.0;
  double lon = 0.0;
  std::vector<Tag> tags;

  const std::string* find_tag(std::string_view key) const;
  bool tagged() const noexcept { return !tags.empty(); }

  friend bool operator==(const OsmNode&, const OsmNode&) = default;
};

/// Remembers node ids already seen. Dense id ranges cost one bit per id, held
/// in 64 Ki-id pages that are only allocated when touched.
class NodeIdSet {
 public:
  /// Returns false if `id` was already present.
  bool insert(NodeId id);
  std::size_t page_count() const noexcept { return pages_.size(); }

 private:
  static constexpr unsigned kPageBits = 16;
  std::unordered_map<NodeId, std::vector<std::uint64_t>> pages_;
};

/// Pull-style OSM XML reader. Only `<node>` elements are produced; ways,
/// relations, bounds and unknown attributes are skipped. The input is fed to
/// the XML parser in fixed-size chunks, so memory is bounded by the largest
/// node rather than the document.
class OsmXmlReader {
 public:
  static constexpr std::size_t kDefaultChunkSize = 64 * 1024;

  explicit OsmXmlReader(std::istream& in, std::size_t chunk_size = kDefaultChunkSize);
  ~OsmXmlReader();
  OsmXmlReader(const OsmXmlReader&) = delete;
  OsmXmlReader& operator=(const OsmXmlReader&) = delete;

  /// Next node in document order, or nullopt at end of input.
  /// Throws ParseError on malformed XML and ValidationError on bad node data.
  std::optional<OsmNode> next();

  std::uint64_t bytes_consumed() const noexcept { return bytes_consumed_; }

  struct State;

 private:
  std::istream& in_;
  std::vector<char> buffer_;
  std::unique_ptr<State> state_;
  std::uint64_t bytes_consumed_ = 0;
  bool finished_ = false;
};

/// Parses a whole document into memory. Convenience for small inputs and tests.
std::vector<OsmNode> parse_osm_xml(std::istream& in);
std::vector<OsmNode> parse_osm_xml(std::string_view document);

inline bool has_tags(const OsmNode& node) noexcept { return node.tagged(); }

/// Keeps the nodes that carry at least one tag, preserving order.
std::vector<OsmNode> filter_tagged(std::vector<OsmNode> nodes);

}  // namespace geokg
