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

#include "geokg/prefixes.hpp"

#include <algorithm>

#include "geokg/error.hpp"

namespace geokg {

PrefixTable::PrefixTable(std::vector<std::pair<std::string, std::string>> bindings) {
  for (auto& [p, n] : bindings) bind(std::move(p), std::move(n));
}

const PrefixTable& PrefixTable::standard() {
  static const PrefixTable table({
      {"dbo", std::string(ns::kDbpedia)},
      {"dcterms", std::string(ns::kDcterms)},
      {"geo", std::string(ns::kGeo)},
      {"osmn", std::string(ns::kOsmNode)},
      {"owl", std::string(ns::kOwl)},
      {"rdf", std::string(ns::kRdf)},
      {"rdfs", std::string(ns::kRdfs)},
      {"sf", std::string(ns::kSf)},
      {"uom", std::string(ns::kUom)},
      {"wd", std::string(ns::kWikidata)},
      {"wkg", std::string(ns::kResource)},
      {"wkgs", std::string(ns::kSchema)},
  });
  return table;
}

void PrefixTable::bind(std::string prefix, std::string namespace_iri) {
  auto it = std::find_if(bindings_.begin(), bindings_.end(),
                         [&](const auto& b) { return b.first == prefix; });
  if (it != bindings_.end()) {
    it->second = std::move(namespace_iri);
  } else {
    bindings_.emplace_back(std::move(prefix), std::move(namespace_iri));
  }
}

bool PrefixTable::contains(std::string_view prefix) const {
  return std::any_of(bindings_.begin(), bindings_.end(),
                     [&](const auto& b) { return b.first == prefix; });
}

const std::string& PrefixTable::namespace_of(std::string_view prefix) const {
  for (const auto& [p, n] : bindings_) {
    if (p == prefix) return n;
  }
  throw ValidationError("unknown prefix '" + std::string(prefix) + "'");
}

std::string PrefixTable::expand(std::string_view prefixed_name) const {
  const auto colon = prefixed_name.find(':');
  if (colon == std::string_view::npos) {
    throw ValidationError("'" + std::string(prefixed_name) + "' is not a prefixed name");
  }
  return namespace_of(prefixed_name.substr(0, colon)) + std::string(prefixed_name.substr(colon + 1));
}

std::optional<std::pair<std::string_view, std::string_view>> PrefixTable::split(
    std::string_view iri) const {
  const std::pair<std::string, std::string>* best = nullptr;
  for (const auto& b : bindings_) {
    if (iri.starts_with(b.second) && (best == nullptr || b.second.size() > best->second.size())) {
      best = &b;
    }
  }
  if (best == nullptr) return std::nullopt;
  return std::pair{std::string_view(best->first), iri.substr(best->second.size())};
}

}  // namespace geokg
