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

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

#include "geokg/ontology.hpp"

namespace geokg {

struct ValidationReport {
  std::size_t triples = 0;
  std::size_t entities = 0;
  std::size_t geometries = 0;
  std::vector<std::string> violations;

  bool ok() const noexcept { return violations.empty(); }
};

/// Reparses a KG document and checks its shape: one WKT point geometry per
/// entity (longitude first, in range), geometry nodes owned by exactly one
/// entity, osmLink pointing at the entity's node. With an ontology, also
/// checks that every class and wkgs: predicate used is declared.
/// Syntax errors propagate as ParseError.
ValidationReport validate_kg(std::istream& kg, const Ontology* ontology = nullptr);

}  // namespace geokg
