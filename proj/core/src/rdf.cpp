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

#include "geokg/rdf.hpp"

namespace geokg::vocab {

std::string iri(std::string_view ns, std::string_view local) {
  std::string out(ns);
  out.append(local);
  return out;
}

const std::string kRdfType = iri(ns::kRdf, "type");
const std::string kRdfsLabel = iri(ns::kRdfs, "label");
const std::string kRdfsSubClassOf = iri(ns::kRdfs, "subClassOf");
const std::string kOwlClass = iri(ns::kOwl, "Class");
const std::string kOwlEquivalentClass = iri(ns::kOwl, "equivalentClass");
const std::string kOwlAnnotationProperty = iri(ns::kOwl, "AnnotationProperty");
const std::string kDctermsSource = iri(ns::kDcterms, "source");
const std::string kWkgObject = iri(ns::kSchema, "WKGObject");
const std::string kWkgProperty = iri(ns::kSchema, "WKGProperty");
const std::string kSpatialObject = iri(ns::kSchema, "spatialObject");
const std::string kOsmLink = iri(ns::kSchema, "osmLink");
const std::string kOsmKey = iri(ns::kSchema, "osmKey");
const std::string kOsmValue = iri(ns::kSchema, "osmValue");
const std::string kSfPoint = iri(ns::kSf, "Point");
const std::string kAsWkt = iri(ns::kGeo, "asWKT");
const std::string kWktLiteral = iri(ns::kGeo, "wktLiteral");

}  // namespace geokg::vocab
