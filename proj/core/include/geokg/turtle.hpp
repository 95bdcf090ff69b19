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

// Turtle serialization and parsing.
//
// Writer layout: one predicate-object pair per line, subjects separated by a
// blank line, `a` for rdf:type. The layout is stable so documents can be
// diffed and counted line by line.

#include <functional>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geokg/prefixes.hpp"
#include "geokg/rdf.hpp"

namespace geokg {

/// Escapes a literal's lexical form for a double-quoted Turtle string.
/// Throws ValidationError if `text` is not valid UTF-8.
std::string escape_turtle_string(std::string_view text);

/// Renders a term, compacting IRIs through `prefixes` where the local part allows it.
std::string format_term(const Term& term, const PrefixTable& prefixes);

void write_prefix_block(std::ostream& out, const PrefixTable& prefixes);

/// Writes all triples of one subject. `triples` must share the subject;
/// they are emitted in the order given.
void write_subject_block(std::ostream& out, std::span<const Triple> triples,
                         const PrefixTable& prefixes);

/// Predicate order inside a subject block: rdf:type, rdfs:label, then by IRI.
bool predicate_order_less(const Triple& a, const Triple& b);

/// Subject order: wkg:{id} and wkg:geo{id} by numeric id (entity first), then
/// every other subject by IRI.
bool subject_order_less(const Term& a, const Term& b);

/// Canonically sorts the triples and writes a complete document. Output is
/// byte-identical for any permutation of the same multiset.
void serialize_turtle(std::ostream& out, std::vector<Triple> triples, const PrefixTable& prefixes);
std::string serialize_turtle(std::vector<Triple> triples, const PrefixTable& prefixes);

using TripleSink = std::function<void(Triple&&)>;

/// Streaming Turtle parser. Supports prefix/base directives (both syntaxes),
/// IRIs, prefixed names, blank node labels and `[...]` property lists, all
/// string forms, language tags, datatypes, numeric and boolean shorthands.
/// Collections are rejected. Throws ParseError with the byte offset.
/// Prefixes declared by the document are written into `declared` if non-null.
void parse_turtle(std::istream& in, const TripleSink& sink, PrefixTable* declared = nullptr);
std::vector<Triple> parse_turtle(std::string_view document, PrefixTable* declared = nullptr);

}  // namespace geokg
