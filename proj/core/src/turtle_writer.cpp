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

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <sstream>
#include <tuple>

#include "geokg/error.hpp"
#include "geokg/turtle.hpp"

namespace geokg {

namespace {

// Length of the UTF-8 sequence starting at s[i], or 0 if it is malformed.
std::size_t utf8_sequence_length(std::string_view s, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) return 1;
  std::size_t len = 0;
  std::uint32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return 0;
  }
  if (i + len > s.size()) return 0;
  for (std::size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (b & 0x3F);
  }
  static constexpr std::uint32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return 0;
  return len;
}

bool is_local_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
         c == '-';
}

bool compactable_local(std::string_view local) {
  return !local.empty() && local.front() != '-' && std::all_of(local.begin(), local.end(), is_local_char);
}

std::string format_iri(std::string_view iri, const PrefixTable& prefixes) {
  if (auto parts = prefixes.split(iri); parts && compactable_local(parts->second)) {
    std::string out(parts->first);
    out.push_back(':');
    out.append(parts->second);
    return out;
  }
  for (const char c : iri) {
    const auto u = static_cast<unsigned char>(c);
    if (u <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' || c == '|' ||
        c == '^' || c == '`' || c == '\\') {
      throw ValidationError("IRI <" + std::string(iri) + "> contains a character Turtle cannot encode");
    }
  }
  for (std::size_t i = 0; i < iri.size();) {
    const auto n = utf8_sequence_length(iri, i);
    if (n == 0) throw ValidationError("IRI is not valid UTF-8");
    i += n;
  }
  std::string out;
  out.reserve(iri.size() + 2);
  out.push_back('<');
  out.append(iri);
  out.push_back('>');
  return out;
}

// Returns (rank, wkg id, geometry flag) for subject ordering.
std::tuple<int, std::uint64_t, int> subject_key(const Term& t) {
  if (t.is_iri() && t.value.starts_with(ns::kResource)) {
    std::string_view local = std::string_view(t.value).substr(ns::kResource.size());
    int geometry = 0;
    if (local.starts_with("geo")) {
      local.remove_prefix(3);
      geometry = 1;
    }
    std::uint64_t id = 0;
    const auto* end = local.data() + local.size();
    const auto [ptr, ec] = std::from_chars(local.data(), end, id);
    if (!local.empty() && ec == std::errc{} && ptr == end) return {0, id, geometry};
  }
  return {t.is_blank() ? 2 : 1, 0, 0};
}

int predicate_rank(const Term& p) {
  if (p.value == vocab::kRdfType) return 0;
  if (p.value == vocab::kRdfsLabel) return 1;
  return 2;
}

}  // namespace

std::string escape_turtle_string(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    const auto n = utf8_sequence_length(text, i);
    if (n == 0) {
      throw ValidationError("literal contains bytes that are not valid UTF-8 (offset " +
                            std::to_string(i) + ")");
    }
    if (n > 1) {
      out.append(text.substr(i, n));
      i += n;
      continue;
    }
    const char c = text[i++];
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20 || c == 0x7F) {
          static constexpr char kHex[] = "0123456789ABCDEF";
          const auto u = static_cast<unsigned char>(c);
          out += "\\u00";
          out.push_back(kHex[u >> 4]);
          out.push_back(kHex[u & 0xF]);
        } else {
          out.push_back(c);
        }
    }
  }
  return out;
}

std::string format_term(const Term& term, const PrefixTable& prefixes) {
  switch (term.kind) {
    case Term::Kind::kIri:
      return format_iri(term.value, prefixes);
    case Term::Kind::kBlank:
      return "_:" + term.value;
    case Term::Kind::kLiteral: {
      std::string out = "\"" + escape_turtle_string(term.value) + "\"";
      if (!term.language.empty()) {
        out += "@" + term.language;
      } else if (!term.datatype.empty() && term.datatype != vocab::iri(ns::kXsd, "string")) {
        out += "^^" + format_iri(term.datatype, prefixes);
      }
      return out;
    }
  }
  return {};
}

void write_prefix_block(std::ostream& out, const PrefixTable& prefixes) {
  for (const auto& [prefix, iri] : prefixes.bindings()) {
    out << "@prefix " << prefix << ": <" << iri << "> .\n";
  }
  out << '\n';
}

void write_subject_block(std::ostream& out, std::span<const Triple> triples,
                         const PrefixTable& prefixes) {
  if (triples.empty()) return;
  std::string block = format_term(triples.front().subject, prefixes);
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const auto& t = triples[i];
    block += i == 0 ? " " : "    ";
    block += t.predicate.value == vocab::kRdfType ? std::string("a") : format_term(t.predicate, prefixes);
    block += ' ';
    block += format_term(t.object, prefixes);
    block += i + 1 == triples.size() ? " .\n" : " ;\n";
  }
  block += '\n';
  out << block;
}

bool predicate_order_less(const Triple& a, const Triple& b) {
  const int ra = predicate_rank(a.predicate);
  const int rb = predicate_rank(b.predicate);
  if (ra != rb) return ra < rb;
  if (a.predicate != b.predicate) return a.predicate < b.predicate;
  return a.object < b.object;
}

bool subject_order_less(const Term& a, const Term& b) {
  const auto ka = subject_key(a);
  const auto kb = subject_key(b);
  if (ka != kb) return ka < kb;
  return a < b;
}

void serialize_turtle(std::ostream& out, std::vector<Triple> triples, const PrefixTable& prefixes) {
  std::sort(triples.begin(), triples.end(), [](const Triple& a, const Triple& b) {
    if (a.subject != b.subject) return subject_order_less(a.subject, b.subject);
    return predicate_order_less(a, b);
  });
  write_prefix_block(out, prefixes);
  std::size_t begin = 0;
  while (begin < triples.size()) {
    std::size_t end = begin + 1;
    while (end < triples.size() && triples[end].subject == triples[begin].subject) ++end;
    write_subject_block(out, std::span(triples).subspan(begin, end - begin), prefixes);
    begin = end;
  }
}

std::string serialize_turtle(std::vector<Triple> triples, const PrefixTable& prefixes) {
  std::ostringstream out;
  serialize_turtle(out, std::move(triples), prefixes);
  return out.str();
}

}  // namespace geokg
