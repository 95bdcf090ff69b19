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

#include "geokg/naming.hpp"

#include <algorithm>
#include <array>
#include <vector>

#include "geokg/error.hpp"

namespace geokg {

namespace {

bool is_separator(char c) { return c == '_' || c == ':' || c == '-' || c == ' '; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
char to_lower(char c) { return is_upper(c) ? static_cast<char>(c - 'A' + 'a') : c; }
char to_upper(char c) { return is_lower(c) ? static_cast<char>(c - 'a' + 'A') : c; }

std::vector<std::string_view> split_segments(std::string_view token) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  auto flush = [&](std::size_t end) {
    if (end > start) out.push_back(token.substr(start, end - start));
  };
  for (std::size_t i = 0; i < token.size(); ++i) {
    const char c = token[i];
    if (is_separator(c)) {
      flush(i);
      start = i + 1;
    } else if (i > start && is_upper(c)) {
      flush(i);
      start = i;
    }
  }
  flush(token.size());
  return out;
}

std::string camel(std::string_view token, bool upper_first) {
  const auto segments = split_segments(token);
  if (segments.empty()) {
    throw ValidationError("'" + std::string(token) + "' is empty after removing separators");
  }
  std::string out;
  out.reserve(token.size());
  for (const auto seg : segments) {
    const bool first = out.empty();
    const bool upper = first ? upper_first : true;
    out.push_back(upper ? to_upper(seg.front()) : to_lower(seg.front()));
    for (std::size_t i = 1; i < seg.size(); ++i) out.push_back(to_lower(seg[i]));
  }
  const bool head_ok = upper_first ? is_upper(out.front()) : is_lower(out.front());
  const bool body_ok = std::all_of(out.begin(), out.end(), [](char c) {
    return is_lower(c) || is_upper(c) || is_digit(c);
  });
  if (!head_ok || !body_ok) {
    throw ValidationError("'" + std::string(token) + "' does not convert to a valid identifier");
  }
  return out;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) { return to_lower(x) == to_lower(y); });
}

}  // namespace

std::string to_upper_camel(std::string_view token) { return camel(token, true); }

std::string to_lower_camel(std::string_view token) { return camel(token, false); }

bool is_numeric_literal(std::string_view v) {
  std::size_t i = 0;
  if (i < v.size() && (v[i] == '+' || v[i] == '-')) ++i;
  std::size_t int_digits = 0;
  while (i < v.size() && is_digit(v[i])) ++i, ++int_digits;
  std::size_t frac_digits = 0;
  if (i < v.size() && v[i] == '.') {
    ++i;
    while (i < v.size() && is_digit(v[i])) ++i, ++frac_digits;
  }
  return i == v.size() && int_digits + frac_digits > 0;
}

bool is_categorical(std::string_view value) {
  static constexpr std::array<std::string_view, 4> kBooleans = {"yes", "no", "true", "false"};
  for (const auto b : kBooleans) {
    if (iequals(value, b)) return false;
  }
  if (iequals(value, kUserDefinedValue)) return false;
  return !is_numeric_literal(value);
}

}  // namespace geokg
