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

#include <string>
#include <string_view>

namespace geokg {

/// Value used in map-features tables for free-form values.
inline constexpr std::string_view kUserDefinedValue = "user defined";

/// "cave_entrance" -> "CaveEntrance". Segments are split on '_', ':', '-', ' '
/// and on existing camel-case humps, then capitalized and lowercased, which
/// makes the conversion idempotent. Throws ValidationError when nothing is
/// left after splitting or the result is not an `[A-Z][A-Za-z0-9]*` identifier.
std::string to_upper_camel(std::string_view token);

/// "addr:country" -> "addrCountry". Same rules, first letter lowercased.
std::string to_lower_camel(std::string_view token);

/// False for boolean words, numeric literals and the "user defined" sentinel.
bool is_categorical(std::string_view value);

/// Decimal or integer literal, optional sign: "2962", "-3.5", "+0.25".
bool is_numeric_literal(std::string_view value);

}  // namespace geokg
