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

#include <optional>
#include <string>
#include <string_view>

namespace geokg {

inline constexpr double kEarthRadiusM = 6'371'000.0;

struct SpatialPoint {
  double lon = 0.0;
  double lat = 0.0;

  /// Throws ValidationError when lon is outside [-180, 180] or lat outside [-90, 90].
  static SpatialPoint checked(double lon, double lat);

  friend bool operator==(const SpatialPoint&, const SpatialPoint&) = default;
};

/// Great-circle distance in metres on a sphere of radius kEarthRadiusM.
double haversine_m(const SpatialPoint& a, const SpatialPoint& b) noexcept;

/// "Point(lon lat)" with the shortest decimal form that round-trips.
std::string format_wkt_point(const SpatialPoint& p);

/// Parses "Point(lon lat)" (case-insensitive keyword, flexible spacing).
std::optional<SpatialPoint> parse_wkt_point(std::string_view wkt);

/// Parses "LON,LAT" as given on the command line.
std::optional<SpatialPoint> parse_lon_lat(std::string_view text);

std::string format_degrees(double v);

}  // namespace geokg
