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

#include "geokg/geo.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "geokg/error.hpp"

namespace geokg {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

bool in_range(double lon, double lat) {
  return std::isfinite(lon) && std::isfinite(lat) && lon >= -180.0 && lon <= 180.0 && lat >= -90.0 &&
         lat <= 90.0;
}

std::string_view skip_spaces(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

std::optional<double> take_number(std::string_view& s) {
  s = skip_spaces(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr == s.data()) return std::nullopt;
  s.remove_prefix(static_cast<std::size_t>(ptr - s.data()));
  return v;
}

}  // namespace

SpatialPoint SpatialPoint::checked(double lon, double lat) {
  if (!in_range(lon, lat)) {
    throw ValidationError("point (" + format_degrees(lon) + ", " + format_degrees(lat) + ") is out of range");
  }
  return {lon, lat};
}

double haversine_m(const SpatialPoint& a, const SpatialPoint& b) noexcept {
  const double phi1 = a.lat * kDegToRad;
  const double phi2 = b.lat * kDegToRad;
  const double dphi = (b.lat - a.lat) * kDegToRad;
  const double dlambda = (b.lon - a.lon) * kDegToRad;
  const double s1 = std::sin(dphi / 2.0);
  const double s2 = std::sin(dlambda / 2.0);
  const double h = std::clamp(s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2, 0.0, 1.0);
  return 2.0 * kEarthRadiusM * std::asin(std::sqrt(h));
}

std::string format_degrees(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ec == std::errc{} ? ptr : buf);
}

std::string format_wkt_point(const SpatialPoint& p) {
  return "Point(" + format_degrees(p.lon) + " " + format_degrees(p.lat) + ")";
}

std::optional<SpatialPoint> parse_wkt_point(std::string_view wkt) {
  wkt = skip_spaces(wkt);
  constexpr std::string_view kw = "point";
  if (wkt.size() < kw.size()) return std::nullopt;
  for (std::size_t i = 0; i < kw.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(wkt[i])) != kw[i]) return std::nullopt;
  }
  wkt.remove_prefix(kw.size());
  wkt = skip_spaces(wkt);
  if (wkt.empty() || wkt.front() != '(') return std::nullopt;
  wkt.remove_prefix(1);
  const auto lon = take_number(wkt);
  if (!lon) return std::nullopt;
  if (wkt.empty() || (wkt.front() != ' ' && wkt.front() != '\t')) return std::nullopt;
  const auto lat = take_number(wkt);
  if (!lat) return std::nullopt;
  wkt = skip_spaces(wkt);
  if (wkt != ")") return std::nullopt;
  if (!in_range(*lon, *lat)) return std::nullopt;
  return SpatialPoint{*lon, *lat};
}

std::optional<SpatialPoint> parse_lon_lat(std::string_view text) {
  const auto lon = take_number(text);
  if (!lon) return std::nullopt;
  text = skip_spaces(text);
  if (text.empty() || text.front() != ',') return std::nullopt;
  text.remove_prefix(1);
  const auto lat = take_number(text);
  if (!lat || !skip_spaces(text).empty() || !in_range(*lon, *lat)) return std::nullopt;
  return SpatialPoint{*lon, *lat};
}

}  // namespace geokg
