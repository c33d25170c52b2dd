// Copyright 2026 The dcqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <string>

#include <fmt/format.h>

#include "dcqe/cli/commands.hpp"

namespace dcqe::cli {

namespace {

double parse_number(std::string_view text, std::string_view what) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw ConfigError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  if (!std::isfinite(value)) {
    throw ConfigError(std::string(what) + " must be finite, got '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

Format format_from_string(std::string_view name) {
  if (name == "csv") return Format::kCsv;
  if (name == "json") return Format::kJson;
  throw ConfigError("unknown format '" + std::string(name) + "' (expected csv or json)");
}

double parse_angle(std::string_view text) {
  constexpr std::string_view kDeg = "deg";
  if (text.size() > kDeg.size() && text.ends_with(kDeg)) {
    return parse_number(text.substr(0, text.size() - kDeg.size()), "angle") *
           std::numbers::pi / 180.0;
  }
  return parse_number(text, "angle");
}

Grid Grid::parse(std::string_view text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos) {
    throw ConfigError("grid must be start:end:steps, got '" + std::string(text) + "'");
  }
  Grid g;
  g.start = parse_angle(text.substr(0, c1));
  g.end = parse_angle(text.substr(c1 + 1, c2 - c1 - 1));
  const auto steps_text = text.substr(c2 + 1);
  std::size_t steps = 0;
  const auto [ptr, ec] =
      std::from_chars(steps_text.data(), steps_text.data() + steps_text.size(), steps);
  if (ec != std::errc() || ptr != steps_text.data() + steps_text.size() || steps_text.empty()) {
    throw ConfigError("invalid grid step count '" + std::string(steps_text) + "'");
  }
  if (steps < 2) throw ConfigError("grid needs at least 2 steps");
  g.steps = steps;
  return g;
}

Grid Grid::full_period() { return Grid{-std::numbers::pi, std::numbers::pi, 181}; }

std::vector<double> Grid::points() const {
  std::vector<double> out(steps);
  const double span = end - start;
  for (std::size_t i = 0; i < steps; ++i) {
    out[i] = start + span * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  out.back() = end;
  return out;
}

std::string format_double(double value) { return fmt::format("{:.17g}", value); }

void write_file(const std::string& path, std::string_view content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file.write(content.data(), static_cast<std::streamsize>(content.size()));
  file.close();
  if (!file) throw IoError("failed writing '" + path + "'");
}

}  // namespace dcqe::cli
