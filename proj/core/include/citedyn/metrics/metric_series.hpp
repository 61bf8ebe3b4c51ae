// Copyright 2026 The citedyn Authors
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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace citedyn::metrics {

struct SeriesPoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const SeriesPoint&, const SeriesPoint&) = default;
};

// Named (x, y) series with free-form provenance metadata. Every metric
// emits one of these.
struct MetricSeries {
  std::string name;
  std::vector<SeriesPoint> points;
  std::map<std::string, std::string> meta;

  MetricSeries() = default;
  explicit MetricSeries(std::string series_name) : name(std::move(series_name)) {}

  // Throws Error(kDomain) if x does not increase or y is not finite.
  void add(double x, double y);

  bool empty() const { return points.empty(); }
  std::size_t size() const { return points.size(); }
  std::optional<double> at(double x) const;
  std::vector<double> xs() const;
  std::vector<double> ys() const;
};

// Shortest decimal text that round-trips to the same double.
std::string format_number(double value);

// CSV layout:
//   # name: <name>
//   # meta: {"key":"value",...}
//   x,y
//   <x>,<y>
void write_csv(const MetricSeries& series, std::ostream& out);
void write_json(const MetricSeries& series, std::ostream& out);
MetricSeries read_csv(std::istream& in);
MetricSeries read_json(std::istream& in);

// Writes <dir>/<name>.csv and <dir>/<name>.json.
void write_series_files(const MetricSeries& series,
                        const std::filesystem::path& dir);

}  // namespace citedyn::metrics
