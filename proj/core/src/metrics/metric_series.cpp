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

#include "citedyn/metrics/metric_series.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "citedyn/error.hpp"
#include "json.hpp"

namespace citedyn::metrics {

using nlohmann::json;

void MetricSeries::add(double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y)) {
    fail(ErrorKind::kDomain, "series '" + name + "': non-finite point at x=" +
                                 format_number(x));
  }
  if (!points.empty() && !(x > points.back().x)) {
    fail(ErrorKind::kDomain,
         "series '" + name + "': x must be strictly increasing");
  }
  points.push_back({x, y});
}

std::optional<double> MetricSeries::at(double x) const {
  for (const SeriesPoint& p : points) {
    if (p.x == x) return p.y;
  }
  return std::nullopt;
}

std::vector<double> MetricSeries::xs() const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const SeriesPoint& p : points) out.push_back(p.x);
  return out;
}

std::vector<double> MetricSeries::ys() const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const SeriesPoint& p : points) out.push_back(p.y);
  return out;
}

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

void write_csv(const MetricSeries& series, std::ostream& out) {
  json meta(series.meta);
  out << "# name: " << series.name << '\n';
  out << "# meta: " << meta.dump() << '\n';
  out << "x,y\n";
  for (const SeriesPoint& p : series.points) {
    out << format_number(p.x) << ',' << format_number(p.y) << '\n';
  }
}

void write_json(const MetricSeries& series, std::ostream& out) {
  json doc;
  doc["name"] = series.name;
  doc["meta"] = series.meta;
  json points = json::array();
  for (const SeriesPoint& p : series.points) points.push_back({p.x, p.y});
  doc["points"] = std::move(points);
  out << doc.dump(1) << '\n';
}

namespace {

double parse_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    fail(ErrorKind::kParse,
         "series csv:" + std::to_string(line) + ": bad number '" + s + "'");
  }
  return v;
}

}  // namespace

MetricSeries read_csv(std::istream& in) {
  MetricSeries series;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("# name: ", 0) == 0) {
      series.name = line.substr(8);
      continue;
    }
    if (line.rfind("# meta: ", 0) == 0) {
      try {
        series.meta = json::parse(line.substr(8))
                          .get<std::map<std::string, std::string>>();
      } catch (const json::exception& e) {
        fail(ErrorKind::kParse, "series csv:" + std::to_string(lineno) +
                                    ": bad meta: " + e.what());
      }
      continue;
    }
    if (line[0] == '#') continue;
    if (!header_seen) {
      if (line != "x,y") {
        fail(ErrorKind::kParse,
             "series csv:" + std::to_string(lineno) + ": expected 'x,y'");
      }
      header_seen = true;
      continue;
    }
    auto comma = line.find(',');
    if (comma == std::string::npos) {
      fail(ErrorKind::kParse,
           "series csv:" + std::to_string(lineno) + ": expected two fields");
    }
    series.add(parse_double(line.substr(0, comma), lineno),
               parse_double(line.substr(comma + 1), lineno));
  }
  return series;
}

MetricSeries read_json(std::istream& in) {
  MetricSeries series;
  try {
    json doc = json::parse(in);
    series.name = doc.at("name").get<std::string>();
    series.meta = doc.at("meta").get<std::map<std::string, std::string>>();
    for (const auto& p : doc.at("points")) {
      series.add(p.at(0).get<double>(), p.at(1).get<double>());
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::kParse, std::string("series json: ") + e.what());
  }
  return series;
}

void write_series_files(const MetricSeries& series,
                        const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream csv(dir / (series.name + ".csv"), std::ios::binary);
  std::ofstream js(dir / (series.name + ".json"), std::ios::binary);
  if (!csv || !js) {
    fail(ErrorKind::kIo, "cannot write series '" + series.name + "' to " +
                             dir.string());
  }
  write_csv(series, csv);
  write_json(series, js);
}

}  // namespace citedyn::metrics
