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

#include "citedyn/urn/event_log_io.hpp"

#include <fstream>
#include <string>

#include "citedyn/error.hpp"
#include "json.hpp"
#include "params_json.hpp"

namespace citedyn::urn {

using nlohmann::json;

namespace {

char flag_char(const Reference& r) {
  const char c = r.origin == Origin::kDiscovered ? 'D' : 'R';
  return r.fallback ? static_cast<char>(c - 'A' + 'a') : c;
}

Reference parse_flag(PaperId id, char c, std::size_t line) {
  Reference r;
  r.id = id;
  switch (c) {
    case 'R': r.origin = Origin::kReinforced; break;
    case 'D': r.origin = Origin::kDiscovered; break;
    case 'r': r.origin = Origin::kReinforced; r.fallback = true; break;
    case 'd': r.origin = Origin::kDiscovered; r.fallback = true; break;
    default:
      fail(ErrorKind::kParse, "event log:" + std::to_string(line) +
                                  ": bad reference flag '" +
                                  std::string(1, c) + "'");
  }
  return r;
}

}  // namespace

void write_event_log(const EventLog& log, std::ostream& out) {
  json header;
  header["type"] = "header";
  header["params"] = detail::params_to_json(log.params);
  header["seed"] = log.params.seed;
  json cited = json::array();
  for (const auto& [id, count] : log.initial_cited) cited.push_back({id, count});
  json uncited = json::array();
  for (const auto& [id, age] : log.initial_uncited) uncited.push_back({id, age});
  header["initial_cited"] = std::move(cited);
  header["initial_uncited"] = std::move(uncited);
  out << header.dump() << '\n';

  for (const StepRecord& s : log.steps) {
    json rec;
    rec["t"] = s.t;
    rec["arrivals"] = s.arrivals;
    json papers = json::array();
    for (const PaperEntry& p : s.papers) {
      json refs = json::array();
      std::string flags;
      for (const Reference& r : p.refs) {
        refs.push_back(r.id);
        flags.push_back(flag_char(r));
      }
      papers.push_back({{"id", p.id}, {"refs", std::move(refs)},
                        {"flags", std::move(flags)}});
    }
    rec["papers"] = std::move(papers);
    out << rec.dump() << '\n';
  }
}

void write_event_log(const EventLog& log, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot write " + path.string());
  write_event_log(log, out);
  if (!out) fail(ErrorKind::kIo, "write failed: " + path.string());
}

EventLog read_event_log(std::istream& in) {
  EventLog log;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  try {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      const json rec = json::parse(line);
      if (!have_header) {
        if (rec.value("type", "") != "header") {
          fail(ErrorKind::kSchema, "event log:1: missing header record");
        }
        detail::apply_params_json(rec.at("params"), log.params);
        log.params.seed = rec.at("seed").get<std::uint64_t>();
        for (const auto& e : rec.at("initial_cited")) {
          log.initial_cited.emplace_back(e.at(0).get<PaperId>(),
                                         e.at(1).get<std::uint32_t>());
        }
        for (const auto& e : rec.at("initial_uncited")) {
          log.initial_uncited.emplace_back(e.at(0).get<PaperId>(),
                                           e.at(1).get<int>());
        }
        have_header = true;
        continue;
      }
      StepRecord s;
      s.t = rec.at("t").get<int>();
      s.arrivals = rec.at("arrivals").get<std::uint64_t>();
      for (const auto& p : rec.at("papers")) {
        PaperEntry entry;
        entry.id = p.at("id").get<PaperId>();
        const auto& refs = p.at("refs");
        const std::string flags = p.at("flags").get<std::string>();
        if (flags.size() != refs.size()) {
          fail(ErrorKind::kSchema, "event log:" + std::to_string(lineno) +
                                       ": flags and refs differ in length");
        }
        for (std::size_t i = 0; i < refs.size(); ++i) {
          entry.refs.push_back(
              parse_flag(refs[i].get<PaperId>(), flags[i], lineno));
        }
        s.papers.push_back(std::move(entry));
      }
      log.steps.push_back(std::move(s));
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::kParse,
         "event log:" + std::to_string(lineno) + ": " + e.what());
  }
  if (!have_header) fail(ErrorKind::kSchema, "event log: empty input");
  return log;
}

EventLog read_event_log(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path.string());
  return read_event_log(in);
}

}  // namespace citedyn::urn
