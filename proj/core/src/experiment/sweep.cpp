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

#include "citedyn/experiment/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <thread>

#include "citedyn/error.hpp"
#include "citedyn/metrics/metric_series.hpp"
#include "citedyn/urn/event_log_io.hpp"
#include "citedyn/urn/rng.hpp"
#include "json.hpp"
#include "params_json.hpp"

namespace citedyn::experiment {

using nlohmann::json;
namespace fs = std::filesystem;

void SweepConfig::validate() const {
  if (alpha_grid.empty()) fail(ErrorKind::kUsage, "alpha grid is empty");
  for (double a : alpha_grid) {
    if (!(a >= 0.0) || !std::isfinite(a)) {
      fail(ErrorKind::kUsage, "alpha must be finite and >= 0, got " +
                                  metrics::format_number(a));
    }
  }
  std::vector<double> sorted = alpha_grid;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    fail(ErrorKind::kUsage, "alpha grid has duplicates");
  }
  if (replicas < 1) fail(ErrorKind::kUsage, "replicas must be >= 1");
  if (workers < 0) fail(ErrorKind::kUsage, "workers must be >= 0");
  if (heaps_points_per_decade < 1) {
    fail(ErrorKind::kUsage, "heaps points per decade must be >= 1");
  }
  if (checkpoints.population_checkpoints.empty()) {
    fail(ErrorKind::kUsage, "no population checkpoints");
  }
  urn::ModelParams probe = model;
  probe.alpha = alpha_grid.front();
  try {
    probe.validate();
  } catch (const Error& e) {
    fail(ErrorKind::kUsage, e.what());
  }
}

SweepConfig profile_config(const std::string& profile) {
  SweepConfig c;
  if (profile == "desk") {
    c.replicas = 20;
  } else if (profile == "paper") {
    c.replicas = 100;
  } else {
    fail(ErrorKind::kUsage, "unknown profile '" + profile + "'");
  }
  return c;
}

namespace {

metrics::GiniPopulation parse_population(const std::string& s) {
  if (s == "all") return metrics::GiniPopulation::kAllPublished;
  if (s == "cited") return metrics::GiniPopulation::kCited;
  fail(ErrorKind::kSchema, "gini_population must be 'all' or 'cited'");
}

urn::CountBasis parse_counts(const std::string& s) {
  if (s == "cumulative") return urn::CountBasis::kCumulative;
  if (s == "step") return urn::CountBasis::kStep;
  fail(ErrorKind::kSchema, "gini_counts must be 'cumulative' or 'step'");
}

void apply_metrics(const json& m, SweepConfig& c) {
  if (!m.is_object()) fail(ErrorKind::kSchema, "metrics must be an object");
  for (const auto& [key, v] : m.items()) {
    if (key == "checkpoints") {
      c.checkpoints.population_checkpoints = v.get<std::vector<std::uint64_t>>();
    } else if (key == "top_k") {
      c.checkpoints.top_k = v.get<std::ptrdiff_t>();
    } else if (key == "gini_population") {
      c.checkpoints.gini_population = parse_population(v.get<std::string>());
    } else if (key == "gini_counts") {
      c.checkpoints.gini_counts = parse_counts(v.get<std::string>());
    } else if (key == "heaps_points_per_decade") {
      c.heaps_points_per_decade = v.get<int>();
    } else if (key == "heaps_min_citations") {
      c.heaps_fit.min_citations = v.get<double>();
    } else if (key == "heaps_max_citations") {
      if (v.is_null()) {
        c.heaps_fit.max_citations.reset();
      } else {
        c.heaps_fit.max_citations = v.get<double>();
      }
    } else {
      fail(ErrorKind::kSchema, "unknown metrics key '" + key + "'");
    }
  }
}

}  // namespace

void apply_config_json(const std::string& text, SweepConfig& c) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::kParse, std::string("sweep config: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorKind::kSchema, "sweep config must be an object");
  try {
    if (j.contains("profile")) {
      const fs::path out = c.output_dir;
      c = profile_config(j["profile"].get<std::string>());
      c.output_dir = out;
    }
    for (const auto& [key, v] : j.items()) {
      if (key == "profile") {
        continue;
      } else if (key == "alpha_grid") {
        c.alpha_grid = v.get<std::vector<double>>();
      } else if (key == "replicas") {
        c.replicas = v.get<int>();
      } else if (key == "base_seed") {
        c.base_seed = v.get<std::uint64_t>();
      } else if (key == "model") {
        detail::apply_params_json(v, c.model);
      } else if (key == "metrics") {
        apply_metrics(v, c);
      } else if (key == "output_dir") {
        c.output_dir = v.get<std::string>();
      } else if (key == "workers") {
        c.workers = v.get<int>();
      } else if (key == "write_logs") {
        c.write_logs = v.get<bool>();
      } else {
        fail(ErrorKind::kSchema, "unknown sweep config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::kSchema, std::string("sweep config: ") + e.what());
  }
}

SweepConfig load_sweep_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path.string());
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  SweepConfig c;
  apply_config_json(text, c);
  return c;
}

std::uint64_t replica_seed(std::uint64_t base_seed, double alpha,
                           int replica) {
  if (alpha == 0.0) alpha = 0.0;  // folds -0.0
  const auto bits = std::bit_cast<std::uint64_t>(alpha);
  const std::uint64_t h =
      urn::splitmix64(urn::splitmix64(bits) ^
                      urn::splitmix64(static_cast<std::uint64_t>(replica) +
                                      0x632be59bd9b4e019ULL));
  return base_seed ^ h;
}

std::string alpha_label(double alpha) { return metrics::format_number(alpha); }

ReplicaResult run_replica(const SweepConfig& config, double alpha,
                          int replica) {
  ReplicaResult r;
  r.alpha = alpha;
  r.replica = replica;
  r.seed = replica_seed(config.base_seed, alpha, replica);
  try {
    urn::ModelParams params = config.model;
    params.alpha = alpha;
    params.seed = r.seed;
    const urn::EventLog log = urn::run(params);
    r.steps = static_cast<int>(log.steps.size());
    r.total_papers = log.total_papers();

    if (config.write_logs && !config.output_dir.empty()) {
      const fs::path dir = config.output_dir / ("alpha=" + alpha_label(alpha));
      fs::create_directories(dir);
      urn::write_event_log(
          log, dir / ("replica=" + std::to_string(replica) + ".jsonl"));
    }

    const urn::CheckpointMetrics cm =
        urn::checkpoint_metrics(log, config.checkpoints);
    r.values["gini_first"] = cm.values.front().gini;
    r.values["gini_last"] = cm.values.back().gini;
    r.values["gini_delta"] = cm.gini_delta;
    r.values["gini_relative"] = cm.gini_relative;
    r.values["jaccard_first"] = cm.values.front().ranked_jaccard;
    r.values["jaccard_last"] = cm.values.back().ranked_jaccard;
    r.values["jaccard_delta"] = cm.jaccard_delta;
    r.values["jaccard_relative"] = cm.jaccard_relative;

    const std::vector<urn::PaperId> stream = log.citation_stream();
    const metrics::MetricSeries curve =
        metrics::heaps_curve(stream, config.heaps_points_per_decade);
    const metrics::FitResult fit = metrics::heaps_fit(curve, config.heaps_fit);
    r.values["heaps_beta"] = fit.slope;
    r.values["heaps_r2"] = fit.r_squared;
    r.values["discovery_fraction"] = urn::discovery_tally(log).fraction();
    r.ok = true;
  } catch (const std::exception& e) {
    r.ok = false;
    r.error = e.what();
    r.values.clear();
  }
  return r;
}

Aggregate aggregate(const std::vector<double>& values) {
  Aggregate a;
  double sum = 0.0;
  for (double v : values) {
    if (!std::isfinite(v)) continue;
    sum += v;
    ++a.count;
  }
  if (a.count == 0) {
    a.mean = a.stddev = std::numeric_limits<double>::quiet_NaN();
    return a;
  }
  a.mean = sum / static_cast<double>(a.count);
  if (a.count > 1) {
    double ss = 0.0;
    for (double v : values) {
      if (std::isfinite(v)) ss += (v - a.mean) * (v - a.mean);
    }
    a.stddev = std::sqrt(ss / static_cast<double>(a.count - 1));
  }
  return a;
}

namespace {

std::string cell(double v) {
  return std::isfinite(v) ? metrics::format_number(v) : std::string("nan");
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += (c == '\n' || c == '\r') ? ' ' : c;
  }
  return out + '"';
}

void write_file(const fs::path& path,
                void (*writer)(const SweepResult&, std::ostream&),
                const SweepResult& result) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot write " + path.string());
  writer(result, out);
  if (!out) fail(ErrorKind::kIo, "write failed: " + path.string());
}

}  // namespace

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  out << "alpha,metric,replicas_ok,replicas_failed,n,mean,std\n";
  for (const AlphaSummary& s : result.summaries) {
    for (const std::string& name : replica_metric_names()) {
      const auto it = s.metrics.find(name);
      const Aggregate a = it == s.metrics.end() ? Aggregate{} : it->second;
      out << alpha_label(s.alpha) << ',' << name << ',' << s.ok << ','
          << s.failed << ',' << a.count << ',' << cell(a.mean) << ','
          << cell(a.stddev) << '\n';
    }
  }
}

void write_replicas_csv(const SweepResult& result, std::ostream& out) {
  out << "alpha,replica,seed,status,steps,total_papers";
  for (const std::string& name : replica_metric_names()) out << ',' << name;
  out << ",error\n";
  for (const ReplicaResult& r : result.replicas) {
    out << alpha_label(r.alpha) << ',' << r.replica << ',' << r.seed << ','
        << (r.ok ? "ok" : "failed") << ',' << r.steps << ',' << r.total_papers;
    for (const std::string& name : replica_metric_names()) {
      const auto it = r.values.find(name);
      out << ','
          << (it == r.values.end() ? std::string() : cell(it->second));
    }
    out << ',' << (r.ok ? std::string() : quote(r.error)) << '\n';
  }
}

SweepResult run_sweep(const SweepConfig& config) {
  config.validate();
  const std::size_t n_alpha = config.alpha_grid.size();
  const std::size_t n_rep = static_cast<std::size_t>(config.replicas);
  const std::size_t jobs = n_alpha * n_rep;

  if (!config.output_dir.empty()) fs::create_directories(config.output_dir);

  SweepResult result;
  result.replicas.resize(jobs);
  std::size_t workers = config.workers > 0
                            ? static_cast<std::size_t>(config.workers)
                            : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, jobs);

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t j = next++; j < jobs; j = next++) {
      result.replicas[j] = run_replica(config, config.alpha_grid[j / n_rep],
                                       static_cast<int>(j % n_rep));
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }

  for (std::size_t a = 0; a < n_alpha; ++a) {
    AlphaSummary s;
    s.alpha = config.alpha_grid[a];
    std::map<std::string, std::vector<double>> columns;
    for (std::size_t r = 0; r < n_rep; ++r) {
      const ReplicaResult& rep = result.replicas[a * n_rep + r];
      if (!rep.ok) {
        ++s.failed;
        continue;
      }
      ++s.ok;
      for (const auto& [name, v] : rep.values) columns[name].push_back(v);
    }
    for (const std::string& name : replica_metric_names()) {
      s.metrics[name] = aggregate(columns[name]);
    }
    result.summaries.push_back(std::move(s));
  }

  if (!config.output_dir.empty()) {
    write_file(config.output_dir / "sweep.csv", write_sweep_csv, result);
    write_file(config.output_dir / "replicas.csv", write_replicas_csv, result);
  }

  for (const AlphaSummary& s : result.summaries) {
    if (s.ok == 0) {
      std::string why;
      for (const ReplicaResult& r : result.replicas) {
        if (r.alpha == s.alpha && !r.ok) {
          why = r.error;
          break;
        }
      }
      fail(ErrorKind::kSweep, "no successful replica for alpha=" +
                                  alpha_label(s.alpha) + ": " + why);
    }
  }
  return result;
}

}  // namespace citedyn::experiment
