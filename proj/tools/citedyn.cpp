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

// citedyn: simulate, sweep, analyze, fetch, summarize.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "citedyn/error.hpp"
#include "citedyn/experiment/analyze.hpp"
#include "citedyn/experiment/sweep.hpp"
#include "citedyn/ingest/corpus_io.hpp"
#include "citedyn/ingest/fetch.hpp"
#include "citedyn/ingest/from_event_log.hpp"
#include "citedyn/metrics/metric_series.hpp"
#include "citedyn/urn/event_log_io.hpp"
#include "citedyn/urn/model.hpp"

namespace fs = std::filesystem;
using namespace citedyn;

namespace {

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(ErrorKind::kUsage, "bad alpha value '" + item + "'");
    }
  }
  if (out.empty()) fail(ErrorKind::kUsage, "empty alpha grid");
  return out;
}

ingest::YearRange parse_years(const std::string& text) {
  int a = 0, b = 0;
  char dash = 0;
  std::stringstream ss(text);
  if (!(ss >> a >> dash >> b) || dash != '-' || b < a) {
    fail(ErrorKind::kUsage, "years must look like 1980-2019");
  }
  return {a, b};
}

metrics::GiniPopulation parse_population(const std::string& s) {
  if (s == "cited") return metrics::GiniPopulation::kCited;
  if (s == "all") return metrics::GiniPopulation::kAllPublished;
  fail(ErrorKind::kUsage, "population must be 'cited' or 'all'");
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  urn::ModelParams params;
  std::optional<double> n0;
  fs::path out;
  int base_year = 0;
  bool no_corpus = false;
};

int cmd_simulate(SimulateArgs& a) {
  a.params.n0 = a.n0;
  a.params.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const urn::EventLog log = urn::run(a.params);
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  fs::create_directories(a.out);
  urn::write_event_log(log, a.out / "events.jsonl");
  if (!a.no_corpus) {
    const ingest::Corpus corpus =
        ingest::corpus_from_event_log(log, a.base_year);
    ingest::write_corpus(corpus, a.out / "papers.csv", a.out / "edges.csv");
  }
  const auto tally = urn::discovery_tally(log);
  std::cout << "steps " << log.steps.size() << "\n"
            << "papers " << log.total_papers() << "\n"
            << "citations " << tally.citations << "\n"
            << "discovery_fraction "
            << metrics::format_number(tally.fraction()) << "\n"
            << "fallbacks " << tally.fallbacks << "\n"
            << "seconds " << metrics::format_number(secs) << "\n";
  return 0;
}

// ------------------------------------------------------------------- sweep

struct SweepArgs {
  fs::path config;
  std::string profile;
  std::string alpha_grid;
  std::optional<int> replicas;
  std::optional<std::uint64_t> seed;
  fs::path out;
  std::optional<int> workers;
  bool write_logs = false;
  std::vector<std::uint64_t> checkpoints;
  std::optional<std::ptrdiff_t> top_k;
  std::string gini_population;
  std::string gini_counts;
};

int cmd_sweep(SweepArgs& a) {
  experiment::SweepConfig c;
  if (!a.config.empty()) c = experiment::load_sweep_config(a.config);
  if (!a.profile.empty()) {
    // A profile resets the grid and replica count only.
    const auto p = experiment::profile_config(a.profile);
    c.alpha_grid = p.alpha_grid;
    c.replicas = p.replicas;
  }
  if (!a.alpha_grid.empty()) c.alpha_grid = parse_grid(a.alpha_grid);
  if (a.replicas) c.replicas = *a.replicas;
  if (a.seed) c.base_seed = *a.seed;
  if (!a.out.empty()) c.output_dir = a.out;
  if (a.workers) c.workers = *a.workers;
  if (a.write_logs) c.write_logs = true;
  if (!a.checkpoints.empty()) c.checkpoints.population_checkpoints = a.checkpoints;
  if (a.top_k) c.checkpoints.top_k = *a.top_k;
  if (!a.gini_population.empty()) {
    c.checkpoints.gini_population = parse_population(a.gini_population);
  }
  if (a.gini_counts == "step") {
    c.checkpoints.gini_counts = urn::CountBasis::kStep;
  } else if (a.gini_counts == "cumulative") {
    c.checkpoints.gini_counts = urn::CountBasis::kCumulative;
  } else if (!a.gini_counts.empty()) {
    fail(ErrorKind::kUsage, "gini counts must be 'cumulative' or 'step'");
  }
  if (c.output_dir.empty()) fail(ErrorKind::kUsage, "sweep needs --out");

  const auto t0 = std::chrono::steady_clock::now();
  const auto result = experiment::run_sweep(c);
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  experiment::write_sweep_csv(result, std::cout);
  std::size_t failed = 0;
  for (const auto& r : result.replicas) failed += r.ok ? 0 : 1;
  std::cerr << "sweep: " << result.replicas.size() << " replicas, " << failed
            << " failed, " << metrics::format_number(secs) << " s\n";
  return 0;
}

// ----------------------------------------------------------------- analyze

struct AnalyzeArgs {
  fs::path corpus_dir;
  fs::path papers;
  fs::path edges;
  fs::path out;
  std::string metrics;
  bool all = false;
  bool strict = false;
  std::string years;
  bool no_year_window = false;
  experiment::AnalyzeOptions opts;
  std::string gini_population;
  std::optional<int> gini_from;
  std::optional<int> gini_to;
  std::optional<double> heaps_max;
};

int cmd_analyze(AnalyzeArgs& a) {
  if (a.all) {
    a.opts.metrics = experiment::parse_metric_selection("all");
  } else if (!a.metrics.empty()) {
    a.opts.metrics = experiment::parse_metric_selection(a.metrics);
  } else {
    fail(ErrorKind::kUsage, "select metrics with --metrics or --all");
  }
  if (!a.corpus_dir.empty()) {
    if (a.papers.empty()) a.papers = a.corpus_dir / "papers.csv";
    if (a.edges.empty()) a.edges = a.corpus_dir / "edges.csv";
  }
  if (a.papers.empty() || a.edges.empty()) {
    fail(ErrorKind::kUsage, "analyze needs --corpus or --papers and --edges");
  }
  if (!a.gini_population.empty()) {
    a.opts.gini_population = parse_population(a.gini_population);
  }
  a.opts.gini_from = a.gini_from;
  a.opts.gini_to = a.gini_to;
  a.opts.heaps_fit.max_citations = a.heaps_max;

  ingest::LoadOptions load;
  load.strict = a.strict;
  if (a.no_year_window) {
    load.year_window.reset();
  } else if (!a.years.empty()) {
    load.year_window = parse_years(a.years);
  }
  const auto loaded = ingest::load_corpus(a.papers, a.edges, load);
  const auto& r = loaded.report;
  std::cerr << "loaded " << r.accepted_papers << "/" << r.paper_rows
            << " papers, " << r.accepted_edges << "/" << r.edge_rows
            << " edges (" << r.dropped_out_of_window << " out of window, "
            << r.dropped_self_loops << " self-loops, " << r.dropped_dangling
            << " dangling dropped)\n";

  const auto analysis = experiment::analyze_corpus(loaded.corpus, a.opts);
  experiment::write_analysis(analysis, a.out);
  for (const auto& s : analysis.series) {
    std::cout << s.name << " " << s.size() << "\n";
  }
  std::cout << experiment::summary_to_json(analysis.summary);
  return 0;
}

// ------------------------------------------------------------------- fetch

struct FetchArgs {
  ingest::FetchOptions opts;
  std::string years;
  std::string pagination = "cursor";
  bool no_expand = false;
  int backoff_ms = 500;
};

int cmd_fetch(FetchArgs& a) {
  if (!a.years.empty()) a.opts.year_range = parse_years(a.years);
  if (a.pagination == "page") {
    a.opts.pagination = ingest::Pagination::kPage;
  } else if (a.pagination != "cursor") {
    fail(ErrorKind::kUsage, "pagination must be 'cursor' or 'page'");
  }
  a.opts.expand = !a.no_expand;
  a.opts.initial_backoff = std::chrono::milliseconds(a.backoff_ms);
  const auto rep = ingest::fetch_remote_corpus(a.opts);
  std::cout << "requests " << rep.requests << "\n"
            << "retries " << rep.retries << "\n"
            << "pages " << rep.pages << "\n"
            << "paper_rows " << rep.paper_rows << "\n"
            << "disciplinary_rows " << rep.disciplinary_rows << "\n"
            << "edge_rows " << rep.edge_rows << "\n";
  return 0;
}

// --------------------------------------------------------------- summarize

struct SummarizeArgs {
  std::vector<fs::path> inputs;
  std::string gini_delta = "relative";
  fs::path out;
};

int cmd_summarize(SummarizeArgs& a) {
  std::vector<experiment::CorpusSummary> summaries;
  for (const auto& in : a.inputs) {
    summaries.push_back(experiment::read_summary(
        fs::is_directory(in) ? in / "summary.json" : in));
  }
  experiment::GiniDeltaKind kind;
  if (a.gini_delta == "relative") {
    kind = experiment::GiniDeltaKind::kRelative;
  } else if (a.gini_delta == "absolute") {
    kind = experiment::GiniDeltaKind::kAbsolute;
  } else {
    fail(ErrorKind::kUsage, "gini delta must be 'relative' or 'absolute'");
  }
  const auto report = experiment::summarize_disciplines(summaries, kind);
  experiment::write_report_csv(report, std::cout);
  std::cout << experiment::report_to_json(report);
  if (!a.out.empty()) {
    fs::create_directories(a.out);
    std::ofstream csv(a.out / "disciplines.csv", std::ios::binary);
    experiment::write_report_csv(report, csv);
    std::ofstream js(a.out / "regressions.json", std::ios::binary);
    js << experiment::report_to_json(report);
    if (!csv || !js) fail(ErrorKind::kIo, "cannot write report files");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"citedyn: citation dynamics simulator and metrics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "citedyn 0.1.0");

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Run the two-urn model once");
  s->add_option("--alpha", sim.params.alpha, "Growth exponent per step")
      ->capture_default_str();
  s->add_option("--seed", sim.params.seed, "RNG seed")->capture_default_str();
  s->add_option("--n0", sim.n0, "Arrival scale (default: half the seed urns)");
  s->add_option("--p", sim.params.p, "Probability of citing from the cited urn")
      ->capture_default_str();
  s->add_option("--n-ref", sim.params.n_ref, "References per paper")
      ->capture_default_str();
  s->add_option("--visibility-window", sim.params.visibility_window)
      ->capture_default_str();
  s->add_option("--target", sim.params.target_total_papers,
                "Stop at this many papers")
      ->capture_default_str();
  s->add_option("--base-year", sim.base_year,
                "Year assigned to step 0 in the corpus files")
      ->capture_default_str();
  s->add_option("--out", sim.out,
                "Directory for events.jsonl, papers.csv, edges.csv")
      ->required();
  s->add_flag("--no-corpus", sim.no_corpus, "Write the event log only");

  SweepArgs sw;
  auto* w = app.add_subcommand("sweep", "Alpha sweep with replicas");
  w->add_option("--config", sw.config, "JSON sweep configuration");
  w->add_option("--profile", sw.profile, "desk (20 replicas) or paper (100)");
  w->add_option("--alpha-grid", sw.alpha_grid, "Comma-separated alphas");
  w->add_option("--replicas", sw.replicas, "Replicas per alpha");
  w->add_option("--seed", sw.seed, "Base seed");
  w->add_option("--out", sw.out, "Output directory");
  w->add_option("--workers", sw.workers, "Worker threads (0: all cores)");
  w->add_flag("--write-logs", sw.write_logs, "Keep every replica's event log");
  w->add_option("--checkpoints", sw.checkpoints, "Population checkpoints")
      ->delimiter(',');
  w->add_option("--k", sw.top_k, "Top-k for ranked Jaccard");
  w->add_option("--gini-population", sw.gini_population, "all or cited");
  w->add_option("--gini-counts", sw.gini_counts, "cumulative or step");

  AnalyzeArgs an;
  auto* z = app.add_subcommand("analyze", "Compute metric series for a corpus");
  z->add_option("--corpus", an.corpus_dir, "Directory with papers.csv, edges.csv");
  z->add_option("--papers", an.papers, "papers.csv");
  z->add_option("--edges", an.edges, "edges.csv");
  z->add_option("--out", an.out, "Output directory")->required();
  z->add_option("--name", an.opts.corpus_name, "Corpus label")
      ->capture_default_str();
  z->add_option("--metrics", an.metrics,
                "publications,uptake,gini,cycles,turnover,elite,heaps,"
                "discovery,attention");
  z->add_flag("--all", an.all, "Every metric");
  z->add_flag("--strict", an.strict, "Reject dangling edges and stray years");
  z->add_option("--years", an.years, "Year window, default 1980-2019");
  z->add_flag("--no-year-window", an.no_year_window, "Accept any year");
  z->add_option("--uptake-horizon", an.opts.uptake_horizon)->capture_default_str();
  z->add_option("--min-citations", an.opts.curves.min_citations)
      ->capture_default_str();
  z->add_option("--cutoff-year", an.opts.curves.last_pub_year)
      ->capture_default_str();
  z->add_option("--window", an.opts.curves.window)->capture_default_str();
  z->add_option("--gini-population", an.gini_population, "cited or all");
  z->add_option("--gini-from", an.gini_from);
  z->add_option("--gini-to", an.gini_to);
  z->add_option("--k", an.opts.top_k)->capture_default_str();
  z->add_option("--damping", an.opts.pagerank.damping)->capture_default_str();
  z->add_option("--pagerank-tolerance", an.opts.pagerank.tolerance)
      ->capture_default_str();
  z->add_option("--threshold", an.opts.elite_threshold)->capture_default_str();
  z->add_option("--heaps-points-per-decade", an.opts.heaps_points_per_decade)
      ->capture_default_str();
  z->add_option("--heaps-min-citations", an.opts.heaps_fit.min_citations)
      ->capture_default_str();
  z->add_option("--heaps-max-citations", an.heaps_max);
  z->add_flag("--within-year-first-touch",
              an.opts.discovery.within_year_first_touch,
              "Count only the first touch of a target within a year");

  FetchArgs fe;
  auto* f = app.add_subcommand("fetch", "Download a corpus from a works API");
  f->add_option("--base-url", fe.opts.base_url, "scheme://host[:port]")
      ->required();
  f->add_option("--path", fe.opts.path)->capture_default_str();
  f->add_option("--filter", fe.opts.concept_filter, "Disciplinary filter");
  f->add_option("--years", fe.years, "Publication years, default 1980-2019");
  f->add_option("--page-size", fe.opts.page_size)->capture_default_str();
  f->add_option("--pagination", fe.pagination, "cursor or page")
      ->capture_default_str();
  f->add_option("--rps", fe.opts.max_requests_per_second, "Requests per second")
      ->capture_default_str();
  f->add_option("--max-retries", fe.opts.max_retries)->capture_default_str();
  f->add_option("--backoff-ms", fe.backoff_ms)->capture_default_str();
  f->add_flag("--no-expand", fe.no_expand, "Skip cited/citing expansion");
  f->add_option("--out", fe.opts.output_dir, "Output directory")->required();

  SummarizeArgs su;
  auto* u = app.add_subcommand("summarize", "Cross-corpus regressions");
  u->add_option("inputs", su.inputs, "Analysis directories or summary.json")
      ->required();
  u->add_option("--gini-delta", su.gini_delta, "relative or absolute")
      ->capture_default_str();
  u->add_option("--out", su.out, "Directory for the report files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*s) return cmd_simulate(sim);
    if (*w) return cmd_sweep(sw);
    if (*z) return cmd_analyze(an);
    if (*f) return cmd_fetch(fe);
    if (*u) return cmd_summarize(su);
  } catch (const Error& e) {
    std::cerr << "citedyn: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const fs::filesystem_error& e) {
    std::cerr << "citedyn: io: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "citedyn: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
