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

#include "citedyn/experiment/analyze.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "citedyn/error.hpp"
#include "citedyn/ingest/csv.hpp"
#include "citedyn/metrics/growth.hpp"
#include "json.hpp"

namespace citedyn::experiment {

using nlohmann::json;
namespace fs = std::filesystem;

const std::vector<std::string>& metric_groups() {
  static const std::vector<std::string> groups{
      "publications", "uptake", "gini",      "cycles",   "turnover",
      "elite",        "heaps",  "discovery", "attention"};
  return groups;
}

std::set<std::string> parse_metric_selection(const std::string& text) {
  std::set<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    item = item.substr(b, e - b + 1);
    if (item == "all") {
      out.insert(metric_groups().begin(), metric_groups().end());
      continue;
    }
    bool known = false;
    for (const auto& g : metric_groups()) known = known || g == item;
    if (!known) fail(ErrorKind::kUsage, "unknown metric '" + item + "'");
    out.insert(item);
  }
  if (out.empty()) fail(ErrorKind::kUsage, "empty metric selection");
  return out;
}

namespace {

// Runs `fn`, prefixing any error with the metric name.
template <typename Fn>
auto guarded(const std::string& metric, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.kind(), metric + ": " + e.what());
  }
}

template <typename Fn>
void soft(CorpusSummary& s, const std::string& key, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    s.errors[key] = std::string(to_string(e.kind())) + ": " + e.what();
  }
}

void tag(metrics::MetricSeries& series, const std::string& corpus) {
  series.meta["corpus"] = corpus;
}

}  // namespace

Analysis analyze_corpus(const ingest::Corpus& corpus,
                        const AnalyzeOptions& opts) {
  if (opts.metrics.empty()) fail(ErrorKind::kUsage, "empty metric selection");
  for (const auto& m : opts.metrics) {
    bool known = false;
    for (const auto& g : metric_groups()) known = known || g == m;
    if (!known) fail(ErrorKind::kUsage, "unknown metric '" + m + "'");
  }
  auto on = [&](const char* g) { return opts.metrics.count(g) > 0; };

  Analysis a;
  CorpusSummary& s = a.summary;
  s.corpus = opts.corpus_name;
  s.papers = corpus.size();
  s.edges = corpus.edges().size();
  s.min_year = corpus.year_range().min_year;
  s.max_year = corpus.year_range().max_year;
  auto emit = [&](metrics::MetricSeries series) {
    tag(series, opts.corpus_name);
    a.series.push_back(std::move(series));
  };

  if (on("publications")) {
    auto pubs = guarded("publications", [&] {
      return metrics::normalized_publication_series(corpus);
    });
    soft(s, "growth", [&] { s.growth = metrics::fit_exponential_growth(pubs); });
    if (s.growth) {
      pubs.meta["fit_alpha"] = metrics::format_number(s.growth->slope);
      pubs.meta["fit_n0"] = metrics::format_number(s.growth->intercept);
      pubs.meta["fit_r2"] = metrics::format_number(s.growth->r_squared);
    }
    emit(std::move(pubs));
  }

  if (on("uptake")) {
    auto up = guarded("uptake", [&] {
      return metrics::two_year_uptake(corpus, opts.uptake_horizon);
    });
    emit(std::move(up.mean_citations));
    emit(std::move(up.uncited_fraction));
  }

  if (on("gini")) {
    auto g = guarded("gini", [&] {
      return metrics::yearly_gini_series(corpus, opts.gini_population);
    });
    soft(s, "gini_variation", [&] {
      if (g.empty()) fail(ErrorKind::kRange, "gini series is empty");
      const int from = opts.gini_from.value_or(
          static_cast<int>(g.points.front().x));
      const int to =
          opts.gini_to.value_or(static_cast<int>(g.points.back().x));
      s.gini = metrics::gini_variation(g, from, to);
    });
    emit(std::move(g));
  }

  if (on("cycles")) {
    auto c = guarded("cycles", [&] {
      const auto curves = metrics::attention_curves(corpus, opts.curves);
      auto cs = metrics::cycle_series(curves);
      for (auto* series : {&cs.t_peak, &cs.f_c_peak, &cs.t_half}) {
        series->meta["curves"] = std::to_string(curves.curves.size());
        series->meta["excluded_low_citations"] =
            std::to_string(curves.excluded_low_citations);
        series->meta["excluded_late"] = std::to_string(curves.excluded_late);
        series->meta["excluded_incomplete"] =
            std::to_string(curves.excluded_incomplete);
        series->meta["excluded_zero_window"] =
            std::to_string(curves.excluded_zero_window);
      }
      return cs;
    });
    emit(std::move(c.t_peak));
    emit(std::move(c.f_c_peak));
    emit(std::move(c.t_half));
  }

  if (on("turnover")) {
    emit(guarded("jaccard_citations", [&] {
      return metrics::topk_turnover_series(corpus, opts.top_k,
                                           metrics::RankBy::kCitations,
                                           opts.pagerank);
    }));
    emit(guarded("jaccard_pagerank", [&] {
      return metrics::topk_turnover_series(corpus, opts.top_k,
                                           metrics::RankBy::kPageRank,
                                           opts.pagerank);
    }));
  }

  if (on("elite")) {
    auto e = guarded("elite", [&] {
      return metrics::elite_series(corpus, opts.elite_threshold);
    });
    emit(std::move(e.size_fraction));
    emit(std::move(e.mean_age));
    emit(std::move(e.cocitation_density));
  }

  if (on("heaps")) {
    auto h = guarded("heaps", [&] {
      return metrics::heaps_curve(corpus, opts.heaps_points_per_decade);
    });
    soft(s, "heaps_fit", [&] { s.heaps = metrics::heaps_fit(h, opts.heaps_fit); });
    if (s.heaps) {
      h.meta["fit_beta"] = metrics::format_number(s.heaps->slope);
      h.meta["fit_prefactor"] = metrics::format_number(s.heaps->intercept);
      h.meta["fit_r2"] = metrics::format_number(s.heaps->r_squared);
    }
    emit(std::move(h));
  }

  if (on("discovery")) {
    auto d = guarded("discovery", [&] {
      return metrics::discovery_fraction_series(corpus, opts.discovery);
    });
    if (!d.empty()) {
      double sum = 0.0;
      for (const auto& p : d.points) sum += p.y;
      s.discovery_mean = sum / static_cast<double>(d.size());
    }
    emit(std::move(d));
  }

  if (on("attention")) {
    double worst = 0.0;
    const auto range = corpus.year_range();
    for (int year = range.min_year; !range.empty() && year <= range.max_year;
         ++year) {
      if (corpus.total_citations_in_year(year) == 0) continue;
      const auto shares = guarded(
          "attention (year " + std::to_string(year) + ")",
          [&] { return metrics::attention_shares(corpus, year); });
      double sum = 0.0;
      for (const auto& sh : shares) sum += sh.value;
      worst = std::max(worst, std::abs(sum - 1.0));
    }
    s.attention_share_max_error = worst;
  }

  return a;
}

namespace {

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double get_num(const json& j) {
  return j.is_null() ? std::nan("") : j.get<double>();
}

json fit_json(const metrics::FitResult& f, const char* slope,
              const char* intercept) {
  return {{slope, num(f.slope)},
          {intercept, num(f.intercept)},
          {"r2", num(f.r_squared)},
          {"n_points", f.n_points}};
}

metrics::FitResult fit_from(const json& j, const char* slope,
                            const char* intercept) {
  metrics::FitResult f;
  f.slope = get_num(j.at(slope));
  f.intercept = get_num(j.at(intercept));
  f.r_squared = get_num(j.at("r2"));
  f.n_points = j.at("n_points").get<std::size_t>();
  return f;
}

}  // namespace

std::string summary_to_json(const CorpusSummary& s) {
  json j;
  j["corpus"] = s.corpus;
  j["papers"] = s.papers;
  j["edges"] = s.edges;
  j["years"] = {s.min_year, s.max_year};
  j["growth"] = s.growth ? fit_json(*s.growth, "alpha", "n0") : json(nullptr);
  j["heaps"] =
      s.heaps ? fit_json(*s.heaps, "beta", "prefactor") : json(nullptr);
  if (s.gini) {
    j["gini_variation"] = {{"from_year", s.gini->from_year},
                           {"to_year", s.gini->to_year},
                           {"from_value", num(s.gini->from_value)},
                           {"to_value", num(s.gini->to_value)},
                           {"absolute", num(s.gini->absolute)},
                           {"relative", num(s.gini->relative)}};
  } else {
    j["gini_variation"] = nullptr;
  }
  j["attention_share_max_error"] =
      s.attention_share_max_error ? num(*s.attention_share_max_error)
                                  : json(nullptr);
  j["discovery_mean"] =
      s.discovery_mean ? num(*s.discovery_mean) : json(nullptr);
  j["errors"] = s.errors;
  return j.dump(1) + "\n";
}

CorpusSummary summary_from_json(const std::string& text) {
  CorpusSummary s;
  try {
    const json j = json::parse(text);
    s.corpus = j.at("corpus").get<std::string>();
    s.papers = j.at("papers").get<std::size_t>();
    s.edges = j.at("edges").get<std::size_t>();
    s.min_year = j.at("years").at(0).get<int>();
    s.max_year = j.at("years").at(1).get<int>();
    if (!j.at("growth").is_null()) s.growth = fit_from(j["growth"], "alpha", "n0");
    if (!j.at("heaps").is_null()) {
      s.heaps = fit_from(j["heaps"], "beta", "prefactor");
    }
    if (!j.at("gini_variation").is_null()) {
      const json& g = j["gini_variation"];
      metrics::GiniVariation v;
      v.from_year = g.at("from_year").get<int>();
      v.to_year = g.at("to_year").get<int>();
      v.from_value = get_num(g.at("from_value"));
      v.to_value = get_num(g.at("to_value"));
      v.absolute = get_num(g.at("absolute"));
      v.relative = get_num(g.at("relative"));
      s.gini = v;
    }
    if (j.contains("attention_share_max_error") &&
        !j["attention_share_max_error"].is_null()) {
      s.attention_share_max_error = j["attention_share_max_error"].get<double>();
    }
    if (j.contains("discovery_mean") && !j["discovery_mean"].is_null()) {
      s.discovery_mean = j["discovery_mean"].get<double>();
    }
    if (j.contains("errors")) {
      s.errors = j["errors"].get<std::map<std::string, std::string>>();
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::kSchema, std::string("summary: ") + e.what());
  }
  return s;
}

CorpusSummary read_summary(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return summary_from_json(ss.str());
}

void write_analysis(const Analysis& analysis, const fs::path& dir) {
  fs::create_directories(dir);
  for (const auto& series : analysis.series) {
    metrics::write_series_files(series, dir);
  }
  std::ofstream out(dir / "summary.json", std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot write " + (dir / "summary.json").string());
  out << summary_to_json(analysis.summary);
}

DisciplineReport summarize_disciplines(
    const std::vector<CorpusSummary>& summaries, GiniDeltaKind kind) {
  if (summaries.size() < 3) {
    fail(ErrorKind::kValidation, "need at least three analyzed corpora, got " +
                                     std::to_string(summaries.size()));
  }
  DisciplineReport report;
  std::vector<double> alpha, beta, dg;
  for (const CorpusSummary& s : summaries) {
    if (!s.growth || !s.heaps || !s.gini) {
      fail(ErrorKind::kValidation,
           "summary for '" + s.corpus + "' lacks growth, heaps or gini values");
    }
    DisciplineRow row{s.corpus, s.growth->slope, s.heaps->slope,
                      kind == GiniDeltaKind::kRelative ? s.gini->relative
                                                       : s.gini->absolute};
    alpha.push_back(row.alpha);
    beta.push_back(row.beta);
    dg.push_back(row.gini_delta);
    report.rows.push_back(std::move(row));
  }
  report.alpha_beta = metrics::cross_series_regression(alpha, beta);
  report.alpha_gini = metrics::cross_series_regression(alpha, dg);
  return report;
}

void write_report_csv(const DisciplineReport& report, std::ostream& out) {
  out << "corpus,alpha,beta,gini_delta\n";
  for (const auto& r : report.rows) {
    out << ingest::csv_escape(r.corpus) << ',' << metrics::format_number(r.alpha) << ','
        << metrics::format_number(r.beta) << ','
        << metrics::format_number(r.gini_delta) << '\n';
  }
}

std::string report_to_json(const DisciplineReport& report) {
  auto reg = [](const metrics::CrossRegression& c) {
    return json{{"slope", num(c.fit.slope)},
                {"intercept", num(c.fit.intercept)},
                {"r2", num(c.fit.r_squared)},
                {"n_points", c.fit.n_points},
                {"pearson_r", num(c.pearson_r)}};
  };
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"corpus", r.corpus},
                    {"alpha", num(r.alpha)},
                    {"beta", num(r.beta)},
                    {"gini_delta", num(r.gini_delta)}});
  }
  json j{{"rows", rows},
         {"alpha_beta", reg(report.alpha_beta)},
         {"alpha_gini", reg(report.alpha_gini)}};
  return j.dump(1) + "\n";
}

}  // namespace citedyn::experiment
