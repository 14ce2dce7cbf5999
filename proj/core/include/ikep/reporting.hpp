#pragma once

#include <compare>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ikep/simulator.hpp"

namespace ikep {

/// sum_p |x*_p - s*_p| / (2|M*|); 0 when |M*| = 0. Throws ValidationError on
/// length mismatch.
double total_relative_deviation(std::span<const double> x_star, std::span<const int> s_star, int matching_size);
/// max_p |x*_p - s*_p| / (2|M*|); 0 when |M*| = 0.
double max_relative_deviation(std::span<const double> x_star, std::span<const int> s_star, int matching_size);

/// (d1_c - lexmin_c) / d1_c; 0 when d1_c = 0.
double relative_improvement(double d1_credits, double lexmin_credits);

/// Average of sum_p |c^h_p| over the reports, for h = 1..rounds+1. Reports of
/// different lengths are averaged index by index.
std::vector<double> accumulated_deviation_series(std::span<const InstanceReport> reports);

struct CellKey {
  std::string setting;
  Concept solution = Concept::kShapley;
  Scenario scenario = Scenario::kArbitrary;
  int n = 0;

  friend auto operator<=>(const CellKey&, const CellKey&) = default;
  friend bool operator==(const CellKey&, const CellKey&) = default;
};

struct Metric {
  std::string name;
  double value = 0.0;
  int instances = 0;
  double stderr_ = 0.0;  // standard error of the mean; 0 for derived metrics

  friend bool operator==(const Metric&, const Metric&) = default;
};

struct CellSummary {
  CellKey key;
  std::vector<Metric> metrics;  // fixed order, see metric_names
  std::vector<double> series;   // accumulated deviation series

  /// The named metric, or nullptr.
  const Metric* find(std::string_view name) const;

  friend bool operator==(const CellSummary&, const CellSummary&) = default;
};

struct AggregateReport {
  std::vector<CellSummary> cells;  // sorted by key

  const CellSummary* find(const CellKey& key) const;

  friend bool operator==(const AggregateReport&, const AggregateReport&) = default;
};

/// Metric names in output order. Metrics without data in a cell (e.g.
/// stability with stability disabled) are omitted from that cell.
std::span<const std::string_view> metric_names();

/// Folds reports into per-cell averages. The result does not depend on the
/// order of the reports.
AggregateReport aggregate(std::span<const InstanceReport> reports);

/// One row per (cell, metric); columns setting, concept, scenario, n,
/// metric, value, instances, stderr.
std::string to_csv(const AggregateReport& a);
/// One JSON object per cell.
std::string to_jsonl(const AggregateReport& a);
/// Throws ValidationError on malformed input.
AggregateReport aggregate_from_jsonl(std::string_view text);
/// Summary tables: deviations per scenario and n, transplants against the
/// no-cooperation baseline, lexmin_c improvement, stability, game properties.
std::string to_markdown(const AggregateReport& a);

/// Mean seconds per round by task, per (setting, concept, scenario, n).
std::string timing_summary_csv(std::span<const InstanceReport> reports);
/// Fills InstanceReport::timings from timings_csv output. Rows without a
/// matching report are ignored.
void attach_timings(std::vector<InstanceReport>& reports, std::string_view csv);

struct SvgSeries {
  std::string label;
  std::vector<double> y;
};

/// Static line chart; series share the x values.
std::string svg_line_chart(std::string_view title, std::string_view x_label, std::string_view y_label,
                           const std::vector<double>& x, const std::vector<SvgSeries>& series);

/// One chart per setting: the metric against n, one line per (concept,
/// scenario). Returns (file stem, svg) pairs.
std::vector<std::pair<std::string, std::string>> deviation_charts(const AggregateReport& a,
                                                                  std::string_view metric);
/// One chart per (setting, n): accumulated deviation by round, one line per
/// (concept, scenario).
std::vector<std::pair<std::string, std::string>> series_charts(const AggregateReport& a);

}  // namespace ikep
