#include "ikep/reporting.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "ikep/error.hpp"

namespace ikep {

namespace {

constexpr std::array<std::string_view, 15> kMetricNames = {
    "total_relative_deviation",
    "max_relative_deviation",
    "zero_matching_instances",
    "transplants",
    "no_cooperation_transplants",
    "cooperation_gain",
    "relative_improvement",
    "stability_initial",
    "stability_solution",
    "core_nonempty_pct",
    "not_quasibalanced_pct",
    "convex_pct",
    "tau_equals_benefit_nonconvex_pct",
    "tau_fallbacks",
    "aborted_runs",
};

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

// Sum in sorted order so the result is independent of report order.
double stable_sum(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return std::accumulate(v.begin(), v.end(), 0.0);
}

Metric summarize(std::string_view name, std::vector<double> values) {
  Metric m;
  m.name = std::string(name);
  m.instances = static_cast<int>(values.size());
  if (values.empty()) return m;
  const double k = static_cast<double>(values.size());
  m.value = stable_sum(values) / k;
  if (values.size() > 1) {
    std::vector<double> sq;
    for (double v : values) sq.push_back((v - m.value) * (v - m.value));
    m.stderr_ = std::sqrt(stable_sum(sq) / (k - 1.0) / k);
  }
  return m;
}

double percent(const std::vector<bool>& flags) {
  if (flags.empty()) return 0.0;
  return 100.0 * static_cast<double>(std::count(flags.begin(), flags.end(), true)) /
         static_cast<double>(flags.size());
}

double sum_abs_deviation(std::span<const double> x, std::span<const int> s, double& max_dev) {
  if (x.size() != s.size()) throw ValidationError("x* and s* have different lengths");
  double total = 0.0;
  max_dev = 0.0;
  for (std::size_t p = 0; p < x.size(); ++p) {
    const double d = std::abs(x[p] - s[p]);
    total += d;
    max_dev = std::max(max_dev, d);
  }
  return total;
}

CellKey key_of(const InstanceReport& r) { return {r.setting, r.solution, r.scenario, r.n}; }

std::string escape_xml(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string cell_label(const CellKey& k) {
  return std::string(to_string(k.solution)) + " " + std::string(to_string(k.scenario));
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = line.find(sep, start);
    out.emplace_back(line.substr(start, end - start));
    if (end == std::string_view::npos) return out;
    start = end + 1;
  }
}

}  // namespace

double total_relative_deviation(std::span<const double> x_star, std::span<const int> s_star, int matching_size) {
  double max_dev = 0.0;
  const double total = sum_abs_deviation(x_star, s_star, max_dev);
  return matching_size == 0 ? 0.0 : total / (2.0 * matching_size);
}

double max_relative_deviation(std::span<const double> x_star, std::span<const int> s_star, int matching_size) {
  double max_dev = 0.0;
  sum_abs_deviation(x_star, s_star, max_dev);
  return matching_size == 0 ? 0.0 : max_dev / (2.0 * matching_size);
}

double relative_improvement(double d1_credits, double lexmin_credits) {
  return d1_credits == 0.0 ? 0.0 : (d1_credits - lexmin_credits) / d1_credits;
}

std::vector<double> accumulated_deviation_series(std::span<const InstanceReport> reports) {
  std::vector<std::vector<double>> by_round;
  for (const InstanceReport& r : reports) {
    if (by_round.size() < r.credit_series.size()) by_round.resize(r.credit_series.size());
    for (std::size_t h = 0; h < r.credit_series.size(); ++h) by_round[h].push_back(r.credit_series[h]);
  }
  std::vector<double> out;
  for (auto& v : by_round) out.push_back(stable_sum(v) / static_cast<double>(v.size()));
  return out;
}

const Metric* CellSummary::find(std::string_view name) const {
  for (const Metric& m : metrics) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

const CellSummary* AggregateReport::find(const CellKey& key) const {
  const auto it = std::lower_bound(cells.begin(), cells.end(), key,
                                   [](const CellSummary& c, const CellKey& k) { return c.key < k; });
  return it != cells.end() && it->key == key ? &*it : nullptr;
}

std::span<const std::string_view> metric_names() { return kMetricNames; }

AggregateReport aggregate(std::span<const InstanceReport> reports) {
  std::map<CellKey, std::vector<const InstanceReport*>> groups;
  for (const InstanceReport& r : reports) groups[key_of(r)].push_back(&r);

  AggregateReport out;
  for (const auto& [key, members] : groups) {
    std::map<std::string_view, std::vector<double>> values;
    std::vector<InstanceReport> finished;
    double aborted = 0.0;
    double zero = 0.0;
    for (const InstanceReport* r : members) {
      if (r->aborted) {
        ++aborted;
        continue;
      }
      finished.push_back(*r);
      zero += r->matching_size == 0;
      values["total_relative_deviation"].push_back(
          total_relative_deviation(r->x_star, r->s_star, r->matching_size));
      values["max_relative_deviation"].push_back(max_relative_deviation(r->x_star, r->s_star, r->matching_size));
      values["transplants"].push_back(r->transplants());
      values["no_cooperation_transplants"].push_back(r->no_cooperation_total);
      if (r->no_cooperation_total > 0) {
        values["cooperation_gain"].push_back(static_cast<double>(r->transplants()) / r->no_cooperation_total);
      }
      if (r->has_stability) {
        values["stability_initial"].push_back(r->stability_initial);
        values["stability_solution"].push_back(r->stability_solution);
        values["core_nonempty_pct"].push_back(r->accumulated_core_nonempty ? 100.0 : 0.0);
      }
      std::vector<bool> not_qb;
      std::vector<bool> coincide;
      for (std::size_t h = 0; h < r->quasibalanced.size(); ++h) {
        not_qb.push_back(!r->quasibalanced[h]);
        if (h < r->convex.size() && !r->convex[h] && h < r->tau_equals_benefit.size()) {
          coincide.push_back(r->tau_equals_benefit[h]);
        }
      }
      if (!not_qb.empty()) {
        values["not_quasibalanced_pct"].push_back(percent(not_qb));
        values["convex_pct"].push_back(percent(r->convex));
      }
      if (!coincide.empty()) values["tau_equals_benefit_nonconvex_pct"].push_back(percent(coincide));
      values["tau_fallbacks"].push_back(r->tau_fallbacks);
    }
    CellSummary cell;
    cell.key = key;
    for (std::string_view name : kMetricNames) {
      if (name == "zero_matching_instances") {
        cell.metrics.push_back({std::string(name), zero, static_cast<int>(finished.size()), 0.0});
      } else if (name == "aborted_runs") {
        cell.metrics.push_back({std::string(name), aborted, static_cast<int>(members.size()), 0.0});
      } else if (const auto it = values.find(name); it != values.end()) {
        cell.metrics.push_back(summarize(name, it->second));
      }
    }
    cell.series = accumulated_deviation_series(finished);
    out.cells.push_back(std::move(cell));
  }

  // lexmin_c against d1_c with the same setting, concept and n.
  for (CellSummary& cell : out.cells) {
    if (cell.key.scenario != Scenario::kLexminCredits) continue;
    CellKey other = cell.key;
    other.scenario = Scenario::kD1Credits;
    const CellSummary* d1 = out.find(other);
    if (d1 == nullptr) continue;
    const Metric* a = d1->find("total_relative_deviation");
    const Metric* b = cell.find("total_relative_deviation");
    if (a == nullptr || b == nullptr) continue;
    Metric m{"relative_improvement", relative_improvement(a->value, b->value), std::min(a->instances, b->instances),
             0.0};
    const auto pos = std::find_if(cell.metrics.begin(), cell.metrics.end(),
                                  [](const Metric& x) { return x.name == "stability_initial" ||
                                                               x.name == "core_nonempty_pct" ||
                                                               x.name == "not_quasibalanced_pct" ||
                                                               x.name == "convex_pct" ||
                                                               x.name == "tau_equals_benefit_nonconvex_pct" ||
                                                               x.name == "tau_fallbacks"; });
    cell.metrics.insert(pos, std::move(m));
  }
  return out;
}

std::string to_csv(const AggregateReport& a) {
  std::string out = "setting,concept,scenario,n,metric,value,instances,stderr\n";
  for (const CellSummary& c : a.cells) {
    const std::string prefix = c.key.setting + "," + std::string(to_string(c.key.solution)) + "," +
                               std::string(to_string(c.key.scenario)) + "," + std::to_string(c.key.n) + ",";
    for (const Metric& m : c.metrics) {
      out += prefix + m.name + "," + format_double(m.value) + "," + std::to_string(m.instances) + "," +
             format_double(m.stderr_) + "\n";
    }
    for (std::size_t h = 0; h < c.series.size(); ++h) {
      const Metric* count = c.find("transplants");
      out += prefix + "accumulated_deviation_round_" + std::to_string(h + 1) + "," + format_double(c.series[h]) +
             "," + std::to_string(count != nullptr ? count->instances : 0) + ",0\n";
    }
  }
  return out;
}

std::string to_jsonl(const AggregateReport& a) {
  std::string out;
  for (const CellSummary& c : a.cells) {
    nlohmann::ordered_json j;
    j["setting"] = c.key.setting;
    j["concept"] = std::string(to_string(c.key.solution));
    j["scenario"] = std::string(to_string(c.key.scenario));
    j["n"] = c.key.n;
    nlohmann::ordered_json metrics = nlohmann::ordered_json::array();
    for (const Metric& m : c.metrics) {
      metrics.push_back({{"name", m.name}, {"value", m.value}, {"instances", m.instances}, {"stderr", m.stderr_}});
    }
    j["metrics"] = std::move(metrics);
    j["series"] = c.series;
    out += j.dump() + "\n";
  }
  return out;
}

AggregateReport aggregate_from_jsonl(std::string_view text) {
  AggregateReport out;
  std::size_t line_no = 0;
  for (const std::string& line : split(text, '\n')) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const nlohmann::json j = nlohmann::json::parse(line);
      CellSummary c;
      c.key.setting = j.at("setting").get<std::string>();
      const auto k = parse_concept(j.at("concept").get<std::string>());
      const auto s = parse_scenario(j.at("scenario").get<std::string>());
      if (!k || !s) throw ValidationError("line " + std::to_string(line_no) + ": unknown concept or scenario");
      c.key.solution = *k;
      c.key.scenario = *s;
      c.key.n = j.at("n").get<int>();
      for (const auto& m : j.at("metrics")) {
        c.metrics.push_back({m.at("name").get<std::string>(), m.at("value").get<double>(),
                             m.at("instances").get<int>(), m.at("stderr").get<double>()});
      }
      c.series = j.at("series").get<std::vector<double>>();
      out.cells.push_back(std::move(c));
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  std::sort(out.cells.begin(), out.cells.end(), [](const CellSummary& a, const CellSummary& b) { return a.key < b.key; });
  return out;
}

std::string to_markdown(const AggregateReport& a) {
  std::ostringstream md;
  md.setf(std::ios::fixed);
  std::vector<std::string> settings;
  std::map<std::string, std::vector<int>> ns;
  for (const CellSummary& c : a.cells) {
    if (std::find(settings.begin(), settings.end(), c.key.setting) == settings.end()) settings.push_back(c.key.setting);
    auto& v = ns[c.key.setting];
    if (std::find(v.begin(), v.end(), c.key.n) == v.end()) v.push_back(c.key.n);
  }
  for (auto& [s, v] : ns) std::sort(v.begin(), v.end());

  auto value = [&](const CellKey& k, std::string_view metric) -> const Metric* {
    const CellSummary* c = a.find(k);
    return c == nullptr ? nullptr : c->find(metric);
  };
  auto header = [&](std::string_view first, const std::vector<int>& n_values) {
    md << "| " << first;
    for (int n : n_values) md << " | n=" << n;
    md << " |\n|---";
    for (std::size_t i = 0; i < n_values.size(); ++i) md << "|---:";
    md << "|\n";
  };

  md << "# Simulation summary\n";
  for (const std::string& setting : settings) {
    const std::vector<int>& n_values = ns[setting];
    std::vector<std::pair<Concept, Scenario>> rows;
    for (const CellSummary& c : a.cells) {
      if (c.key.setting != setting) continue;
      const auto row = std::make_pair(c.key.solution, c.key.scenario);
      if (std::find(rows.begin(), rows.end(), row) == rows.end()) rows.push_back(row);
    }
    std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
      return std::tie(x.second, x.first) < std::tie(y.second, y.first);
    });

    for (std::string_view metric : {std::string_view("total_relative_deviation"),
                                    std::string_view("max_relative_deviation")}) {
      md << "\n## " << (metric == "total_relative_deviation" ? "Average total" : "Average maximum")
         << " relative deviation (%), " << setting << " sizes\n\n";
      header("concept / scenario", n_values);
      for (const auto& [k, s] : rows) {
        md << "| " << to_string(k) << " / " << to_string(s);
        for (int n : n_values) {
          const Metric* m = value({setting, k, s, n}, metric);
          md << " | ";
          if (m != nullptr) md << std::setprecision(2) << 100.0 * m->value;
        }
        md << " |\n";
      }
    }

    md << "\n## Relative improvement of lexmin_c over d1_c (%), " << setting << " sizes\n\n";
    header("concept", n_values);
    for (Concept k : kAllConcepts) {
      bool any = false;
      for (int n : n_values) any = any || value({setting, k, Scenario::kLexminCredits, n}, "relative_improvement");
      if (!any) continue;
      md << "| " << to_string(k);
      for (int n : n_values) {
        const Metric* m = value({setting, k, Scenario::kLexminCredits, n}, "relative_improvement");
        md << " | ";
        if (m != nullptr) md << std::setprecision(2) << 100.0 * m->value;
      }
      md << " |\n";
    }

    md << "\n## Transplants with and without cooperation, " << setting << " sizes\n\n";
    md << "| n | no cooperation | cooperation | gain |\n|---:|---:|---:|---:|\n";
    for (int n : n_values) {
      std::vector<double> coop;
      std::vector<double> solo;
      std::vector<double> gain;
      for (const CellSummary& c : a.cells) {
        if (c.key.setting != setting || c.key.n != n) continue;
        if (const Metric* m = c.find("transplants")) coop.push_back(m->value);
        if (const Metric* m = c.find("no_cooperation_transplants")) solo.push_back(m->value);
        if (const Metric* m = c.find("cooperation_gain")) gain.push_back(m->value);
      }
      auto mean = [](const std::vector<double>& v) { return v.empty() ? 0.0 : stable_sum(v) / v.size(); };
      md << "| " << n << " | " << std::setprecision(2) << mean(solo) << " | " << mean(coop) << " | "
         << std::setprecision(3) << mean(gain) << " |\n";
    }

    bool stability = false;
    for (const auto& [k, s] : rows) {
      for (int n : n_values) stability = stability || value({setting, k, s, n}, "stability_initial");
    }
    if (stability) {
      md << "\n## Stability of the accumulated game (min excess, average over n), " << setting << " sizes\n\n";
      md << "| concept / scenario | accumulated initial allocation | accumulated solution | core nonempty (%) |\n";
      md << "|---|---:|---:|---:|\n";
      for (const auto& [k, s] : rows) {
        std::vector<double> init;
        std::vector<double> sol;
        std::vector<double> core;
        for (int n : n_values) {
          if (const Metric* m = value({setting, k, s, n}, "stability_initial")) init.push_back(m->value);
          if (const Metric* m = value({setting, k, s, n}, "stability_solution")) sol.push_back(m->value);
          if (const Metric* m = value({setting, k, s, n}, "core_nonempty_pct")) core.push_back(m->value);
        }
        if (init.empty()) continue;
        md << "| " << to_string(k) << " / " << to_string(s) << " | " << std::setprecision(2)
           << stable_sum(init) / init.size() << " | " << stable_sum(sol) / sol.size() << " | "
           << stable_sum(core) / core.size() << " |\n";
      }
    }

    md << "\n## Round games, " << setting << " sizes\n\n";
    md << "| n | not quasibalanced (%) | convex (%) | not convex, tau = benefit (%) |\n|---:|---:|---:|---:|\n";
    for (int n : n_values) {
      std::map<std::string_view, std::vector<double>> v;
      for (const CellSummary& c : a.cells) {
        if (c.key.setting != setting || c.key.n != n) continue;
        for (std::string_view name :
             {"not_quasibalanced_pct", "convex_pct", "tau_equals_benefit_nonconvex_pct"}) {
          if (const Metric* m = c.find(name)) v[name].push_back(m->value);
        }
      }
      md << "| " << n;
      for (std::string_view name : {"not_quasibalanced_pct", "convex_pct", "tau_equals_benefit_nonconvex_pct"}) {
        md << " | ";
        if (!v[name].empty()) md << std::setprecision(2) << stable_sum(v[name]) / v[name].size();
      }
      md << " |\n";
    }
  }
  return md.str();
}

std::string timing_summary_csv(std::span<const InstanceReport> reports) {
  std::map<CellKey, std::array<std::vector<double>, 6>> groups;
  for (const InstanceReport& r : reports) {
    auto& g = groups[key_of(r)];
    for (const RoundTimings& t : r.timings) {
      g[0].push_back(t.prep);
      g[1].push_back(t.graph);
      g[2].push_back(t.game);
      g[3].push_back(t.solution);
      g[4].push_back(t.selection);
      g[5].push_back(t.total());
    }
  }
  std::string out = "setting,concept,scenario,n,rounds,prep,graph,game,solution,selection,total\n";
  for (auto& [k, g] : groups) {
    if (g[0].empty()) continue;
    out += k.setting + "," + std::string(to_string(k.solution)) + "," + std::string(to_string(k.scenario)) + "," +
           std::to_string(k.n) + "," + std::to_string(g[0].size());
    for (auto& v : g) out += "," + format_double(stable_sum(v) / static_cast<double>(v.size()));
    out += "\n";
  }
  return out;
}

void attach_timings(std::vector<InstanceReport>& reports, std::string_view csv) {
  std::map<std::tuple<CellKey, int>, InstanceReport*> index;
  for (InstanceReport& r : reports) {
    r.timings.clear();
    index[{key_of(r), r.instance}] = &r;
  }
  bool first = true;
  for (const std::string& line : split(csv, '\n')) {
    if (first || line.empty()) {
      first = false;
      continue;
    }
    const std::vector<std::string> f = split(line, ',');
    if (f.size() != 12) throw ValidationError("timings row has " + std::to_string(f.size()) + " fields");
    const auto k = parse_concept(f[1]);
    const auto s = parse_scenario(f[2]);
    if (!k || !s) throw ValidationError("timings row names an unknown concept or scenario");
    try {
      const auto it = index.find({CellKey{f[0], *k, *s, std::stoi(f[3])}, std::stoi(f[4])});
      if (it == index.end()) continue;
      it->second->timings.push_back({std::stod(f[6]), std::stod(f[7]), std::stod(f[8]), std::stod(f[9]),
                                     std::stod(f[10])});
    } catch (const std::logic_error&) {
      throw ValidationError("timings row has a malformed number: " + line);
    }
  }
}

std::string svg_line_chart(std::string_view title, std::string_view x_label, std::string_view y_label,
                           const std::vector<double>& x, const std::vector<SvgSeries>& series) {
  constexpr double kWidth = 760;
  constexpr double kHeight = 440;
  constexpr double kLeft = 70;
  constexpr double kRight = 230;
  constexpr double kTop = 40;
  constexpr double kBottom = 50;
  static constexpr std::array<std::string_view, 10> kColors = {
      "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
      "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

  double x_lo = x.empty() ? 0.0 : *std::min_element(x.begin(), x.end());
  double x_hi = x.empty() ? 1.0 : *std::max_element(x.begin(), x.end());
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;
  double y_lo = 0.0;
  double y_hi = 0.0;
  for (const SvgSeries& s : series) {
    for (double v : s.y) {
      if (std::isfinite(v)) {
        y_lo = std::min(y_lo, v);
        y_hi = std::max(y_hi, v);
      }
    }
  }
  if (y_hi <= y_lo) y_hi = y_lo + 1.0;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + (v - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double v) { return kTop + plot_h - (v - y_lo) / (y_hi - y_lo) * plot_h; };
  auto num = [](double v) {
    std::ostringstream o;
    o.precision(4);
    o << v;
    return o.str();
  };

  std::ostringstream svg;
  svg.setf(std::ios::fixed);
  svg.precision(1);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kLeft << "\" y=\"24\" font-size=\"15\">" << escape_xml(title) << "</text>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w << "\" y2=\""
      << kTop + plot_h << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kTop + plot_h
      << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 5; ++t) {
    const double v = y_lo + (y_hi - y_lo) * t / 5.0;
    svg << "<line x1=\"" << kLeft - 4 << "\" y1=\"" << py(v) << "\" x2=\"" << kLeft + plot_w << "\" y2=\"" << py(v)
        << "\" stroke=\"#ddd\"/>\n";
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << py(v) + 4 << "\" text-anchor=\"end\">" << num(v)
        << "</text>\n";
  }
  const std::size_t step = std::max<std::size_t>(1, x.size() / 12);
  for (std::size_t i = 0; i < x.size(); i += step) {
    svg << "<text x=\"" << px(x[i]) << "\" y=\"" << kTop + plot_h + 18 << "\" text-anchor=\"middle\">"
        << num(x[i]) << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">"
      << escape_xml(x_label) << "</text>\n";
  svg << "<text transform=\"translate(16," << kTop + plot_h / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape_xml(y_label) << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const std::string_view color = kColors[k % kColors.size()];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" points=\"";
    for (std::size_t i = 0; i < x.size() && i < series[k].y.size(); ++i) {
      if (!std::isfinite(series[k].y[i])) continue;
      svg << px(x[i]) << "," << py(series[k].y[i]) << " ";
    }
    svg << "\"/>\n";
    const double ly = kTop + 14.0 * static_cast<double>(k);
    svg << "<line x1=\"" << kWidth - kRight + 14 << "\" y1=\"" << ly << "\" x2=\"" << kWidth - kRight + 34
        << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << kWidth - kRight + 40 << "\" y=\"" << ly + 4 << "\">" << escape_xml(series[k].label)
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::vector<std::pair<std::string, std::string>> deviation_charts(const AggregateReport& a,
                                                                  std::string_view metric) {
  std::map<std::string, std::map<std::string, std::map<int, double>>> data;
  std::map<std::string, std::vector<double>> xs;
  for (const CellSummary& c : a.cells) {
    if (const Metric* m = c.find(metric)) {
      data[c.key.setting][cell_label(c.key)][c.key.n] = 100.0 * m->value;
      auto& x = xs[c.key.setting];
      if (std::find(x.begin(), x.end(), c.key.n) == x.end()) x.push_back(c.key.n);
    }
  }
  std::vector<std::pair<std::string, std::string>> out;
  for (auto& [setting, lines] : data) {
    std::vector<double>& x = xs[setting];
    std::sort(x.begin(), x.end());
    std::vector<SvgSeries> series;
    for (const auto& [label, points] : lines) {
      SvgSeries s{label, {}};
      for (double n : x) {
        const auto it = points.find(static_cast<int>(n));
        s.y.push_back(it == points.end() ? std::nan("") : it->second);
      }
      series.push_back(std::move(s));
    }
    out.emplace_back(std::string(metric) + "_" + setting,
                     svg_line_chart(std::string(metric) + " (" + setting + " sizes)", "countries", "percent", x,
                                    series));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> series_charts(const AggregateReport& a) {
  std::map<std::pair<std::string, int>, std::vector<SvgSeries>> groups;
  for (const CellSummary& c : a.cells) {
    if (!c.series.empty()) groups[{c.key.setting, c.key.n}].push_back({cell_label(c.key), c.series});
  }
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [k, series] : groups) {
    std::size_t len = 0;
    for (const SvgSeries& s : series) len = std::max(len, s.y.size());
    std::vector<double> x(len);
    std::iota(x.begin(), x.end(), 1.0);
    out.emplace_back("accumulated_deviation_" + k.first + "_n" + std::to_string(k.second),
                     svg_line_chart("accumulated deviation (" + k.first + " sizes, n=" + std::to_string(k.second) +
                                        ")",
                                    "round", "sum of |c_p|", x, series));
  }
  return out;
}

}  // namespace ikep
