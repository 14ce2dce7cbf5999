#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ikep/config.hpp"
#include "ikep/error.hpp"
#include "ikep/instance_io.hpp"
#include "ikep/reporting.hpp"
#include "ikep/simulator.hpp"
#include "ikep/verify.hpp"

namespace fs = std::filesystem;
using namespace ikep;

namespace {

struct Options {
  std::string config;
  std::string out = "ikep-out";
  std::string in;
  std::optional<std::uint64_t> seed;
  int parallel = 0;
  std::vector<std::string> settings;
  std::vector<std::string> n;
  std::vector<std::string> concepts;
  std::vector<std::string> scenarios;
  std::vector<std::string> formats;
  bool svg = false;
  std::string level = "small";
  bool quiet = false;
};

std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const std::string& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

// "4,5,6" or "4-10" or a mix.
std::vector<int> parse_n(const std::vector<std::string>& items) {
  std::vector<int> out;
  for (const std::string& part : split_list(items)) {
    const std::size_t dash = part.find('-');
    try {
      if (dash == std::string::npos) {
        out.push_back(std::stoi(part));
      } else {
        const int lo = std::stoi(part.substr(0, dash));
        const int hi = std::stoi(part.substr(dash + 1));
        if (lo > hi) throw ValidationError("--n: empty range " + part);
        for (int k = lo; k <= hi; ++k) out.push_back(k);
      }
    } catch (const std::logic_error&) {
      throw ValidationError("--n: not a number or range: " + part);
    }
  }
  return out;
}

template <typename T, typename Parse>
std::vector<T> parse_names(const std::vector<std::string>& items, std::string_view flag, Parse parse) {
  std::vector<T> out;
  std::vector<std::string> bad;
  for (const std::string& part : split_list(items)) {
    const auto v = parse(part);
    if (v) {
      out.push_back(*v);
    } else {
      bad.push_back(part);
    }
  }
  if (!bad.empty()) {
    std::string msg = std::string(flag) + ": unknown value";
    for (const std::string& b : bad) msg += " " + b;
    throw ValidationError(msg);
  }
  return out;
}

// With --config the filters must select from the configured lists; without
// it they replace the defaults.
template <typename T, typename Name>
void apply_filter(std::vector<T>& configured, const std::vector<T>& filter, bool restrict, std::string_view flag,
                  Name name, std::vector<std::string>& bad) {
  if (filter.empty()) return;
  if (restrict) {
    for (const T& v : filter) {
      if (std::find(configured.begin(), configured.end(), v) == configured.end()) {
        bad.push_back(std::string(flag) + ": " + name(v) + " is not in the config");
      }
    }
  }
  configured = filter;
}

SimulationConfig load_config(const Options& o) {
  SimulationConfig cfg = o.config.empty() ? SimulationConfig{} : config_from_json(read_file(o.config));
  if (o.seed) cfg.seed = *o.seed;
  const bool restrict = !o.config.empty();
  std::vector<std::string> bad;
  apply_filter(cfg.settings, parse_names<SizeSetting>(o.settings, "--setting", parse_size_setting), restrict,
               "--setting", [](SizeSetting s) { return std::string(to_string(s)); }, bad);
  apply_filter(cfg.n_values, parse_n(o.n), restrict, "--n", [](int k) { return std::to_string(k); }, bad);
  apply_filter(cfg.concepts, parse_names<Concept>(o.concepts, "--concepts", parse_concept), restrict, "--concepts",
               [](Concept c) { return std::string(to_string(c)); }, bad);
  apply_filter(cfg.scenarios, parse_names<Scenario>(o.scenarios, "--scenarios", parse_scenario), restrict,
               "--scenarios", [](Scenario s) { return std::string(to_string(s)); }, bad);
  if (!bad.empty()) {
    std::string msg = "invalid filters:";
    for (const std::string& b : bad) msg += "\n  " + b;
    throw ValidationError(msg);
  }
  cfg.validate();
  return cfg;
}

int worker_count(const Options& o) {
  if (o.parallel > 0) return o.parallel;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::set<std::string> formats(const Options& o) {
  std::set<std::string> out;
  for (const std::string& f : split_list(o.formats)) {
    if (f != "csv" && f != "jsonl" && f != "md") throw ValidationError("--format: unknown value " + f);
    out.insert(f);
  }
  if (out.empty()) out.insert("csv");
  return out;
}

void emit_aggregate(const std::vector<InstanceReport>& reports, const fs::path& dir, const Options& o) {
  fs::create_directories(dir);
  const AggregateReport a = aggregate(reports);
  const std::set<std::string> fmts = formats(o);
  if (fmts.count("csv")) write_file((dir / "aggregate.csv").string(), to_csv(a));
  if (fmts.count("jsonl")) write_file((dir / "aggregate.jsonl").string(), to_jsonl(a));
  if (fmts.count("md")) write_file((dir / "summary.md").string(), to_markdown(a));
  bool timed = false;
  for (const InstanceReport& r : reports) timed = timed || !r.timings.empty();
  if (timed) write_file((dir / "timing_summary.csv").string(), timing_summary_csv(reports));
  if (o.svg) {
    fs::create_directories(dir / "svg");
    for (std::string_view metric : {"total_relative_deviation", "max_relative_deviation"}) {
      for (const auto& [stem, svg] : deviation_charts(a, metric)) {
        write_file((dir / "svg" / (stem + ".svg")).string(), svg);
      }
    }
    for (const auto& [stem, svg] : series_charts(a)) write_file((dir / "svg" / (stem + ".svg")).string(), svg);
  }
}

std::vector<InstanceReport> read_reports(const fs::path& dir) {
  const std::string text = read_file((dir / "reports.jsonl").string());
  std::vector<InstanceReport> reports;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (!line.empty()) reports.push_back(report_from_json(line));
  }
  if (fs::exists(dir / "timings.csv")) attach_timings(reports, read_file((dir / "timings.csv").string()));
  return reports;
}

int cmd_generate(const Options& o) {
  const SimulationConfig cfg = load_config(o);
  const fs::path dir = fs::path(o.out) / "instances";
  fs::create_directories(dir);
  write_file((fs::path(o.out) / "config.json").string(), config_to_json(cfg) + "\n");
  int count = 0;
  for (SizeSetting s : cfg.settings) {
    for (int n : cfg.n_values) {
      for (int i = 0; i < cfg.instances; ++i) {
        const Instance inst = make_instance(cfg, s, n, i);
        const std::string name =
            std::string(to_string(s)) + "_n" + std::to_string(n) + "_" + std::to_string(i) + ".json";
        save_graph((dir / name).string(), inst.graph);
        ++count;
      }
    }
  }
  if (!o.quiet) std::cout << "wrote " << count << " instances to " << dir.string() << "\n";
  return 0;
}

int cmd_run(const Options& o) {
  const SimulationConfig cfg = load_config(o);
  const fs::path dir(o.out);
  fs::create_directories(dir);
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<InstanceReport> reports = run_batch(cfg, worker_count(o), [&](int done, int total) {
    if (!o.quiet) std::cerr << "\rinstances " << done << "/" << total << std::flush;
  });
  if (!o.quiet) std::cerr << "\n";
  std::string lines;
  for (const InstanceReport& r : reports) lines += report_to_json(r, true) + "\n";
  write_file((dir / "config.json").string(), config_to_json(cfg) + "\n");
  write_file((dir / "reports.jsonl").string(), lines);
  write_file((dir / "timings.csv").string(), timings_csv(reports));
  emit_aggregate(reports, dir, o);
  int aborted = 0;
  for (const InstanceReport& r : reports) {
    if (r.aborted) {
      ++aborted;
      std::cerr << "aborted: " << to_string(r.solution) << " " << to_string(r.scenario) << " n=" << r.n
                << " instance " << r.instance << ": " << r.diagnostic << "\n";
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.quiet) {
    std::cout << "wrote " << reports.size() << " reports to " << (dir / "reports.jsonl").string() << " in "
              << secs << " s\n";
  }
  return aborted == 0 ? 0 : 4;
}

int cmd_report(const Options& o) {
  const fs::path in = o.in.empty() ? fs::path(o.out) : fs::path(o.in);
  const std::vector<InstanceReport> reports = read_reports(in);
  emit_aggregate(reports, fs::path(o.out), o);
  if (!o.quiet) std::cout << "aggregated " << reports.size() << " reports into " << o.out << "\n";
  return 0;
}

int cmd_verify(const Options& o) {
  if (o.level != "small" && o.level != "full") throw ValidationError("--level: expected small or full");
  const bool full = o.level == "full";
  const std::uint64_t seed = o.seed.value_or(1);
  std::vector<verify::SuiteResult> results;
  results.push_back(verify::selections(derive_seed(seed, {1}), full ? 1000 : 200));
  results.push_back(verify::intervals(derive_seed(seed, {2}), full ? 1000 : 200));
  results.push_back(verify::nucleolus(derive_seed(seed, {3}), full ? 100 : 20, full ? 10000 : 1000));
  results.push_back(verify::concepts(derive_seed(seed, {4}), full ? 500 : 100));
  bool ok = true;
  for (const verify::SuiteResult& r : results) {
    std::cout << (r.passed() ? "PASS " : "FAIL ") << r.name << ": " << r.cases << " cases, " << r.mismatches
              << " mismatches";
    if (!r.first_failure.empty()) std::cout << " (" << r.first_failure << ")";
    std::cout << "\n";
    ok = ok && r.passed();
  }
  return ok ? 0 : 1;
}

std::string fraction(double v) {
  for (int d = 1; d <= 60; ++d) {
    const double k = std::round(v * d);
    if (std::abs(k / d - v) < 1e-9) {
      const long num = std::lround(k);
      if (num == 0) return "0";
      return d == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(d);
    }
  }
  std::ostringstream o;
  o << v;
  return o.str();
}

template <typename T>
std::string vec(const std::vector<T>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + fraction(static_cast<double>(v[i]));
  return out + ")";
}

std::string edges(const Matching& m) {
  std::string out = "{";
  for (std::size_t i = 0; i < m.edges.size(); ++i) {
    out += (i ? ", " : "") + walkthrough_vertex_name(m.edges[i].u) + walkthrough_vertex_name(m.edges[i].v);
  }
  return out + "}";
}

void print_walkthrough(Concept solution) {
  RunOptions opt;
  opt.rounds = 2;
  const InstanceReport r = run_instance(walkthrough_instance(), solution, Scenario::kLexminCredits, opt);
  std::cout << to_string(solution) << ", lexmin_c\n";
  for (const RoundRecord& rec : r.rounds) {
    const int h = rec.round;
    std::vector<double> next(rec.x.size());
    for (std::size_t p = 0; p < next.size(); ++p) next[p] = rec.x[p] - rec.s[p];
    std::cout << "  round " << h << ": y^" << h << "=" << vec(rec.y) << " c^" << h << "=" << vec(rec.c) << " x^"
              << h << "=" << vec(rec.x) << " M^" << h << "=" << edges(rec.matching) << " s=" << vec(rec.s) << " c^"
              << h + 1 << "=" << vec(next) << "\n";
  }
}

int cmd_demo() {
  std::cout << "Two-round example: round 1 path i1-i2-i3-i4 with V1={i1}, V2={i2,i3}, V3={i4};\n"
               "round 2 adds j1, j2, j3 (one per country) with edges j1j2 and j1j3.\n"
               "Allocations are in transplants (twice the game values).\n";
  print_walkthrough(Concept::kShapley);
  print_walkthrough(Concept::kNucleolus);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"International kidney exchange simulator"};
  app.require_subcommand(1);
  Options o;

  auto batch_flags = [&](CLI::App* c) {
    c->add_option("--config", o.config, "JSON config file")->check(CLI::ExistingFile);
    c->add_option("--out", o.out, "Output directory");
    c->add_option("--seed", o.seed, "Master seed override");
    c->add_option("--parallel", o.parallel, "Worker threads (default: hardware threads)")
        ->check(CLI::NonNegativeNumber);
    c->add_option("--setting", o.settings, "equal|varying (comma list)");
    c->add_option("--n", o.n, "Country counts, e.g. 4,5,6 or 4-10");
    c->add_option("--concepts", o.concepts, "shapley,nucleolus,banzhaf,tau,benefit,contribution");
    c->add_option("--scenarios", o.scenarios, "arbitrary,d1,d1_c,lexmin,lexmin_c,d1_bar,lexmin_bar");
    c->add_flag("--quiet", o.quiet, "No progress output");
  };
  auto output_flags = [&](CLI::App* c) {
    c->add_option("--format", o.formats, "csv|jsonl|md (comma list, default csv)");
    c->add_flag("--svg", o.svg, "Also write SVG line charts");
  };

  CLI::App* generate = app.add_subcommand("generate", "Write generated instances as JSON graph files");
  batch_flags(generate);
  CLI::App* run = app.add_subcommand("run", "Simulate the configured batch and write reports");
  batch_flags(run);
  output_flags(run);
  CLI::App* report = app.add_subcommand("report", "Aggregate a reports directory");
  report->add_option("--in", o.in, "Directory holding reports.jsonl (default: --out)");
  report->add_option("--out", o.out, "Output directory");
  report->add_flag("--quiet", o.quiet, "No progress output");
  output_flags(report);
  CLI::App* verify = app.add_subcommand("verify", "Compare the algorithms against brute-force references");
  verify->add_option("--level", o.level, "small|full");
  verify->add_option("--seed", o.seed, "Seed for the random cases");
  CLI::App* demo = app.add_subcommand("demo", "Print the two-round worked example");

  CLI11_PARSE(app, argc, argv);
  try {
    if (generate->parsed()) return cmd_generate(o);
    if (run->parsed()) return cmd_run(o);
    if (report->parsed()) return cmd_report(o);
    if (verify->parsed()) return cmd_verify(o);
    if (demo->parsed()) return cmd_demo();
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
