// coflowbench: experiment harness for the coflow scheduling library.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coflow/coflow.hpp"
#include "json.hpp"

namespace {

using namespace coflow;
using nlohmann::ordered_json;

constexpr const char* kVersion = "1.0.0";

// Where instances come from: explicit files, or a generated corpus.
struct SourceOptions {
  std::vector<std::string> inputs;
  std::size_t m = 16;
  std::size_t n = 160;
  std::size_t count = 30;
  std::uint64_t seed = 1;
  bool releases = false;
  std::int64_t gap_lo = kDefaultGapLo;
  std::int64_t gap_hi = kDefaultGapHi;
  std::vector<std::size_t> only;  // corpus positions to keep (empty: all)
};

struct NamedInstance {
  std::string name;
  Instance instance;
};

void add_source_options(CLI::App* cmd, SourceOptions& s, bool default_releases) {
  s.releases = default_releases;
  cmd->add_option("-i,--input", s.inputs, "Instance CSV files (flow or compact format); overrides the corpus");
  cmd->add_option("--m", s.m, "Corpus network size")->capture_default_str()->check(CLI::Range(1, 4096));
  cmd->add_option("--n", s.n, "Corpus coflows per instance")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--count", s.count, "Corpus instances (0-4 sparse, 5-9 dense, rest uniform)")->capture_default_str();
  cmd->add_option("--seed", s.seed, "Corpus seed")->capture_default_str();
  cmd->add_option("--releases", s.releases, "Draw release times with gaps uniform on [gap-lo, gap-hi]")
      ->capture_default_str();
  cmd->add_option("--gap-lo", s.gap_lo, "Smallest inter-arrival gap")->capture_default_str();
  cmd->add_option("--gap-hi", s.gap_hi, "Largest inter-arrival gap")->capture_default_str();
  cmd->add_option("--only", s.only, "Keep only these corpus positions (0-based)");
}

std::vector<NamedInstance> load_instances(const SourceOptions& s) {
  std::vector<NamedInstance> out;
  if (!s.inputs.empty()) {
    for (const std::string& path : s.inputs) out.push_back({path, io::read_instance_file(path)});
    return out;
  }
  CorpusSpec spec;
  spec.m = s.m;
  spec.n = s.n;
  spec.count = s.count;
  spec.seed = s.seed;
  spec.releases = s.releases;
  spec.gap_lo = s.gap_lo;
  spec.gap_hi = s.gap_hi;
  for (std::size_t i = 0; i < s.count; ++i) {
    if (!s.only.empty() && std::find(s.only.begin(), s.only.end(), i) == s.only.end()) continue;
    out.push_back({"corpus-" + std::to_string(i + 1) + "-" + std::string(density_name(corpus_density(i))),
                   corpus_instance(spec, i)});
  }
  return out;
}

ordered_json source_json(const SourceOptions& s) {
  ordered_json j;
  if (!s.inputs.empty()) {
    j["inputs"] = s.inputs;
  } else {
    j = {{"m", s.m}, {"n", s.n}, {"count", s.count}, {"seed", s.seed}, {"releases", s.releases},
         {"gap_lo", s.gap_lo}, {"gap_hi", s.gap_hi}};
    if (!s.only.empty()) j["only"] = s.only;
  }
  return j;
}

std::vector<Rule> parse_rules(const std::vector<std::string>& names) {
  std::vector<Rule> rules;
  for (const auto& n : names) {
    if (n == "all") return {kAllRules.begin(), kAllRules.end()};
    rules.push_back(parse_rule(n));
  }
  return rules;
}

std::vector<ScheduleCase> parse_cases(const std::vector<std::string>& names) {
  std::vector<ScheduleCase> cases;
  for (const auto& n : names) {
    if (n == "all") return {kAllCases.begin(), kAllCases.end()};
    cases.push_back(parse_case(n));
  }
  return cases;
}

std::string fixed(double v, int digits = 6) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

std::string variant(Rule r, ScheduleCase c) { return std::string(rule_name(r)) + "_" + case_name(c); }

// Output sink: a file, or stdout for "-" / empty.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& out() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void write_summary(const std::string& path, const std::string& verb, ordered_json config, ordered_json totals) {
  if (path.empty()) return;
  ordered_json j;
  j["tool"] = "coflowbench";
  j["version"] = kVersion;
  j["verb"] = verb;
  j["config"] = std::move(config);
  j["totals"] = std::move(totals);
  Sink sink(path);
  sink.out() << j.dump(2) << '\n';
}

struct OutputOptions {
  std::string out = "-";
  std::string timing;
  std::string summary;
  std::size_t jobs = 1;
};

void add_output_options(CLI::App* cmd, OutputOptions& o, bool timing) {
  cmd->add_option("-o,--out", o.out, "Result CSV ('-' for stdout)")->capture_default_str();
  if (timing) cmd->add_option("--timing", o.timing, "Wall-clock timing CSV");
  cmd->add_option("--summary", o.summary, "JSON summary sidecar");
  cmd->add_option("-j,--jobs", o.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
}

// ---------------------------------------------------------------- gen

struct GenOptions {
  std::size_t m = 16;
  std::size_t n = 160;
  std::string density = "uniform";
  std::uint64_t seed = 1;
  std::int64_t gap_lo = 0;
  std::int64_t gap_hi = 0;
  std::string family;
  double a = 1.0;
  bool diagonal = false;
  std::int64_t spread_seed = -1;
  bool compact = false;
  std::string out = "-";
};

int cmd_gen(const GenOptions& o) {
  Instance inst = o.family.empty()        ? generate_synthetic(o.m, o.n, parse_density(o.density), o.seed)
                  : o.family == "example1" ? example1_family(o.m, o.n, o.a)
                  : o.family == "example2" ? example2_family(o.m, o.n, o.a)
                                           : throw std::invalid_argument("unknown family '" + o.family + "'");
  if (o.gap_hi > 0) inst = with_release_times(inst, o.gap_lo, o.gap_hi, o.seed ^ 0x9e3779b97f4a7c15ULL);
  if (o.diagonal) inst = diagonalize(inst);
  if (o.spread_seed >= 0) inst = spread_diagonal(diagonalize(inst), static_cast<std::uint64_t>(o.spread_seed));
  Sink sink(o.out);
  if (o.compact) {
    io::write_instance_compact(sink.out(), inst);
  } else {
    io::write_instance(sink.out(), inst);
  }
  return 0;
}

// ---------------------------------------------------------------- run-grid

struct GridOptions {
  SourceOptions source;
  OutputOptions output;
  std::vector<std::string> rules{"all"};
  std::vector<std::string> cases{"all"};
  std::string anchor_rule = "lp";
  std::string anchor_case = "c";
  bool lp_bound = false;
};

int cmd_run_grid(const GridOptions& o) {
  const std::vector<NamedInstance> instances = load_instances(o.source);
  std::vector<Rule> rules = parse_rules(o.rules);
  std::vector<ScheduleCase> cases = parse_cases(o.cases);
  const Rule anchor_rule = parse_rule(o.anchor_rule);
  const ScheduleCase anchor_case = parse_case(o.anchor_case);

  std::vector<GridEvaluation> grids(instances.size());
  std::vector<Decimal> anchors(instances.size());
  std::vector<double> bounds(instances.size(), 0.0);
  parallel_for(instances.size(), o.output.jobs, [&](std::size_t i) {
    const Instance& inst = instances[i].instance;
    grids[i] = evaluate_grid(inst, rules, cases);
    try {
      const std::array<Rule, 1> ar{anchor_rule};
      const std::array<ScheduleCase, 1> ac{anchor_case};
      bool present = std::ranges::find(rules, anchor_rule) != rules.end() &&
                     std::ranges::find(cases, anchor_case) != cases.end();
      anchors[i] = present ? grids[i].at(anchor_rule, anchor_case) : evaluate_grid(inst, ar, ac).objective[0][0];
    } catch (const std::exception& e) {
      throw std::runtime_error("anchor " + variant(anchor_rule, anchor_case) + " failed on " + instances[i].name + ": " +
                               e.what());
    }
    if (o.lp_bound) bounds[i] = lp_lower_bound(inst);
  });

  Sink sink(o.output.out);
  std::ostream& out = sink.out();
  out << "instance,n,m,anchor,anchor_objective";
  for (Rule r : rules) {
    for (ScheduleCase c : cases) out << ',' << variant(r, c);
  }
  if (o.lp_bound) out << ",lp_bound_ratio";
  out << '\n';
  std::vector<std::vector<double>> sums(rules.size(), std::vector<double>(cases.size(), 0.0));
  double bound_sum = 0.0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& inst = instances[i].instance;
    out << instances[i].name << ',' << inst.size() << ',' << inst.m() << ',' << variant(anchor_rule, anchor_case) << ','
        << anchors[i].to_string();
    for (std::size_t r = 0; r < rules.size(); ++r) {
      for (std::size_t c = 0; c < cases.size(); ++c) {
        const double v = ratio(grids[i].objective[r][c], anchors[i]);
        sums[r][c] += v;
        out << ',' << fixed(v);
      }
    }
    if (o.lp_bound) {
      const double v = bounds[i] / anchors[i].to_double();
      bound_sum += v;
      out << ',' << fixed(v);
    }
    out << '\n';
  }
  ordered_json means;
  if (!instances.empty()) {
    const double count = static_cast<double>(instances.size());
    out << "mean,,,,";
    for (std::size_t r = 0; r < rules.size(); ++r) {
      for (std::size_t c = 0; c < cases.size(); ++c) {
        out << ',' << fixed(sums[r][c] / count);
        means[variant(rules[r], cases[c])] = std::round(sums[r][c] / count * 1e6) / 1e6;
      }
    }
    if (o.lp_bound) out << ',' << fixed(bound_sum / count);
    out << '\n';
  }

  if (!o.output.timing.empty()) {
    Sink t(o.output.timing);
    t.out() << "instance,rule,ordering_seconds";
    for (ScheduleCase c : cases) t.out() << ",schedule_seconds_" << case_name(c);
    t.out() << '\n';
    for (std::size_t i = 0; i < instances.size(); ++i) {
      for (std::size_t r = 0; r < rules.size(); ++r) {
        t.out() << instances[i].name << ',' << rule_name(rules[r]) << ',' << fixed(grids[i].ordering_seconds[r]);
        for (std::size_t c = 0; c < cases.size(); ++c) t.out() << ',' << fixed(grids[i].schedule_seconds[r][c]);
        t.out() << '\n';
      }
    }
  }
  ordered_json config = {{"source", source_json(o.source)},
                         {"rules", o.rules},
                         {"cases", o.cases},
                         {"anchor", variant(anchor_rule, anchor_case)},
                         {"lp_bound", o.lp_bound}};
  write_summary(o.output.summary, "run-grid", config,
                {{"instances", instances.size()}, {"variants", rules.size() * cases.size()}, {"mean_ratio", means}});
  return 0;
}

// ---------------------------------------------------------------- release-sweep

struct SweepOptions {
  OutputOptions output;
  std::size_t m = 16;
  std::size_t n = 160;
  std::string density = "sparse";
  std::vector<std::int64_t> uppers = default_sweep_uppers();
  std::size_t samples = 250;
  std::vector<std::string> rules{"all"};
  std::string anchor = "lp";
  std::string schedule_case = "c";
  std::uint64_t seed = 1;
};

int cmd_release_sweep(const SweepOptions& o) {
  const std::vector<Rule> rules = parse_rules(o.rules);
  const Rule anchor = parse_rule(o.anchor);
  const ScheduleCase c = parse_case(o.schedule_case);
  Stopwatch clock;
  const auto points =
      release_sweep(o.m, o.n, parse_density(o.density), o.uppers, o.samples, rules, anchor, c, o.seed, o.output.jobs);
  Sink sink(o.output.out);
  sink.out() << "upper,samples";
  for (Rule r : rules) sink.out() << ',' << rule_name(r);
  sink.out() << '\n';
  ordered_json curves = ordered_json::object();
  for (const auto& p : points) {
    sink.out() << p.upper << ',' << o.samples;
    for (std::size_t r = 0; r < rules.size(); ++r) {
      sink.out() << ',' << fixed(p.mean_ratio[r]);
      curves[std::string(rule_name(rules[r]))].push_back(std::round(p.mean_ratio[r] * 1e6) / 1e6);
    }
    sink.out() << '\n';
  }
  if (!o.output.timing.empty()) {
    Sink t(o.output.timing);
    t.out() << "verb,total_seconds\nrelease-sweep," << fixed(clock.seconds()) << '\n';
  }
  write_summary(o.output.summary, "release-sweep",
                {{"m", o.m},
                 {"n", o.n},
                 {"density", o.density},
                 {"uppers", o.uppers},
                 {"samples", o.samples},
                 {"rules", o.rules},
                 {"anchor", o.anchor},
                 {"case", o.schedule_case},
                 {"seed", o.seed}},
                {{"points", points.size()}, {"mean_ratio", curves}});
  return 0;
}

// ---------------------------------------------------------------- online

struct OnlineOptions {
  SourceOptions source;
  OutputOptions output;
  std::vector<std::string> rules{"all"};
};

int cmd_online(const OnlineOptions& o) {
  const std::vector<NamedInstance> instances = load_instances(o.source);
  const std::vector<Rule> rules = parse_rules(o.rules);
  struct Row {
    PortBound bound;
    std::vector<Decimal> online, offline;
    std::vector<std::size_t> preemptions;
    std::vector<double> online_seconds, offline_seconds;
  };
  std::vector<Row> rows(instances.size());
  parallel_for(instances.size(), o.output.jobs, [&](std::size_t i) {
    const Instance& inst = instances[i].instance;
    Row& row = rows[i];
    row.bound = port_aggregation_bound(inst);
    for (Rule r : rules) {
      Stopwatch a;
      OnlineStats stats;
      row.online.push_back(validated_objective(inst, run_online(inst, r, {}, &stats)));
      row.online_seconds.push_back(a.seconds());
      row.preemptions.push_back(stats.preemptions);
      Stopwatch b;
      row.offline.push_back(validated_objective(inst, run_schedule(inst, compute_ordering(inst, r), ScheduleCase::kC)));
      row.offline_seconds.push_back(b.seconds());
    }
  });
  const auto lp_pos = std::ranges::find(rules, Rule::kLp);
  Sink sink(o.output.out);
  std::ostream& out = sink.out();
  out << "instance,n,m,port_bound,bound_exact";
  for (Rule r : rules) out << ",online_" << rule_name(r) << ",offline_c_" << rule_name(r) << ",preemptions_" << rule_name(r);
  if (lp_pos != rules.end()) out << ",bound_over_online_LP";
  out << '\n';
  double ratio_sum = 0.0, ratio_min = 1e300, ratio_max = 0.0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const Row& row = rows[i];
    out << instances[i].name << ',' << instances[i].instance.size() << ',' << instances[i].instance.m() << ','
        << row.bound.value.to_string() << ',' << (row.bound.exact ? 1 : 0);
    for (std::size_t r = 0; r < rules.size(); ++r) {
      out << ',' << row.online[r].to_string() << ',' << row.offline[r].to_string() << ',' << row.preemptions[r];
    }
    if (lp_pos != rules.end()) {
      const double v = ratio(row.bound.value, row.online[static_cast<std::size_t>(lp_pos - rules.begin())]);
      ratio_sum += v;
      ratio_min = std::min(ratio_min, v);
      ratio_max = std::max(ratio_max, v);
      out << ',' << fixed(v);
    }
    out << '\n';
  }
  if (!o.output.timing.empty()) {
    Sink t(o.output.timing);
    t.out() << "instance,rule,online_seconds,offline_seconds\n";
    for (std::size_t i = 0; i < instances.size(); ++i) {
      for (std::size_t r = 0; r < rules.size(); ++r) {
        t.out() << instances[i].name << ',' << rule_name(rules[r]) << ',' << fixed(rows[i].online_seconds[r]) << ','
                << fixed(rows[i].offline_seconds[r]) << '\n';
      }
    }
  }
  ordered_json totals = {{"instances", instances.size()}};
  if (lp_pos != rules.end() && !instances.empty()) {
    totals["bound_over_online_LP"] = {{"mean", std::round(ratio_sum / static_cast<double>(instances.size()) * 1e6) / 1e6},
                                      {"min", std::round(ratio_min * 1e6) / 1e6},
                                      {"max", std::round(ratio_max * 1e6) / 1e6}};
  }
  write_summary(o.output.summary, "online", {{"source", source_json(o.source)}, {"rules", o.rules}}, totals);
  return 0;
}

// ---------------------------------------------------------------- cost-of-matching

struct MatchingOptions {
  SourceOptions source;
  OutputOptions output;
  std::vector<std::string> rules{"lp"};
  std::vector<std::string> cases{"d"};
  std::uint64_t spread_seed = 7;
};

int cmd_cost_of_matching(const MatchingOptions& o) {
  const std::vector<NamedInstance> instances = load_instances(o.source);
  const std::vector<Rule> rules = parse_rules(o.rules);
  const std::vector<ScheduleCase> cases = parse_cases(o.cases);
  std::vector<GridEvaluation> diag(instances.size()), spread(instances.size());
  parallel_for(instances.size(), o.output.jobs, [&](std::size_t i) {
    const Instance d = diagonalize(instances[i].instance);
    const Instance s = spread_diagonal(d, o.spread_seed + i);
    diag[i] = evaluate_grid(d, rules, cases);
    spread[i] = evaluate_grid(s, rules, cases);
  });
  Sink sink(o.output.out);
  sink.out() << "instance,rule,case,diagonal,spread,spread_over_diagonal\n";
  ordered_json means;
  for (std::size_t r = 0; r < rules.size(); ++r) {
    for (std::size_t c = 0; c < cases.size(); ++c) {
      double sum = 0.0;
      for (std::size_t i = 0; i < instances.size(); ++i) {
        const double v = ratio(spread[i].objective[r][c], diag[i].objective[r][c]);
        sum += v;
        sink.out() << instances[i].name << ',' << rule_name(rules[r]) << ',' << case_name(cases[c]) << ','
                   << diag[i].objective[r][c].to_string() << ',' << spread[i].objective[r][c].to_string() << ','
                   << fixed(v) << '\n';
      }
      if (!instances.empty()) means[variant(rules[r], cases[c])] = std::round(sum / static_cast<double>(instances.size()) * 1e6) / 1e6;
    }
  }
  if (!o.output.timing.empty()) {
    Sink t(o.output.timing);
    t.out() << "instance,rule,kind,ordering_seconds\n";
    for (std::size_t i = 0; i < instances.size(); ++i) {
      for (std::size_t r = 0; r < rules.size(); ++r) {
        t.out() << instances[i].name << ',' << rule_name(rules[r]) << ",diagonal," << fixed(diag[i].ordering_seconds[r]) << '\n';
        t.out() << instances[i].name << ',' << rule_name(rules[r]) << ",spread," << fixed(spread[i].ordering_seconds[r]) << '\n';
      }
    }
  }
  write_summary(o.output.summary, "cost-of-matching",
                {{"source", source_json(o.source)}, {"rules", o.rules}, {"cases", o.cases}, {"spread_seed", o.spread_seed}},
                {{"instances", instances.size()}, {"mean_spread_over_diagonal", means}});
  return 0;
}

// ---------------------------------------------------------------- validate

struct ValidateOptions {
  std::string instance;
  std::string schedule;
  std::string rule;
  std::string schedule_case = "c";
  bool online = false;
  std::string dump;
};

int cmd_validate(const ValidateOptions& o) {
  const Instance inst = io::read_instance_file(o.instance);
  ScheduleTrace trace;
  if (!o.schedule.empty()) {
    std::ifstream in(o.schedule);
    if (!in) throw std::runtime_error("cannot open " + o.schedule);
    trace = io::read_schedule(in);
  } else if (!o.rule.empty()) {
    const Rule rule = parse_rule(o.rule);
    trace = o.online ? run_online(inst, rule) : run_schedule(inst, compute_ordering(inst, rule), parse_case(o.schedule_case));
  } else {
    throw std::invalid_argument("validate needs --schedule or --rule");
  }
  if (!o.dump.empty()) {
    Sink sink(o.dump);
    io::write_schedule(sink.out(), trace);
  }
  const ValidationReport report = validate_schedule(inst, trace);
  if (!report.ok()) {
    std::cout << "INVALID " << report.violations.size() << " violation(s)\n";
    for (const Violation& v : report.violations) std::cout << "  " << v.message << '\n';
    return 1;
  }
  const CompletionReport c = completion_report(inst, trace);
  std::cout << "OK coflows=" << inst.size() << " slots=" << trace.slot_count() << " makespan=" << c.makespan
            << " objective=" << c.objective.to_string() << '\n';
  return 0;
}

// ---------------------------------------------------------------- dump-lp

struct DumpOptions {
  std::string instance;
  bool exp = false;
  std::int64_t cap = kDefaultExpHorizonCap;
  std::string out = "-";
};

int cmd_dump_lp(const DumpOptions& o) {
  const Instance inst = io::read_instance_file(o.instance);
  const IndexedLp lp = o.exp ? build_exp_lp(inst, o.cap) : build_interval_lp(inst);
  Sink sink(o.out);
  lp::write_mps(sink.out(), lp.problem, o.exp ? "LPEXP" : "INTERVAL_LP");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coflowbench: coflow scheduling experiments"};
  app.set_version_flag("--version", std::string("coflowbench ") + kVersion);
  app.set_config("--config", "", "INI config file; [verb] sections hold per-verb keys");
  app.require_subcommand(1);

  GenOptions gen;
  auto* g = app.add_subcommand("gen", "Write a synthetic or adversarial instance as CSV");
  g->add_option("--m", gen.m, "Network size")->capture_default_str();
  g->add_option("--n", gen.n, "Coflows (per block for families)")->capture_default_str();
  g->add_option("--density", gen.density, "sparse|dense|uniform")->capture_default_str();
  g->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
  g->add_option("--gap-lo", gen.gap_lo, "Smallest inter-arrival gap")->capture_default_str();
  g->add_option("--gap-hi", gen.gap_hi, "Largest inter-arrival gap (0: all releases 0)")->capture_default_str();
  g->add_option("--family", gen.family, "example1|example2 instead of the random generator");
  g->add_option("--a", gen.a, "Family parameter a")->capture_default_str();
  g->add_flag("--diagonal", gen.diagonal, "Collapse every coflow onto the diagonal");
  g->add_option("--spread-seed", gen.spread_seed, "Diagonalize, then spread with this seed");
  g->add_flag("--compact", gen.compact, "Write the one-line-per-coflow format");
  g->add_option("-o,--out", gen.out, "Output file ('-' for stdout)")->capture_default_str();

  GridOptions grid;
  auto* rg = app.add_subcommand("run-grid", "Rules x cases grid, normalized by an anchor variant");
  add_source_options(rg, grid.source, false);
  add_output_options(rg, grid.output, true);
  rg->add_option("--rules", grid.rules, "fifo|stpt|smpt|smct|ect|lp or all")->capture_default_str();
  rg->add_option("--cases", grid.cases, "a|b|c|d|e or all")->capture_default_str();
  rg->add_option("--anchor-rule", grid.anchor_rule, "Normalization rule")->capture_default_str();
  rg->add_option("--anchor-case", grid.anchor_case, "Normalization case")->capture_default_str();
  rg->add_flag("--lp-bound", grid.lp_bound, "Add the interval-LP bound over the anchor objective");

  SweepOptions sweep;
  auto* rs = app.add_subcommand("release-sweep", "Average ratio to an anchor rule as inter-arrival gaps grow");
  add_output_options(rs, sweep.output, true);
  rs->add_option("--m", sweep.m, "Network size")->capture_default_str();
  rs->add_option("--n", sweep.n, "Coflows per sample")->capture_default_str();
  rs->add_option("--density", sweep.density, "sparse|dense|uniform")->capture_default_str();
  rs->add_option("--uppers", sweep.uppers, "Gap upper bounds U (gaps uniform on [0, U])")->capture_default_str();
  rs->add_option("--samples", sweep.samples, "Instances per U")->capture_default_str();
  rs->add_option("--rules", sweep.rules, "Rules to report")->capture_default_str();
  rs->add_option("--anchor", sweep.anchor, "Normalization rule")->capture_default_str();
  rs->add_option("--case", sweep.schedule_case, "Scheduling case")->capture_default_str();
  rs->add_option("--seed", sweep.seed, "Sweep seed")->capture_default_str();

  OnlineOptions online;
  auto* on = app.add_subcommand("online", "Online re-ordering versus offline case (c), with the port bound");
  add_source_options(on, online.source, true);
  add_output_options(on, online.output, true);
  on->add_option("--rules", online.rules, "Rules to run")->capture_default_str();

  MatchingOptions matching;
  auto* cm = app.add_subcommand("cost-of-matching", "Diagonal versus spread objective for the same port loads");
  add_source_options(cm, matching.source, false);
  add_output_options(cm, matching.output, true);
  cm->add_option("--rules", matching.rules, "Rules to run")->capture_default_str();
  cm->add_option("--cases", matching.cases, "Cases to run")->capture_default_str();
  cm->add_option("--spread-seed", matching.spread_seed, "Base seed of the spreading step")->capture_default_str();

  ValidateOptions val;
  auto* va = app.add_subcommand("validate", "Check a schedule against an instance, or run and check one");
  va->add_option("--instance", val.instance, "Instance CSV")->required();
  va->add_option("--schedule", val.schedule, "Schedule CSV (slot,input,output,coflow)");
  va->add_option("--rule", val.rule, "Run this rule instead of reading a schedule");
  va->add_option("--case", val.schedule_case, "Case for --rule")->capture_default_str();
  va->add_flag("--online", val.online, "Run the online variant for --rule");
  va->add_option("--dump-schedule", val.dump, "Write the checked schedule as CSV");

  DumpOptions dump;
  auto* dl = app.add_subcommand("dump-lp", "Write the interval LP (or LP-EXP) in MPS format");
  dl->add_option("--instance", dump.instance, "Instance CSV")->required();
  dl->add_flag("--exp", dump.exp, "Unit-interval LP-EXP instead of the geometric grid");
  dl->add_option("--cap", dump.cap, "Horizon cap for LP-EXP")->capture_default_str();
  dl->add_option("-o,--out", dump.out, "Output file ('-' for stdout)")->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*g) return cmd_gen(gen);
    if (*rg) return cmd_run_grid(grid);
    if (*rs) return cmd_release_sweep(sweep);
    if (*on) return cmd_online(online);
    if (*cm) return cmd_cost_of_matching(matching);
    if (*va) return cmd_validate(val);
    if (*dl) return cmd_dump_lp(dump);
  } catch (const std::exception& e) {
    std::cerr << "coflowbench: error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
