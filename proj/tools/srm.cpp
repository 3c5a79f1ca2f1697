// srm: command-line front end for the roommates solver suite.
//
//   srm generate --n N --p P --seed S [--ties-pct T]
//   srm solve    --instance F --mode {decision|all|egalitarian|rank-maximal|almost}
//   srm check    --instance F --matching G [--list-blocking]
//   srm af       --instance F [--emit-lp OUT] [--solve]
//   srm bench    [--config F] [--n ...] [--p ...] [--ties ...] ...
//   srm report   --csv F
//
// Exit codes: 0 success / stable, 1 unstable matching (check), 2 no stable
// matching (solve), 3 usage or input error, 4 timeout without an answer.

#include <srm/srm.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitUnstable = 1;
constexpr int kExitNoStable = 2;
constexpr int kExitError = 3;
constexpr int kExitTimeout = 4;

std::uint64_t default_seed() {
  if (char const *env = std::getenv("SRM_SEED"))
    return std::stoull(env);
  return 1;
}

srm::Instance load_instance(std::string const &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open instance file '" + path + "'");
  return srm::parse_instance(in);
}

std::ostream &open_out(std::string const &path, std::ofstream &file) {
  if (path.empty() || path == "-")
    return std::cout;
  file.open(path);
  if (!file)
    throw std::runtime_error("cannot write '" + path + "'");
  return file;
}

struct GenerateArgs {
  std::size_t n = 0;
  double p = 0;
  std::uint64_t seed = default_seed();
  double ties_pct = 0;
  bool symmetric = false;
  std::string out;
};

int run_generate(GenerateArgs const &a) {
  srm::GenConfig cfg{a.n, a.p, a.seed, a.ties_pct, a.symmetric};
  cfg.validate();
  srm::Instance inst = srm::generate_sri(cfg);
  if (auto count = cfg.tie_count(); count > 0) {
    auto tied = srm::add_ties(inst, count, srm::rng::mix(a.seed ^ 0x7469657300000000ULL), a.symmetric);
    if (tied.warning)
      std::cerr << "warning: no agent admits a tie operation; instance left without ties\n";
    else if (tied.skipped > 0)
      std::cerr << "warning: " << tied.skipped << " of " << count << " tie operations skipped\n";
    inst = std::move(tied.instance);
  }
  std::ofstream file;
  srm::write_instance(open_out(a.out, file), inst);
  return 0;
}

struct SolveArgs {
  std::string instance;
  std::string mode = "decision";
  std::optional<std::size_t> limit;
  std::optional<double> timeout;
  bool stats = false;
};

int run_solve(SolveArgs const &a) {
  auto inst = load_instance(a.instance);
  auto mode = srm::parse_mode(a.mode);
  srm::SolveOptions opts;
  if (a.timeout)
    opts = srm::SolveOptions::with_timeout(*a.timeout);

  if (mode == srm::Mode::all) {
    auto e = srm::enumerate_stable(inst, a.limit, opts);
    for (std::size_t i = 0; i < e.matchings.size(); ++i) {
      std::cout << "% matching " << i + 1 << '\n';
      srm::write_matching(std::cout, inst, e.matchings[i]);
    }
    std::cout << "count: " << e.matchings.size() << '\n';
    auto status = e.timed_out ? srm::Status::unknown : e.matchings.empty() ? srm::Status::no_stable : srm::Status::stable;
    std::cout << "status: " << srm::to_string(status) << '\n';
    if (a.stats)
      std::cout << "% nodes: " << e.stats.nodes << "\n% seconds: " << e.stats.seconds << '\n';
    if (e.timed_out)
      return e.matchings.empty() ? kExitTimeout : 0;
    return e.matchings.empty() ? kExitNoStable : 0;
  }

  auto r = srm::solve(inst, mode, opts);
  if (r.matching)
    srm::write_matching(std::cout, inst, *r.matching);
  if (r.objective)
    std::cout << "objective: " << *r.objective << '\n';
  if (r.profile && mode == srm::Mode::rank_maximal) {
    std::cout << "profile:";
    for (auto c : r.profile->counts)
      std::cout << ' ' << c;
    std::cout << '\n';
  }
  std::cout << "status: " << srm::to_string(r.status) << '\n';
  if (r.timed_out)
    std::cout << "timeout: true\n";
  if (a.stats)
    std::cout << "% nodes: " << r.stats.nodes << "\n% seconds: " << r.stats.seconds << '\n';
  switch (r.status) {
  case srm::Status::stable:
  case srm::Status::optimal:
    return 0;
  case srm::Status::no_stable:
    return kExitNoStable;
  case srm::Status::unknown:
    return r.matching ? 0 : kExitTimeout;
  }
  return kExitError;
}

struct CheckArgs {
  std::string instance;
  std::string matching;
  bool list = false;
};

int run_check(CheckArgs const &a) {
  auto inst = load_instance(a.instance);
  std::ifstream in(a.matching);
  if (!in)
    throw std::runtime_error("cannot open matching file '" + a.matching + "'");
  auto m = srm::parse_matching(in, inst);
  if (!srm::validate_matching(inst, m)) {
    std::cerr << "error: not a valid matching (pairs must be mutually acceptable)\n";
    return kExitError;
  }
  auto bps = srm::blocking_pairs(inst, m);
  if (a.list)
    for (auto const &bp : bps)
      std::cout << inst.name(bp.x) << ' ' << inst.name(bp.y) << '\n';
  std::cerr << (bps.empty() ? "stable" : "unstable: " + std::to_string(bps.size()) + " blocking pair(s)") << '\n';
  return bps.empty() ? 0 : kExitUnstable;
}

struct AfArgs {
  std::string instance;
  std::string emit_lp;
  bool solve = false;
  std::optional<std::size_t> limit;
};

int run_af(AfArgs const &a) {
  auto inst = load_instance(a.instance);
  auto af = srm::build_af(inst);
  bool lp_to_stdout = a.emit_lp == "-";
  (lp_to_stdout ? std::cerr : std::cout) << "arguments: " << af.size() << "\nattacks: " << af.attack_count() << '\n';
  if (!a.emit_lp.empty()) {
    std::ofstream file;
    srm::write_logic_program(open_out(a.emit_lp, file), af);
  }
  if (!a.solve)
    return 0;
  auto exts = srm::stable_extensions(af, a.limit);
  for (std::size_t i = 0; i < exts.size(); ++i) {
    try {
      auto m = srm::extension_to_matching(inst, af, exts[i]);
      std::cout << "% extension " << i + 1 << '\n';
      srm::write_matching(std::cout, inst, m);
    } catch (std::logic_error const &) {
      // possible under ties: an agent appears in two accepted arguments
      std::cout << "% extension " << i + 1 << " (not a matching)\n";
      for (auto k : exts[i])
        std::cout << inst.name(af.args[k].a) << ' ' << inst.name(af.args[k].b) << '\n';
    }
  }
  std::cout << "extensions: " << exts.size() << '\n';
  return exts.empty() ? kExitNoStable : 0;
}

struct BenchArgs {
  std::string config;
  std::vector<std::size_t> n;
  std::vector<double> p;
  std::vector<double> ties;
  std::optional<std::size_t> per_cell;
  std::vector<std::string> modes;
  std::optional<double> timeout;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> jobs;
  bool symmetric_ties = false;
  std::string out;
  bool no_times = false;
  bool report = false;
};

int run_bench(BenchArgs const &a) {
  auto cfg = srm::BenchConfig::desk_defaults();
  cfg.seed = default_seed();
  if (!a.config.empty()) {
    std::ifstream in(a.config);
    if (!in)
      throw std::runtime_error("cannot open config file '" + a.config + "'");
    cfg = srm::parse_bench_config(in, cfg);
  }
  if (!a.n.empty() || !a.p.empty() || !a.ties.empty()) {
    std::vector<std::size_t> ns;
    std::vector<double> ps, ts;
    for (auto const &c : cfg.grid) {
      if (std::find(ns.begin(), ns.end(), c.n) == ns.end())
        ns.push_back(c.n);
      if (std::find(ps.begin(), ps.end(), c.p) == ps.end())
        ps.push_back(c.p);
      if (std::find(ts.begin(), ts.end(), c.tie_pct) == ts.end())
        ts.push_back(c.tie_pct);
    }
    cfg.grid = srm::BenchConfig::product(a.n.empty() ? ns : a.n, a.p.empty() ? ps : a.p, a.ties.empty() ? ts : a.ties);
  }
  if (a.per_cell)
    cfg.per_cell = *a.per_cell;
  if (!a.modes.empty()) {
    cfg.modes.clear();
    for (auto const &m : a.modes)
      cfg.modes.push_back(srm::parse_mode(m));
  }
  if (a.timeout)
    cfg.timeout = *a.timeout;
  if (a.seed)
    cfg.seed = *a.seed;
  if (a.jobs)
    cfg.jobs = *a.jobs;
  if (a.symmetric_ties)
    cfg.symmetric_ties = true;

  auto report = srm::run_bench(cfg);
  std::ofstream file;
  srm::write_bench_csv(open_out(a.out, file), report.rows, !a.no_times);
  if (a.report)
    std::cerr << srm::report_observations(report.rows);
  return 0;
}

int run_report(std::string const &csv) {
  std::ifstream in(csv);
  if (!in)
    throw std::runtime_error("cannot open CSV file '" + csv + "'");
  std::cout << srm::report_observations(srm::parse_bench_csv(in));
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Stable roommates solver suite (SRI/SRTI, weak stability)"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto *g = app.add_subcommand("generate", "random SRI/SRTI instance");
  g->add_option("--n", gen.n, "number of agents")->required();
  g->add_option("--p", gen.p, "edge probability")->required();
  g->add_option("--seed", gen.seed, "RNG seed (default: $SRM_SEED or 1)");
  g->add_option("--ties-pct", gen.ties_pct, "tie operations as a percentage of n");
  g->add_flag("--symmetric-ties", gen.symmetric, "also add x to the tie partner's list");
  g->add_option("--out", gen.out, "output file (default stdout)");

  SolveArgs sol;
  auto *s = app.add_subcommand("solve", "solve an instance");
  s->add_option("--instance", sol.instance, "instance file")->required();
  s->add_option("--mode", sol.mode, "decision|all|egalitarian|rank-maximal|almost");
  s->add_option("--limit", sol.limit, "maximum matchings in 'all' mode");
  s->add_option("--timeout", sol.timeout, "seconds");
  s->add_flag("--stats", sol.stats, "print node count and time");

  CheckArgs chk;
  auto *c = app.add_subcommand("check", "verify stability of a matching");
  c->add_option("--instance", chk.instance, "instance file")->required();
  c->add_option("--matching", chk.matching, "matching file")->required();
  c->add_flag("--list-blocking", chk.list, "print blocking pairs");

  AfArgs afa;
  auto *f = app.add_subcommand("af", "argumentation-framework transform");
  f->add_option("--instance", afa.instance, "instance file")->required();
  f->add_option("--emit-lp", afa.emit_lp, "write the logic program to this file ('-' for stdout)");
  f->add_flag("--solve", afa.solve, "enumerate stable extensions as matchings");
  f->add_option("--limit", afa.limit, "maximum extensions");

  BenchArgs ben;
  auto *b = app.add_subcommand("bench", "benchmark grid, CSV output");
  b->add_option("--config", ben.config, "key = value grid file");
  b->add_option("--n", ben.n, "agent counts")->delimiter(',');
  b->add_option("--p", ben.p, "edge probabilities")->delimiter(',');
  b->add_option("--ties", ben.ties, "tie percentages")->delimiter(',');
  b->add_option("--per-cell", ben.per_cell, "instances per cell");
  b->add_option("--modes", ben.modes, "solver modes")->delimiter(',');
  b->add_option("--timeout", ben.timeout, "seconds per solve");
  b->add_option("--seed", ben.seed, "base seed (default: $SRM_SEED or 1)");
  b->add_option("--jobs", ben.jobs, "worker threads");
  b->add_option("--out", ben.out, "CSV file (default stdout)");
  b->add_flag("--symmetric-ties", ben.symmetric_ties, "tie operations make the new pair mutual");
  b->add_flag("--no-times", ben.no_times, "leave timing columns empty");
  b->add_flag("--report", ben.report, "print the observation report to stderr");

  std::string csv;
  auto *r = app.add_subcommand("report", "evaluate observations on a bench CSV");
  r->add_option("--csv", csv, "bench CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const &e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  }

  try {
    if (*g)
      return run_generate(gen);
    if (*s)
      return run_solve(sol);
    if (*c)
      return run_check(chk);
    if (*f)
      return run_af(afa);
    if (*b)
      return run_bench(ben);
    if (*r)
      return run_report(csv);
  } catch (std::exception const &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
