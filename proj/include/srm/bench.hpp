#ifndef SRM_BENCH_HPP
#define SRM_BENCH_HPP

// Benchmark harness: generate a grid of random instances, solve each with
// every requested mode under a deadline, aggregate per (cell, mode), and
// check the scalability observations against the harness's own numbers.

#include "generator.hpp"
#include "io.hpp"
#include "solver.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace srm {

struct BenchCell {
  std::size_t n = 0;
  double p = 0.0;
  double tie_pct = 0.0;

  friend bool operator==(BenchCell const &, BenchCell const &) = default;
  friend auto operator<=>(BenchCell const &, BenchCell const &) = default;
};

struct BenchConfig {
  std::vector<BenchCell> grid;
  std::size_t per_cell = 10;
  std::vector<Mode> modes{Mode::decision};
  double timeout = 60.0;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  /// Tie operations also add x to y's list, so the new pair is mutual.
  bool symmetric_ties = false;

  /// Cartesian product of the three axes, in n-major order.
  static std::vector<BenchCell> product(std::vector<std::size_t> const &ns, std::vector<double> const &ps,
                                        std::vector<double> const &ties) {
    std::vector<BenchCell> out;
    for (auto n : ns)
      for (auto p : ps)
        for (auto t : ties)
          out.push_back({n, p, t});
    return out;
  }

  /// Desk-scale defaults: n in {20, 40, 60}, p in {0.25, 0.5}, no ties.
  static BenchConfig desk_defaults() {
    BenchConfig c;
    c.grid = product({20, 40, 60}, {0.25, 0.5}, {0});
    return c;
  }
};

struct BenchRow {
  std::size_t n = 0;
  double p = 0.0;
  double tie_pct = 0.0;
  Mode mode = Mode::decision;
  std::size_t solved = 0;
  std::size_t unsolved = 0;
  std::size_t timeouts = 0;
  double avg_time_solved = 0.0;
  double avg_time_unsolved = 0.0;

  double completeness() const { return p * 100.0; }
  std::size_t instances() const { return solved + unsolved + timeouts; }

  /// Mean over every instance that finished, solved or not.
  std::optional<double> avg_time() const {
    auto done = solved + unsolved;
    if (done == 0)
      return std::nullopt;
    return (avg_time_solved * solved + avg_time_unsolved * unsolved) / static_cast<double>(done);
  }
};

/// One solve inside a bench run.
struct BenchRecord {
  BenchCell cell;
  std::size_t index = 0;
  std::uint64_t instance_seed = 0;
  Mode mode = Mode::decision;
  Status status = Status::unknown;
  std::optional<std::uint64_t> objective;
  bool timed_out = false;
  double seconds = 0.0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<BenchRecord> records;
};

namespace detail {

inline std::uint64_t combine(std::uint64_t h, std::uint64_t v) { return rng::mix(h ^ rng::mix(v)); }

} // namespace detail

/// Seed of instance `index` in cells sharing (n, p). Tie variants of a cell
/// reuse the same base instance, as ties are layered onto SRI instances.
inline std::uint64_t bench_instance_seed(std::uint64_t seed, BenchCell const &cell, std::size_t index) {
  auto h = detail::combine(seed, cell.n);
  h = detail::combine(h, std::bit_cast<std::uint64_t>(cell.p));
  return detail::combine(h, index);
}

inline Instance bench_instance(std::uint64_t seed, BenchCell const &cell, std::size_t index,
                               bool symmetric_ties = false) {
  auto s = bench_instance_seed(seed, cell, index);
  GenConfig cfg{cell.n, cell.p, s, cell.tie_pct, symmetric_ties};
  Instance base = generate_sri(cfg);
  auto count = cfg.tie_count();
  if (count == 0)
    return base;
  return add_ties(base, count, detail::combine(s, std::bit_cast<std::uint64_t>(cell.tie_pct)), symmetric_ties).instance;
}

inline BenchReport run_bench(BenchConfig const &cfg) {
  if (!(cfg.timeout > 0))
    throw std::invalid_argument("bench: timeout must be positive");
  for (auto const &cell : cfg.grid)
    GenConfig{cell.n, cell.p, 0, cell.tie_pct}.validate();

  struct Task {
    std::size_t cell;
    std::size_t index;
  };
  std::vector<Task> tasks;
  for (std::size_t c = 0; c < cfg.grid.size(); ++c)
    for (std::size_t i = 0; i < cfg.per_cell; ++i)
      tasks.push_back({c, i});

  // records[(task * modes) + m]
  std::vector<BenchRecord> records(tasks.size() * cfg.modes.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < tasks.size();) {
      auto const &cell = cfg.grid[tasks[t].cell];
      auto const index = tasks[t].index;
      // generation is outside the timed region
      Instance inst = bench_instance(cfg.seed, cell, index, cfg.symmetric_ties);
      for (std::size_t m = 0; m < cfg.modes.size(); ++m) {
        auto result = solve(inst, cfg.modes[m], SolveOptions::with_timeout(cfg.timeout));
        auto &rec = records[t * cfg.modes.size() + m];
        rec.cell = cell;
        rec.index = index;
        rec.instance_seed = bench_instance_seed(cfg.seed, cell, index);
        rec.mode = cfg.modes[m];
        rec.status = result.status;
        rec.objective = result.objective;
        rec.timed_out = result.timed_out;
        rec.seconds = result.stats.seconds;
      }
    }
  };
  auto const width = std::max<std::size_t>(1, std::min(cfg.jobs, tasks.size()));
  if (width == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < width; ++w)
      pool.emplace_back(worker);
    for (auto &th : pool)
      th.join();
  }

  BenchReport report;
  for (std::size_t c = 0; c < cfg.grid.size(); ++c) {
    for (std::size_t m = 0; m < cfg.modes.size(); ++m) {
      BenchRow row{cfg.grid[c].n, cfg.grid[c].p, cfg.grid[c].tie_pct, cfg.modes[m]};
      double t_solved = 0, t_unsolved = 0;
      for (std::size_t t = 0; t < tasks.size(); ++t) {
        if (tasks[t].cell != c)
          continue;
        auto const &rec = records[t * cfg.modes.size() + m];
        if (rec.timed_out || rec.status == Status::unknown) {
          ++row.timeouts;
        } else if (rec.status == Status::no_stable) {
          ++row.unsolved;
          t_unsolved += rec.seconds;
        } else {
          ++row.solved;
          t_solved += rec.seconds;
        }
      }
      row.avg_time_solved = row.solved ? t_solved / row.solved : 0.0;
      row.avg_time_unsolved = row.unsolved ? t_unsolved / row.unsolved : 0.0;
      report.rows.push_back(row);
    }
  }
  report.records = std::move(records);
  return report;
}

inline constexpr char const *kBenchCsvHeader =
    "n,p,tie_pct,mode,solved,unsolved,timeouts,avg_time_solved_s,avg_time_unsolved_s";

namespace detail {

inline std::string fmt_fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.emplace_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos)
      break;
    start = pos + 1;
  }
  return out;
}

} // namespace detail

/// CSV with kBenchCsvHeader. Without `times` the two timing columns are
/// left empty, which makes the output a pure function of the seed.
inline void write_bench_csv(std::ostream &out, std::vector<BenchRow> const &rows, bool times = true) {
  out << kBenchCsvHeader << '\n';
  for (auto const &r : rows) {
    out << r.n << ',' << detail::format_double(r.p) << ',' << detail::format_double(r.tie_pct) << ','
        << to_string(r.mode) << ',' << r.solved << ',' << r.unsolved << ',' << r.timeouts << ',';
    if (times)
      out << detail::fmt_fixed(r.avg_time_solved, 6) << ',' << detail::fmt_fixed(r.avg_time_unsolved, 6);
    else
      out << ',';
    out << '\n';
  }
}

inline std::string bench_csv(std::vector<BenchRow> const &rows, bool times = true) {
  std::ostringstream out;
  write_bench_csv(out, rows, times);
  return out.str();
}

inline std::vector<BenchRow> parse_bench_csv(std::istream &in) {
  std::vector<BenchRow> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty())
      continue;
    if (lineno == 1) {
      if (detail::trim(line) != kBenchCsvHeader)
        throw ParseError(lineno, "unexpected CSV header");
      continue;
    }
    auto f = detail::split(line, ',');
    if (f.size() != 9)
      throw ParseError(lineno, "expected 9 CSV fields");
    try {
      BenchRow r;
      r.n = std::stoul(f[0]);
      r.p = std::stod(f[1]);
      r.tie_pct = std::stod(f[2]);
      r.mode = parse_mode(f[3]);
      r.solved = std::stoul(f[4]);
      r.unsolved = std::stoul(f[5]);
      r.timeouts = std::stoul(f[6]);
      r.avg_time_solved = f[7].empty() ? 0.0 : std::stod(f[7]);
      r.avg_time_unsolved = f[8].empty() ? 0.0 : std::stod(f[8]);
      rows.push_back(r);
    } catch (std::invalid_argument const &e) {
      throw ParseError(lineno, e.what());
    } catch (std::out_of_range const &e) {
      throw ParseError(lineno, e.what());
    }
  }
  return rows;
}

/// Key-value grid file:
///
///   # comment
///   n = 20, 40
///   p = 0.25, 0.5
///   ties = 0, 50
///   per_cell = 10
///   modes = decision, egalitarian
///   timeout = 60
///   seed = 7
///   jobs = 1
///   symmetric_ties = false
///
/// Keys absent from the file keep the values already in `base`.
inline BenchConfig parse_bench_config(std::istream &in, BenchConfig base = BenchConfig::desk_defaults()) {
  std::vector<std::size_t> ns;
  std::vector<double> ps, ties;
  for (auto const &c : base.grid) {
    if (std::find(ns.begin(), ns.end(), c.n) == ns.end())
      ns.push_back(c.n);
    if (std::find(ps.begin(), ps.end(), c.p) == ps.end())
      ps.push_back(c.p);
    if (std::find(ties.begin(), ties.end(), c.tie_pct) == ties.end())
      ties.push_back(c.tie_pct);
  }
  if (ties.empty())
    ties.push_back(0);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    std::string_view view = detail::trim(std::string_view(line).substr(0, hash));
    if (view.empty())
      continue;
    auto eq = view.find('=');
    if (eq == std::string_view::npos)
      throw ParseError(lineno, "expected key = value");
    auto key = std::string(detail::trim(view.substr(0, eq)));
    auto values = detail::split(view.substr(eq + 1), ',');
    try {
      if (key == "n") {
        ns.clear();
        for (auto const &v : values)
          ns.push_back(std::stoul(v));
      } else if (key == "p") {
        ps.clear();
        for (auto const &v : values)
          ps.push_back(std::stod(v));
      } else if (key == "ties" || key == "tie_pct") {
        ties.clear();
        for (auto const &v : values)
          ties.push_back(std::stod(v));
      } else if (key == "modes") {
        base.modes.clear();
        for (auto const &v : values)
          base.modes.push_back(parse_mode(v));
      } else if (key == "per_cell") {
        base.per_cell = std::stoul(values.at(0));
      } else if (key == "timeout") {
        base.timeout = std::stod(values.at(0));
      } else if (key == "seed") {
        base.seed = std::stoull(values.at(0));
      } else if (key == "jobs") {
        base.jobs = std::stoul(values.at(0));
      } else if (key == "symmetric_ties") {
        auto const &v = values.at(0);
        if (v != "true" && v != "false")
          throw ParseError(lineno, "symmetric_ties must be true or false");
        base.symmetric_ties = v == "true";
      } else {
        throw ParseError(lineno, "unknown key '" + key + "'");
      }
    } catch (std::invalid_argument const &e) {
      throw ParseError(lineno, "bad value for '" + key + "': " + e.what());
    } catch (std::out_of_range const &e) {
      throw ParseError(lineno, "bad value for '" + key + "': " + e.what());
    }
  }
  base.grid = BenchConfig::product(ns, ps, ties);
  return base;
}

// ---------------------------------------------------------------------------
// Observations

enum class Verdict { consistent, inconsistent, insufficient };

inline std::string_view to_string(Verdict v) {
  switch (v) {
  case Verdict::consistent:
    return "consistent";
  case Verdict::inconsistent:
    return "inconsistent";
  case Verdict::insufficient:
    return "insufficient data";
  }
  return "?";
}

struct Observation {
  std::string id;
  std::string claim;
  Verdict verdict = Verdict::insufficient;
  std::vector<std::string> evidence;
};

namespace detail {

inline std::string cell_label(BenchRow const &r) {
  return "n=" + std::to_string(r.n) + " p=" + format_double(r.p) + " ties=" + format_double(r.tie_pct) + "%";
}

inline std::string secs(double s) { return fmt_fixed(s, 6) + "s"; }

inline Verdict verdict_of(std::size_t checked, std::size_t failed) {
  if (checked == 0)
    return Verdict::insufficient;
  return failed == 0 ? Verdict::consistent : Verdict::inconsistent;
}

inline BenchRow const *find_row(std::vector<BenchRow> const &rows, BenchCell const &cell, Mode mode) {
  for (auto const &r : rows)
    if (r.n == cell.n && r.p == cell.p && r.tie_pct == cell.tie_pct && r.mode == mode)
      return &r;
  return nullptr;
}

// Along one axis, with the other cell coordinates and the mode fixed, the
// mean time must increase strictly.
template <typename Key, typename Axis>
Observation monotone(std::vector<BenchRow> const &rows, std::string id, std::string claim, Key key, Axis axis,
                     std::string axis_name) {
  Observation o{std::move(id), std::move(claim), Verdict::insufficient, {}};
  std::map<decltype(key(rows.front())), std::vector<BenchRow const *>> groups;
  for (auto const &r : rows)
    if (r.avg_time())
      groups[key(r)].push_back(&r);
  std::size_t checked = 0, failed = 0;
  for (auto &[k, group] : groups) {
    if (group.size() < 2)
      continue;
    std::sort(group.begin(), group.end(), [&](auto a, auto b) { return axis(*a) < axis(*b); });
    ++checked;
    bool ok = true;
    std::string line = std::string(to_string(group.front()->mode)) + ":";
    for (std::size_t i = 0; i < group.size(); ++i) {
      if (i > 0 && !(*group[i]->avg_time() > *group[i - 1]->avg_time()))
        ok = false;
      line += " " + axis_name + "=" + format_double(axis(*group[i])) + " " + secs(*group[i]->avg_time());
    }
    failed += ok ? 0 : 1;
    o.evidence.push_back(line + (ok ? "" : "  (not increasing)"));
  }
  o.verdict = verdict_of(checked, failed);
  return o;
}

} // namespace detail

inline std::vector<Observation> evaluate_observations(std::vector<BenchRow> const &rows) {
  std::vector<Observation> out;
  std::vector<BenchCell> cells;
  for (auto const &r : rows) {
    BenchCell c{r.n, r.p, r.tie_pct};
    if (std::find(cells.begin(), cells.end(), c) == cells.end())
      cells.push_back(c);
  }
  auto const multi_row = rows.size() >= 2;

  // O1: over all decision rows, mean time with and without a stable
  // matching within a factor of two.
  {
    Observation o{"O1", "finding a stable matching and proving none exists take comparable time",
                  Verdict::insufficient, {}};
    double ts = 0, tu = 0;
    std::size_t ns = 0, nu = 0, contributing = 0;
    for (auto const &r : rows) {
      if (r.mode != Mode::decision || (r.solved == 0 && r.unsolved == 0))
        continue;
      ++contributing;
      ts += r.avg_time_solved * r.solved;
      tu += r.avg_time_unsolved * r.unsolved;
      ns += r.solved;
      nu += r.unsolved;
    }
    if (multi_row && contributing >= 2 && ns > 0 && nu > 0) {
      double ms = ts / ns, mu = tu / nu;
      double ratio = std::max(ms, mu) / std::max(std::min(ms, mu), 1e-12);
      o.verdict = ratio <= 2.0 ? Verdict::consistent : Verdict::inconsistent;
      o.evidence.push_back("solvable " + detail::secs(ms) + " over " + std::to_string(ns) + ", unsolvable " +
                           detail::secs(mu) + " over " + std::to_string(nu) + ", ratio " + detail::fmt_fixed(ratio, 2) +
                           " (threshold 2)");
    }
    out.push_back(std::move(o));
  }

  auto compare_modes = [&](std::string id, std::string claim, Mode faster, std::vector<Mode> slower,
                           bool majority) {
    Observation o{std::move(id), std::move(claim), Verdict::insufficient, {}};
    std::size_t checked = 0, failed = 0;
    for (auto const &c : cells) {
      auto const *base = detail::find_row(rows, c, faster);
      if (!base || !base->avg_time())
        continue;
      for (Mode m : slower) {
        auto const *other = detail::find_row(rows, c, m);
        if (!other || !other->avg_time())
          continue;
        ++checked;
        bool ok = *other->avg_time() > *base->avg_time();
        failed += ok ? 0 : 1;
        o.evidence.push_back(detail::cell_label(*base) + ": " + std::string(to_string(faster)) + " " +
                             detail::secs(*base->avg_time()) + " vs " + std::string(to_string(m)) + " " +
                             detail::secs(*other->avg_time()) + (ok ? "" : "  (not slower)"));
      }
    }
    if (!multi_row)
      checked = 0;
    if (majority && checked > 0)
      o.verdict = 2 * failed < checked ? Verdict::consistent : Verdict::inconsistent;
    else
      o.verdict = detail::verdict_of(checked, failed);
    if (o.verdict == Verdict::insufficient)
      o.evidence.clear();
    out.push_back(std::move(o));
  };

  compare_modes("O2", "egalitarian is generally faster than rank-maximal", Mode::egalitarian, {Mode::rank_maximal},
                true);
  // O3: almost slower than both fairness optimisations
  {
    Observation o{"O3", "almost-stable takes longer than egalitarian and rank-maximal", Verdict::insufficient, {}};
    std::size_t checked = 0, failed = 0;
    for (auto const &c : cells) {
      auto const *almost = detail::find_row(rows, c, Mode::almost);
      if (!almost || !almost->avg_time())
        continue;
      for (Mode m : {Mode::egalitarian, Mode::rank_maximal}) {
        auto const *other = detail::find_row(rows, c, m);
        if (!other || !other->avg_time())
          continue;
        ++checked;
        bool ok = *almost->avg_time() > *other->avg_time();
        failed += ok ? 0 : 1;
        o.evidence.push_back(detail::cell_label(*almost) + ": almost " + detail::secs(*almost->avg_time()) + " vs " +
                             std::string(to_string(m)) + " " + detail::secs(*other->avg_time()) +
                             (ok ? "" : "  (not slower)"));
      }
    }
    o.verdict = multi_row ? detail::verdict_of(checked, failed) : Verdict::insufficient;
    if (o.verdict == Verdict::insufficient)
      o.evidence.clear();
    out.push_back(std::move(o));
  }
  compare_modes("O4", "optimisation variants take longer than deciding stability", Mode::decision,
                {Mode::egalitarian, Mode::rank_maximal, Mode::almost}, false);

  out.push_back(detail::monotone(
      rows, "O5", "time grows with completeness degree",
      [](BenchRow const &r) { return std::tuple(r.n, r.tie_pct, r.mode); }, [](BenchRow const &r) { return r.p; },
      "p"));
  out.push_back(detail::monotone(
      rows, "O6", "time grows with the number of agents",
      [](BenchRow const &r) { return std::tuple(r.p, r.tie_pct, r.mode); },
      [](BenchRow const &r) { return static_cast<double>(r.n); }, "n"));

  // O7: tied variants slower than the untied cell with the same (n, p, mode)
  {
    Observation o{"O7", "instances with ties take longer than without", Verdict::insufficient, {}};
    std::size_t checked = 0, failed = 0;
    for (auto const &r : rows) {
      if (r.tie_pct == 0 || !r.avg_time())
        continue;
      auto const *base = detail::find_row(rows, {r.n, r.p, 0}, r.mode);
      if (!base || !base->avg_time())
        continue;
      ++checked;
      bool ok = *r.avg_time() > *base->avg_time();
      failed += ok ? 0 : 1;
      o.evidence.push_back(detail::cell_label(r) + " " + std::string(to_string(r.mode)) + ": " +
                           detail::secs(*r.avg_time()) + " vs untied " + detail::secs(*base->avg_time()) +
                           (ok ? "" : "  (not slower)"));
    }
    o.verdict = detail::verdict_of(checked, failed);
    out.push_back(std::move(o));
  }

  // O8: adding ties never lowers, and somewhere raises, the solvable count
  {
    Observation o{"O8", "instances without a stable matching often gain one once ties are added",
                  Verdict::insufficient, {}};
    std::size_t checked = 0, failed = 0, gained = 0;
    for (auto const &r : rows) {
      if (r.tie_pct == 0 || r.mode != Mode::decision)
        continue;
      auto const *base = detail::find_row(rows, {r.n, r.p, 0}, Mode::decision);
      if (!base)
        continue;
      ++checked;
      failed += r.solved < base->solved ? 1 : 0;
      gained += r.solved > base->solved ? 1 : 0;
      o.evidence.push_back(detail::cell_label(r) + ": solvable " + std::to_string(r.solved) + "/" +
                           std::to_string(r.instances()) + " vs untied " + std::to_string(base->solved) + "/" +
                           std::to_string(base->instances()));
    }
    o.verdict = detail::verdict_of(checked, failed);
    if (o.verdict == Verdict::consistent && gained == 0)
      o.verdict = Verdict::inconsistent;
    out.push_back(std::move(o));
  }
  return out;
}

/// Text report, one block per observation. Verdicts are informational.
inline std::string report_observations(std::vector<BenchRow> const &rows) {
  std::ostringstream out;
  for (auto const &o : evaluate_observations(rows)) {
    out << o.id << " " << to_string(o.verdict) << ": " << o.claim << '\n';
    for (auto const &e : o.evidence)
      out << "    " << e << '\n';
  }
  return out.str();
}

} // namespace srm

#endif
