#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace srm;

namespace {

BenchConfig small_config() {
  BenchConfig cfg;
  cfg.grid = BenchConfig::product({10, 14}, {0.3, 0.6}, {0, 40});
  cfg.per_cell = 6;
  cfg.modes = {Mode::decision, Mode::egalitarian};
  cfg.timeout = 30;
  cfg.seed = 5;
  return cfg;
}

BenchRow row(std::size_t n, double p, double ties, Mode mode, double t) {
  BenchRow r{n, p, ties, mode, 5, 5, 0, t, t};
  return r;
}

Observation const &find(std::vector<Observation> const &obs, std::string const &id) {
  for (auto const &o : obs)
    if (o.id == id)
      return o;
  throw std::out_of_range(id);
}

std::vector<Matching> sorted_matchings(Instance const &inst) { return srm::test::sorted(enumerate_all(inst)); }

} // namespace

TEST(RunBench, AccountingIdentity) {
  auto cfg = small_config();
  auto report = run_bench(cfg);
  ASSERT_EQ(report.rows.size(), cfg.grid.size() * cfg.modes.size());
  EXPECT_EQ(report.records.size(), cfg.grid.size() * cfg.per_cell * cfg.modes.size());
  for (auto const &r : report.rows) {
    EXPECT_EQ(r.solved + r.unsolved + r.timeouts, cfg.per_cell);
    EXPECT_EQ(r.timeouts, 0u);
    EXPECT_DOUBLE_EQ(r.completeness(), r.p * 100);
  }
  // decision and egalitarian agree on solvability per cell
  for (std::size_t i = 0; i + 1 < report.rows.size(); i += 2) {
    EXPECT_EQ(report.rows[i].mode, Mode::decision);
    EXPECT_EQ(report.rows[i].solved, report.rows[i + 1].solved);
  }
}

TEST(RunBench, DeterministicAcrossJobCounts) {
  auto cfg = small_config();
  auto a = run_bench(cfg);
  cfg.jobs = 3;
  auto b = run_bench(cfg);
  EXPECT_EQ(bench_csv(a.rows, false), bench_csv(b.rows, false));
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].instance_seed, b.records[i].instance_seed);
    EXPECT_EQ(a.records[i].status, b.records[i].status);
    EXPECT_EQ(a.records[i].objective, b.records[i].objective);
  }
}

TEST(RunBench, RecordsReproduceStandalone) {
  auto cfg = small_config();
  auto report = run_bench(cfg);
  for (std::size_t i = 0; i < report.records.size(); i += 7) {
    auto const &rec = report.records[i];
    auto inst = bench_instance(cfg.seed, rec.cell, rec.index);
    auto r = solve(inst, rec.mode);
    EXPECT_EQ(r.status, rec.status);
    EXPECT_EQ(r.objective, rec.objective);
  }
}

TEST(RunBench, TieVariantsShareBaseInstance) {
  BenchCell plain{12, 0.5, 0}, tied{12, 0.5, 50};
  EXPECT_EQ(bench_instance_seed(3, plain, 4), bench_instance_seed(3, tied, 4));
  auto a = bench_instance(3, plain, 4), b = bench_instance(3, tied, 4);
  for (AgentId x = 0; x < a.size(); ++x)
    for (AgentId y : a.mutual_partners(x))
      EXPECT_TRUE(b.accepts(x, y));
  EXPECT_NE(a, b);
}

// One-sided tie entries never form a mutual pair, so stability is unchanged;
// the symmetric variant adds mutual pairs.
TEST(RunBench, SymmetricTiesAddMutualPairs) {
  BenchCell tied{16, 0.4, 75};
  for (std::size_t i = 0; i < 10; ++i) {
    auto plain = bench_instance(9, {16, 0.4, 0}, i);
    auto one_sided = bench_instance(9, tied, i);
    auto symmetric = bench_instance(9, tied, i, true);
    std::size_t mutual_plain = 0, mutual_one = 0, mutual_sym = 0;
    for (AgentId x = 0; x < plain.size(); ++x) {
      mutual_plain += plain.mutual_partners(x).size();
      mutual_one += one_sided.mutual_partners(x).size();
      mutual_sym += symmetric.mutual_partners(x).size();
    }
    EXPECT_EQ(mutual_one, mutual_plain);
    EXPECT_GT(mutual_sym, mutual_plain);
    EXPECT_EQ(sorted_matchings(plain), sorted_matchings(one_sided));
  }
}

TEST(RunBench, RejectsBadConfig) {
  auto cfg = small_config();
  cfg.timeout = 0;
  EXPECT_THROW(run_bench(cfg), std::invalid_argument);
  cfg = small_config();
  cfg.grid.push_back({5, 1.5, 0});
  EXPECT_THROW(run_bench(cfg), std::invalid_argument);
}

TEST(BenchCsv, RoundTrip) {
  std::vector<BenchRow> rows{row(20, 0.25, 0, Mode::decision, 0.001234567),
                             row(40, 0.5, 50, Mode::rank_maximal, 1.5)};
  auto text = bench_csv(rows);
  EXPECT_EQ(text.substr(0, text.find('\n')), kBenchCsvHeader);
  std::istringstream in(text);
  auto back = parse_bench_csv(in);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].mode, Mode::rank_maximal);
  EXPECT_EQ(back[1].n, 40u);
  EXPECT_DOUBLE_EQ(back[1].tie_pct, 50);
  EXPECT_NEAR(back[0].avg_time_solved, 0.001234567, 1e-6);
  EXPECT_EQ(bench_csv(back), text);

  auto bare = bench_csv(rows, false);
  EXPECT_NE(bare.find("20,0.25,0,decision,5,5,0,,\n"), std::string::npos);

  std::istringstream bad("n,p\n");
  EXPECT_THROW(parse_bench_csv(bad), ParseError);
  std::istringstream short_row(std::string(kBenchCsvHeader) + "\n1,2,3\n");
  EXPECT_THROW(parse_bench_csv(short_row), ParseError);
}

TEST(BenchConfigFile, ParsesKeys) {
  std::istringstream in("# grid\n"
                        "n = 20, 40\n"
                        "p = 0.25,0.5   # two densities\n"
                        "ties = 0, 50\n"
                        "modes = decision, rank-maximal\n"
                        "per_cell = 4\n"
                        "timeout = 2.5\n"
                        "seed = 77\n"
                        "jobs = 2\n");
  auto cfg = parse_bench_config(in);
  EXPECT_EQ(cfg.grid.size(), 8u);
  EXPECT_EQ(cfg.grid.front(), (BenchCell{20, 0.25, 0}));
  EXPECT_EQ(cfg.grid.back(), (BenchCell{40, 0.5, 50}));
  EXPECT_EQ(cfg.modes, (std::vector<Mode>{Mode::decision, Mode::rank_maximal}));
  EXPECT_EQ(cfg.per_cell, 4u);
  EXPECT_DOUBLE_EQ(cfg.timeout, 2.5);
  EXPECT_EQ(cfg.seed, 77u);
  EXPECT_EQ(cfg.jobs, 2u);

  std::istringstream partial("n = 30\n");
  auto p = parse_bench_config(partial);
  EXPECT_EQ(p.grid, BenchConfig::product({30}, {0.25, 0.5}, {0}));

  std::istringstream unknown("colour = red\n");
  EXPECT_THROW(parse_bench_config(unknown), ParseError);
  std::istringstream bad_mode("modes = quick\n");
  EXPECT_THROW(parse_bench_config(bad_mode), ParseError);
  std::istringstream sym("symmetric_ties = true\n");
  EXPECT_TRUE(parse_bench_config(sym).symmetric_ties);
  EXPECT_FALSE(cfg.symmetric_ties);
  std::istringstream bad_bool("symmetric_ties = maybe\n");
  EXPECT_THROW(parse_bench_config(bad_bool), ParseError);
  std::istringstream no_eq("n 20\n");
  EXPECT_THROW(parse_bench_config(no_eq), ParseError);
}

TEST(Observations, SingleRowIsInsufficient) {
  auto obs = evaluate_observations({row(20, 0.25, 0, Mode::decision, 0.1)});
  ASSERT_EQ(obs.size(), 8u);
  for (auto const &o : obs)
    EXPECT_EQ(o.verdict, Verdict::insufficient) << o.id;
  auto text = report_observations({row(20, 0.25, 0, Mode::decision, 0.1)});
  EXPECT_NE(text.find("O6 insufficient data: "), std::string::npos);
}

TEST(Observations, GrowthAlongAgents) {
  std::vector<BenchRow> up{row(20, 0.25, 0, Mode::decision, 0.1), row(40, 0.25, 0, Mode::decision, 0.3)};
  EXPECT_EQ(find(evaluate_observations(up), "O6").verdict, Verdict::consistent);
  std::vector<BenchRow> down{row(20, 0.25, 0, Mode::decision, 0.3), row(40, 0.25, 0, Mode::decision, 0.1)};
  auto o6 = find(evaluate_observations(down), "O6");
  EXPECT_EQ(o6.verdict, Verdict::inconsistent);
  ASSERT_EQ(o6.evidence.size(), 1u);
  EXPECT_NE(o6.evidence[0].find("not increasing"), std::string::npos);
}

TEST(Observations, ModeComparisons) {
  std::vector<BenchRow> rows{row(20, 0.25, 0, Mode::decision, 0.1), row(20, 0.25, 0, Mode::egalitarian, 0.2),
                             row(20, 0.25, 0, Mode::rank_maximal, 0.3), row(20, 0.25, 0, Mode::almost, 0.5)};
  auto obs = evaluate_observations(rows);
  EXPECT_EQ(find(obs, "O2").verdict, Verdict::consistent);
  EXPECT_EQ(find(obs, "O3").verdict, Verdict::consistent);
  EXPECT_EQ(find(obs, "O4").verdict, Verdict::consistent);
  EXPECT_EQ(find(obs, "O4").evidence.size(), 3u);
  rows[0].avg_time_solved = rows[0].avg_time_unsolved = 0.25;
  EXPECT_EQ(find(evaluate_observations(rows), "O4").verdict, Verdict::inconsistent);
}

TEST(Observations, TiesAndSolvability) {
  auto plain = row(20, 0.5, 0, Mode::decision, 0.1);
  auto tied = row(20, 0.5, 50, Mode::decision, 0.2);
  tied.solved = 8;
  tied.unsolved = 2;
  auto obs = evaluate_observations({plain, tied});
  EXPECT_EQ(find(obs, "O7").verdict, Verdict::consistent);
  EXPECT_EQ(find(obs, "O8").verdict, Verdict::consistent);
  tied.solved = 5;
  tied.unsolved = 5;
  EXPECT_EQ(find(evaluate_observations({plain, tied}), "O8").verdict, Verdict::inconsistent);
}

TEST(Observations, SolvableVersusUnsolvableTime) {
  std::vector<BenchRow> rows{row(20, 0.25, 0, Mode::decision, 0.1), row(40, 0.25, 0, Mode::decision, 0.1)};
  EXPECT_EQ(find(evaluate_observations(rows), "O1").verdict, Verdict::consistent);
  rows[1].avg_time_unsolved = 5.0;
  EXPECT_EQ(find(evaluate_observations(rows), "O1").verdict, Verdict::inconsistent);
}
