#ifndef SRM_ORACLE_HPP
#define SRM_ORACLE_HPP

// Exhaustive reference answers for small instances. Enumerates every
// matching over mutually acceptable pairs and scores each one with the
// stability module; shares no code with the search engine.

#include "instance.hpp"
#include "solver.hpp"
#include "stability.hpp"

#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace srm {

inline constexpr std::size_t kOracleMaxAgents = 12;

/// Call visit(m) for every valid matching of inst.
inline void for_each_matching(Instance const &inst, std::function<void(Matching const &)> const &visit) {
  auto const n = inst.size();
  std::vector<AgentId> partner(n, std::numeric_limits<AgentId>::max());
  std::function<void(AgentId)> rec = [&](AgentId x) {
    while (x < n && partner[x] != std::numeric_limits<AgentId>::max())
      ++x;
    if (x == n) {
      visit(Matching(partner));
      return;
    }
    partner[x] = x;
    rec(x + 1);
    for (AgentId y = x + 1; y < n; ++y) {
      if (partner[y] != std::numeric_limits<AgentId>::max() || !inst.mutually_acceptable(x, y))
        continue;
      partner[x] = y;
      partner[y] = x;
      rec(x + 1);
      partner[y] = std::numeric_limits<AgentId>::max();
    }
    partner[x] = std::numeric_limits<AgentId>::max();
  };
  rec(0);
}

struct OracleAnswer {
  SolveResult result;
  /// Every stable matching, in the oracle's enumeration order.
  std::vector<Matching> stable;
};

/// Exact answer by exhaustive enumeration. Throws std::length_error above
/// kOracleMaxAgents agents.
inline OracleAnswer brute_force_oracle(Instance const &inst, Mode mode) {
  if (inst.size() > kOracleMaxAgents)
    throw std::length_error("brute_force_oracle: instance has " + std::to_string(inst.size()) + " agents; limit is " +
                            std::to_string(kOracleMaxAgents));
  OracleAnswer out;
  std::optional<Matching> best;
  std::uint64_t best_cost = std::numeric_limits<std::uint64_t>::max();
  std::optional<Profile> best_profile;

  for_each_matching(inst, [&](Matching const &m) {
    if (mode == Mode::almost) {
      auto bp = count_blocking_pairs(inst, m);
      if (bp < best_cost) {
        best_cost = bp;
        best = m;
      }
      return;
    }
    if (!is_stable(inst, m))
      return;
    out.stable.push_back(m);
    if (mode == Mode::egalitarian) {
      auto c = egalitarian_cost(inst, m);
      if (c < best_cost) {
        best_cost = c;
        best = m;
      }
    } else if (mode == Mode::rank_maximal) {
      auto p = profile_of(inst, m);
      if (!best_profile || p > *best_profile) {
        best_profile = p;
        best = m;
      }
    } else if (!best) {
      best = m;
    }
  });

  auto &r = out.result;
  if (!best) {
    r.status = Status::no_stable;
    return out;
  }
  r.matching = best;
  r.profile = profile_of(inst, *best);
  switch (mode) {
  case Mode::decision:
  case Mode::all:
    r.status = Status::stable;
    if (mode == Mode::all)
      r.objective = out.stable.size();
    break;
  case Mode::egalitarian:
  case Mode::almost:
    r.status = Status::optimal;
    r.objective = best_cost;
    break;
  case Mode::rank_maximal:
    r.status = Status::optimal;
    r.objective = egalitarian_cost(inst, *best);
    break;
  }
  return out;
}

} // namespace srm

#endif
