#ifndef SRM_SOLVER_HPP
#define SRM_SOLVER_HPP

// Backtracking search over matchings.
//
// Agents are decided in id order. The lowest undecided agent x branches over
// its undecided mutually acceptable partners in list order, then over staying
// single. Deciding an agent a checks every pair (a, z) that a would rather
// have than its current outcome:
//
//   - z decided:   the pair blocks iff z would also rather have a.
//   - z undecided: z must finish with a partner it ranks no worse than a
//                  (its "floor"), otherwise (a, z) blocks.
//
// Stable modes reject any blocking pair and prune when an undecided agent
// has a floor no remaining candidate can satisfy. Almost-stable mode keeps
// every matching and counts the blocking pairs among decided agents, a count
// that later decisions can only grow.

#include "instance.hpp"

#include <algorithm>
#include <chrono>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace srm {

enum class Mode { decision, all, egalitarian, rank_maximal, almost };

enum class Status { stable, no_stable, optimal, unknown };

inline std::string_view to_string(Mode m) {
  switch (m) {
  case Mode::decision:
    return "decision";
  case Mode::all:
    return "all";
  case Mode::egalitarian:
    return "egalitarian";
  case Mode::rank_maximal:
    return "rank-maximal";
  case Mode::almost:
    return "almost";
  }
  return "?";
}

inline std::string_view to_string(Status s) {
  switch (s) {
  case Status::stable:
    return "stable";
  case Status::no_stable:
    return "no-stable";
  case Status::optimal:
    return "optimal";
  case Status::unknown:
    return "unknown";
  }
  return "?";
}

inline Mode parse_mode(std::string_view text) {
  for (Mode m : {Mode::decision, Mode::all, Mode::egalitarian, Mode::rank_maximal, Mode::almost})
    if (to_string(m) == text)
      return m;
  throw std::invalid_argument("unknown solver mode '" + std::string(text) + "'");
}

/// counts[i] = matched agents whose partner sits at rank i + 1.
/// Compares lexicographically; greater is better.
struct Profile {
  std::vector<std::uint32_t> counts;

  friend bool operator==(Profile const &, Profile const &) = default;
  friend auto operator<=>(Profile const &, Profile const &) = default;
};

inline Profile profile_of(Instance const &inst, Matching const &m) { return {rank_profile(inst, m)}; }

struct SolveStats {
  std::uint64_t nodes = 0;
  double seconds = 0.0;
};

struct SolveResult {
  Status status = Status::unknown;
  std::optional<Matching> matching;
  /// Egalitarian cost or blocking-pair count, depending on the mode.
  std::optional<std::uint64_t> objective;
  std::optional<Profile> profile;
  SolveStats stats;
  /// Deadline hit; `matching` holds the incumbent, if any.
  bool timed_out = false;
};

struct SolveOptions {
  std::optional<std::chrono::steady_clock::time_point> deadline;

  static SolveOptions with_timeout(double seconds) {
    SolveOptions o;
    o.deadline = std::chrono::steady_clock::now() +
                 std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(seconds));
    return o;
  }
};

namespace detail {

inline constexpr AgentId kUndecided = std::numeric_limits<AgentId>::max();
inline constexpr Rank kNoFloor = std::numeric_limits<Rank>::max();

struct SearchState {
  Instance const &inst;
  RankTable const &ranks;
  std::vector<AgentId> partner;
  std::vector<Rank> floor;

  explicit SearchState(Instance const &i)
      : inst(i), ranks(i.ranks()), partner(i.size(), kUndecided), floor(i.size(), kNoFloor) {}

  bool undecided(AgentId a) const { return partner[a] == kUndecided; }

  /// u and w could still be matched without violating either floor.
  bool compatible(AgentId u, AgentId w) const { return ranks.raw(u, w) <= floor[u] && ranks.raw(w, u) <= floor[w]; }

  bool may_be_single(AgentId u) const { return floor[u] == kNoFloor; }

  /// Best rank u can still reach, nullopt if none (floor unsatisfiable).
  std::optional<Rank> best_reachable(AgentId u) const {
    for (AgentId w : inst.mutual_partners(u)) {
      if (ranks.raw(u, w) > floor[u])
        break;
      if (undecided(w) && ranks.raw(w, u) <= floor[w])
        return ranks.raw(u, w);
    }
    if (may_be_single(u))
      return ranks.single_rank(u);
    return std::nullopt;
  }

  Matching matching() const { return Matching(partner); }
};

/// Depth-first engine. Policy supplies:
///   static constexpr bool stable;
///   void on_assign(SearchState const&, AgentId x, AgentId y, std::size_t new_blocks);
///   void on_unassign(SearchState const&, AgentId x, AgentId y, std::size_t new_blocks);
///   bool prune(SearchState const&);   // true cuts the subtree
///   bool leaf(SearchState const&);    // false stops the search
template <typename Policy>
class Search {
public:
  Search(Instance const &inst, Policy &policy, SolveOptions const &opts)
      : state_(inst), policy_(policy), deadline_(opts.deadline) {}

  /// Returns false if the search was cut short by the deadline or the policy.
  bool run() { return dfs(0); }

  bool timed_out() const { return timed_out_; }
  std::uint64_t nodes() const { return nodes_; }

private:
  static constexpr bool kStable = Policy::stable;

  bool dfs(AgentId from) {
    ++nodes_;
    if (deadline_ && (nodes_ & 0xff) == 0 && std::chrono::steady_clock::now() >= *deadline_) {
      timed_out_ = true;
      return false;
    }
    auto const n = static_cast<AgentId>(state_.partner.size());
    AgentId x = from;
    while (x < n && !state_.undecided(x))
      ++x;
    if (x == n)
      return policy_.leaf(state_);
    if (policy_.prune(state_))
      return true;

    for (AgentId y : state_.inst.mutual_partners(x)) {
      if (!state_.undecided(y))
        continue;
      if (kStable && !state_.compatible(x, y))
        continue;
      if (!branch(x, y))
        return false;
    }
    if (!kStable || state_.may_be_single(x))
      if (!branch(x, x))
        return false;
    return true;
  }

  bool branch(AgentId x, AgentId y) {
    auto const mark = trail_.size();
    touched_.clear();
    state_.partner[x] = y;
    state_.partner[y] = x;
    std::size_t new_blocks = 0;
    bool ok = propagate(x, new_blocks) && (x == y || propagate(y, new_blocks)) && reachable_after(x, y);
    bool keep_going = true;
    if (ok) {
      policy_.on_assign(state_, x, y, new_blocks);
      keep_going = dfs(x + 1);
      policy_.on_unassign(state_, x, y, new_blocks);
    }
    while (trail_.size() > mark) {
      state_.floor[trail_.back().agent] = trail_.back().old;
      trail_.pop_back();
    }
    state_.partner[x] = kUndecided;
    state_.partner[y] = kUndecided;
    return keep_going;
  }

  // Examine every pair (a, z) that newly decided a would rather have.
  bool propagate(AgentId a, std::size_t &new_blocks) {
    auto const &ranks = state_.ranks;
    Rank const mine = ranks.raw(a, state_.partner[a]);
    for (AgentId z : state_.inst.mutual_partners(a)) {
      if (ranks.raw(a, z) >= mine)
        break;
      Rank const theirs = ranks.raw(z, a);
      if (!state_.undecided(z)) {
        if (theirs < ranks.raw(z, state_.partner[z])) {
          if (kStable)
            return false;
          ++new_blocks;
        }
      } else if (kStable && theirs < state_.floor[z]) {
        trail_.push_back({z, state_.floor[z]});
        state_.floor[z] = theirs;
        touched_.push_back(z);
      }
    }
    return true;
  }

  // Agents whose options shrank: tightened floors, and undecided neighbours
  // of the pair just decided. Each must still have a partner or be allowed
  // to stay single.
  bool reachable_after(AgentId x, AgentId y) {
    if constexpr (kStable) {
      for (AgentId z : touched_)
        if (!state_.best_reachable(z))
          return false;
      for (AgentId a : {x, y})
        for (AgentId z : state_.inst.mutual_partners(a))
          if (state_.undecided(z) && !state_.best_reachable(z))
            return false;
    }
    return true;
  }

  struct TrailEntry {
    AgentId agent;
    Rank old;
  };

  SearchState state_;
  Policy &policy_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::vector<TrailEntry> trail_;
  std::vector<AgentId> touched_;
  std::uint64_t nodes_ = 0;
  bool timed_out_ = false;
};

struct CollectPolicy {
  static constexpr bool stable = true;
  std::optional<std::size_t> limit;
  std::vector<Matching> found;

  void on_assign(SearchState const &, AgentId, AgentId, std::size_t) {}
  void on_unassign(SearchState const &, AgentId, AgentId, std::size_t) {}
  bool prune(SearchState const &) { return false; }
  bool leaf(SearchState const &s) {
    found.push_back(s.matching());
    return !limit || found.size() < *limit;
  }
};

// Lower bound: cost so far plus each undecided agent's best reachable rank.
struct EgalitarianPolicy {
  static constexpr bool stable = true;
  std::uint64_t cost = 0;
  std::uint64_t incumbent = std::numeric_limits<std::uint64_t>::max();
  std::optional<Matching> best;

  static std::uint64_t pair_cost(SearchState const &s, AgentId x, AgentId y) {
    return x == y ? s.ranks.single_rank(x) : std::uint64_t{s.ranks.raw(x, y)} + s.ranks.raw(y, x);
  }
  void on_assign(SearchState const &s, AgentId x, AgentId y, std::size_t) { cost += pair_cost(s, x, y); }
  void on_unassign(SearchState const &s, AgentId x, AgentId y, std::size_t) { cost -= pair_cost(s, x, y); }

  bool prune(SearchState const &s) {
    std::uint64_t bound = cost;
    for (AgentId u = 0; u < s.partner.size(); ++u) {
      if (!s.undecided(u))
        continue;
      auto r = s.best_reachable(u);
      if (!r)
        return true;
      bound += *r;
      if (bound >= incumbent)
        return true;
    }
    return false;
  }
  bool leaf(SearchState const &s) {
    if (cost < incumbent) {
      incumbent = cost;
      best = s.matching();
    }
    return true;
  }
};

// One link of the rank-maximal chain: counts[0..level) are pinned to
// `targets`, counts[level] is maximised.
struct RankLevelPolicy {
  static constexpr bool stable = true;
  std::size_t level = 0;
  std::vector<std::uint32_t> targets;
  std::vector<std::uint32_t> counts;
  std::int64_t incumbent = -1;
  std::optional<Matching> best;
  std::vector<std::uint32_t> potential;

  void on_assign(SearchState const &s, AgentId x, AgentId y, std::size_t) {
    if (x == y)
      return;
    ++counts[s.ranks.raw(x, y) - 1];
    ++counts[s.ranks.raw(y, x) - 1];
  }
  void on_unassign(SearchState const &s, AgentId x, AgentId y, std::size_t) {
    if (x == y)
      return;
    --counts[s.ranks.raw(x, y) - 1];
    --counts[s.ranks.raw(y, x) - 1];
  }

  bool prune(SearchState const &s) {
    for (std::size_t j = 0; j < level; ++j)
      if (counts[j] > targets[j])
        return true;
    // potential[j]: undecided agents that could still land a rank j+1 partner
    std::fill(potential.begin(), potential.begin() + level + 1, 0);
    for (AgentId u = 0; u < s.partner.size(); ++u) {
      if (!s.undecided(u))
        continue;
      bool reachable = s.may_be_single(u);
      Rank last = 0;
      for (AgentId w : s.inst.mutual_partners(u)) {
        Rank r = s.ranks.raw(u, w);
        if (r > s.floor[u])
          break;
        if (!s.undecided(w) || s.ranks.raw(w, u) > s.floor[w])
          continue;
        reachable = true;
        if (r == last)
          continue;
        last = r;
        if (r - 1 <= level)
          ++potential[r - 1];
      }
      if (!reachable)
        return true;
    }
    for (std::size_t j = 0; j < level; ++j)
      if (counts[j] + potential[j] < targets[j])
        return true;
    return std::int64_t{counts[level]} + potential[level] <= incumbent;
  }

  bool leaf(SearchState const &s) {
    for (std::size_t j = 0; j < level; ++j)
      if (counts[j] != targets[j])
        return true;
    if (std::int64_t{counts[level]} > incumbent) {
      incumbent = counts[level];
      best = s.matching();
    }
    return true;
  }
};

struct AlmostPolicy {
  static constexpr bool stable = false;
  std::uint64_t blocking = 0;
  std::uint64_t incumbent = std::numeric_limits<std::uint64_t>::max();
  /// A known lower bound on the optimum; reaching it ends the search.
  std::uint64_t floor_value = 0;
  std::optional<Matching> best;

  void on_assign(SearchState const &, AgentId, AgentId, std::size_t b) { blocking += b; }
  void on_unassign(SearchState const &, AgentId, AgentId, std::size_t b) { blocking -= b; }
  bool prune(SearchState const &) { return blocking >= incumbent; }
  bool leaf(SearchState const &s) {
    if (blocking < incumbent) {
      incumbent = blocking;
      best = s.matching();
    }
    return incumbent > floor_value;
  }
};

class Stopwatch {
public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

} // namespace detail

/// Some stable matching, or no_stable.
inline SolveResult solve_decision(Instance const &inst, SolveOptions const &opts = {}) {
  detail::Stopwatch clock;
  detail::CollectPolicy policy;
  policy.limit = 1;
  detail::Search search(inst, policy, opts);
  search.run();
  SolveResult r;
  r.stats = {search.nodes(), clock.seconds()};
  r.timed_out = search.timed_out();
  if (!policy.found.empty()) {
    r.status = Status::stable;
    r.matching = policy.found.front();
    r.profile = profile_of(inst, *r.matching);
  } else {
    r.status = r.timed_out ? Status::unknown : Status::no_stable;
  }
  return r;
}

struct Enumeration {
  std::vector<Matching> matchings;
  SolveStats stats;
  bool timed_out = false;
};

/// Stable matchings in search order, at most `limit` of them.
inline Enumeration enumerate_stable(Instance const &inst, std::optional<std::size_t> limit = std::nullopt,
                                    SolveOptions const &opts = {}) {
  detail::Stopwatch clock;
  detail::CollectPolicy policy;
  policy.limit = limit;
  Enumeration out;
  if (limit && *limit == 0)
    return out;
  detail::Search search(inst, policy, opts);
  search.run();
  out.matchings = std::move(policy.found);
  out.stats = {search.nodes(), clock.seconds()};
  out.timed_out = search.timed_out();
  return out;
}

inline std::vector<Matching> enumerate_all(Instance const &inst, std::optional<std::size_t> limit = std::nullopt) {
  return enumerate_stable(inst, limit).matchings;
}

/// Stable matching of minimum egalitarian cost.
inline SolveResult solve_egalitarian(Instance const &inst, SolveOptions const &opts = {}) {
  detail::Stopwatch clock;
  detail::EgalitarianPolicy policy;
  detail::Search search(inst, policy, opts);
  search.run();
  SolveResult r;
  r.stats = {search.nodes(), clock.seconds()};
  r.timed_out = search.timed_out();
  if (policy.best) {
    r.status = r.timed_out ? Status::unknown : Status::optimal;
    r.matching = policy.best;
    r.objective = policy.incumbent;
    r.profile = profile_of(inst, *policy.best);
  } else {
    r.status = r.timed_out ? Status::unknown : Status::no_stable;
  }
  return r;
}

/// Stable matching with lexicographically greatest rank profile.
///
/// Walks the chain level by level: maximise the number of rank-1 partners,
/// then with that count pinned maximise rank-2 partners, and so on. Each
/// level starts from the previous level's matching as incumbent.
inline SolveResult solve_rank_maximal(Instance const &inst, SolveOptions const &opts = {}) {
  detail::Stopwatch clock;
  SolveResult r;
  auto const levels = std::max<std::size_t>(inst.max_group_count(), 1);
  std::vector<std::uint32_t> targets;
  std::optional<Matching> current;
  std::uint64_t nodes = 0;
  for (std::size_t level = 0; level < levels; ++level) {
    detail::RankLevelPolicy policy;
    policy.level = level;
    policy.targets = targets;
    policy.counts.assign(levels, 0);
    policy.potential.assign(levels, 0);
    if (current) {
      auto prof = rank_profile(inst, *current);
      prof.resize(levels, 0);
      policy.incumbent = prof[level];
      policy.best = current;
    }
    detail::Search search(inst, policy, opts);
    search.run();
    nodes += search.nodes();
    if (search.timed_out()) {
      r.timed_out = true;
      if (!policy.best)
        policy.best = current;
    }
    if (!policy.best) {
      r.status = r.timed_out ? Status::unknown : Status::no_stable;
      r.stats = {nodes, clock.seconds()};
      return r;
    }
    current = policy.best;
    targets.push_back(static_cast<std::uint32_t>(policy.incumbent));
    if (r.timed_out)
      break;
  }
  r.status = r.timed_out ? Status::unknown : Status::optimal;
  r.matching = current;
  r.profile = profile_of(inst, *current);
  r.objective = egalitarian_cost(inst, *current);
  r.stats = {nodes, clock.seconds()};
  return r;
}

/// Matching (stable or not) with the fewest blocking pairs.
inline SolveResult solve_almost_stable(Instance const &inst, SolveOptions const &opts = {}) {
  detail::Stopwatch clock;
  SolveResult r;
  auto decision = solve_decision(inst, opts);
  std::uint64_t nodes = decision.stats.nodes;
  if (decision.status == Status::stable) {
    r.status = Status::optimal;
    r.matching = decision.matching;
    r.objective = 0;
    r.profile = decision.profile;
    r.stats = {nodes, clock.seconds()};
    return r;
  }
  detail::AlmostPolicy policy;
  // without a stable matching the optimum is at least one
  policy.floor_value = decision.status == Status::no_stable ? 1 : 0;
  detail::Search search(inst, policy, opts);
  search.run();
  r.timed_out = decision.timed_out || search.timed_out();
  r.stats = {nodes + search.nodes(), clock.seconds()};
  // the everyone-single matching is always a candidate, so best is set
  // unless the deadline fired first
  if (policy.best) {
    r.status = r.timed_out ? Status::unknown : Status::optimal;
    r.matching = policy.best;
    r.objective = policy.incumbent;
    r.profile = profile_of(inst, *policy.best);
  }
  return r;
}

/// Dispatch on mode. For Mode::all the first stable matching is reported and
/// `objective` holds the number of stable matchings found.
inline SolveResult solve(Instance const &inst, Mode mode, SolveOptions const &opts = {}) {
  switch (mode) {
  case Mode::decision:
    return solve_decision(inst, opts);
  case Mode::all: {
    auto e = enumerate_stable(inst, std::nullopt, opts);
    SolveResult r;
    r.stats = e.stats;
    r.timed_out = e.timed_out;
    r.objective = e.matchings.size();
    if (!e.matchings.empty()) {
      r.status = r.timed_out ? Status::unknown : Status::stable;
      r.matching = e.matchings.front();
      r.profile = profile_of(inst, *r.matching);
    } else {
      r.status = r.timed_out ? Status::unknown : Status::no_stable;
    }
    return r;
  }
  case Mode::egalitarian:
    return solve_egalitarian(inst, opts);
  case Mode::rank_maximal:
    return solve_rank_maximal(inst, opts);
  case Mode::almost:
    return solve_almost_stable(inst, opts);
  }
  throw std::invalid_argument("unknown mode");
}

} // namespace srm

#endif
