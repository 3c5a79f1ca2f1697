#ifndef SRM_GENERATOR_HPP
#define SRM_GENERATOR_HPP

#include "instance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace srm {

/// Erdős–Rényi G(n, p) acceptability graph with random strict lists.
struct GenConfig {
  std::size_t n = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  double tie_pct = 0.0;
  bool symmetric_ties = false;

  void validate() const {
    if (n < 1)
      throw std::invalid_argument("generator: n must be at least 1");
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("generator: p must lie in [0, 1]");
    if (!(tie_pct >= 0.0))
      throw std::invalid_argument("generator: tie percentage must be non-negative");
  }

  /// Number of tie operations: round(tie_pct * n / 100).
  std::size_t tie_count() const { return static_cast<std::size_t>(std::llround(tie_pct * static_cast<double>(n) / 100.0)); }
};

namespace rng {

/// SplitMix64 finalizer; used to derive independent substream seeds.
inline std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Substream k of seed: mt19937_64 seeded with mix(mix(seed) ^ mix(k)).
///
/// Stream 0 draws the edges; stream 1 + x permutes agent x's list. Tie
/// operation j uses stream j of the tie seed.
inline std::mt19937_64 stream(std::uint64_t seed, std::uint64_t k) { return std::mt19937_64(mix(mix(seed) ^ mix(k))); }

/// Uniform integer in [0, bound) by rejection; bound > 0.
inline std::uint64_t below(std::mt19937_64 &g, std::uint64_t bound) {
  std::uint64_t const limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do {
    v = g();
  } while (v >= limit);
  return v % bound;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double unit(std::mt19937_64 &g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

// std::shuffle is not specified bit-for-bit across standard libraries.
template <typename T>
void shuffle(std::vector<T> &v, std::mt19937_64 &g) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[below(g, i)]);
}

} // namespace rng

inline std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 1; i <= n; ++i)
    names.push_back(std::to_string(i));
  return names;
}

/// Random SRI instance. Deterministic in (n, p, seed).
inline Instance generate_sri(GenConfig const &cfg) {
  cfg.validate();
  auto const n = cfg.n;
  std::vector<std::vector<AgentId>> adj(n);
  auto edges = rng::stream(cfg.seed, 0);
  for (AgentId x = 0; x < n; ++x)
    for (AgentId y = x + 1; y < n; ++y)
      if (rng::unit(edges) < cfg.p) {
        adj[x].push_back(y);
        adj[y].push_back(x);
      }
  std::vector<PreferenceList> prefs(n);
  for (AgentId x = 0; x < n; ++x) {
    auto g = rng::stream(cfg.seed, 1 + std::uint64_t{x});
    rng::shuffle(adj[x], g);
    for (AgentId y : adj[x])
      prefs[x].groups.push_back({y});
  }
  InstanceMetadata meta;
  meta.seed = cfg.seed;
  meta.p = cfg.p;
  meta.completeness = cfg.p * 100.0;
  return Instance(default_names(n), std::move(prefs), std::move(meta));
}

struct TieResult {
  Instance instance;
  std::size_t applied = 0;
  std::size_t skipped = 0;
  /// No agent admits a tie operation; instance returned unchanged.
  bool warning = false;
};

/// Inject tie_count ties. Each operation draws an agent x (with
/// replacement), a y with neither y in A_x nor x in A_y, and a z mutually
/// acceptable with x, then places y in z's tie-group in x's list. With
/// `symmetric`, x is also placed in y's list, tied with a random mutual
/// partner of y or appended as a new last group if y has none.
///
/// A draw whose x has no candidate y or z is re-drawn up to n times before
/// the operation counts as skipped.
inline TieResult add_ties(Instance const &inst, std::size_t tie_count, std::uint64_t seed, bool symmetric = false) {
  if (tie_count == 0)
    return {inst, 0, 0, false};
  auto const n = inst.size();
  std::vector<PreferenceList> prefs = inst.all_prefs();
  // accepts[x*n+y] tracks the evolving lists
  std::vector<char> accepts(n * n, 0);
  for (AgentId x = 0; x < n; ++x)
    for (auto const &g : prefs[x].groups)
      for (AgentId y : g)
        accepts[x * n + y] = 1;

  auto non_acceptable = [&](AgentId x) {
    std::vector<AgentId> out;
    for (AgentId y = 0; y < n; ++y)
      if (y != x && !accepts[x * n + y] && !accepts[y * n + x])
        out.push_back(y);
    return out;
  };
  auto mutual = [&](AgentId x) {
    std::vector<AgentId> out;
    for (auto const &g : prefs[x].groups)
      for (AgentId y : g)
        if (accepts[y * n + x])
          out.push_back(y);
    return out;
  };
  auto insert_tied = [&](AgentId owner, AgentId newcomer, AgentId anchor) {
    for (auto &g : prefs[owner].groups)
      if (std::find(g.begin(), g.end(), anchor) != g.end()) {
        g.push_back(newcomer);
        break;
      }
    accepts[owner * n + newcomer] = 1;
  };

  bool any = false;
  for (AgentId x = 0; x < n && !any; ++x)
    any = !non_acceptable(x).empty() && !mutual(x).empty();
  if (!any)
    return {inst, 0, tie_count, true};

  TieResult result{inst, 0, 0, false};
  for (std::size_t op = 0; op < tie_count; ++op) {
    auto g = rng::stream(seed, op);
    bool done = false;
    for (std::size_t attempt = 0; attempt < n && !done; ++attempt) {
      auto x = static_cast<AgentId>(rng::below(g, n));
      auto t = non_acceptable(x);
      auto u = mutual(x);
      if (t.empty() || u.empty())
        continue;
      AgentId y = t[rng::below(g, t.size())];
      AgentId z = u[rng::below(g, u.size())];
      insert_tied(x, y, z);
      if (symmetric) {
        auto uy = mutual(y);
        if (uy.empty()) {
          prefs[y].groups.push_back({x});
          accepts[y * n + x] = 1;
        } else {
          insert_tied(y, x, uy[rng::below(g, uy.size())]);
        }
      }
      done = true;
    }
    if (done)
      ++result.applied;
    else
      ++result.skipped;
  }

  InstanceMetadata meta = inst.metadata();
  meta.ties = inst.metadata().ties.value_or(0) + result.applied;
  result.instance = Instance(inst.names(), std::move(prefs), std::move(meta));
  return result;
}

/// generate_sri followed by add_ties(cfg.tie_count()) with a seed derived
/// from cfg.seed.
inline Instance generate(GenConfig const &cfg) {
  Instance base = generate_sri(cfg);
  auto count = cfg.tie_count();
  if (count == 0)
    return base;
  return add_ties(base, count, rng::mix(cfg.seed ^ 0x7469657300000000ULL), cfg.symmetric_ties).instance;
}

} // namespace srm

#endif
