#ifndef SRM_STABILITY_HPP
#define SRM_STABILITY_HPP

#include "instance.hpp"

#include <compare>
#include <vector>

namespace srm {

/// Unordered pair stored with x < y.
struct BlockingPair {
  AgentId x;
  AgentId y;

  static BlockingPair canonical(AgentId a, AgentId b) { return a < b ? BlockingPair{a, b} : BlockingPair{b, a}; }

  friend bool operator==(BlockingPair const &, BlockingPair const &) = default;
  friend auto operator<=>(BlockingPair const &, BlockingPair const &) = default;
};

/// x is single, or x strictly prefers y to its partner. Requires y in A_x.
inline bool would_rather(Instance const &inst, Matching const &m, AgentId x, AgentId y) {
  return m.single(x) || inst.prefers(x, y, m[x]);
}

/// Weak-stability blocking predicate (B1-B3).
inline bool blocks(Instance const &inst, Matching const &m, AgentId x, AgentId y) {
  if (x == y || m[x] == y)
    return false;
  if (!inst.mutually_acceptable(x, y))
    return false;
  return would_rather(inst, m, x, y) && would_rather(inst, m, y, x);
}

/// All blocking pairs, sorted.
inline std::vector<BlockingPair> blocking_pairs(Instance const &inst, Matching const &m) {
  std::vector<BlockingPair> out;
  for (AgentId x = 0; x < inst.size(); ++x)
    for (AgentId y : inst.mutual_partners(x))
      if (x < y && blocks(inst, m, x, y))
        out.push_back({x, y});
  std::sort(out.begin(), out.end());
  return out;
}

inline std::size_t count_blocking_pairs(Instance const &inst, Matching const &m) {
  std::size_t count = 0;
  for (AgentId x = 0; x < inst.size(); ++x)
    for (AgentId y : inst.mutual_partners(x))
      if (x < y && blocks(inst, m, x, y))
        ++count;
  return count;
}

inline bool is_stable(Instance const &inst, Matching const &m) {
  for (AgentId x = 0; x < inst.size(); ++x)
    for (AgentId y : inst.mutual_partners(x))
      if (x < y && blocks(inst, m, x, y))
        return false;
  return true;
}

/// Blocking pairs derived rule by rule from single/like atoms:
///
///   like(x,y)  <- room(x,x'), x' != y, x prefers y to x'
///   block(x,y) <- accept2(x,y), not room(x,y), and one of
///                 single(x)/single(y), single(x)/like(y,x),
///                 like(x,y)/single(y), like(x,y)/like(y,x)
///
/// Kept separate from blocking_pairs() so the two can be cross-checked.
inline std::vector<BlockingPair> blocking_pairs_by_rules(Instance const &inst, Matching const &m) {
  auto const n = inst.size();
  std::vector<char> single(n, 0);
  for (AgentId x = 0; x < n; ++x)
    single[x] = m[x] == x;

  // like[x*n+y]; only defined for matched x
  std::vector<char> like(n * n, 0);
  for (AgentId x = 0; x < n; ++x) {
    if (single[x])
      continue;
    AgentId partner = m[x];
    for (auto const &group : inst.prefs(x).groups)
      for (AgentId y : group)
        if (y != partner && inst.prefers(x, y, partner))
          like[x * n + y] = 1;
  }

  std::vector<char> hit(n * n, 0);
  for (AgentId x = 0; x < n; ++x) {
    for (AgentId y = 0; y < n; ++y) {
      if (x == y || !inst.mutually_acceptable(x, y) || m[x] == y)
        continue;
      bool const ss = single[x] && single[y];
      bool const sl = single[x] && like[y * n + x];
      bool const ls = like[x * n + y] && single[y];
      bool const ll = like[x * n + y] && like[y * n + x];
      if (ss || sl || ls || ll)
        hit[x * n + y] = 1;
    }
  }

  std::vector<BlockingPair> out;
  for (AgentId x = 0; x < n; ++x)
    for (AgentId y = x + 1; y < n; ++y)
      if (hit[x * n + y] || hit[y * n + x])
        out.push_back({x, y});
  return out;
}

} // namespace srm

#endif
