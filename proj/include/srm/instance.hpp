#ifndef SRM_INSTANCE_HPP
#define SRM_INSTANCE_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace srm {

/// Dense agent index in [0, n).
using AgentId = std::uint32_t;

/// Rank of an acceptable agent; 0 never occurs for an acceptable pair.
using Rank = std::uint32_t;

inline constexpr Rank kNotAcceptable = 0;

class InstanceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Preference list of one agent as an ordered sequence of tie-groups.
struct PreferenceList {
  std::vector<std::vector<AgentId>> groups;

  std::size_t length() const {
    std::size_t len = 0;
    for (auto const &g : groups)
      len += g.size();
    return len;
  }
  bool empty() const { return groups.empty(); }
  bool strict() const {
    for (auto const &g : groups)
      if (g.size() != 1)
        return false;
    return true;
  }
  friend bool operator==(PreferenceList const &, PreferenceList const &) = default;
};

/// Provenance carried through the instance file as `% key: value` comments.
struct InstanceMetadata {
  std::optional<std::uint64_t> seed;
  std::optional<double> p;
  std::optional<double> completeness; // p * 100
  std::optional<std::size_t> ties;

  bool empty() const { return !seed && !p && !completeness && !ties; }
  friend bool operator==(InstanceMetadata const &, InstanceMetadata const &) = default;
};

/// Rank of each acceptable agent plus the agent's own single-rank.
///
/// Tie-group k (1-based) gives all its members rank k, so strict lists get
/// the usual positional rank. single_rank(x) is one more than the number of
/// groups in x's list.
class RankTable {
public:
  RankTable() = default;

  RankTable(std::span<PreferenceList const> prefs) : n_(prefs.size()), rank_(n_ * n_, kNotAcceptable) {
    single_.reserve(n_);
    for (std::size_t x = 0; x < n_; ++x) {
      Rank r = 0;
      for (auto const &group : prefs[x].groups) {
        ++r;
        for (AgentId y : group)
          rank_[x * n_ + y] = r;
      }
      single_.push_back(r + 1);
    }
  }

  std::size_t size() const { return n_; }

  /// Rank of y in x's list, or nullopt when y is not acceptable to x.
  std::optional<Rank> rank(AgentId x, AgentId y) const {
    Rank r = raw(x, y);
    if (r == kNotAcceptable)
      return std::nullopt;
    return r;
  }

  /// Rank with 0 for "not acceptable" and single_rank for x itself.
  Rank raw(AgentId x, AgentId y) const {
    if (x == y)
      return single_[x];
    return rank_[x * n_ + y];
  }

  Rank single_rank(AgentId x) const { return single_[x]; }

private:
  std::size_t n_ = 0;
  std::vector<Rank> rank_;
  std::vector<Rank> single_;
};

/// A Stable Roommates instance with incomplete lists and ties.
///
/// Immutable after construction. Acceptability is stored as declared and may
/// be asymmetric; mutual acceptability is derived.
class Instance {
public:
  Instance() = default;

  Instance(std::vector<std::string> names, std::vector<PreferenceList> prefs, InstanceMetadata meta = {})
      : names_(std::move(names)), prefs_(std::move(prefs)), meta_(std::move(meta)) {
    if (names_.size() != prefs_.size())
      throw InstanceError("agent count does not match preference list count");
    auto const n = names_.size();
    for (AgentId x = 0; x < n; ++x) {
      if (!index_.emplace(names_[x], x).second)
        throw InstanceError("duplicate agent name '" + names_[x] + "'");
    }
    std::vector<char> seen(n, 0);
    for (AgentId x = 0; x < n; ++x) {
      std::fill(seen.begin(), seen.end(), 0);
      for (auto const &group : prefs_[x].groups) {
        if (group.empty())
          throw InstanceError("empty tie-group in list of '" + names_[x] + "'");
        for (AgentId y : group) {
          if (y >= n)
            throw InstanceError("agent id out of range in list of '" + names_[x] + "'");
          if (y == x)
            throw InstanceError("agent '" + names_[x] + "' lists itself");
          if (seen[y])
            throw InstanceError("agent '" + names_[y] + "' appears twice in list of '" + names_[x] + "'");
          seen[y] = 1;
        }
      }
    }
    ranks_ = RankTable(prefs_);
    mutual_.assign(n, {});
    for (AgentId x = 0; x < n; ++x) {
      for (auto const &group : prefs_[x].groups)
        for (AgentId y : group)
          if (ranks_.raw(y, x) != kNotAcceptable)
            mutual_[x].push_back(y);
    }
  }

  std::size_t size() const { return names_.size(); }
  std::string const &name(AgentId x) const { return names_.at(x); }
  std::vector<std::string> const &names() const { return names_; }

  std::optional<AgentId> find(std::string const &name) const {
    auto it = index_.find(name);
    if (it == index_.end())
      return std::nullopt;
    return it->second;
  }

  AgentId id(std::string const &name) const {
    auto found = find(name);
    if (!found)
      throw InstanceError("unknown agent '" + name + "'");
    return *found;
  }

  PreferenceList const &prefs(AgentId x) const { return prefs_.at(x); }
  std::vector<PreferenceList> const &all_prefs() const { return prefs_; }
  InstanceMetadata const &metadata() const { return meta_; }
  RankTable const &ranks() const { return ranks_; }

  /// y is in x's list.
  bool accepts(AgentId x, AgentId y) const { return x != y && ranks_.raw(x, y) != kNotAcceptable; }

  bool mutually_acceptable(AgentId x, AgentId y) const { return accepts(x, y) && accepts(y, x); }

  /// Agents mutually acceptable with x, in x's list order.
  std::span<AgentId const> mutual_partners(AgentId x) const { return mutual_[x]; }

  /// x strictly prefers y to z; z == x means "y rather than being single".
  /// Throws if y is not acceptable to x.
  bool prefers(AgentId x, AgentId y, AgentId z) const {
    if (!accepts(x, y))
      throw InstanceError("prefers: '" + names_[y] + "' is not acceptable to '" + names_[x] + "'");
    if (z == x)
      return true;
    Rank rz = ranks_.raw(x, z);
    if (rz == kNotAcceptable)
      throw InstanceError("prefers: '" + names_[z] + "' is not acceptable to '" + names_[x] + "'");
    return ranks_.raw(x, y) < rz;
  }

  /// y and z are distinct members of the same tie-group of x.
  bool tied(AgentId x, AgentId y, AgentId z) const {
    return y != z && accepts(x, y) && accepts(x, z) && ranks_.raw(x, y) == ranks_.raw(x, z);
  }

  std::size_t group_count(AgentId x) const { return prefs_[x].groups.size(); }

  std::size_t max_group_count() const {
    std::size_t best = 0;
    for (auto const &p : prefs_)
      best = std::max(best, p.groups.size());
    return best;
  }

  bool has_ties() const {
    for (auto const &p : prefs_)
      if (!p.strict())
        return true;
    return false;
  }

  friend bool operator==(Instance const &a, Instance const &b) {
    return a.names_ == b.names_ && a.prefs_ == b.prefs_ && a.meta_ == b.meta_;
  }

private:
  std::vector<std::string> names_;
  std::vector<PreferenceList> prefs_;
  InstanceMetadata meta_;
  std::unordered_map<std::string, AgentId> index_;
  RankTable ranks_;
  std::vector<std::vector<AgentId>> mutual_;
};

inline bool mutually_acceptable(Instance const &inst, AgentId x, AgentId y) { return inst.mutually_acceptable(x, y); }

inline bool prefers(Instance const &inst, AgentId x, AgentId y, AgentId z) { return inst.prefers(x, y, z); }

inline RankTable const &rank_table(Instance const &inst) { return inst.ranks(); }

/// Total mapping agent -> agent; a self-mapped agent is single.
class Matching {
public:
  Matching() = default;

  /// Everyone single.
  explicit Matching(std::size_t n) : partner_(n) {
    for (AgentId x = 0; x < n; ++x)
      partner_[x] = x;
  }

  explicit Matching(std::vector<AgentId> partner) : partner_(std::move(partner)) {}

  static Matching from_pairs(std::size_t n, std::span<std::pair<AgentId, AgentId> const> pairs) {
    Matching m(n);
    for (auto [x, y] : pairs) {
      m.partner_.at(x) = y;
      m.partner_.at(y) = x;
    }
    return m;
  }

  std::size_t size() const { return partner_.size(); }
  AgentId operator[](AgentId x) const { return partner_[x]; }
  AgentId partner(AgentId x) const { return partner_.at(x); }
  bool single(AgentId x) const { return partner_[x] == x; }
  std::vector<AgentId> const &map() const { return partner_; }

  void set(AgentId x, AgentId y) { partner_.at(x) = y; }

  /// Matched pairs (x < y) in increasing order of x.
  std::vector<std::pair<AgentId, AgentId>> pairs() const {
    std::vector<std::pair<AgentId, AgentId>> out;
    for (AgentId x = 0; x < partner_.size(); ++x)
      if (partner_[x] > x)
        out.emplace_back(x, partner_[x]);
    return out;
  }

  friend bool operator==(Matching const &, Matching const &) = default;
  friend auto operator<=>(Matching const &, Matching const &) = default;

private:
  std::vector<AgentId> partner_;
};

/// Involutive and every matched pair mutually acceptable.
inline bool validate_matching(Instance const &inst, Matching const &m) {
  if (m.size() != inst.size())
    return false;
  for (AgentId x = 0; x < m.size(); ++x) {
    AgentId y = m[x];
    if (y >= m.size() || m[y] != x)
      return false;
    if (y != x && !inst.mutually_acceptable(x, y))
      return false;
  }
  return true;
}

/// Sum of partner ranks, single agents contributing their single_rank.
inline std::uint64_t egalitarian_cost(Instance const &inst, Matching const &m) {
  std::uint64_t cost = 0;
  for (AgentId x = 0; x < m.size(); ++x)
    cost += inst.ranks().raw(x, m[x]);
  return cost;
}

/// counts[i-1] = number of matched agents whose partner has rank i.
/// Length is the instance's maximum group count.
inline std::vector<std::uint32_t> rank_profile(Instance const &inst, Matching const &m) {
  std::vector<std::uint32_t> counts(inst.max_group_count(), 0);
  for (AgentId x = 0; x < m.size(); ++x)
    if (!m.single(x))
      ++counts[inst.ranks().raw(x, m[x]) - 1];
  return counts;
}

} // namespace srm

#endif
