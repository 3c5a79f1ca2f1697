#ifndef SRM_AF_HPP
#define SRM_AF_HPP

// Argumentation-framework view of a roommates instance.
//
// One argument per mutually acceptable pair. Two arguments that share an
// agent s attack in the direction of s's strict preference: {s,p} attacks
// {s,q} when s prefers p to q. Tied partners produce no attack. Stable
// extensions of the framework are read back as matchings.

#include "instance.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace srm {

struct Argument {
  AgentId a; // a < b
  AgentId b;

  friend bool operator==(Argument const &, Argument const &) = default;
  friend auto operator<=>(Argument const &, Argument const &) = default;
};

struct ArgFramework {
  std::vector<std::string> names; // agent names, for printing
  std::vector<Argument> args;     // sorted
  std::vector<std::vector<std::size_t>> attackers; // attackers[i], sorted
  std::vector<std::vector<std::size_t>> targets;   // targets[i], sorted

  std::size_t size() const { return args.size(); }

  std::size_t attack_count() const {
    std::size_t c = 0;
    for (auto const &t : targets)
      c += t.size();
    return c;
  }

  bool attacks(std::size_t from, std::size_t to) const {
    auto const &t = targets[from];
    return std::binary_search(t.begin(), t.end(), to);
  }

  std::optional<std::size_t> index_of(Argument arg) const {
    auto it = std::lower_bound(args.begin(), args.end(), arg);
    if (it == args.end() || *it != arg)
      return std::nullopt;
    return static_cast<std::size_t>(it - args.begin());
  }
};

inline ArgFramework build_af(Instance const &inst) {
  ArgFramework af;
  af.names = inst.names();
  auto const n = inst.size();
  // args touching each agent, with the partner it names
  std::vector<std::vector<std::pair<std::size_t, AgentId>>> by_agent(n);
  for (AgentId a = 0; a < n; ++a)
    for (AgentId b = a + 1; b < n; ++b)
      if (inst.mutually_acceptable(a, b)) {
        auto idx = af.args.size();
        af.args.push_back({a, b});
        by_agent[a].emplace_back(idx, b);
        by_agent[b].emplace_back(idx, a);
      }
  af.attackers.assign(af.args.size(), {});
  af.targets.assign(af.args.size(), {});
  for (AgentId s = 0; s < n; ++s)
    for (auto [from, p] : by_agent[s])
      for (auto [to, q] : by_agent[s])
        if (from != to && inst.prefers(s, p, q)) {
          af.targets[from].push_back(to);
          af.attackers[to].push_back(from);
        }
  for (auto &v : af.attackers)
    std::sort(v.begin(), v.end());
  for (auto &v : af.targets)
    std::sort(v.begin(), v.end());
  return af;
}

inline constexpr std::size_t kDefaultArgumentGuard = 2000;

/// No argument in the set attacks another.
inline bool conflict_free(ArgFramework const &af, std::vector<std::size_t> const &set) {
  for (auto i : set)
    for (auto j : set)
      if (af.attacks(i, j))
        return false;
  return true;
}

/// Every argument outside the set is attacked by a member.
inline bool dominating(ArgFramework const &af, std::vector<std::size_t> const &set) {
  std::vector<char> member(af.size(), 0);
  for (auto i : set)
    member[i] = 1;
  for (std::size_t j = 0; j < af.size(); ++j) {
    if (member[j])
      continue;
    bool hit = false;
    for (auto k : af.attackers[j])
      hit = hit || member[k];
    if (!hit)
      return false;
  }
  return true;
}

namespace detail {

class ExtensionSearch {
public:
  ExtensionSearch(ArgFramework const &af, std::optional<std::size_t> limit)
      : af_(af), limit_(limit), state_(af.size(), kOpen), hits_(af.size(), 0), due_(af.size()) {
    // due_[k]: arguments whose last attacker is k
    last_.assign(af.size(), std::numeric_limits<std::size_t>::max());
    for (std::size_t j = 0; j < af.size(); ++j)
      if (!af.attackers[j].empty()) {
        last_[j] = af.attackers[j].back();
        due_[last_[j]].push_back(j);
      }
  }

  std::vector<std::vector<std::size_t>> run() {
    rec(0);
    return std::move(found_);
  }

private:
  static constexpr char kOpen = 0, kIn = 1, kOut = 2;

  bool rec(std::size_t i) {
    if (i == af_.size()) {
      std::vector<std::size_t> ext;
      for (std::size_t k = 0; k < state_.size(); ++k)
        if (state_[k] == kIn)
          ext.push_back(k);
      found_.push_back(std::move(ext));
      return !limit_ || found_.size() < *limit_;
    }
    if (hits_[i] == 0 && can_enter(i)) {
      state_[i] = kIn;
      for (auto t : af_.targets[i])
        ++hits_[t];
      bool go = !settled_badly(i) ? rec(i + 1) : true;
      for (auto t : af_.targets[i])
        --hits_[t];
      state_[i] = kOpen;
      if (!go)
        return false;
    }
    // out: needs an attacker in the set, now or later
    bool possible = hits_[i] > 0 || (last_[i] != std::numeric_limits<std::size_t>::max() && last_[i] > i);
    if (possible) {
      state_[i] = kOut;
      bool go = !settled_badly(i) ? rec(i + 1) : true;
      state_[i] = kOpen;
      if (!go)
        return false;
    }
    return true;
  }

  bool can_enter(std::size_t i) const {
    for (auto t : af_.targets[i])
      if (state_[t] == kIn)
        return false;
    return true;
  }

  // some excluded argument just lost its last chance of being attacked
  bool settled_badly(std::size_t k) const {
    for (auto j : due_[k])
      if (state_[j] == kOut && hits_[j] == 0)
        return true;
    return false;
  }

  ArgFramework const &af_;
  std::optional<std::size_t> limit_;
  std::vector<char> state_;
  std::vector<std::uint32_t> hits_;
  std::vector<std::vector<std::size_t>> due_;
  std::vector<std::size_t> last_;
  std::vector<std::vector<std::size_t>> found_;
};

} // namespace detail

/// All stable extensions (conflict-free sets attacking every outside
/// argument), as sorted argument indices. Throws std::length_error when the
/// framework exceeds `guard` arguments.
inline std::vector<std::vector<std::size_t>> stable_extensions(ArgFramework const &af,
                                                               std::optional<std::size_t> limit = std::nullopt,
                                                               std::size_t guard = kDefaultArgumentGuard) {
  if (af.size() > guard)
    throw std::length_error("stable_extensions: " + std::to_string(af.size()) + " arguments exceed guard of " +
                            std::to_string(guard));
  if (limit && *limit == 0)
    return {};
  return detail::ExtensionSearch(af, limit).run();
}

/// Pair up the agents of each argument; everyone else is single. Throws
/// std::logic_error if an agent occurs in two arguments.
inline Matching extension_to_matching(Instance const &inst, std::vector<Argument> const &ext) {
  Matching m(inst.size());
  std::vector<char> used(inst.size(), 0);
  for (auto const &arg : ext) {
    if (used[arg.a] || used[arg.b])
      throw std::logic_error("extension_to_matching: agent '" + inst.name(used[arg.a] ? arg.a : arg.b) +
                             "' occurs in two arguments");
    used[arg.a] = used[arg.b] = 1;
    m.set(arg.a, arg.b);
    m.set(arg.b, arg.a);
  }
  return m;
}

inline Matching extension_to_matching(Instance const &inst, ArgFramework const &af,
                                      std::vector<std::size_t> const &ext) {
  std::vector<Argument> args;
  args.reserve(ext.size());
  for (auto i : ext)
    args.push_back(af.args.at(i));
  return extension_to_matching(inst, args);
}

/// One rule per argument: `in(a,b) :- not in(x1,y1), ..., not in(xm,ym).`
/// Unattacked arguments become facts `in(a,b).`
inline void write_logic_program(std::ostream &out, ArgFramework const &af) {
  auto atom = [&](Argument const &arg) { return "in(" + af.names[arg.a] + "," + af.names[arg.b] + ")"; };
  for (std::size_t i = 0; i < af.size(); ++i) {
    out << atom(af.args[i]);
    auto const &att = af.attackers[i];
    for (std::size_t k = 0; k < att.size(); ++k)
      out << (k == 0 ? " :- " : ", ") << "not " << atom(af.args[att[k]]);
    out << ".\n";
  }
}

inline std::string emit_logic_program(ArgFramework const &af) {
  std::ostringstream out;
  write_logic_program(out, af);
  return out.str();
}

} // namespace srm

#endif
