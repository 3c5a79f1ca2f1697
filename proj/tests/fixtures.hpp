#ifndef SRM_TESTS_FIXTURES_HPP
#define SRM_TESTS_FIXTURES_HPP

#include <srm/srm.hpp>

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace srm::test {

inline constexpr char const *kSri7 = "a: b e d f g\n"
                                     "b: c f a g e\n"
                                     "c: d g b e f a\n"
                                     "d: a c e f g\n"
                                     "e: f a b c d\n"
                                     "f: g b e c d a\n"
                                     "g: c f d a b\n";

inline constexpr char const *kSri4 = "a: b c d\n"
                                     "b: c a d\n"
                                     "c: a b d\n"
                                     "d: a b c\n";

inline constexpr char const *kSri8 = "a: c e f g d h\n"
                                     "b: d f h c g\n"
                                     "c: a b f h e d\n"
                                     "d: h g e a b c\n"
                                     "e: g c b d a f\n"
                                     "f: e a g c h b\n"
                                     "g: f h d b c\n"
                                     "h: b d a e f\n";

inline Instance sri7() { return parse_instance(kSri7); }
inline Instance sri4() { return parse_instance(kSri4); }
inline Instance sri8() { return parse_instance(kSri8); }

/// Matching from name pairs; unmentioned agents single.
inline Matching by_names(Instance const &inst, std::vector<std::pair<std::string, std::string>> const &pairs) {
  std::vector<std::pair<AgentId, AgentId>> ids;
  for (auto const &[x, y] : pairs)
    ids.emplace_back(inst.id(x), inst.id(y));
  return Matching::from_pairs(inst.size(), ids);
}

inline Matching sri7_stable(Instance const &i) { return by_names(i, {{"a", "b"}, {"c", "d"}, {"f", "g"}}); }
inline Matching sri8_m1(Instance const &i) { return by_names(i, {{"a", "c"}, {"b", "h"}, {"d", "e"}, {"f", "g"}}); }
inline Matching sri8_m2(Instance const &i) { return by_names(i, {{"a", "c"}, {"b", "h"}, {"d", "g"}, {"e", "f"}}); }

inline std::vector<Matching> sorted(std::vector<Matching> v) {
  std::sort(v.begin(), v.end());
  return v;
}

/// Random instance for property suites: n agents, edge probability p,
/// tie_pct percent tie operations.
inline Instance random_instance(std::size_t n, double p, double tie_pct, std::uint64_t seed) {
  return generate(GenConfig{n, p, seed, tie_pct});
}

} // namespace srm::test

#endif
