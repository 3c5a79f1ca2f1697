#ifndef SRM_IO_HPP
#define SRM_IO_HPP

// Text formats for instances and matchings.
//
// Instance:  name ":" entry* ["%" comment]
//            entry := name | "(" name+ ")"
// Matching:  one "x y" pair per line, singles as "x x". Lines of the form
//            "key: value" (solver annotations) are skipped.
//
// Leading "% key: value" comments carry instance metadata
// (seed, p, completeness, ties).

#include "instance.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <unordered_map>
#include <vector>

namespace srm {

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, std::string const &what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

namespace detail {

inline bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

inline std::string_view strip_comment(std::string_view s) {
  auto pos = s.find('%');
  return pos == std::string_view::npos ? s : s.substr(0, pos);
}

// Shortest decimal text that reads back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

struct Lexer {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t line;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() { return text[pos]; }
  std::string_view name() {
    skip_ws();
    auto start = pos;
    while (pos < text.size() && is_name_char(text[pos]))
      ++pos;
    if (start == pos) {
      if (pos < text.size())
        throw ParseError(line, std::string("unexpected character '") + text[pos] + "'");
      throw ParseError(line, "expected agent name");
    }
    return text.substr(start, pos - start);
  }
};

struct RawLine {
  std::size_t line;
  std::string owner;
  std::vector<std::vector<std::string>> groups;
};

inline void parse_metadata(std::string_view comment, InstanceMetadata &meta, std::size_t line) {
  auto colon = comment.find(':');
  if (colon == std::string_view::npos)
    return;
  auto key = trim(comment.substr(0, colon));
  auto value = std::string(trim(comment.substr(colon + 1)));
  auto bad = [&] { return ParseError(line, "malformed metadata value for '" + std::string(key) + "'"); };
  auto parse_uint = [&](auto &out) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || p != value.data() + value.size())
      throw bad();
    out = static_cast<std::remove_reference_t<decltype(*out)>>(v);
  };
  auto parse_real = [&](std::optional<double> &out) {
    char *end = nullptr;
    double v = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size())
      throw bad();
    out = v;
  };
  if (key == "seed")
    parse_uint(meta.seed);
  else if (key == "p")
    parse_real(meta.p);
  else if (key == "completeness")
    parse_real(meta.completeness);
  else if (key == "ties")
    parse_uint(meta.ties);
}

} // namespace detail

/// Parse an instance. Agent ids follow the order of the header lines.
inline Instance parse_instance(std::istream &in) {
  std::vector<detail::RawLine> raw;
  InstanceMetadata meta;
  bool in_preamble = true;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    auto trimmed = detail::trim(view);
    if (trimmed.empty())
      continue;
    if (trimmed.front() == '%') {
      if (in_preamble)
        detail::parse_metadata(trimmed.substr(1), meta, lineno);
      continue;
    }
    in_preamble = false;
    detail::Lexer lex{detail::strip_comment(view), 0, lineno};
    detail::RawLine entry{lineno, std::string(lex.name()), {}};
    lex.skip_ws();
    if (lex.pos >= lex.text.size() || lex.peek() != ':')
      throw ParseError(lineno, "expected ':' after agent name '" + entry.owner + "'");
    ++lex.pos;
    while (!lex.done()) {
      if (lex.peek() == '(') {
        ++lex.pos;
        std::vector<std::string> group;
        while (true) {
          if (lex.done())
            throw ParseError(lineno, "unterminated tie-group");
          if (lex.peek() == ')') {
            ++lex.pos;
            break;
          }
          group.emplace_back(lex.name());
        }
        if (group.empty())
          throw ParseError(lineno, "empty tie-group");
        entry.groups.push_back(std::move(group));
      } else {
        entry.groups.push_back({std::string(lex.name())});
      }
    }
    raw.push_back(std::move(entry));
  }

  std::vector<std::string> names;
  std::unordered_map<std::string, AgentId> ids;
  for (auto const &r : raw) {
    if (!ids.emplace(r.owner, static_cast<AgentId>(names.size())).second)
      throw ParseError(r.line, "agent '" + r.owner + "' has more than one list");
    names.push_back(r.owner);
  }

  std::vector<PreferenceList> prefs(names.size());
  std::vector<char> seen(names.size());
  for (std::size_t x = 0; x < raw.size(); ++x) {
    auto const &r = raw[x];
    std::fill(seen.begin(), seen.end(), 0);
    for (auto const &group : r.groups) {
      std::vector<AgentId> ids_in_group;
      for (auto const &name : group) {
        auto it = ids.find(name);
        if (it == ids.end())
          throw ParseError(r.line, "unknown agent '" + name + "'");
        AgentId y = it->second;
        if (y == x)
          throw ParseError(r.line, "agent '" + name + "' lists itself");
        if (seen[y])
          throw ParseError(r.line, "duplicate agent '" + name + "' in list of '" + r.owner + "'");
        seen[y] = 1;
        ids_in_group.push_back(y);
      }
      prefs[x].groups.push_back(std::move(ids_in_group));
    }
  }
  return Instance(std::move(names), std::move(prefs), std::move(meta));
}

inline Instance parse_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_instance(in);
}

inline void write_instance(std::ostream &out, Instance const &inst) {
  auto const &meta = inst.metadata();
  if (meta.seed)
    out << "% seed: " << *meta.seed << '\n';
  if (meta.p)
    out << "% p: " << detail::format_double(*meta.p) << '\n';
  if (meta.completeness)
    out << "% completeness: " << detail::format_double(*meta.completeness) << '\n';
  if (meta.ties)
    out << "% ties: " << *meta.ties << '\n';
  for (AgentId x = 0; x < inst.size(); ++x) {
    out << inst.name(x) << ':';
    for (auto const &group : inst.prefs(x).groups) {
      out << ' ';
      if (group.size() == 1) {
        out << inst.name(group.front());
        continue;
      }
      out << '(';
      for (std::size_t i = 0; i < group.size(); ++i)
        out << (i ? " " : "") << inst.name(group[i]);
      out << ')';
    }
    out << '\n';
  }
}

inline std::string serialize_instance(Instance const &inst) {
  std::ostringstream out;
  write_instance(out, inst);
  return out.str();
}

/// Parse a matching against an instance. Agents not mentioned are single.
/// Validity (mutual acceptability) is not checked here; see validate_matching.
inline Matching parse_matching(std::istream &in, Instance const &inst) {
  std::vector<AgentId> partner(inst.size());
  std::vector<char> mentioned(inst.size(), 0);
  for (AgentId x = 0; x < inst.size(); ++x)
    partner[x] = x;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = detail::trim(detail::strip_comment(line));
    if (view.empty() || view.find(':') != std::string_view::npos)
      continue;
    detail::Lexer lex{view, 0, lineno};
    auto lookup = [&](std::string_view name) {
      auto id = inst.find(std::string(name));
      if (!id)
        throw ParseError(lineno, "unknown agent '" + std::string(name) + "'");
      return *id;
    };
    AgentId x = lookup(lex.name());
    AgentId y = lookup(lex.name());
    if (!lex.done())
      throw ParseError(lineno, "expected exactly two agent names");
    if (mentioned[x] || (x != y && mentioned[y]))
      throw ParseError(lineno, "agent assigned twice");
    mentioned[x] = mentioned[y] = 1;
    partner[x] = y;
    partner[y] = x;
  }
  return Matching(std::move(partner));
}

inline Matching parse_matching(std::string_view text, Instance const &inst) {
  std::istringstream in{std::string(text)};
  return parse_matching(in, inst);
}

/// Pairs and singles in increasing order of the lower id.
inline void write_matching(std::ostream &out, Instance const &inst, Matching const &m) {
  for (AgentId x = 0; x < m.size(); ++x) {
    if (m[x] < x)
      continue;
    out << inst.name(x) << ' ' << inst.name(m[x]) << '\n';
  }
}

inline std::string format_matching(Instance const &inst, Matching const &m) {
  std::ostringstream out;
  write_matching(out, inst, m);
  return out.str();
}

} // namespace srm

#endif
