#pragma once

// LP-format text for MilpFormulation: a writer for external solvers and a
// reader for the same dialect.

#include <cctype>
#include <charconv>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hclp/milp.hpp"

namespace hclp::milp {

inline constexpr std::size_t kTermsPerLine = 8;

/// Zero objective, one named row per constraint, explicit bounds for every
/// variable in declaration order, then Binary/General sections.
inline void write_lp(const MilpFormulation& f, std::ostream& out) {
  out << "\\ HCLP consistency feasibility model\n";
  out << "Minimize\n obj:\n";
  out << "Subject To\n";
  for (const Constraint& c : f.constraints()) {
    out << ' ' << c.name << ':';
    for (std::size_t k = 0; k < c.terms.size(); ++k) {
      const Term& t = c.terms[k];
      if (k > 0 && k % kTermsPerLine == 0) out << "\n  ";
      const Value mag = t.coef < 0 ? -t.coef : t.coef;
      if (k == 0) {
        out << ' ' << (t.coef < 0 ? "- " : "");
      } else {
        out << (t.coef < 0 ? " - " : " + ");
      }
      if (mag != 1) out << mag << ' ';
      out << f.variables()[t.var].name;
    }
    switch (c.sense) {
      case Sense::LessEqual: out << " <= "; break;
      case Sense::GreaterEqual: out << " >= "; break;
      case Sense::Equal: out << " = "; break;
    }
    out << c.rhs << '\n';
  }
  out << "Bounds\n";
  for (const Variable& v : f.variables()) {
    out << ' ' << v.lower << " <= " << v.name << " <= " << v.upper << '\n';
  }
  out << "Binary\n";
  for (const Variable& v : f.variables()) {
    if (v.kind == VarKind::Binary) out << ' ' << v.name << '\n';
  }
  out << "General\n";
  for (const Variable& v : f.variables()) {
    if (v.kind == VarKind::Integer) out << ' ' << v.name << '\n';
  }
  out << "End\n";
}

inline std::string write_lp(const MilpFormulation& f) {
  std::ostringstream os;
  write_lp(f, os);
  return os.str();
}

class LpParseError : public InputError {
 public:
  LpParseError(std::size_t line, const std::string& what)
      : InputError("LP line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline bool parse_int(const std::string& tok, Value& v) {
  const char* b = tok.data();
  const char* e = b + tok.size();
  if (b != e && *b == '+') ++b;
  auto [p, ec] = std::from_chars(b, e, v);
  return ec == std::errc() && p == e;
}

inline std::string lower(std::string s) {
  for (char& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

}  // namespace detail

/// Reads the dialect produced by write_lp. Variables are declared by the
/// Bounds section (in order); every variable must be Binary or General.
inline MilpFormulation read_lp(std::string_view text) {
  enum class Section { None, Objective, Constraints, Bounds, Binary, General, End };
  struct Row {
    std::string name;
    std::vector<std::pair<Value, std::string>> terms;
    Sense sense;
    Value rhs;
    std::size_t line;
  };

  Section section = Section::None;
  std::vector<Row> rows;
  std::vector<Variable> vars;
  std::vector<bool> typed;
  std::unordered_map<std::string, std::size_t> var_index;
  std::vector<std::string> pending;  // tokens of the constraint being read
  std::size_t pending_line = 0;
  std::size_t line_no = 0;

  auto finish_row = [&](std::size_t line) {
    // pending: name: terms... sense rhs
    if (pending.empty()) return;
    Row row;
    row.line = pending_line;
    std::size_t k = 0;
    std::string first = pending[0];
    if (first.size() > 1 && first.back() == ':') {
      row.name = first.substr(0, first.size() - 1);
      k = 1;
    } else {
      throw LpParseError(line, "constraint without a name");
    }
    if (pending.size() < k + 2) throw LpParseError(line, "incomplete constraint");
    const std::string& op = pending[pending.size() - 2];
    if (op == "<=" || op == "=<") {
      row.sense = Sense::LessEqual;
    } else if (op == ">=" || op == "=>") {
      row.sense = Sense::GreaterEqual;
    } else if (op == "=") {
      row.sense = Sense::Equal;
    } else {
      throw LpParseError(line, "expected comparison operator, got '" + op + "'");
    }
    if (!detail::parse_int(pending.back(), row.rhs)) {
      throw LpParseError(line, "non-integer right-hand side '" + pending.back() + "'");
    }
    Value sign = 1;
    Value coef = 1;
    bool have_coef = false;
    for (std::size_t i = k; i + 2 < pending.size(); ++i) {
      const std::string& tok = pending[i];
      Value v = 0;
      if (tok == "+") {
        continue;
      } else if (tok == "-") {
        sign = -sign;
      } else if (detail::parse_int(tok, v)) {
        coef = v;
        have_coef = true;
      } else {
        row.terms.emplace_back(sign * (have_coef ? coef : 1), tok);
        sign = 1;
        coef = 1;
        have_coef = false;
      }
    }
    if (have_coef || sign != 1) throw LpParseError(line, "dangling coefficient");
    rows.push_back(std::move(row));
    pending.clear();
  };

  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto toks = detail::split_ws(line);
    if (toks.empty() || toks[0][0] == '\\') {
      if (end == text.size()) break;
      continue;
    }
    const bool indented = std::isspace(static_cast<unsigned char>(line[0])) != 0;
    if (!indented) {
      const std::string head = detail::lower(std::string(line));
      Section next;
      if (head == "minimize" || head == "maximize") {
        next = Section::Objective;
      } else if (head == "subject to" || head == "st" || head == "s.t.") {
        next = Section::Constraints;
      } else if (head == "bounds") {
        next = Section::Bounds;
      } else if (head == "binary" || head == "binaries") {
        next = Section::Binary;
      } else if (head == "general" || head == "generals") {
        next = Section::General;
      } else if (head == "end") {
        next = Section::End;
      } else {
        throw LpParseError(line_no, "unknown section '" + std::string(line) + "'");
      }
      if (!pending.empty()) throw LpParseError(line_no, "unterminated constraint");
      section = next;
      if (end == text.size()) break;
      continue;
    }

    switch (section) {
      case Section::Objective:
        break;
      case Section::Constraints: {
        if (pending.empty()) pending_line = line_no;
        pending.insert(pending.end(), toks.begin(), toks.end());
        if (toks.size() >= 2) {
          const std::string& op = toks[toks.size() - 2];
          if (op == "<=" || op == ">=" || op == "=" || op == "=<" || op == "=>") {
            finish_row(line_no);
          }
        }
        break;
      }
      case Section::Bounds: {
        Value lo = 0;
        Value hi = 0;
        if (toks.size() != 5 || toks[1] != "<=" || toks[3] != "<=" ||
            !detail::parse_int(toks[0], lo) || !detail::parse_int(toks[4], hi)) {
          throw LpParseError(line_no, "expected 'lo <= name <= hi'");
        }
        if (!var_index.emplace(toks[2], vars.size()).second) {
          throw LpParseError(line_no, "duplicate bound for " + toks[2]);
        }
        vars.push_back({toks[2], VarKind::Binary, lo, hi});
        typed.push_back(false);
        break;
      }
      case Section::Binary:
      case Section::General: {
        for (const auto& name : toks) {
          auto it = var_index.find(name);
          if (it == var_index.end()) {
            throw LpParseError(line_no, "type declared for unbounded variable " + name);
          }
          vars[it->second].kind =
              section == Section::Binary ? VarKind::Binary : VarKind::Integer;
          typed[it->second] = true;
        }
        break;
      }
      case Section::None:
      case Section::End:
        throw LpParseError(line_no, "content outside a section");
    }
    if (end == text.size()) break;
  }
  if (!pending.empty()) throw LpParseError(line_no, "unterminated constraint");

  for (std::size_t k = 0; k < vars.size(); ++k) {
    if (!typed[k]) {
      throw LpParseError(line_no, "variable " + vars[k].name +
                                      " is neither Binary nor General");
    }
  }

  MilpFormulation f;
  for (auto& v : vars) f.add_variable(v);
  for (auto& row : rows) {
    Constraint c;
    c.name = row.name;
    c.sense = row.sense;
    c.rhs = row.rhs;
    for (auto& [coef, name] : row.terms) {
      auto idx = f.find(name);
      if (!idx) throw LpParseError(row.line, "undeclared variable " + name);
      c.terms.push_back({coef, *idx});
    }
    f.add_constraint(std::move(c));
  }
  return f;
}

}  // namespace hclp::milp
