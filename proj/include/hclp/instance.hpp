#pragma once

// Instance file format and the seeded random instance generator.
//
// File format (UTF-8, LF):
//   hclp 1
//   n m g
//   n rows of m non-negative integers
//   g statements, "<i> < <j>" or "<i> <= <j>" with zero-based indices
// Lines starting with '#' are comments. Comments of the form "# key: value"
// with key in {name, seed, generator, evaluations, alternatives} carry
// metadata; all other comments are ignored.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hclp/core.hpp"

namespace hclp {

struct InstanceMetadata {
  std::optional<std::string> name;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> generator;
  std::vector<std::string> evaluation_names;
  std::vector<std::string> alternative_names;

  friend bool operator==(const InstanceMetadata&,
                         const InstanceMetadata&) = default;
};

struct Instance {
  EvaluationMatrix matrix;
  Statements statements;
  InstanceMetadata meta;

  std::size_t evaluations() const { return matrix.evaluations(); }
  std::size_t alternatives() const { return matrix.alternatives(); }
  std::size_t strict_count() const {
    std::size_t k = 0;
    for (const auto& phi : statements) k += phi.strict ? 1 : 0;
    return k;
  }

  friend bool operator==(const Instance&, const Instance&) = default;
};

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : InputError(std::to_string(line) + ":" + std::to_string(column) +
                   ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Checks index ranges, self-comparisons and duplicate pairs.
inline void validate_instance(const Instance& inst) {
  std::set<std::pair<Alternative, Alternative>> seen;
  for (const auto& phi : inst.statements) {
    validate_statement(phi, inst.alternatives());
    if (!seen.emplace(phi.alpha, phi.beta).second) {
      throw InputError("duplicate statement on pair (" +
                       std::to_string(phi.alpha) + ", " +
                       std::to_string(phi.beta) + ")");
    }
  }
  const auto& m = inst.meta;
  if (!m.evaluation_names.empty() &&
      m.evaluation_names.size() != inst.evaluations()) {
    throw InputError("evaluation names do not match n");
  }
  if (!m.alternative_names.empty() &&
      m.alternative_names.size() != inst.alternatives()) {
    throw InputError("alternative names do not match m");
  }
}

namespace detail {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back({line.substr(i, j - i), i + 1});
    i = j;
  }
  return out;
}

inline std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
  return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  for (const Token& t : tokenize(s)) out.emplace_back(t.text);
  return out;
}

}  // namespace detail

inline Instance parse(std::string_view text) {
  struct Line {
    std::size_t number;
    std::vector<detail::Token> tokens;
  };
  std::vector<Line> lines;
  InstanceMetadata meta;

  std::size_t number = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    const std::string trimmed = detail::trim(raw);
    if (trimmed.empty()) continue;
    if (trimmed[0] == '#') {
      std::string_view body = std::string_view(trimmed).substr(1);
      const auto colon = body.find(':');
      if (colon == std::string_view::npos) continue;
      const std::string key = detail::trim(body.substr(0, colon));
      const std::string value = detail::trim(body.substr(colon + 1));
      if (key == "name") {
        meta.name = value;
      } else if (key == "seed") {
        std::uint64_t s = 0;
        auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), s);
        if (ec != std::errc() || p != value.data() + value.size()) {
          throw ParseError(number, 1, "malformed seed '" + value + "'");
        }
        meta.seed = s;
      } else if (key == "generator") {
        meta.generator = value;
      } else if (key == "evaluations") {
        meta.evaluation_names = detail::words(value);
      } else if (key == "alternatives") {
        meta.alternative_names = detail::words(value);
      }
      continue;
    }
    lines.push_back({number, detail::tokenize(raw)});
  }

  auto fail = [](const Line& l, std::size_t col, const std::string& what) {
    throw ParseError(l.number, col, what);
  };
  auto integer = [&](const Line& l, const detail::Token& t) -> Value {
    Value v = 0;
    const char* b = t.text.data();
    const char* e = b + t.text.size();
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec == std::errc::result_out_of_range) fail(l, t.column, "integer out of range");
    if (ec != std::errc() || p != e) {
      fail(l, t.column, "expected an integer, got '" + std::string(t.text) + "'");
    }
    return v;
  };
  auto count = [&](const Line& l, const detail::Token& t, const char* what) {
    const Value v = integer(l, t);
    if (v < 0) fail(l, t.column, std::string("negative ") + what);
    return static_cast<std::size_t>(v);
  };

  if (lines.empty()) throw ParseError(number + 1, 1, "missing 'hclp 1' header");
  const Line& magic = lines[0];
  if (magic.tokens.size() != 2 || magic.tokens[0].text != "hclp") {
    fail(magic, 1, "expected 'hclp 1' header");
  }
  if (magic.tokens[1].text != "1") {
    fail(magic, magic.tokens[1].column,
         "unsupported format version '" + std::string(magic.tokens[1].text) + "'");
  }
  if (lines.size() < 2) throw ParseError(magic.number + 1, 1, "missing 'n m g' line");
  const Line& dims = lines[1];
  if (dims.tokens.size() != 3) fail(dims, 1, "expected three integers 'n m g'");
  const std::size_t n = count(dims, dims.tokens[0], "n");
  const std::size_t m = count(dims, dims.tokens[1], "m");
  const std::size_t g = count(dims, dims.tokens[2], "g");
  if (n == 0) fail(dims, dims.tokens[0].column, "n must be at least 1");
  if (m == 0) fail(dims, dims.tokens[1].column, "m must be at least 1");
  if (n > kMaxEvaluations) {
    fail(dims, dims.tokens[0].column,
         "n exceeds the supported maximum of " + std::to_string(kMaxEvaluations));
  }

  const std::size_t expected = 2 + n + g;
  if (lines.size() < expected) {
    const std::size_t have = lines.size();
    const std::size_t next_line = lines.back().number + 1;
    throw ParseError(next_line, 1,
                     have < 2 + n ? "matrix has fewer than n rows"
                                  : "expected " + std::to_string(g) +
                                        " statements, found " +
                                        std::to_string(have - 2 - n));
  }
  if (lines.size() > expected) {
    const Line& extra = lines[expected];
    fail(extra, 1, "unexpected content: header declares g=" + std::to_string(g) +
                       " statements");
  }

  std::vector<Value> values;
  values.reserve(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    const Line& row = lines[2 + i];
    if (row.tokens.size() != m) {
      fail(row, row.tokens.size() > m ? row.tokens[m].column : 1, "row " + std::to_string(i) + " has " +
                       std::to_string(row.tokens.size()) + " values, expected " +
                       std::to_string(m));
    }
    for (const auto& tok : row.tokens) {
      const Value v = integer(row, tok);
      if (v < 0) fail(row, tok.column, "negative evaluation value " + std::to_string(v));
      values.push_back(v);
    }
  }

  Statements statements;
  std::set<std::pair<Alternative, Alternative>> seen;
  for (std::size_t k = 0; k < g; ++k) {
    const Line& l = lines[2 + n + k];
    if (l.tokens.size() != 3) fail(l, 1, "expected '<i> < <j>' or '<i> <= <j>'");
    PreferenceStatement phi;
    phi.alpha = count(l, l.tokens[0], "alternative index");
    phi.beta = count(l, l.tokens[2], "alternative index");
    const auto rel = l.tokens[1].text;
    if (rel == "<") {
      phi.strict = true;
    } else if (rel == "<=") {
      phi.strict = false;
    } else {
      fail(l, l.tokens[1].column, "expected '<' or '<=', got '" + std::string(rel) + "'");
    }
    if (phi.alpha >= m) fail(l, l.tokens[0].column, "alternative index out of range");
    if (phi.beta >= m) fail(l, l.tokens[2].column, "alternative index out of range");
    if (phi.alpha == phi.beta) fail(l, l.tokens[0].column, "statement compares an alternative with itself");
    if (!seen.emplace(phi.alpha, phi.beta).second) {
      fail(l, 1, "duplicate statement on pair (" + std::to_string(phi.alpha) + ", " +
                     std::to_string(phi.beta) + ")");
    }
    statements.push_back(phi);
  }

  Instance inst{EvaluationMatrix(n, m, std::move(values)), std::move(statements),
                std::move(meta)};
  try {
    validate_instance(inst);
  } catch (const InputError& e) {
    throw ParseError(1, 1, e.what());
  }
  return inst;
}

inline Instance read_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open instance file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

inline std::string serialize(const Instance& inst) {
  validate_instance(inst);
  std::ostringstream out;
  const auto& m = inst.meta;
  if (m.name) out << "# name: " << *m.name << '\n';
  if (m.seed) out << "# seed: " << *m.seed << '\n';
  if (m.generator) out << "# generator: " << *m.generator << '\n';
  auto names = [&](const char* key, const std::vector<std::string>& v) {
    if (v.empty()) return;
    out << "# " << key << ':';
    for (const auto& s : v) out << ' ' << s;
    out << '\n';
  };
  names("evaluations", m.evaluation_names);
  names("alternatives", m.alternative_names);

  const auto& e = inst.matrix;
  out << "hclp 1\n";
  out << e.evaluations() << ' ' << e.alternatives() << ' '
      << inst.statements.size() << '\n';
  for (std::size_t i = 0; i < e.evaluations(); ++i) {
    for (std::size_t a = 0; a < e.alternatives(); ++a) {
      if (a) out << ' ';
      out << e(i, a);
    }
    out << '\n';
  }
  for (const auto& phi : inst.statements) out << to_string(phi) << '\n';
  return out.str();
}

/// Uniform integer in [0, bound) from a 64-bit engine by rejection, so the
/// stream is identical on every platform.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw InputError("empty sampling range");
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % bound;
  }
}

/// SplitMix64 finalizer; derives independent stream seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct GenConfig {
  std::size_t n = 10;
  std::size_t m = 25;
  std::size_t g = 10;
  Value domain_max = 5;
  std::uint64_t seed = 0;
};

inline std::size_t pair_count(std::size_t m) { return m * (m - 1) / 2; }

/// Random instance: uniform matrix over {0..domain_max} drawn row by row
/// from mt19937_64(seed), then g distinct pairs (i, j), i < j, taken as the
/// prefix of a partial Fisher-Yates shuffle of all pairs in lexicographic
/// order. Statements read "i < j" for the first ceil(g/2) pairs and "i <= j"
/// after that.
inline Instance generate(const GenConfig& cfg) {
  if (cfg.n == 0 || cfg.m == 0 || cfg.g == 0) {
    throw InputError("n, m and g must be at least 1");
  }
  if (cfg.domain_max < 0) throw InputError("domain_max must be non-negative");
  if (cfg.g > pair_count(cfg.m)) {
    throw InputError("g=" + std::to_string(cfg.g) + " exceeds the " +
                     std::to_string(pair_count(cfg.m)) +
                     " pairs available for m=" + std::to_string(cfg.m));
  }
  std::mt19937_64 rng(cfg.seed);
  std::vector<Value> values(cfg.n * cfg.m);
  for (Value& v : values) {
    v = static_cast<Value>(
        uniform_below(rng, static_cast<std::uint64_t>(cfg.domain_max) + 1));
  }

  std::vector<std::pair<Alternative, Alternative>> pairs;
  pairs.reserve(pair_count(cfg.m));
  for (Alternative i = 0; i < cfg.m; ++i) {
    for (Alternative j = i + 1; j < cfg.m; ++j) pairs.emplace_back(i, j);
  }
  for (std::size_t k = 0; k < cfg.g; ++k) {
    const std::size_t r = k + uniform_below(rng, pairs.size() - k);
    std::swap(pairs[k], pairs[r]);
  }

  Statements statements;
  const std::size_t strict = (cfg.g + 1) / 2;
  for (std::size_t k = 0; k < cfg.g; ++k) {
    statements.push_back({pairs[k].first, pairs[k].second, k < strict});
  }

  Instance inst{EvaluationMatrix(cfg.n, cfg.m, std::move(values)),
                std::move(statements), {}};
  inst.meta.seed = cfg.seed;
  inst.meta.generator = "n=" + std::to_string(cfg.n) +
                        " m=" + std::to_string(cfg.m) +
                        " g=" + std::to_string(cfg.g) +
                        " domain_max=" + std::to_string(cfg.domain_max);
  return inst;
}

}  // namespace hclp
