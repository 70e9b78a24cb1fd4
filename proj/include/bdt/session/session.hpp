#pragma once

/**
 * @file session.hpp
 * @brief Session files: sectioned plain text, one declaration per line.
 *
 *   [session]            name = ..., max_order = N, max_terms = N
 *   [variables]          x = x1, x2 / z = z1, z2 / params = s
 *   [define]             NAME = expression
 *   [kernel NAME]        symbols = A, B / symmetric = yes / D[x1] A = z1*A
 *   [system NAME]        block = x / localize = p / gen : spectral -> image
 *   [pair NAME]          primal = S / dual = S' / kernel = K / psi = op / scale = f
 *   [task]               kind key = value; key = value
 *
 * `#` starts a comment.  This header only does the syntax; names are
 * resolved by the runner.
 */

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bdt/core/errors.hpp"

namespace bdt {

/// A right-hand side together with where it came from.
struct SourceText {
  std::string text;
  std::size_t line = 0;
  std::size_t column = 1;
};

struct KernelRuleDecl {
  std::string variable;
  std::string symbol;
  SourceText rhs;
};

struct KernelDecl {
  std::string name;
  std::size_t line = 0;
  std::vector<std::string> symbols;
  bool symmetric = false;
  std::vector<KernelRuleDecl> rules;
};

struct GeneratorDecl {
  std::string name;
  SourceText spectral;
  SourceText image;
};

struct SystemDecl {
  std::string name;
  std::size_t line = 0;
  std::string block = "x";
  std::vector<GeneratorDecl> generators;
  std::vector<SourceText> localizers;
};

struct PairDecl {
  std::string name;
  std::size_t line = 0;
  std::string primal, dual, kernel;
  std::optional<SourceText> psi;
  std::optional<SourceText> scale;
};

struct TaskDecl {
  std::string kind;
  std::size_t line = 0;
  /// Arguments in the order written.
  std::vector<std::pair<std::string, SourceText>> args;

  const SourceText* find(const std::string& key) const {
    for (const auto& [k, v] : args)
      if (k == key) return &v;
    return nullptr;
  }
};

struct Session {
  std::string name = "session";
  std::optional<int> max_order;
  std::optional<std::size_t> max_terms;
  std::vector<std::string> x_vars, z_vars, params;
  std::vector<std::pair<std::string, SourceText>> defines;
  std::vector<KernelDecl> kernels;
  std::vector<SystemDecl> systems;
  std::vector<PairDecl> pairs;
  std::vector<TaskDecl> tasks;
};

namespace detail {

inline std::string trim_copy(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

/// Column (1-based) of the first non-blank character of `part` inside `line`.
inline std::size_t column_of(std::string_view line, std::size_t offset) {
  while (offset < line.size() && std::isspace(static_cast<unsigned char>(line[offset]))) ++offset;
  return offset + 1;
}

inline std::vector<std::string> split_list(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    std::string t = trim_copy(cur);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

inline bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
  return true;
}

inline bool parse_flag(const std::string& v, std::size_t line) {
  if (v == "yes" || v == "true" || v == "1") return true;
  if (v == "no" || v == "false" || v == "0") return false;
  throw ParseError("expected yes or no, found '" + v + "'", line, 1);
}

class SessionParser {
 public:
  explicit SessionParser(std::string_view text) : text_(text) {}

  Session parse() {
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      std::size_t end = text_.find('\n', pos);
      if (end == std::string_view::npos) end = text_.size();
      ++line_no_;
      std::string raw(text_.substr(pos, end - pos));
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      std::size_t hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      line_ = raw;
      if (!trim_copy(raw).empty()) statement();
      pos = end + 1;
    }
    return std::move(s_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::size_t column = 1) const {
    throw ParseError(msg, line_no_, column);
  }

  SourceText source(std::size_t offset, std::string_view part) const {
    return {trim_copy(part), line_no_, column_of(line_, offset)};
  }

  void statement() {
    std::string t = trim_copy(line_);
    if (t.front() == '[') {
      if (t.back() != ']') fail("section header is missing ']'", line_.size() + 1);
      header(trim_copy(std::string_view(t).substr(1, t.size() - 2)));
      return;
    }
    if (section_.empty()) fail("declaration outside of any section");
    if (section_ == "session") return session_line();
    if (section_ == "variables") return variables_line();
    if (section_ == "define") return define_line();
    if (section_ == "kernel") return kernel_line();
    if (section_ == "system") return system_line();
    if (section_ == "pair") return pair_line();
    return task_line();
  }

  void header(const std::string& h) {
    std::istringstream in(h);
    std::string kind, name, extra;
    in >> kind >> name >> extra;
    if (!extra.empty()) fail("unexpected text after section name");
    static const char* plain[] = {"session", "variables", "define", "task", "tasks"};
    static const char* named[] = {"kernel", "system", "pair"};
    for (const char* p : plain)
      if (kind == p) {
        if (!name.empty()) fail("section [" + kind + "] takes no name");
        section_ = kind == "tasks" ? "task" : kind;
        return;
      }
    for (const char* p : named)
      if (kind == p) {
        if (!is_identifier(name)) fail("section [" + kind + "] needs a name");
        section_ = kind;
        if (kind == "kernel") s_.kernels.push_back({name, line_no_, {}, false, {}});
        if (kind == "system") s_.systems.push_back({name, line_no_, "x", {}, {}});
        if (kind == "pair") s_.pairs.push_back({name, line_no_, "", "", "", std::nullopt, std::nullopt});
        return;
      }
    fail("unknown section [" + kind + "]", 2);
  }

  /// Splits `key = value` at the first '='.
  std::pair<std::string, SourceText> key_value() const {
    std::size_t eq = line_.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'");
    std::string key = trim_copy(std::string_view(line_).substr(0, eq));
    if (key.empty()) fail("missing key before '='");
    return {key, source(eq + 1, std::string_view(line_).substr(eq + 1))};
  }

  void session_line() {
    auto [k, v] = key_value();
    try {
      if (k == "name") s_.name = v.text;
      else if (k == "max_order") s_.max_order = std::stoi(v.text);
      else if (k == "max_terms") s_.max_terms = static_cast<std::size_t>(std::stoull(v.text));
      else fail("unknown session key '" + k + "'");
    } catch (const std::logic_error&) {
      fail("expected an integer for '" + k + "'", v.column);
    }
  }

  void variables_line() {
    auto [k, v] = key_value();
    std::vector<std::string>* target = k == "x" ? &s_.x_vars : k == "z" ? &s_.z_vars : k == "params" ? &s_.params : nullptr;
    if (!target) fail("unknown variable kind '" + k + "' (expected x, z or params)");
    for (auto& name : split_list(v.text)) {
      if (!is_identifier(name)) fail("invalid variable name '" + name + "'", v.column);
      target->push_back(name);
    }
  }

  void define_line() {
    auto [k, v] = key_value();
    if (!is_identifier(k)) fail("invalid definition name '" + k + "'");
    if (v.text.empty()) fail("empty definition", v.column);
    s_.defines.emplace_back(k, v);
  }

  void kernel_line() {
    KernelDecl& k = s_.kernels.back();
    std::string t = trim_copy(line_);
    if (t.rfind("D[", 0) == 0) {
      std::size_t close = t.find(']');
      std::size_t eq = t.find('=');
      if (close == std::string::npos || eq == std::string::npos || eq < close)
        fail("expected 'D[var] SYMBOL = combination'");
      std::string var = trim_copy(std::string_view(t).substr(2, close - 2));
      std::string sym = trim_copy(std::string_view(t).substr(close + 1, eq - close - 1));
      if (!is_identifier(sym)) fail("expected a kernel symbol after D[" + var + "]");
      std::size_t eq_line = line_.find('=');
      k.rules.push_back({var, sym, source(eq_line + 1, std::string_view(line_).substr(eq_line + 1))});
      return;
    }
    auto [key, v] = key_value();
    if (key == "symbols") k.symbols = split_list(v.text);
    else if (key == "symmetric") k.symmetric = parse_flag(v.text, line_no_);
    else fail("unknown kernel key '" + key + "'");
  }

  void system_line() {
    SystemDecl& s = s_.systems.back();
    std::size_t arrow = line_.find("->");
    if (arrow != std::string::npos) {
      std::size_t colon = line_.find(':');
      if (colon == std::string::npos || colon > arrow) fail("expected 'name : spectral -> image'");
      std::string name = trim_copy(std::string_view(line_).substr(0, colon));
      if (!is_identifier(name)) fail("invalid generator name '" + name + "'");
      s.generators.push_back({name, source(colon + 1, std::string_view(line_).substr(colon + 1, arrow - colon - 1)),
                              source(arrow + 2, std::string_view(line_).substr(arrow + 2))});
      return;
    }
    auto [k, v] = key_value();
    if (k == "block") {
      if (v.text != "x" && v.text != "z") fail("block must be x or z", v.column);
      s.block = v.text;
    } else if (k == "localize") {
      s.localizers.push_back(v);
    } else {
      fail("unknown system key '" + k + "'");
    }
  }

  void pair_line() {
    PairDecl& p = s_.pairs.back();
    auto [k, v] = key_value();
    if (k == "primal") p.primal = v.text;
    else if (k == "dual") p.dual = v.text;
    else if (k == "kernel") p.kernel = v.text;
    else if (k == "psi") p.psi = v;
    else if (k == "scale") p.scale = v;
    else fail("unknown pair key '" + k + "'");
  }

  void task_line() {
    std::size_t b = line_.find_first_not_of(" \t");
    std::size_t e = b;
    while (e < line_.size() && (std::isalnum(static_cast<unsigned char>(line_[e])) || line_[e] == '_')) ++e;
    TaskDecl t;
    t.kind = line_.substr(b, e - b);
    t.line = line_no_;
    if (t.kind.empty()) fail("expected a task kind", b + 1);
    std::size_t pos = e;
    while (pos < line_.size()) {
      std::size_t semi = line_.find(';', pos);
      if (semi == std::string::npos) semi = line_.size();
      std::string_view part = std::string_view(line_).substr(pos, semi - pos);
      if (!trim_copy(part).empty()) {
        std::size_t eq = part.find('=');
        if (eq == std::string_view::npos) fail("task argument needs 'key = value'", column_of(line_, pos));
        std::string key = trim_copy(part.substr(0, eq));
        if (key.empty()) fail("missing argument name", column_of(line_, pos));
        if (t.find(key)) fail("argument '" + key + "' given twice", column_of(line_, pos));
        t.args.emplace_back(key, source(pos + eq + 1, part.substr(eq + 1)));
      }
      pos = semi + 1;
    }
    s_.tasks.push_back(std::move(t));
  }

  std::string_view text_;
  std::string line_;
  std::size_t line_no_ = 0;
  std::string section_;
  Session s_;
};

}  // namespace detail

/// Reads a session; throws ParseError with line and column.
inline Session parse_session(std::string_view text) { return detail::SessionParser(text).parse(); }

}  // namespace bdt
