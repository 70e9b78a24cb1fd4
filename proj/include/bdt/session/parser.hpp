#pragma once

/**
 * @file parser.hpp
 * @brief Recursive-descent parser for operator and function expressions.
 *
 * Grammar:
 *   expr    := ['+'|'-'] term (('+'|'-') term)*
 *   term    := unary (('*'|'/') unary)*
 *   unary   := '-' unary | power
 *   power   := primary ['^' ['-'] integer | '^' '(' ['-'] integer ')']
 *   primary := integer | identifier | 'D' '[' variable ']' | '(' expr ')'
 *
 * Products compose left to right, so `D[x1]*x1` is the operator x1*D[x1] + 1.
 * Division and negative powers are only allowed on multiplication operators.
 */

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "bdt/ore/diff_operator.hpp"

namespace bdt {

struct ParseEnv {
  RegistryPtr registry;
  /// Named operators usable as identifiers.
  const std::map<std::string, DiffOperator>* definitions = nullptr;
  /// Line reported in errors.
  std::size_t line = 1;
  /// Column offset added to reported columns (for text embedded in a line).
  std::size_t column_offset = 0;
};

/// Parsed operator; `block` stays empty while no derivative letter occurs.
struct ParsedExpr {
  DiffOperator op;
  std::optional<Block> block;
};

namespace detail {

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const ParseEnv& env) : text_(text), env_(env) {}

  ParsedExpr parse() {
    skip_ws();
    if (pos_ >= text_.size()) fail("empty expression");
    ParsedExpr e = expr();
    skip_ws();
    if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, pos_); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const {
    throw ParseError(msg, env_.line, env_.column_offset + at + 1);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  ParsedExpr constant(const mpq_class& c) const {
    return {DiffOperator::function(env_.registry, Block::x, RationalFunction(c)), std::nullopt};
  }

  std::optional<Block> merge_blocks(const ParsedExpr& a, const ParsedExpr& b, std::size_t at) const {
    if (a.block && b.block && *a.block != *b.block)
      fail_at("derivative letters of both x- and z-blocks in one expression", at);
    return a.block ? a.block : b.block;
  }

  ParsedExpr expr() {
    skip_ws();
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    ParsedExpr acc = term();
    if (negate) acc.op = -acc.op;
    while (true) {
      skip_ws();
      std::size_t at = pos_;
      if (accept('+')) {
        ParsedExpr rhs = term();
        acc.block = merge_blocks(acc, rhs, at);
        acc.op = acc.op + rhs.op;
      } else if (accept('-')) {
        ParsedExpr rhs = term();
        acc.block = merge_blocks(acc, rhs, at);
        acc.op = acc.op - rhs.op;
      } else {
        return acc;
      }
    }
  }

  ParsedExpr term() {
    ParsedExpr acc = unary();
    while (true) {
      skip_ws();
      std::size_t at = pos_;
      if (accept('*')) {
        ParsedExpr rhs = unary();
        acc.block = merge_blocks(acc, rhs, at);
        acc.op = acc.op * rhs.op;
      } else if (accept('/')) {
        skip_ws();
        std::size_t rat = pos_;
        ParsedExpr rhs = unary();
        if (!rhs.op.is_function()) fail_at("division by an operator of positive order", rat);
        if (rhs.op.is_zero()) fail_at("division by zero", rat);
        acc.op = acc.op * DiffOperator::function(env_.registry, acc.block.value_or(Block::x),
                                                 rhs.op.function_part().inverse());
      } else {
        return acc;
      }
    }
  }

  ParsedExpr unary() {
    if (accept('-')) {
      ParsedExpr e = unary();
      e.op = -e.op;
      return e;
    }
    return power();
  }

  ParsedExpr power() {
    ParsedExpr base = primary();
    skip_ws();
    if (!accept('^')) return base;
    skip_ws();
    std::size_t at = pos_;
    bool paren = accept('(');
    bool negative = accept('-');
    skip_ws();
    mpz_class e = integer();
    if (paren) expect(')');
    if (e > 64) fail_at("exponent too large", at);
    unsigned n = static_cast<unsigned>(e.get_ui());
    if (negative) {
      if (!base.op.is_function()) fail_at("negative power of an operator of positive order", at);
      if (base.op.is_zero()) fail_at("negative power of zero", at);
      RationalFunction f = base.op.function_part().inverse().pow(n);
      return {DiffOperator::function(env_.registry, base.block.value_or(Block::x), f), base.block};
    }
    if (base.op.is_function()) {
      RationalFunction f = base.op.function_part().pow(n);
      return {DiffOperator::function(env_.registry, base.block.value_or(Block::x), f), base.block};
    }
    base.op = base.op.pow(n);
    return base;
  }

  mpz_class integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  std::string identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    while (pos_ < text_.size() && text_[pos_] == '\'') ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  ParsedExpr primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return constant(mpq_class(integer()));
    if (c == '(') {
      ++pos_;
      ParsedExpr e = expr();
      expect(')');
      return e;
    }
    if (ident_start(c)) {
      std::size_t at = pos_;
      std::string name = identifier();
      if (name == "D") return derivative(at);
      if (env_.registry)
        if (auto idx = env_.registry->find(name))
          return {DiffOperator::function(env_.registry, Block::x, RationalFunction::variable(env_.registry, *idx)),
                  std::nullopt};
      if (env_.definitions) {
        auto it = env_.definitions->find(name);
        if (it != env_.definitions->end()) {
          const DiffOperator& d = it->second;
          return {d, d.is_function() ? std::nullopt : std::optional<Block>(d.block())};
        }
      }
      fail_at("unknown identifier '" + name + "'", at);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  ParsedExpr derivative(std::size_t at) {
    expect('[');
    skip_ws();
    std::size_t vat = pos_;
    if (pos_ >= text_.size() || !ident_start(text_[pos_])) fail("expected a variable name");
    std::string var = identifier();
    auto idx = env_.registry ? env_.registry->find(var) : std::nullopt;
    if (!idx) fail_at("unknown variable '" + var + "'", vat);
    auto blk = env_.registry->block_of(*idx);
    if (!blk) fail_at("cannot differentiate with respect to parameter '" + var + "'", vat);
    expect(']');
    (void)at;
    return {DiffOperator::derivative(env_.registry, *blk, env_.registry->local_index(*idx)), blk};
  }

  std::string_view text_;
  const ParseEnv& env_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline ParsedExpr parse_expression(std::string_view text, const ParseEnv& env) {
  return detail::ExpressionParser(text, env).parse();
}

/// Parses an operator; pure functions are placed in `block`.
inline DiffOperator parse_operator(std::string_view text, const RegistryPtr& reg, Block block = Block::x,
                                   const std::map<std::string, DiffOperator>* defs = nullptr) {
  ParseEnv env{reg, defs};
  ParsedExpr e = parse_expression(text, env);
  if (e.block && *e.block != block && !e.op.is_function())
    throw ParseError(std::string("expected an operator in the ") + block_name(block) + "-block", 1, 1);
  if (e.op.is_function()) return DiffOperator::function(reg, block, e.op.function_part());
  return e.op;
}

inline RationalFunction parse_function(std::string_view text, const RegistryPtr& reg,
                                       const std::map<std::string, DiffOperator>* defs = nullptr) {
  ParseEnv env{reg, defs};
  ParsedExpr e = parse_expression(text, env);
  if (!e.op.is_function()) throw ParseError("expected a function, found an operator of positive order", 1, 1);
  return e.op.function_part().with_registry(reg);
}

inline Polynomial parse_polynomial(std::string_view text, const RegistryPtr& reg) {
  RationalFunction f = parse_function(text, reg);
  if (!f.is_polynomial()) throw ParseError("expected a polynomial", 1, 1);
  return f.as_polynomial().with_registry(reg);
}

}  // namespace bdt
