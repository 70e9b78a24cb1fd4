#pragma once

/**
 * @file word_poly.hpp
 * @brief Linear combinations of words in named generators.
 *
 * A WordPoly is a representative of an element of the operator ring B
 * generated by a pair's generators.  Words are never normalized; equality
 * in B goes through a realization (see generator_table.hpp).
 */

#include <map>
#include <string>
#include <vector>

#include "bdt/core/rational_function.hpp"

namespace bdt {

using Word = std::vector<std::string>;

class WordPoly {
 public:
  using TermMap = std::map<Word, RationalFunction>;

  WordPoly() = default;

  static WordPoly unit() { return scalar(RationalFunction(1)); }

  static WordPoly scalar(const RationalFunction& c) {
    WordPoly w;
    if (!c.is_zero()) w.terms_.emplace(Word{}, c);
    return w;
  }

  static WordPoly letter(const std::string& name) { return word(Word{name}); }

  static WordPoly word(Word letters, const RationalFunction& c = RationalFunction(1)) {
    WordPoly w;
    if (!c.is_zero()) w.terms_.emplace(std::move(letters), c);
    return w;
  }

  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Longest word length.
  std::size_t length() const noexcept {
    std::size_t n = 0;
    for (const auto& [w, c] : terms_) n = std::max(n, w.size());
    return n;
  }

  WordPoly operator-() const {
    WordPoly r = *this;
    for (auto& [w, c] : r.terms_) c = -c;
    return r;
  }

  friend WordPoly operator+(const WordPoly& a, const WordPoly& b) {
    WordPoly r = a;
    for (const auto& [w, c] : b.terms_) r.add(w, c);
    return r;
  }

  friend WordPoly operator-(const WordPoly& a, const WordPoly& b) { return a + (-b); }

  /// Concatenation product.
  friend WordPoly operator*(const WordPoly& a, const WordPoly& b) {
    WordPoly r;
    for (const auto& [u, cu] : a.terms_)
      for (const auto& [v, cv] : b.terms_) {
        Word w = u;
        w.insert(w.end(), v.begin(), v.end());
        r.add(w, cu * cv);
      }
    return r;
  }

  WordPoly& operator+=(const WordPoly& o) { return *this = *this + o; }
  WordPoly& operator-=(const WordPoly& o) { return *this = *this - o; }
  WordPoly& operator*=(const WordPoly& o) { return *this = *this * o; }

  WordPoly scaled(const RationalFunction& c) const {
    WordPoly r;
    if (c.is_zero()) return r;
    for (const auto& [w, k] : terms_) r.add(w, k * c);
    return r;
  }

  WordPoly pow(unsigned n) const {
    WordPoly r = unit();
    for (unsigned i = 0; i < n; ++i) r = r * *this;
    return r;
  }

  friend bool operator==(const WordPoly& a, const WordPoly& b) { return a.terms_ == b.terms_; }

  /// `name1*name2*...` words, coefficients in front.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : terms_) {
      RationalFunction k = c;
      bool negative = k.leading_negative();
      if (negative) k = -k;
      out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
      first = false;
      std::string letters;
      for (const auto& l : w) letters += (letters.empty() ? "" : "*") + l;
      if (letters.empty()) {
        std::string ks = k.to_string();
        if (negative && k.num().size() > 1 && k.den().is_one()) ks = "(" + ks + ")";
        out += ks;
        continue;
      }
      if (!k.is_one()) {
        std::string ks = k.to_string();
        if (k.num().size() > 1 && k.den().is_one()) ks = "(" + ks + ")";
        out += ks + "*";
      }
      out += letters;
    }
    return out;
  }

 private:
  void add(const Word& w, const RationalFunction& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  TermMap terms_;
};

/// Formal ad_g^j(f) = g*A - A*g iterated, with ad^0 = f.
inline WordPoly ad_word(const WordPoly& g, const WordPoly& f, unsigned j) {
  WordPoly a = f;
  for (unsigned i = 0; i < j; ++i) a = g * a - a * g;
  return a;
}

inline WordPoly ad_word(const std::string& g, const std::string& f, unsigned j) {
  return ad_word(WordPoly::letter(g), WordPoly::letter(f), j);
}

}  // namespace bdt
