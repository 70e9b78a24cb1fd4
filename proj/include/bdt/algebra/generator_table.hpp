#pragma once

/**
 * @file generator_table.hpp
 * @brief Generator correspondence of a bispectral pair and the anti-map b.
 *
 * Each entry pairs a generator of B (letter `name`, realized in the x-block)
 * with its image under b (letter `dual_name`, realized in the z-block).
 * b reverses words and swaps the two letters of every entry.
 */

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bdt/algebra/word_poly.hpp"
#include "bdt/ore/diff_operator.hpp"

namespace bdt {

struct GeneratorEntry {
  std::string name;
  DiffOperator x_realization;
  std::string dual_name;
  DiffOperator z_realization;
};

class GeneratorTable {
 public:
  GeneratorTable() = default;

  explicit GeneratorTable(std::vector<GeneratorEntry> entries) {
    for (auto& e : entries) add(std::move(e));
  }

  void add(GeneratorEntry e) {
    if (e.name.empty() || e.dual_name.empty()) throw ValidationError("generator names must be nonempty");
    for (const auto* n : {&e.name, &e.dual_name})
      if (index_.count(*n)) throw ValidationError("generator name '" + *n + "' is used twice");
    if (e.name == e.dual_name) throw ValidationError("generator '" + e.name + "' is its own dual name");
    if (!e.x_realization.is_function() && e.x_realization.block() != Block::x)
      throw ValidationError("x-realization of '" + e.name + "' is not an x-block operator");
    if (!e.z_realization.is_function() && e.z_realization.block() != Block::z)
      throw ValidationError("z-realization of '" + e.dual_name + "' is not a z-block operator");
    const std::size_t i = entries_.size();
    index_.emplace(e.name, Slot{i, Block::x});
    index_.emplace(e.dual_name, Slot{i, Block::z});
    entries_.push_back(std::move(e));
  }

  const std::vector<GeneratorEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  /// Entry index of a letter and the side it is realized on.
  std::optional<std::pair<std::size_t, Block>> find(const std::string& letter) const {
    auto it = index_.find(letter);
    if (it == index_.end()) return std::nullopt;
    return std::make_pair(it->second.entry, it->second.side);
  }

  /// The letter b sends `letter` to.
  const std::string& partner(const std::string& letter) const {
    auto s = slot(letter);
    const auto& e = entries_[s.entry];
    return s.side == Block::x ? e.dual_name : e.name;
  }

  /// Realization of a letter on its own side.
  const DiffOperator& realization(const std::string& letter) const {
    auto s = slot(letter);
    const auto& e = entries_[s.entry];
    return s.side == Block::x ? e.x_realization : e.z_realization;
  }

  /// Realization of a letter on a requested side.
  const DiffOperator& realization(const std::string& letter, Block side) const {
    auto s = slot(letter);
    if (s.side != side)
      throw Error("generator '" + letter + "' has no " + block_name(side) + "-side realization");
    return realization(letter);
  }

  /// Two-column listing `name <-> dual_name`.
  std::string to_string() const {
    std::string out;
    for (const auto& e : entries_)
      out += e.name + " = " + e.x_realization.to_string() + "  <->  " + e.dual_name + " = " +
             e.z_realization.to_string() + "\n";
    return out;
  }

 private:
  struct Slot {
    std::size_t entry;
    Block side;
  };

  Slot slot(const std::string& letter) const {
    auto it = index_.find(letter);
    if (it == index_.end()) throw Error("unknown generator '" + letter + "'");
    return it->second;
  }

  std::vector<GeneratorEntry> entries_;
  std::unordered_map<std::string, Slot> index_;
};

namespace detail {

inline void require_scalar(const RationalFunction& c, const RegistryPtr& reg) {
  if (!reg) return;
  unsigned s = c.support();
  for (std::size_t v = 0; v < reg->size(); ++v)
    if (((s >> v) & 1u) && !reg->is_param(v))
      throw ValidationError("word coefficient " + c.to_string() + " depends on variable '" + reg->name(v) + "'");
}

}  // namespace detail

/// Product of realizations, left to right, on one side.
inline DiffOperator word_eval(const WordPoly& w, const GeneratorTable& t, Block side, const RegistryPtr& reg) {
  DiffOperator sum(reg, side);
  for (const auto& [word, c] : w.terms()) {
    detail::require_scalar(c, reg);
    DiffOperator prod = DiffOperator::function(reg, side, c);
    for (const auto& letter : word) prod = prod * t.realization(letter, side);
    sum += prod;
  }
  return sum;
}

/// b: reverse every word and swap each letter with its partner.
inline WordPoly anti_map(const WordPoly& w, const GeneratorTable& t) {
  WordPoly r;
  for (const auto& [word, c] : w.terms()) {
    Word rev;
    rev.reserve(word.size());
    for (auto it = word.rbegin(); it != word.rend(); ++it) rev.push_back(t.partner(*it));
    r += WordPoly::word(std::move(rev), c);
  }
  return r;
}

/// Equality in B, decided through the x-side realization.
inline bool word_equal_in_B(const WordPoly& a, const WordPoly& b, const GeneratorTable& t, const RegistryPtr& reg) {
  return (word_eval(a, t, Block::x, reg) - word_eval(b, t, Block::x, reg)).is_zero();
}

/// Turns a commutative polynomial in letters into words.  The letters are
/// trailing parameters of `p`'s registry listed in `letters`, in table
/// order; each monomial becomes one word with its letters sorted by that
/// order.  Remaining symbols must be parameters of `base`.
inline WordPoly words_from_commutative(const Polynomial& p, const std::vector<std::pair<std::size_t, std::string>>& letters,
                                       const RegistryPtr& base) {
  WordPoly out;
  for (const auto& t : p.terms()) {
    Monomial rest = t.mono;
    Word w;
    for (const auto& [index, name] : letters) {
      for (unsigned k = 0; k < rest.exp[index]; ++k) w.push_back(name);
      rest.exp[index] = 0;
    }
    for (std::size_t v = 0; v < kMaxVars; ++v) {
      if (!rest.exp[v]) continue;
      if (!base || v >= base->size() || !base->is_param(v))
        throw ValidationError("'" + (p.registry() ? p.registry()->name(v) : std::string("?")) +
                              "' is neither a generator letter nor a parameter");
    }
    out += WordPoly::word(std::move(w), RationalFunction(Polynomial::monomial(base, rest, t.coeff)));
  }
  return out;
}

}  // namespace bdt
