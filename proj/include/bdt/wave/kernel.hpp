#pragma once

/**
 * @file kernel.hpp
 * @brief Finite derivative-closed bases of formal kernel functions.
 *
 * A basis is a list of symbols together with, for every x- and z-variable
 * u and every symbol s, a rule  D[u] s = sum_t c_{s,u,t} t  with rational
 * coefficients.  e^{x.z} is the one-symbol basis D[x_i] E = z_i E; the
 * Airy product uses Ai and Ai' with Ai'' = w Ai.
 */

#include <array>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "bdt/core/rational_function.hpp"

namespace bdt {

/// symbol -> coefficient, one right-hand side of a rule.
using KernelCombination = std::map<std::string, RationalFunction>;
/// (symbol, variable name) -> right-hand side.
using KernelRules = std::map<std::pair<std::string, std::string>, KernelCombination>;

class KernelBasis;
using KernelPtr = std::shared_ptr<const KernelBasis>;

class KernelBasis {
 public:
  /// Validates closure, total definition, mixed partials and, when
  /// `symmetric` is set, invariance of the rules under x <-> z.
  static KernelPtr define(RegistryPtr reg, std::string name, std::vector<std::string> symbols,
                          const KernelRules& rules, bool symmetric) {
    return KernelPtr(new KernelBasis(std::move(reg), std::move(name), std::move(symbols), rules, symmetric));
  }

  const RegistryPtr& registry() const noexcept { return reg_; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  bool symmetric() const noexcept { return symmetric_; }

  /// Coefficient vector of D[var] applied to symbol `s`.
  const std::vector<RationalFunction>& rule(std::size_t s, std::size_t var) const {
    return rules_.at(s).at(var_slot(var));
  }

  /// D[var] of sum_s c_s s.
  std::vector<RationalFunction> derive(const std::vector<RationalFunction>& c, std::size_t var) const {
    std::vector<RationalFunction> out(symbols_.size(), zero());
    for (std::size_t s = 0; s < symbols_.size(); ++s) {
      if (c[s].is_zero()) continue;
      out[s] += c[s].derive(var);
      const auto& r = rule(s, var);
      for (std::size_t t = 0; t < symbols_.size(); ++t)
        if (!r[t].is_zero()) out[t] += c[s] * r[t];
    }
    return out;
  }

  RationalFunction zero() const { return RationalFunction(Polynomial{}.with_registry(reg_)); }

 private:
  KernelBasis(RegistryPtr reg, std::string name, std::vector<std::string> symbols, const KernelRules& rules,
              bool symmetric)
      : reg_(std::move(reg)), name_(std::move(name)), symbols_(std::move(symbols)), symmetric_(symmetric) {
    if (symbols_.empty()) throw ValidationError("kernel '" + name_ + "' declares no symbols");
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < symbols_.size(); ++i)
      if (!index.emplace(symbols_[i], i).second)
        throw ValidationError("kernel '" + name_ + "' declares symbol '" + symbols_[i] + "' twice");
    const std::size_t nvars = reg_->x_count() + reg_->z_count();
    rules_.assign(symbols_.size(), std::vector<std::vector<RationalFunction>>(nvars));

    for (const auto& [key, rhs] : rules) {
      const auto& [sym, var] = key;
      auto si = index.find(sym);
      if (si == index.end()) throw ValidationError("basis not closed: rule for undeclared symbol '" + sym + "'");
      auto vi = reg_->find(var);
      if (!vi || reg_->is_param(*vi))
        throw ValidationError("kernel rule differentiates by '" + var + "', which is not an x- or z-variable");
      std::vector<RationalFunction> row(symbols_.size(), zero());
      for (const auto& [t, c] : rhs) {
        auto ti = index.find(t);
        if (ti == index.end())
          throw ValidationError("basis not closed: D[" + var + "] " + sym + " refers to undeclared symbol '" + t + "'");
        row[ti->second] += c.with_registry(reg_);
      }
      rules_[si->second][*vi] = std::move(row);
    }
    for (std::size_t s = 0; s < symbols_.size(); ++s)
      for (std::size_t v = 0; v < nvars; ++v)
        if (rules_[s][v].empty())
          throw ValidationError("kernel '" + name_ + "' has no rule for D[" + reg_->name(v) + "] " + symbols_[s]);

    check_mixed_partials();
    if (symmetric_) check_symmetry();
  }

  std::size_t var_slot(std::size_t var) const {
    if (var >= reg_->x_count() + reg_->z_count()) throw Error("kernel rules only cover x- and z-variables");
    return var;
  }

  std::vector<RationalFunction> unit(std::size_t s) const {
    std::vector<RationalFunction> v(symbols_.size(), zero());
    v[s] = RationalFunction(1).with_registry(reg_);
    return v;
  }

  void check_mixed_partials() const {
    const std::size_t nvars = reg_->x_count() + reg_->z_count();
    for (std::size_t s = 0; s < symbols_.size(); ++s)
      for (std::size_t u = 0; u < nvars; ++u)
        for (std::size_t v = u + 1; v < nvars; ++v) {
          auto uv = derive(derive(unit(s), u), v);
          auto vu = derive(derive(unit(s), v), u);
          if (uv != vu)
            throw ValidationError("inconsistent mixed partials: D[" + reg_->name(u) + "] D[" + reg_->name(v) +
                                  "] " + symbols_[s] + " depends on the order");
        }
  }

  void check_symmetry() const {
    if (!reg_->exchangeable()) throw ValidationError("symmetric kernel needs as many z- as x-variables");
    auto perm = swap_permutation(*reg_);
    for (std::size_t s = 0; s < symbols_.size(); ++s)
      for (std::size_t i = 0; i < reg_->x_count(); ++i) {
        const auto& rx = rules_[s][i];
        const auto& rz = rules_[s][i + reg_->x_count()];
        for (std::size_t t = 0; t < symbols_.size(); ++t)
          if (!(rx[t].permuted(perm) == rz[t]))
            throw ValidationError("kernel '" + name_ + "' is flagged symmetric but its rules are not exchange invariant");
      }
  }

 public:
  /// Permutation exchanging x_i and z_i, parameters fixed.
  static std::array<std::size_t, kMaxVars> swap_permutation(const VariableRegistry& reg) {
    std::array<std::size_t, kMaxVars> perm{};
    for (std::size_t i = 0; i < kMaxVars; ++i) perm[i] = i;
    for (std::size_t i = 0; i < reg.size(); ++i)
      if (auto p = reg.partner(i)) perm[i] = *p;
    return perm;
  }

 private:
  RegistryPtr reg_;
  std::string name_;
  std::vector<std::string> symbols_;
  bool symmetric_;
  /// rules_[symbol][variable] = coefficient vector
  std::vector<std::vector<std::vector<RationalFunction>>> rules_;
};

}  // namespace bdt
