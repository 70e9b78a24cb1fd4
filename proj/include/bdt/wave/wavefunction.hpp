#pragma once

/**
 * @file wavefunction.hpp
 * @brief Symbolic eigenfunctions sum_s c_s(x, z) s over a kernel basis.
 */

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "bdt/algebra/generator_table.hpp"
#include "bdt/ore/diff_operator.hpp"
#include "bdt/wave/kernel.hpp"

namespace bdt {

class WaveFunction {
 public:
  WaveFunction() = default;
  WaveFunction(KernelPtr basis, std::vector<RationalFunction> coefficients)
      : basis_(std::move(basis)), coeffs_(std::move(coefficients)) {
    if (!basis_) throw Error("wavefunction without a kernel basis");
    if (coeffs_.size() != basis_->size()) throw Error("wavefunction coefficient count does not match its basis");
    for (auto& c : coeffs_) c = c.with_registry(basis_->registry());
  }

  /// Coefficient 1 on the first symbol.
  static WaveFunction seed(const KernelPtr& basis) {
    std::vector<RationalFunction> c(basis->size(), basis->zero());
    c[0] = RationalFunction(1).with_registry(basis->registry());
    return WaveFunction(basis, std::move(c));
  }

  const KernelPtr& basis() const noexcept { return basis_; }
  const std::vector<RationalFunction>& coefficients() const noexcept { return coeffs_; }
  const RationalFunction& coefficient(std::size_t s) const { return coeffs_.at(s); }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!c.is_zero()) return false;
    return true;
  }

  WaveFunction scaled(const RationalFunction& f) const {
    WaveFunction r = *this;
    for (auto& c : r.coeffs_) c = c * f;
    return r;
  }

  WaveFunction derive(std::size_t var) const { return WaveFunction(basis_, basis_->derive(coeffs_, var)); }

  friend WaveFunction operator+(const WaveFunction& a, const WaveFunction& b) {
    require_same(a, b);
    WaveFunction r = a;
    for (std::size_t s = 0; s < r.coeffs_.size(); ++s) r.coeffs_[s] += b.coeffs_[s];
    return r;
  }

  friend WaveFunction operator-(const WaveFunction& a, const WaveFunction& b) { return a + b.scaled(RationalFunction(-1)); }

  friend bool operator==(const WaveFunction& a, const WaveFunction& b) {
    require_same(a, b);
    return a.coeffs_ == b.coeffs_;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t s = 0; s < coeffs_.size(); ++s) {
      if (coeffs_[s].is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += "(" + coeffs_[s].to_string() + ")*" + basis_->symbols()[s];
    }
    return out.empty() ? "0" : out;
  }

 private:
  static void require_same(const WaveFunction& a, const WaveFunction& b) {
    if (a.basis_ != b.basis_) throw Error("wavefunctions over different kernel bases");
  }

  KernelPtr basis_;
  std::vector<RationalFunction> coeffs_;
};

/// D applied to psi by the kernel rules and the product rule.
inline WaveFunction apply_operator(const DiffOperator& d, const WaveFunction& psi) {
  std::map<Monomial, WaveFunction, GrlexDescending> cache;
  cache.emplace(Monomial{}, psi);
  std::function<const WaveFunction&(const Monomial&)> get = [&](const Monomial& a) -> const WaveFunction& {
    auto it = cache.find(a);
    if (it != cache.end()) return it->second;
    std::size_t i = 0;
    while (!a.exp[i]) ++i;
    Monomial prev = a;
    --prev.exp[i];
    WaveFunction w = get(prev).derive(d.global_index(i));
    return cache.emplace(a, std::move(w)).first->second;
  };
  WaveFunction out = psi.scaled(RationalFunction(0));
  for (const auto& [alpha, c] : d.terms()) out = out + get(alpha).scaled(c);
  return out;
}

/// D psi == eigenvalue * psi; the eigenvalue may not involve D's own block.
inline bool check_eigen(const DiffOperator& d, const WaveFunction& psi, const RationalFunction& eigenvalue) {
  const auto& reg = psi.basis()->registry();
  if (!d.is_function()) {
    unsigned s = eigenvalue.support();
    for (std::size_t i = 0; i < reg->block_size(d.block()); ++i)
      if ((s >> reg->global_index(d.block(), i)) & 1u)
        throw ValidationError("eigenvalue " + eigenvalue.to_string() + " depends on the operator's own block");
  }
  return apply_operator(d, psi) == psi.scaled(eigenvalue);
}

/// A word applied to psi letter by letter, rightmost letter first.
inline WaveFunction apply_word(const WordPoly& w, const GeneratorTable& t, Block side, const WaveFunction& psi) {
  WaveFunction out = psi.scaled(RationalFunction(0));
  for (const auto& [word, c] : w.terms()) {
    WaveFunction v = psi;
    for (auto it = word.rbegin(); it != word.rend(); ++it) v = apply_operator(t.realization(*it, side), v);
    out = out + v.scaled(c);
  }
  return out;
}

/// w psi == b(w) psi.
inline bool check_duality(const WordPoly& w, const GeneratorTable& t, const WaveFunction& psi) {
  return apply_word(w, t, Block::x, psi) == apply_word(anti_map(w, t), t, Block::z, psi);
}

/// Swaps x_i and z_i in every coefficient; the basis must be symmetric.
inline WaveFunction exchange_xz(const WaveFunction& psi) {
  if (!psi.basis()->symmetric()) throw ValidationError("kernel '" + psi.basis()->name() + "' is not exchange symmetric");
  auto perm = KernelBasis::swap_permutation(*psi.basis()->registry());
  std::vector<RationalFunction> c;
  c.reserve(psi.coefficients().size());
  for (const auto& k : psi.coefficients()) c.push_back(k.permuted(perm));
  return WaveFunction(psi.basis(), std::move(c));
}

}  // namespace bdt
