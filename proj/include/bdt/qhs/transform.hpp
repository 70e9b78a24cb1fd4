#pragma once

/**
 * @file transform.hpp
 * @brief Darboux transforms of a bispectral pair and their certificates.
 *
 * Primal side (on X_g): generators f^{n+1} and f^{n+1} e_i with
 *   L~_{f^{n+1} e_i} = K o L_{e_i} o Q o g^{-(m+1)}.
 * Dual side (on X'_f): generators g^{m+1} and g^{m+1} e'_j with
 *   L~'_{g^{m+1} e'_j} = b(K) o L'_{e'_j} o f^{-1} o L'_g.
 */

#include <random>
#include <string>
#include <vector>

#include "bdt/ore/division.hpp"
#include "bdt/qhs/dressing.hpp"

namespace bdt {

struct Certificate {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct TransformResult {
  QuantumSystem system;
  DressingData dressing;
  /// The dressing operator acting on this side: K, or b(K) for the dual.
  DiffOperator dressing_operator;
  std::vector<Certificate> certificates;

  bool ok() const {
    for (const auto& c : certificates)
      if (!c.passed) return false;
    return true;
  }
};

struct IntertwiningResult {
  bool ok = false;
  DiffOperator defect;
};

/// K o L - Lt o K.
inline IntertwiningResult verify_intertwining(const DiffOperator& k, const DiffOperator& l, const DiffOperator& lt) {
  DiffOperator d = k * l - lt * k;
  return {d.is_zero(), std::move(d)};
}

struct DeduceResult {
  bool ok = false;
  DiffOperator transformed;
  DiffOperator remainder;
};

/// L~ with K o L = L~ o K, by right division of K o L by K.
inline DeduceResult deduce_transformed(const DiffOperator& k, const DiffOperator& l, std::size_t pivot) {
  DivisionResult r = right_divide(k * l, k, pivot);
  bool ok = r.remainder.is_zero();
  return {ok, std::move(r.quotient), std::move(r.remainder)};
}

struct TransformOptions {
  /// New generators are named prefix0, prefix1, ...
  std::string prefix = "T";
  std::uint64_t seed = 1;
};

namespace detail {

inline Certificate commutativity_certificate(const QuantumSystem& s) {
  auto c = check_commutativity(s);
  if (c.ok) return {"commutativity", true, std::to_string(s.generators.size()) + " generators commute pairwise"};
  return {"commutativity", false,
          "[" + s.generators[c.failing->first].name + ", " + s.generators[c.failing->second].name +
              "] = " + c.defect->to_string()};
}

inline Certificate dimension_certificate(const QuantumSystem& before, const QuantumSystem& after, std::uint64_t seed) {
  std::size_t d0 = spectral_dimension(before, seed);
  std::size_t d1 = spectral_dimension(after, seed);
  return {"dimension", d0 == d1, "spectral dimension " + std::to_string(d1) + " (was " + std::to_string(d0) + ")"};
}

inline Certificate denominator_certificate(const QuantumSystem& s) {
  auto c = check_denominators(s);
  std::string allowed;
  for (const auto& l : s.localizers) allowed += (allowed.empty() ? "" : ", ") + l.to_string();
  if (c.ok) return {"denominators", true, "confined to powers of {" + allowed + "}"};
  return {"denominators", false, c.offender + " is not confined to {" + allowed + "}"};
}

/// K o L_h = L~_h o K for every generator.
inline Certificate intertwining_certificate(const DiffOperator& k, const std::vector<DiffOperator>& originals,
                                            const QuantumSystem& s) {
  for (std::size_t i = 0; i < originals.size(); ++i) {
    auto r = verify_intertwining(k, originals[i], s.generators[i].image);
    if (!r.ok) return {"intertwining", false, s.generators[i].name + ": defect " + r.defect.to_string()};
  }
  return {"intertwining", true, "K o L_h = L~_h o K for " + std::to_string(originals.size()) + " generators"};
}

}  // namespace detail

inline TransformResult darboux_transform(const BispectralPair& pair, const DressingData& d,
                                         const TransformOptions& opt = {}) {
  const auto& in = d.input;
  const auto& reg = pair.registry();
  TransformResult out;
  out.dressing = d;
  out.dressing_operator = d.K;

  const RationalFunction g_inv = in.g.function_part().inverse().pow(static_cast<long>(in.m + 1));
  const DiffOperator tail = d.Q * DiffOperator::function(reg, Block::x, g_inv);
  const DiffOperator lf_pow = in.lf.pow(in.n + 1);
  const Polynomial f_pow = in.f_spectral.pow(in.n + 1);

  QuantumSystem s;
  s.name = opt.prefix;
  s.registry = reg;
  s.block = Block::x;
  s.localizers = pair.primal.localizers;
  s = localize(std::move(s), in.g_function);

  std::vector<DiffOperator> originals;
  s.generators.push_back({opt.prefix + "0", f_pow, d.K * tail});
  originals.push_back(lf_pow);
  for (std::size_t i = 0; i < pair.primal.generators.size(); ++i) {
    const auto& e = pair.primal.generators[i];
    s.generators.push_back({opt.prefix + std::to_string(i + 1), f_pow * e.spectral.with_registry(reg), d.K * e.image * tail});
    originals.push_back(lf_pow * e.image);
  }

  out.certificates.push_back(detail::intertwining_certificate(d.K, originals, s));
  out.certificates.push_back(detail::commutativity_certificate(s));
  out.certificates.push_back(detail::dimension_certificate(pair.primal, s, opt.seed));
  out.certificates.push_back(detail::denominator_certificate(s));
  out.system = std::move(s);
  return out;
}

/// Only the generator f^{n+1}, with L~ = K o Q o g^{-(m+1)}.
inline SpectralGenerator lowest_transformed_generator(const BispectralPair& pair, const DressingData& d,
                                                      const std::string& name) {
  const auto& in = d.input;
  const auto& reg = pair.registry();
  const RationalFunction g_inv = in.g.function_part().inverse().pow(static_cast<long>(in.m + 1));
  return {name, in.f_spectral.pow(in.n + 1), d.K * d.Q * DiffOperator::function(reg, Block::x, g_inv)};
}

/// b(K), the z-side image of K.
inline DiffOperator dual_dressing_operator(const BispectralPair& pair, const DressingData& d) {
  return word_eval(anti_map(d.K_word, pair.table), pair.table, Block::z, pair.registry());
}

inline TransformResult dual_darboux_transform(const BispectralPair& pair, const DressingData& d,
                                              const TransformOptions& opt = {}) {
  const auto& in = d.input;
  const auto& reg = pair.registry();
  TransformResult out;
  out.dressing = d;
  const DiffOperator bk = dual_dressing_operator(pair, d);
  out.dressing_operator = bk;

  const DiffOperator f_op = DiffOperator::function(reg, Block::z, RationalFunction(in.f_spectral));
  const DiffOperator lg_pow = in.lg_dual.pow(in.m + 1);
  if (!(f_op * lg_pow == in.lg_dual * bk))
    throw Error("dual factorization f o L'_g^{m+1} = L'_g o b(K) fails");

  const DiffOperator tail = DiffOperator::function(reg, Block::z, RationalFunction(in.f_spectral).inverse()) * in.lg_dual;
  const Polynomial g_pow = in.g_function.pow(in.m + 1);

  QuantumSystem s;
  s.name = opt.prefix;
  s.registry = reg;
  s.block = Block::z;
  s.localizers = pair.dual.localizers;
  s = localize(std::move(s), in.f_spectral);

  std::vector<DiffOperator> originals;
  s.generators.push_back({opt.prefix + "0", g_pow, bk * tail});
  originals.push_back(lg_pow);
  for (std::size_t j = 0; j < pair.dual.generators.size(); ++j) {
    const auto& e = pair.dual.generators[j];
    s.generators.push_back({opt.prefix + std::to_string(j + 1), g_pow * e.spectral.with_registry(reg), bk * e.image * tail});
    originals.push_back(lg_pow * e.image);
  }

  out.certificates.push_back(detail::intertwining_certificate(bk, originals, s));
  out.certificates.push_back(detail::commutativity_certificate(s));
  out.certificates.push_back(detail::dimension_certificate(pair.dual, s, opt.seed));
  out.certificates.push_back(detail::denominator_certificate(s));
  out.system = std::move(s);
  return out;
}

inline TransformResult darboux_transform(const BispectralPair& pair, const Polynomial& f, const Polynomial& g,
                                         const TransformOptions& opt = {}) {
  return darboux_transform(pair, build_dressing(pair, f, g), opt);
}

inline TransformResult dual_darboux_transform(const BispectralPair& pair, const Polynomial& f, const Polynomial& g,
                                              const TransformOptions& opt = {}) {
  return dual_darboux_transform(pair, build_dressing(pair, f, g), opt);
}

/// The transformed pair (S~, S~') with eigenfunction K psi.
inline BispectralPair repair(std::string name, const BispectralPair& pair, const TransformResult& primal,
                             const TransformResult& dual) {
  WaveFunction psi = apply_operator(primal.dressing.K, pair.psi);
  return make_pair(std::move(name), primal.system, dual.system, std::move(psi));
}

}  // namespace bdt
