#pragma once

/**
 * @file dressing.hpp
 * @brief The factorization lemma: K, R, Q with
 *   g^{m+1} o L_f = K o g,   L_f o g^{m+1} = g o R,   L_f^{n+1} o g = Q o L_f
 * for f in O(Lambda), g in O(Lambda'), m = ord L_f, n = ord L'_g.
 *
 * The closed forms are the binomial expansions
 *   K = sum_{j<=m} C(m+1,j) ad_g^j(L_f) g^{m-j}
 *   R = sum_{j<=m} C(m+1,j) (-1)^j g^{m-j} ad_g^j(L_f)
 *   Q = sum_{j<=n} C(n+1,j) ad_{L_f}^j(g) L_f^{n-j}
 * which are exact because ad_g^{m+1}(L_f) = 0 and ad_{L_f}^{n+1}(g) = 0.
 */

#include <string>
#include <utility>

#include "bdt/algebra/generator_table.hpp"
#include "bdt/qhs/pair.hpp"

namespace bdt {

struct VanishingResult {
  bool terminated = false;
  /// Smallest n with ad^{n+1} = 0 when terminated.
  unsigned order = 0;
  /// Number of commutators computed.
  unsigned iterations = 0;
};

/// Smallest n with ad_{Lf}^{n+1}(g) = 0, trying at most max_iter commutators.
inline VanishingResult ad_vanishing_order(const DiffOperator& lf, const DiffOperator& g, unsigned max_iter) {
  if (!g.is_function()) throw ValidationError("ad_vanishing_order expects g of order 0");
  VanishingResult r;
  DiffOperator a = g;
  for (unsigned k = 1; k <= max_iter; ++k) {
    a = commutator(lf, a);
    r.iterations = k;
    if (a.is_zero()) {
      r.terminated = true;
      r.order = k - 1;
      return r;
    }
  }
  return r;
}

/// f and g resolved against a pair.
struct DressingInput {
  WordPoly f_word;
  WordPoly g_word;
  /// pi(f) as a polynomial in z and g as a polynomial in x.
  Polynomial f_spectral;
  Polynomial g_function;
  DiffOperator lf;
  DiffOperator g;
  /// L'_g, the z-side image of g.
  DiffOperator lg_dual;
  unsigned m = 0;
  unsigned n = 0;
};

namespace detail {

inline Polynomial spectral_value(const WordPoly& w, const BispectralPair& pair) {
  const auto& reg = pair.registry();
  Polynomial sum = Polynomial{}.with_registry(reg);
  for (const auto& [word, c] : w.terms()) {
    if (!c.is_polynomial()) throw ValidationError("coefficient " + c.to_string() + " is not polynomial");
    Polynomial term = c.as_polynomial().with_registry(reg);
    for (const auto& letter : word) term = term * pair.spectral_of(letter).with_registry(reg);
    sum = sum + term;
  }
  return sum;
}

inline void require_side(const WordPoly& w, const BispectralPair& pair, const QuantumSystem& side, const char* what) {
  for (const auto& [word, c] : w.terms())
    for (const auto& letter : word)
      if (!side.find(letter))
        throw ValidationError(std::string(what) + " may only use generators of system '" + side.name + "', found '" +
                              letter + "'");
  (void)pair;
}

}  // namespace detail

/// Resolves f (primal letters) and g (dual letters), both polynomials over
/// pair.letter_registry.
inline DressingInput dressing_input(const BispectralPair& pair, const Polynomial& f, const Polynomial& g) {
  const auto& reg = pair.registry();
  DressingInput in;
  in.f_word = words_from_commutative(f.with_registry(pair.letter_registry), pair.primal_letters(), reg);
  in.g_word = words_from_commutative(g.with_registry(pair.letter_registry), pair.dual_letters(), reg);
  detail::require_side(in.f_word, pair, pair.primal, "f");
  detail::require_side(in.g_word, pair, pair.dual, "g");
  if (in.g_word.is_zero()) throw ValidationError("g must be nonzero");
  if (in.f_word.is_zero()) throw ValidationError("f must be nonzero");
  in.f_spectral = detail::spectral_value(in.f_word, pair);
  in.g_function = detail::spectral_value(in.g_word, pair);
  in.lf = word_eval(in.f_word, pair.table, Block::x, reg);
  in.g = word_eval(in.g_word, pair.table, Block::x, reg);
  in.lg_dual = word_eval(anti_map(in.g_word, pair.table), pair.table, Block::z, reg);
  if (in.lf.order() <= 0) throw ValidationError("L_f must have positive order");
  if (in.lg_dual.is_zero()) throw ValidationError("L'_g must be nonzero");
  in.m = static_cast<unsigned>(in.lf.order());
  in.n = static_cast<unsigned>(std::max(0, in.lg_dual.order()));
  return in;
}

namespace detail {

inline mpq_class binomial(unsigned n, unsigned k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return mpq_class(b);
}

inline DiffOperator scalar_op(const RegistryPtr& reg, Block b, const mpq_class& c) {
  return DiffOperator::function(reg, b, RationalFunction(c));
}

}  // namespace detail

inline std::pair<WordPoly, DiffOperator> build_K(const DressingInput& in) {
  const auto& reg = in.lf.registry();
  const unsigned m = in.m;
  WordPoly word;
  DiffOperator k(reg, Block::x);
  DiffOperator ad = in.lf;
  for (unsigned j = 0; j <= m; ++j) {
    const mpq_class c = detail::binomial(m + 1, j);
    word += (ad_word(in.g_word, in.f_word, j) * in.g_word.pow(m - j)).scaled(RationalFunction(c));
    k += detail::scalar_op(reg, Block::x, c) * ad * in.g.pow(m - j);
    ad = commutator(in.g, ad);
  }
  if (!(in.g.pow(m + 1) * in.lf == k * in.g)) throw Error("defining identity g^{m+1} o L_f = K o g fails");
  return {std::move(word), std::move(k)};
}

inline std::pair<WordPoly, DiffOperator> build_R(const DressingInput& in) {
  const auto& reg = in.lf.registry();
  const unsigned m = in.m;
  WordPoly word;
  DiffOperator r(reg, Block::x);
  DiffOperator ad = in.lf;
  for (unsigned j = 0; j <= m; ++j) {
    mpq_class c = detail::binomial(m + 1, j);
    if (j % 2) c = -c;
    word += (in.g_word.pow(m - j) * ad_word(in.g_word, in.f_word, j)).scaled(RationalFunction(c));
    r += detail::scalar_op(reg, Block::x, c) * in.g.pow(m - j) * ad;
    ad = commutator(in.g, ad);
  }
  if (!(in.lf * in.g.pow(m + 1) == in.g * r)) throw Error("defining identity L_f o g^{m+1} = g o R fails");
  return {std::move(word), std::move(r)};
}

/// Throws when ad_{L_f}^{n+1}(g) does not vanish (the pair is not
/// bispectral for this f and g).
inline std::pair<WordPoly, DiffOperator> build_Q(const DressingInput& in) {
  const auto& reg = in.lf.registry();
  const unsigned n = in.n;
  VanishingResult v = ad_vanishing_order(in.lf, in.g, n + 1);
  if (!v.terminated)
    throw ValidationError("ad_{L_f}^{" + std::to_string(n + 1) + "}(g) is nonzero although ord L'_g = " +
                          std::to_string(n));
  WordPoly word;
  DiffOperator q(reg, Block::x);
  DiffOperator ad = in.g;
  for (unsigned j = 0; j <= n; ++j) {
    const mpq_class c = detail::binomial(n + 1, j);
    word += (ad_word(in.f_word, in.g_word, j) * in.f_word.pow(n - j)).scaled(RationalFunction(c));
    q += detail::scalar_op(reg, Block::x, c) * ad * in.lf.pow(n - j);
    ad = commutator(in.lf, ad);
  }
  if (!(in.lf.pow(n + 1) * in.g == q * in.lf)) throw Error("defining identity L_f^{n+1} o g = Q o L_f fails");
  return {std::move(word), std::move(q)};
}

struct DressingData {
  DressingInput input;
  VanishingResult vanishing;
  WordPoly K_word, R_word, Q_word;
  DiffOperator K, R, Q;
};

inline DressingData build_dressing(const BispectralPair& pair, const Polynomial& f, const Polynomial& g) {
  DressingData d;
  d.input = dressing_input(pair, f, g);
  d.vanishing = ad_vanishing_order(d.input.lf, d.input.g, d.input.n + 1);
  if (!d.vanishing.terminated)
    throw ValidationError("ad_{L_f}^" + std::to_string(d.input.n + 1) + "(g) != 0 with n = ord L'_g; not bispectral data");
  std::tie(d.K_word, d.K) = build_K(d.input);
  std::tie(d.R_word, d.R) = build_R(d.input);
  std::tie(d.Q_word, d.Q) = build_Q(d.input);
  return d;
}

inline std::pair<WordPoly, DiffOperator> build_K(const BispectralPair& pair, const Polynomial& f, const Polynomial& g) {
  return build_K(dressing_input(pair, f, g));
}
inline std::pair<WordPoly, DiffOperator> build_R(const BispectralPair& pair, const Polynomial& f, const Polynomial& g) {
  return build_R(dressing_input(pair, f, g));
}
inline std::pair<WordPoly, DiffOperator> build_Q(const BispectralPair& pair, const Polynomial& f, const Polynomial& g) {
  return build_Q(dressing_input(pair, f, g));
}

}  // namespace bdt
