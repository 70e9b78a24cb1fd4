#pragma once

/**
 * @file gcd.hpp
 * @brief Exact division and multivariate GCD over Q.
 *
 * The GCD first tries the heuristic algorithm of Char, Geddes and Gonnet:
 * evaluate the main variable at a large integer, recurse, rebuild the
 * candidate from its xi-adic digits and accept it when it divides both
 * arguments.  When that gives up, it recurses on a main variable: contents
 * (GCDs of coefficients in the remaining variables) are split off
 * recursively and the primitive parts go through a primitive
 * pseudo-remainder sequence, i.e. univariate Euclid with every remainder
 * made primitive.
 */

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "bdt/core/polynomial.hpp"

namespace bdt {

namespace detail {

/// Value of the integer primitive part of p at a fixed point of small primes.
inline mpz_class probe_value(const Polynomial& p) {
  static constexpr unsigned kPoint[kMaxVars] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59};
  std::array<std::vector<mpz_class>, kMaxVars> powers;
  mpq_class sum = 0;
  for (const auto& t : p.terms()) {
    mpq_class term = t.coeff;
    for (std::size_t v = 0; v < kMaxVars; ++v) {
      unsigned e = t.mono.exp[v];
      if (!e) continue;
      auto& pw = powers[v];
      if (pw.empty()) pw.push_back(1);
      while (pw.size() <= e) pw.push_back(pw.back() * kPoint[v]);
      term *= pw[e];
    }
    sum += term;
  }
  sum /= p.content();
  return sum.get_num();
}

}  // namespace detail

/// Quotient a / b when b divides a exactly, std::nullopt otherwise.
inline std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b) {
  RegistryPtr reg = common_registry(a.registry(), b.registry());
  if (b.is_zero()) throw DivisionByZero("division by the zero polynomial");
  if (a.is_zero()) return Polynomial{}.with_registry(reg);
  if (b.is_constant()) return a.scaled(1 / b.constant_value()).with_registry(reg);
  if (b.is_monomial()) {
    const Term& t = b.leading_term();
    if (!t.mono.divides(a.min_exponents())) return std::nullopt;
    return a.unshifted(t.mono).scaled(1 / t.coeff).with_registry(reg);
  }
  if (a.size() < b.size() && a.size() == 1) return std::nullopt;
  unsigned sa = a.support(), sb = b.support();
  if ((sb & ~sa) != 0) return std::nullopt;
  for (std::size_t v = 0; v < kMaxVars; ++v)
    if ((sb >> v) & 1u)
      if (b.degree(v) > a.degree(v)) return std::nullopt;
  // The trailing terms must divide as well.
  if (!b.terms().back().mono.divides(a.terms().back().mono)) return std::nullopt;
  // Gauss: an integer primitive divisor divides the value at every point.
  {
    mpz_class vb = detail::probe_value(b);
    if (vb != 0 && !mpz_divisible_p(detail::probe_value(a).get_mpz_t(), vb.get_mpz_t())) return std::nullopt;
  }

  const Term& lead = b.leading_term();
  std::map<Monomial, mpq_class, GrlexDescending> rem;
  for (const auto& t : a.terms()) rem.emplace_hint(rem.end(), t.mono, t.coeff);
  std::vector<Term> quotient;
  while (!rem.empty()) {
    auto it = rem.begin();
    if (!lead.mono.divides(it->first)) return std::nullopt;
    Monomial qm = it->first / lead.mono;
    mpq_class qc = it->second / lead.coeff;
    rem.erase(it);
    bool first = true;
    for (const auto& t : b.terms()) {
      if (first) {
        first = false;
        continue;
      }
      Monomial m = t.mono * qm;
      mpq_class c = t.coeff * qc;
      auto [pos, inserted] = rem.try_emplace(m, -c);
      if (!inserted) {
        pos->second -= c;
        if (pos->second == 0) rem.erase(pos);
      }
    }
    quotient.push_back({qm, std::move(qc)});
  }
  return Polynomial::from_terms(reg, std::move(quotient));
}

/// Exact quotient; throws when b does not divide a.
inline Polynomial divide_or_throw(const Polynomial& a, const Polynomial& b) {
  auto q = divide_exact(a, b);
  if (!q) throw Error("inexact polynomial division");
  return *std::move(q);
}

namespace detail {

/// Coefficients of p as a polynomial in `var` (index = power of var).
inline std::vector<Polynomial> coefficients_in(const Polynomial& p, std::size_t var) {
  std::vector<std::vector<Term>> buckets(p.degree(var) + 1);
  for (const auto& t : p.terms()) {
    Monomial m = t.mono;
    unsigned e = m.exp[var];
    m.exp[var] = 0;
    buckets[e].push_back({m, t.coeff});
  }
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(Polynomial::from_terms(p.registry(), std::move(b)));
  return out;
}

inline Polynomial from_coefficients(const std::vector<Polynomial>& coeffs, std::size_t var,
                                    const RegistryPtr& reg) {
  std::vector<Term> terms;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    for (const auto& t : coeffs[k].terms()) {
      Monomial m = t.mono;
      m.exp[var] = static_cast<std::uint16_t>(k);
      terms.push_back({m, t.coeff});
    }
  return Polynomial::from_terms(reg, std::move(terms));
}

inline void trim(std::vector<Polynomial>& v) {
  while (!v.empty() && v.back().is_zero()) v.pop_back();
}

/// A pseudo-remainder of a by b in their common main variable; both are
/// coefficient vectors with nonzero leading entries.
inline std::vector<Polynomial> pseudo_remainder(std::vector<Polynomial> a, const std::vector<Polynomial>& b) {
  const std::size_t db = b.size() - 1;
  const Polynomial& lcb = b.back();
  while (!a.empty() && a.size() - 1 >= db) {
    std::size_t shift = a.size() - 1 - db;
    Polynomial lca = a.back();
    for (auto& c : a) c *= lcb;
    for (std::size_t k = 0; k <= db; ++k) a[k + shift] -= lca * b[k];
    trim(a);
  }
  return a;
}

}  // namespace detail

inline Polynomial gcd(const Polynomial& a, const Polynomial& b);

namespace detail {

inline mpz_class max_norm(const Polynomial& p) {
  mpz_class n = 0;
  for (const auto& t : p.terms()) {
    mpz_class a = abs(t.coeff.get_num());
    if (a > n) n = a;
  }
  return n;
}

inline mpz_class integer_content(const Polynomial& p) {
  mpz_class c = 0;
  for (const auto& t : p.terms()) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), t.coeff.get_num_mpz_t());
  return c;
}

/// p with `var` replaced by xi.
inline Polynomial eval_at(const Polynomial& p, std::size_t var, const mpz_class& xi) {
  std::vector<mpz_class> powers{1};
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    unsigned e = t.mono.exp[var];
    while (powers.size() <= e) powers.push_back(powers.back() * xi);
    Monomial m = t.mono;
    m.exp[var] = 0;
    out.push_back({m, t.coeff * powers[e]});
  }
  return Polynomial::from_terms(p.registry(), std::move(out));
}

/// Inverse of eval_at on integer polynomials with small coefficients:
/// symmetric xi-adic digits of every coefficient become powers of var.
inline Polynomial interpolate(const Polynomial& h, std::size_t var, const mpz_class& xi) {
  const mpz_class half = xi / 2;
  std::vector<Term> out;
  for (const auto& t : h.terms()) {
    mpz_class c = t.coeff.get_num();
    for (std::uint16_t k = 0; c != 0; ++k) {
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
      if (r > half) r -= xi;
      if (r != 0) {
        Monomial m = t.mono;
        m.exp[var] = k;
        out.push_back({m, mpq_class(r)});
      }
      c = (c - r) / xi;
    }
  }
  return Polynomial::from_terms(h.registry(), std::move(out));
}

/// Heuristic GCD of integer polynomials, content included; nullopt when
/// six evaluation points fail.
inline std::optional<Polynomial> heuristic_gcd(const Polynomial& a, const Polynomial& b) {
  const RegistryPtr reg = common_registry(a.registry(), b.registry());
  mpz_class ca = integer_content(a), cb = integer_content(b), cg;
  mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  const unsigned sup = a.support() | b.support();
  if (a.is_constant() || b.is_constant()) return Polynomial(mpq_class(cg)).with_registry(reg);
  const Polynomial f = a.scaled(mpq_class(1, 1) / mpq_class(ca)), g = b.scaled(mpq_class(1, 1) / mpq_class(cb));
  std::size_t var = 0;
  for (std::size_t v = 0; v < kMaxVars; ++v)
    if ((sup >> v) & 1u) var = v;
  const unsigned dmin = std::min(f.degree(var), g.degree(var));
  mpz_class xi = 2 * std::min(max_norm(f), max_norm(g)) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    Polynomial ff = eval_at(f, var, xi), gg = eval_at(g, var, xi);
    if (!ff.is_zero() && !gg.is_zero()) {
      auto h = heuristic_gcd(ff, gg);
      if (!h) return std::nullopt;
      Polynomial cand = interpolate(*h, var, xi);
      if (!cand.is_zero()) {
        cand = cand.primitive();
        if (cand.degree(var) <= dmin && divide_exact(f, cand) && divide_exact(g, cand))
          return cand.scaled(mpq_class(cg)).with_registry(reg);
      }
    }
    mpz_class r4 = sqrt(sqrt(xi));
    xi = xi * 73794 * r4 / 27011;
  }
  return std::nullopt;
}

}  // namespace detail

namespace detail {

inline Polynomial content_in(const std::vector<Polynomial>& coeffs) {
  Polynomial c;
  for (const auto& k : coeffs) {
    if (k.is_zero()) continue;
    c = c.is_zero() ? k.primitive() : gcd(c, k);
    if (c.is_constant()) break;
  }
  return c;
}

inline Polynomial prs_gcd(Polynomial a, Polynomial b);

/// gcd of two primitive integer polynomials free of monomial factors.
inline Polynomial gcd_core(Polynomial a, Polynomial b) {
  const RegistryPtr reg = common_registry(a.registry(), b.registry());
  const Polynomial one = Polynomial(1).with_registry(reg);
  if (a.is_constant() || b.is_constant()) return one;
  if (a == b) return a;
  if (b.size() > a.size()) std::swap(a, b);
  if (divide_exact(a, b)) return b;
  if (auto h = heuristic_gcd(a, b)) return h->primitive().with_registry(reg);
  return prs_gcd(std::move(a), std::move(b));
}

/// Primitive polynomial remainder sequence in the variable of lowest degree.
inline Polynomial prs_gcd(Polynomial a, Polynomial b) {
  const RegistryPtr reg = common_registry(a.registry(), b.registry());
  const Polynomial one = Polynomial(1).with_registry(reg);
  if (a.is_constant() || b.is_constant()) return one;
  unsigned sa = a.support(), sb = b.support();
  if (sa != sb) {
    // A variable present in only one argument can only enter the gcd
    // through that argument's content with respect to it.
    for (std::size_t v = 0; v < kMaxVars; ++v) {
      unsigned bit = 1u << v;
      if ((sa & bit) && !(sb & bit)) return gcd(content_in(coefficients_in(a, v)), b);
      if ((sb & bit) && !(sa & bit)) return gcd(a, content_in(coefficients_in(b, v)));
    }
  }

  std::size_t var = kMaxVars;
  unsigned best = ~0u;
  for (std::size_t v = 0; v < kMaxVars; ++v) {
    if (!((sa >> v) & 1u)) continue;
    unsigned d = std::max(a.degree(v), b.degree(v));
    if (d < best) {
      best = d;
      var = v;
    }
  }

  auto ca = coefficients_in(a, var);
  auto cb = coefficients_in(b, var);
  Polynomial conta = content_in(ca), contb = content_in(cb);
  Polynomial cont = gcd(conta, contb);
  if (!conta.is_constant())
    for (auto& k : ca) k = divide_or_throw(k, conta);
  if (!contb.is_constant())
    for (auto& k : cb) k = divide_or_throw(k, contb);
  if (ca.size() < cb.size()) std::swap(ca, cb);

  std::vector<Polynomial> g;
  while (true) {
    auto r = pseudo_remainder(ca, cb);
    if (r.empty()) {
      g = std::move(cb);
      break;
    }
    if (r.size() == 1) {
      g = {one};
      break;
    }
    Polynomial rc = content_in(r);
    for (auto& k : r) k = divide_or_throw(k, rc);
    ca = std::move(cb);
    cb = std::move(r);
  }
  Polynomial pp = from_coefficients(g, var, reg).primitive();
  return (cont * pp).primitive();
}

}  // namespace detail

/// Greatest common divisor, normalized to an integer primitive polynomial
/// with positive leading coefficient.  gcd(p, 0) is the normalized p.
inline Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  const RegistryPtr reg = common_registry(a.registry(), b.registry());
  if (a.is_zero()) return b.primitive().with_registry(reg);
  if (b.is_zero()) return a.primitive().with_registry(reg);
  if (a.is_constant() || b.is_constant()) return Polynomial(1).with_registry(reg);
  Monomial ma = a.min_exponents(), mb = b.min_exponents();
  Monomial m = Monomial::min(ma, mb);
  Polynomial a1 = a.unshifted(ma).primitive().with_registry(reg);
  Polynomial b1 = b.unshifted(mb).primitive().with_registry(reg);
  return detail::gcd_core(std::move(a1), std::move(b1)).shifted(m);
}

namespace detail {

/// gcd with a per-thread memo.  Denominators recur across the coefficients
/// of an operator product, so their pairwise gcds are worth remembering.
inline Polynomial cached_gcd(const Polynomial& a, const Polynomial& b) {
  thread_local std::map<std::pair<Polynomial, Polynomial>, Polynomial> memo;
  auto key = b < a ? std::make_pair(b, a) : std::make_pair(a, b);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second.with_registry(common_registry(a.registry(), b.registry()));
  Polynomial g = gcd(a, b);
  if (memo.size() > 4096) memo.clear();
  memo.emplace(std::move(key), g);
  return g;
}

/// Exact quotient with the same kind of memo, for lcm / denominator.
inline Polynomial cached_quotient(const Polynomial& a, const Polynomial& b) {
  thread_local std::map<std::pair<Polynomial, Polynomial>, Polynomial> memo;
  auto key = std::make_pair(a, b);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second.with_registry(common_registry(a.registry(), b.registry()));
  Polynomial q = divide_or_throw(a, b);
  if (memo.size() > 4096) memo.clear();
  memo.emplace(std::move(key), q);
  return q;
}

}  // namespace detail

}  // namespace bdt
