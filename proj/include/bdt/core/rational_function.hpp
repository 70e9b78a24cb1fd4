#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bdt/core/gcd.hpp"
#include "bdt/core/polynomial.hpp"

namespace bdt {

/// Exact rational function num/den over Q(params)(x, z).
///
/// Always canonical: num and den are coprime, both have integer
/// coefficients whose combined content is 1, and the leading coefficient
/// of den is positive.  Two values are equal iff their fields are equal.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(long c) : RationalFunction(Polynomial(c)) {}              // NOLINT
  RationalFunction(const mpq_class& c) : RationalFunction(Polynomial(c)) {}  // NOLINT
  RationalFunction(const Polynomial& p) {                                    // NOLINT
    *this = normalized(p, Polynomial(1).with_registry(p.registry()));
  }

  /// num/den reduced to canonical form.
  static RationalFunction fraction(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw DivisionByZero("zero denominator");
    RegistryPtr reg = common_registry(num.registry(), den.registry());
    if (num.is_zero()) return RationalFunction(Polynomial{}.with_registry(reg));
    Polynomial g = gcd(num, den);
    if (g.is_constant()) return normalized(num.with_registry(reg), den.with_registry(reg));
    return normalized(divide_or_throw(num, g).with_registry(reg), divide_or_throw(den, g).with_registry(reg));
  }

  static RationalFunction variable(const RegistryPtr& reg, std::size_t index) {
    return RationalFunction(Polynomial::variable(reg, index));
  }

  const Polynomial& num() const noexcept { return num_; }
  const Polynomial& den() const noexcept { return den_; }
  RegistryPtr registry() const { return common_registry(num_.registry(), den_.registry()); }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_one() const noexcept { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const noexcept { return den_.is_constant(); }
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }

  mpq_class constant_value() const {
    if (!is_constant()) throw Error("rational function is not constant");
    return num_.constant_value() / den_.constant_value();
  }

  /// Numerator divided by the (constant) denominator.
  Polynomial as_polynomial() const {
    if (!is_polynomial()) throw Error("rational function is not a polynomial");
    return num_.scaled(1 / den_.constant_value());
  }

  unsigned support() const noexcept { return num_.support() | den_.support(); }

  RationalFunction operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return b.with_reg(common_registry(a.registry(), b.registry()));
    if (b.is_zero()) return a.with_reg(common_registry(a.registry(), b.registry()));
    if (a.den_.is_constant() && b.den_.is_constant()) {
      return normalized(a.num_.scaled(b.den_.constant_value()) + b.num_.scaled(a.den_.constant_value()),
                        a.den_ * b.den_);
    }
    if (a.den_ == b.den_) return fraction(a.num_ + b.num_, a.den_);
    // Henrici: only the common part of the denominators can cancel.
    Polynomial g = detail::cached_gcd(a.den_, b.den_);
    if (g.is_constant()) return normalized(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    Polynomial ad = divide_or_throw(a.den_, g);
    Polynomial bd = divide_or_throw(b.den_, g);
    Polynomial t = a.num_ * bd + b.num_ * ad;
    if (t.is_zero()) return RationalFunction(Polynomial{}.with_registry(t.registry()));
    Polynomial h = gcd(t, g);
    if (h.is_constant()) return normalized(t, ad * b.den_);
    return normalized(divide_or_throw(t, h), ad * divide_or_throw(b.den_, h));
  }

  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    RegistryPtr reg = common_registry(a.registry(), b.registry());
    if (a.is_zero() || b.is_zero()) return RationalFunction(Polynomial{}.with_registry(reg));
    Polynomial an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
    cancel(an, bd);
    cancel(bn, ad);
    return normalized(an * bn, ad * bd);
  }

  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }

  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }

  RationalFunction inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    return normalized(den_, num_);
  }

  RationalFunction pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    return normalized(num_.pow(static_cast<unsigned>(n)), den_.pow(static_cast<unsigned>(n)));
  }

  /// Partial derivative in an x- or z-variable.
  RationalFunction derive(std::size_t var) const {
    RegistryPtr reg = registry();
    if (reg && var < reg->size() && reg->is_param(var))
      throw Error("cannot differentiate with respect to parameter '" + reg->name(var) + "'");
    if (var >= kMaxVars) throw Error("variable index out of range");
    Polynomial dn = num_.derive(var);
    Polynomial dd = den_.derive(var);
    if (dd.is_zero()) return fraction(dn, den_);
    // (n/d)' = (n'd - nd')/d^2; gcd(d, d') is the only cancellation from d^2.
    Polynomial h = detail::cached_gcd(den_, dd);
    Polynomial dh = divide_or_throw(den_, h);
    Polynomial t = dn * dh - num_ * divide_or_throw(dd, h);
    return fraction(t, den_ * dh);
  }

  /// Symbol renaming, see Polynomial::permuted.
  RationalFunction permuted(const std::array<std::size_t, kMaxVars>& perm) const {
    return fraction(num_.permuted(perm), den_.permuted(perm));
  }

  RationalFunction with_registry(RegistryPtr reg) const {
    RationalFunction r = *this;
    r.num_ = r.num_.with_registry(reg);
    r.den_ = r.den_.with_registry(std::move(reg));
    return r;
  }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  friend bool operator<(const RationalFunction& a, const RationalFunction& b) {
    if (a.num_ < b.num_) return true;
    if (b.num_ < a.num_) return false;
    return a.den_ < b.den_;
  }

  /// True when the printed numerator starts with a minus sign.
  bool leading_negative() const { return !num_.is_zero() && num_.leading_coefficient() < 0; }

  std::string to_string() const {
    if (den_.is_one()) return num_.to_string();
    std::string n = num_.to_string();
    if (num_.size() > 1) n = "(" + n + ")";
    std::string d = den_.to_string();
    bool bare = den_.is_monomial() && (den_.is_constant() || (den_.leading_coefficient() == 1 &&
                                                              den_.leading_term().mono.total_degree() ==
                                                                  max_exponent(den_.leading_term().mono)));
    if (!bare) d = "(" + d + ")";
    return n + "/" + d;
  }

 private:
  static unsigned max_exponent(const Monomial& m) {
    unsigned e = 0;
    for (auto x : m.exp) e = std::max<unsigned>(e, x);
    return e;
  }

  RationalFunction with_reg(const RegistryPtr& reg) const { return with_registry(reg); }

  /// Removes gcd(n, d) from both.
  static void cancel(Polynomial& n, Polynomial& d) {
    if (d.is_constant() || n.is_constant()) return;
    Polynomial g = gcd(n, d);
    if (g.is_constant()) return;
    n = divide_or_throw(n, g);
    d = divide_or_throw(d, g);
  }

  /// Content and sign normalization of an already coprime pair.
  static RationalFunction normalized(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw DivisionByZero("zero denominator");
    RegistryPtr reg = common_registry(num.registry(), den.registry());
    RationalFunction r;
    if (num.is_zero()) {
      r.num_ = Polynomial{}.with_registry(reg);
      r.den_ = Polynomial(1).with_registry(reg);
      return r;
    }
    mpq_class ratio = num.content() / den.content();
    int sign = sgn(num.leading_coefficient()) * sgn(den.leading_coefficient());
    Polynomial pn = num.primitive(), pd = den.primitive();
    mpq_class numf(ratio.get_num()), denf(ratio.get_den());
    if (sign < 0) numf = -numf;
    r.num_ = (numf == 1 ? pn : pn.scaled(numf)).with_registry(reg);
    r.den_ = (denf == 1 ? pd : pd.scaled(denf)).with_registry(reg);
    return r;
  }

  Polynomial num_;
  Polynomial den_;
};

/// Substitutes values for symbols; unassigned symbols stay symbolic.
/// Throws DivisionByZero naming the denominator when it vanishes.
inline RationalFunction substitute(const RationalFunction& f,
                                   const std::map<std::size_t, RationalFunction>& assignment) {
  auto eval = [&](const Polynomial& p) {
    std::map<std::pair<std::size_t, unsigned>, RationalFunction> powers;
    RationalFunction acc(Polynomial{}.with_registry(p.registry()));
    for (const auto& t : p.terms()) {
      Monomial rest = t.mono;
      RationalFunction term(t.coeff);
      for (const auto& [var, value] : assignment) {
        unsigned e = rest.exp[var];
        if (!e) continue;
        rest.exp[var] = 0;
        auto key = std::make_pair(var, e);
        auto it = powers.find(key);
        if (it == powers.end()) it = powers.emplace(key, value.pow(e)).first;
        term *= it->second;
      }
      if (term.is_zero()) continue;
      term *= RationalFunction(Polynomial::monomial(p.registry(), rest, 1));
      acc += term;
    }
    return acc;
  };
  RationalFunction n = eval(f.num());
  RationalFunction d = eval(f.den());
  if (d.is_zero()) throw DivisionByZero("denominator vanishes: " + f.den().to_string());
  return n / d;
}

}  // namespace bdt
