#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bdt/core/errors.hpp"
#include "bdt/core/monomial.hpp"
#include "bdt/core/registry.hpp"

namespace bdt {

struct Term {
  Monomial mono;
  mpq_class coeff;
};

/// Sparse multivariate polynomial over Q in the symbols of a registry.
///
/// Terms are kept sorted by descending graded-lex order and never hold a zero
/// coefficient, so equality is term-by-term.  A polynomial without a registry
/// is a constant and combines with any registry.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(long c) : Polynomial(mpq_class(c)) {}  // NOLINT(google-explicit-constructor)
  Polynomial(const mpq_class& c) {                  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_.push_back({Monomial{}, c});
  }

  static Polynomial variable(RegistryPtr reg, std::size_t index) {
    if (!reg || index >= reg->size()) throw Error("variable index out of range");
    Polynomial p;
    p.reg_ = std::move(reg);
    p.terms_.push_back({Monomial::unit(index), mpq_class(1)});
    return p;
  }

  static Polynomial monomial(RegistryPtr reg, const Monomial& m, const mpq_class& c) {
    Polynomial p;
    p.reg_ = std::move(reg);
    if (c != 0) p.terms_.push_back({m, c});
    return p;
  }

  /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
  static Polynomial from_terms(RegistryPtr reg, std::vector<Term> terms) {
    Polynomial p;
    p.reg_ = std::move(reg);
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return grlex_compare(a.mono, b.mono) > 0; });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
        p.terms_.back().coeff += t.coeff;
      } else {
        if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
        p.terms_.push_back(std::move(t));
      }
    }
    if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
    return p;
  }

  const RegistryPtr& registry() const noexcept { return reg_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
  }
  bool is_one() const noexcept {
    return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff == 1;
  }
  bool is_monomial() const noexcept { return terms_.size() == 1; }

  /// Value of a constant polynomial (0 for the zero polynomial).
  mpq_class constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw Error("polynomial is not constant");
    return terms_[0].coeff;
  }

  /// Constant coefficient (coefficient of the unit monomial).
  mpq_class constant_term() const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
    return 0;
  }

  const Term& leading_term() const {
    if (terms_.empty()) throw Error("zero polynomial has no leading term");
    return terms_.front();
  }
  const mpq_class& leading_coefficient() const { return leading_term().coeff; }

  unsigned degree(std::size_t var) const noexcept {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max<unsigned>(d, t.mono.exp[var]);
    return d;
  }

  unsigned total_degree() const noexcept { return terms_.empty() ? 0 : terms_.front().mono.total_degree(); }

  /// Smallest exponent of every symbol over all terms (the monomial content).
  Monomial min_exponents() const {
    if (terms_.empty()) return {};
    Monomial m = terms_[0].mono;
    for (const auto& t : terms_) m = Monomial::min(m, t.mono);
    return m;
  }

  /// Bit i set iff symbol i occurs.
  unsigned support() const noexcept {
    unsigned mask = 0;
    for (const auto& t : terms_)
      for (std::size_t i = 0; i < kMaxVars; ++i)
        if (t.mono.exp[i]) mask |= 1u << i;
    return mask;
  }

  bool depends_on(std::size_t var) const noexcept { return (support() >> var) & 1u; }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    RegistryPtr reg = common_registry(a.reg_, b.reg_);
    if (a.is_zero() || b.is_zero()) return with_reg(Polynomial{}, reg);
    if (a.terms_.size() == 1) return b.mul_term(a.terms_[0], reg);
    if (b.terms_.size() == 1) return a.mul_term(b.terms_[0], reg);
    std::unordered_map<Monomial, mpq_class, MonomialHash> acc;
    acc.reserve(a.terms_.size() * b.terms_.size());
    mpq_class prod;
    for (const auto& ta : a.terms_)
      for (const auto& tb : b.terms_) {
        prod = ta.coeff * tb.coeff;
        auto [it, inserted] = acc.try_emplace(ta.mono * tb.mono, prod);
        if (!inserted) it->second += prod;
      }
    Polynomial r;
    r.reg_ = reg;
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c != 0) r.terms_.push_back({m, std::move(c)});
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const Term& x, const Term& y) { return grlex_compare(x.mono, y.mono) > 0; });
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial scaled(const mpq_class& c) const {
    if (c == 0) return with_reg(Polynomial{}, reg_);
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
  }

  /// Multiplies by a power product; order is preserved since grlex is a
  /// monomial order.
  Polynomial shifted(const Monomial& m) const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.mono = t.mono * m;
    return r;
  }

  /// Divides every term by a monomial that divides all of them.
  Polynomial unshifted(const Monomial& m) const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.mono = t.mono / m;
    return r;
  }

  Polynomial pow(unsigned n) const {
    Polynomial result = with_reg(Polynomial(1), reg_);
    Polynomial base = *this;
    while (n) {
      if (n & 1u) result *= base;
      n >>= 1;
      if (n) base *= base;
    }
    return result;
  }

  Polynomial derive(std::size_t var) const {
    Polynomial r;
    r.reg_ = reg_;
    for (const auto& t : terms_) {
      unsigned e = t.mono.exp[var];
      if (e == 0) continue;
      Monomial m = t.mono;
      m.exp[var] = static_cast<std::uint16_t>(e - 1);
      r.terms_.push_back({m, t.coeff * e});
    }
    // Lowering the same exponent in every surviving term keeps grlex order.
    return r;
  }

  /// Renames symbols: symbol i becomes symbol perm[i].
  Polynomial permuted(const std::array<std::size_t, kMaxVars>& perm) const {
    std::vector<Term> ts;
    ts.reserve(terms_.size());
    for (const auto& t : terms_) {
      Monomial m;
      for (std::size_t i = 0; i < kMaxVars; ++i)
        if (t.mono.exp[i]) m.exp[perm[i]] = t.mono.exp[i];
      ts.push_back({m, t.coeff});
    }
    return from_terms(reg_, std::move(ts));
  }

  /// Re-tags the polynomial with a registry sharing its index layout for
  /// every symbol that occurs.
  Polynomial with_registry(RegistryPtr reg) const {
    if (reg) {
      unsigned sup = support();
      for (std::size_t i = 0; i < kMaxVars; ++i)
        if (((sup >> i) & 1u) && i >= reg->size()) throw RegistryMismatch();
    }
    Polynomial r = *this;
    r.reg_ = std::move(reg);
    return r;
  }

  /// Positive rational c with *this = c * p, p having coprime integer
  /// coefficients.  Zero for the zero polynomial.
  mpq_class content() const {
    if (terms_.empty()) return 0;
    mpz_class num = 0, den = 1;
    for (const auto& t : terms_) {
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coeff.get_num_mpz_t());
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
    }
    mpq_class c(num, den);
    c.canonicalize();
    return c;
  }

  /// Integer primitive part with positive leading coefficient.
  Polynomial primitive() const {
    if (terms_.empty()) return *this;
    mpq_class c = content();
    if (terms_.front().coeff < 0) c = -c;
    if (c == 1) return *this;
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff /= c;
    return r;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
  }

  /// Total order for use as a map key; not a mathematical order.
  friend bool operator<(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size();
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      int c = grlex_compare(a.terms_[i].mono, b.terms_[i].mono);
      if (c != 0) return c < 0;
      int d = cmp(a.terms_[i].coeff, b.terms_[i].coeff);
      if (d != 0) return d < 0;
    }
    return false;
  }

  /// `x1^2*x2 - 3*s`; rational coefficients print as `1/2*x1`.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
      mpq_class c = t.coeff;
      if (first) {
        if (c < 0) {
          os << "-";
          c = -c;
        }
      } else {
        os << (c < 0 ? " - " : " + ");
        if (c < 0) c = -c;
      }
      first = false;
      std::string mono = monomial_string(t.mono);
      if (mono.empty()) {
        os << c.get_str();
      } else {
        if (c != 1) os << c.get_str() << "*";
        os << mono;
      }
    }
    return os.str();
  }

  std::string monomial_string(const Monomial& m) const {
    std::string out;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      if (!m.exp[i]) continue;
      if (!out.empty()) out += "*";
      out += reg_ ? reg_->name(i) : ("v" + std::to_string(i));
      if (m.exp[i] > 1) out += "^" + std::to_string(m.exp[i]);
    }
    return out;
  }

 private:
  static Polynomial with_reg(Polynomial p, RegistryPtr reg) {
    p.reg_ = std::move(reg);
    return p;
  }

  Polynomial mul_term(const Term& t, const RegistryPtr& reg) const {
    Polynomial r;
    r.reg_ = reg;
    r.terms_.reserve(terms_.size());
    for (const auto& s : terms_) r.terms_.push_back({s.mono * t.mono, s.coeff * t.coeff});
    return r;
  }

  static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
    Polynomial r;
    r.reg_ = common_registry(a.reg_, b.reg_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      int c;
      if (i == a.terms_.size()) c = -1;
      else if (j == b.terms_.size()) c = 1;
      else c = grlex_compare(a.terms_[i].mono, b.terms_[j].mono);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        const Term& t = b.terms_[j++];
        r.terms_.push_back({t.mono, subtract ? mpq_class(-t.coeff) : t.coeff});
      } else {
        mpq_class s = subtract ? mpq_class(a.terms_[i].coeff - b.terms_[j].coeff)
                               : mpq_class(a.terms_[i].coeff + b.terms_[j].coeff);
        if (s != 0) r.terms_.push_back({a.terms_[i].mono, std::move(s)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  RegistryPtr reg_;
  std::vector<Term> terms_;
};

}  // namespace bdt
