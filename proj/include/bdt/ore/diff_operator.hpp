#pragma once

/**
 * @file diff_operator.hpp
 * @brief Partial differential operators with rational-function coefficients.
 *
 * An operator is a finite sum  sum_a c_a(x) D^a  with coefficients written to
 * the left of derivative monomials.  Composition moves every D^a past the
 * right factor's coefficient with the multinomial Leibniz rule
 *   D^a o c = sum_{g <= a} binom(a, g) (D^g c) D^(a-g).
 */

#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bdt/core/rational_function.hpp"

namespace bdt {

/// Order of the zero operator; compares below every real order.
inline constexpr int kZeroOrder = std::numeric_limits<int>::min();

/// Caps enforced on operator products while a ScopedResourceLimits is alive.
struct ResourceLimits {
  int max_order = 16;
  std::size_t max_terms = 200000;
};

namespace detail {
inline const ResourceLimits*& active_limits_slot() {
  thread_local const ResourceLimits* slot = nullptr;
  return slot;
}
}  // namespace detail

inline const ResourceLimits* active_limits() { return detail::active_limits_slot(); }

class ScopedResourceLimits {
 public:
  explicit ScopedResourceLimits(ResourceLimits limits) : limits_(limits), previous_(detail::active_limits_slot()) {
    detail::active_limits_slot() = &limits_;
  }
  ~ScopedResourceLimits() { detail::active_limits_slot() = previous_; }
  ScopedResourceLimits(const ScopedResourceLimits&) = delete;
  ScopedResourceLimits& operator=(const ScopedResourceLimits&) = delete;

 private:
  ResourceLimits limits_;
  const ResourceLimits* previous_;
};

class DiffOperator {
 public:
  using TermMap = std::map<Monomial, RationalFunction, GrlexDescending>;

  DiffOperator() = default;
  DiffOperator(RegistryPtr reg, Block block) : reg_(std::move(reg)), block_(block) {}

  static DiffOperator function(RegistryPtr reg, Block block, const RationalFunction& f) {
    DiffOperator op(std::move(reg), block);
    if (!f.is_zero()) op.terms_.emplace(Monomial{}, f.with_registry(op.reg_));
    return op;
  }

  static DiffOperator identity(RegistryPtr reg, Block block) {
    return function(std::move(reg), block, RationalFunction(1));
  }

  /// D[var]^power for a block-local variable index.
  static DiffOperator derivative(RegistryPtr reg, Block block, std::size_t local, unsigned power = 1) {
    DiffOperator op(std::move(reg), block);
    if (local >= op.reg_->block_size(block)) throw Error("derivative index out of range");
    op.terms_.emplace(Monomial::unit(local, power), RationalFunction(Polynomial(1).with_registry(op.reg_)));
    return op;
  }

  static DiffOperator from_terms(RegistryPtr reg, Block block, TermMap terms) {
    DiffOperator op(std::move(reg), block);
    for (auto& [m, c] : terms)
      if (!c.is_zero()) op.terms_.emplace(m, std::move(c));
    return op;
  }

  const RegistryPtr& registry() const noexcept { return reg_; }
  Block block() const noexcept { return block_; }
  const TermMap& terms() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }

  /// Maximal total derivative degree; kZeroOrder for the zero operator.
  int order() const noexcept {
    return terms_.empty() ? kZeroOrder : static_cast<int>(terms_.begin()->first.total_degree());
  }

  /// True for multiplication operators (order <= 0).
  bool is_function() const noexcept { return order() <= 0; }

  RationalFunction function_part() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? RationalFunction(Polynomial{}.with_registry(reg_)) : it->second;
  }

  RationalFunction coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? RationalFunction(Polynomial{}.with_registry(reg_)) : it->second;
  }

  /// Largest power of D[pivot] (block-local index) occurring.
  unsigned degree_in(std::size_t local) const noexcept {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max<unsigned>(d, m.exp[local]);
    return d;
  }

  std::size_t term_count() const noexcept {
    std::size_t n = 0;
    for (const auto& [m, c] : terms_) n += c.num().size() + c.den().size();
    return n;
  }

  /// Registry index of the i-th block variable.
  std::size_t global_index(std::size_t local) const { return reg_->global_index(block_, local); }
  std::size_t block_size() const { return reg_ ? reg_->block_size(block_) : 0; }

  DiffOperator operator-() const {
    DiffOperator r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  friend DiffOperator operator+(const DiffOperator& a, const DiffOperator& b) {
    DiffOperator r = a.combine_header(b);
    r.terms_ = a.terms_;
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
  }

  friend DiffOperator operator-(const DiffOperator& a, const DiffOperator& b) { return a + (-b); }

  DiffOperator& operator+=(const DiffOperator& o) { return *this = *this + o; }
  DiffOperator& operator-=(const DiffOperator& o) { return *this = *this - o; }

  /// Left multiplication by a function: f * sum c_a D^a = sum (f c_a) D^a.
  DiffOperator left_scaled(const RationalFunction& f) const {
    DiffOperator r(common_registry(reg_, f.registry()), block_);
    if (f.is_zero()) return r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, f * c);
    return r;
  }

  friend DiffOperator operator*(const DiffOperator& a, const DiffOperator& b);

  DiffOperator& operator*=(const DiffOperator& o) { return *this = *this * o; }

  DiffOperator pow(unsigned n) const {
    DiffOperator r = identity(reg_, block_);
    for (unsigned i = 0; i < n; ++i) r = r * *this;
    return r;
  }

  friend bool operator==(const DiffOperator& a, const DiffOperator& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    if (a.terms_.empty()) return true;
    if (a.block_ != b.block_ && !(a.is_function() && b.is_function())) return false;
    auto it = b.terms_.begin();
    for (const auto& [m, c] : a.terms_) {
      if (!(m == it->first) || !(c == it->second)) return false;
      ++it;
    }
    return true;
  }

  /// Letters D[var]; coefficient written to the left of each derivative monomial.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      RationalFunction coeff = c;
      bool negative = coeff.leading_negative();
      if (negative) coeff = -coeff;
      if (first) {
        if (negative) os << "-";
      } else {
        os << (negative ? " - " : " + ");
      }
      first = false;
      std::string dpart = derivative_string(m);
      if (dpart.empty()) {
        std::string cs = coeff.to_string();
        if (negative && coeff.den().is_one() && coeff.num().size() > 1) cs = "(" + cs + ")";
        os << cs;
        continue;
      }
      if (!coeff.is_one()) {
        std::string cs = coeff.to_string();
        if (coeff.den().is_one() && coeff.num().size() > 1) cs = "(" + cs + ")";
        os << cs << "*";
      }
      os << dpart;
    }
    return os.str();
  }

  std::string derivative_string(const Monomial& m) const {
    std::string out;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      if (!m.exp[i]) continue;
      if (!out.empty()) out += "*";
      out += "D[" + reg_->name(reg_->global_index(block_, i)) + "]";
      if (m.exp[i] > 1) out += "^" + std::to_string(m.exp[i]);
    }
    return out;
  }

 private:
  DiffOperator combine_header(const DiffOperator& other) const {
    RegistryPtr reg = common_registry(reg_, other.reg_);
    Block blk = block_;
    if (block_ != other.block_) {
      // Multiplication operators carry no meaningful block.
      if (other.is_function()) blk = block_;
      else if (is_function()) blk = other.block_;
      else throw BlockMismatch();
    }
    return DiffOperator(std::move(reg), blk);
  }

  void add_term(const Monomial& m, const RationalFunction& c) {
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  RegistryPtr reg_;
  Block block_ = Block::x;
  TermMap terms_;
};

namespace detail {

/// prod_i binom(a_i, g_i)
inline mpz_class multinomial_binomial(const Monomial& a, const Monomial& g) {
  mpz_class r = 1, b;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (!g.exp[i] || g.exp[i] == a.exp[i]) continue;
    mpz_bin_uiui(b.get_mpz_t(), a.exp[i], g.exp[i]);
    r *= b;
  }
  return r;
}

/// Lazily computed mixed partials D^g f of one coefficient.
class DerivativeCache {
 public:
  DerivativeCache(RationalFunction f, const DiffOperator& shape) : shape_(shape) { cache_.emplace(Monomial{}, std::move(f)); }

  const RationalFunction& get(const Monomial& g) {
    auto it = cache_.find(g);
    if (it != cache_.end()) return it->second;
    std::size_t i = 0;
    while (!g.exp[i]) ++i;
    Monomial prev = g;
    --prev.exp[i];
    RationalFunction d = get(prev).derive(shape_.global_index(i));
    return cache_.emplace(g, std::move(d)).first->second;
  }

 private:
  const DiffOperator& shape_;
  std::map<Monomial, RationalFunction, GrlexDescending> cache_;
};

/// Calls fn(g) for every multi-index g <= a over the first n components.
template <class Fn>
void for_each_submonomial(const Monomial& a, std::size_t n, Fn&& fn) {
  Monomial g;
  while (true) {
    fn(g);
    std::size_t i = 0;
    while (i < n && g.exp[i] == a.exp[i]) {
      g.exp[i] = 0;
      ++i;
    }
    if (i == n) return;
    ++g.exp[i];
  }
}

/// Collects unreduced products num/den per denominator so that each output
/// coefficient is canonicalized once per distinct denominator.
class CoefficientAccumulator {
 public:
  void add(const Polynomial& num, const Polynomial& den) {
    auto [it, inserted] = groups_.try_emplace(den, num);
    if (!inserted) it->second += num;
  }

  /// Sum over the lcm of the denominators, reduced once.
  RationalFunction result(const RegistryPtr& reg) const {
    const Polynomial* first = nullptr;
    Polynomial lcm;
    for (const auto& [den, num] : groups_) {
      if (num.is_zero()) continue;
      if (!first) {
        first = &den;
        lcm = den;
        continue;
      }
      Polynomial g = cached_gcd(lcm, den);
      lcm = lcm * (g.is_constant() ? den : cached_quotient(den, g));
    }
    if (!first) return RationalFunction(Polynomial{}.with_registry(reg));
    Polynomial total = Polynomial{}.with_registry(reg);
    for (const auto& [den, num] : groups_) {
      if (num.is_zero()) continue;
      total += den == lcm ? num : num * cached_quotient(lcm, den);
    }
    if (total.is_zero()) return RationalFunction(Polynomial{}.with_registry(reg));
    return RationalFunction::fraction(total, lcm).with_registry(reg);
  }

 private:
  std::map<Polynomial, Polynomial> groups_;
};

inline void check_limits(int order, const DiffOperator* result) {
  const ResourceLimits* lim = active_limits();
  if (!lim) return;
  if (order > lim->max_order)
    throw ResourceLimitExceeded("operator order " + std::to_string(order) + " exceeds the limit " +
                                std::to_string(lim->max_order));
  if (result && result->term_count() > lim->max_terms)
    throw ResourceLimitExceeded("operator term count " + std::to_string(result->term_count()) +
                                " exceeds the limit " + std::to_string(lim->max_terms));
}

}  // namespace detail

/// Composition a o b.
inline DiffOperator operator*(const DiffOperator& a, const DiffOperator& b) {
  RegistryPtr reg = common_registry(a.registry(), b.registry());
  Block blk = a.block();
  if (a.block() != b.block()) {
    if (b.is_function()) blk = a.block();
    else if (a.is_function()) blk = b.block();
    else throw BlockMismatch();
  }
  DiffOperator shape(reg, blk);
  if (a.is_zero() || b.is_zero()) return shape;
  detail::check_limits(a.order() + b.order(), nullptr);

  const std::size_t n = reg ? reg->block_size(blk) : 0;
  std::map<Monomial, detail::CoefficientAccumulator, GrlexDescending> acc;
  for (const auto& [beta, cb] : b.terms()) {
    detail::DerivativeCache derivs(cb, shape);
    for (const auto& [alpha, ca] : a.terms()) {
      detail::for_each_submonomial(alpha, n, [&](const Monomial& g) {
        const RationalFunction& d = derivs.get(g);
        if (d.is_zero()) return;
        mpz_class k = detail::multinomial_binomial(alpha, g);
        Polynomial num = ca.num() * d.num();
        if (k != 1) num = num.scaled(mpq_class(k));
        acc[(alpha / g) * beta].add(num, ca.den() * d.den());
      });
    }
  }
  DiffOperator::TermMap terms;
  for (auto& [m, c] : acc) {
    RationalFunction coeff = c.result(reg);
    if (!coeff.is_zero()) terms.emplace(m, std::move(coeff));
  }
  DiffOperator r = DiffOperator::from_terms(reg, blk, std::move(terms));
  detail::check_limits(r.order(), &r);
  return r;
}

/// Order of an operator; kZeroOrder for zero.
inline int order(const DiffOperator& a) { return a.order(); }

/// [a, b] = a o b - b o a.
inline DiffOperator commutator(const DiffOperator& a, const DiffOperator& b) { return a * b - b * a; }

/// ad_a^j(b) with ad_a(b) = a o b - b o a and ad_a^0(b) = b.
inline DiffOperator ad_pow(const DiffOperator& a, const DiffOperator& b, unsigned j) {
  DiffOperator r = b;
  for (unsigned i = 0; i < j && !r.is_zero(); ++i) r = commutator(a, r);
  return r;
}

/// Action of an operator on a function.
inline RationalFunction apply(const DiffOperator& a, const RationalFunction& phi) {
  RegistryPtr reg = common_registry(a.registry(), phi.registry());
  DiffOperator shape(reg, a.block());
  detail::DerivativeCache derivs(phi, shape);
  RationalFunction out(Polynomial{}.with_registry(reg));
  for (const auto& [alpha, c] : a.terms()) {
    const RationalFunction& d = derivs.get(alpha);
    if (!d.is_zero()) out += c * d;
  }
  return out;
}

/// g o a o g^{-1}.
inline DiffOperator conjugate_by_function(const RationalFunction& g, const DiffOperator& a) {
  if (g.is_zero()) throw DivisionByZero("conjugation by the zero function");
  RegistryPtr reg = common_registry(a.registry(), g.registry());
  return DiffOperator::function(reg, a.block(), g) * a * DiffOperator::function(reg, a.block(), g.inverse());
}

}  // namespace bdt
