#pragma once

#include <random>
#include <string>
#include <vector>

#include "bdt.hpp"

namespace bdt {

// gtest printers
inline void PrintTo(const Polynomial& p, std::ostream* os) { *os << p.to_string(); }
inline void PrintTo(const RationalFunction& f, std::ostream* os) { *os << f.to_string(); }
inline void PrintTo(const DiffOperator& d, std::ostream* os) { *os << d.to_string(); }

}  // namespace bdt

namespace bdt::test {

inline RegistryPtr xz(std::vector<std::string> x, std::vector<std::string> z = {}, std::vector<std::string> params = {}) {
  return VariableRegistry::create(std::move(x), std::move(z), std::move(params));
}

inline DiffOperator op(const std::string& text, const RegistryPtr& reg, Block b = Block::x) {
  return parse_operator(text, reg, b);
}
inline RationalFunction fn(const std::string& text, const RegistryPtr& reg) { return parse_function(text, reg); }
inline Polynomial poly(const std::string& text, const RegistryPtr& reg) { return parse_polynomial(text, reg); }

/// Seeded generator of small random objects.
class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  mpq_class coefficient() {
    int n = 0;
    while (n == 0) n = integer(-5, 5);
    mpq_class q(n, integer(1, 3));
    q.canonicalize();
    return q;
  }

  /// Up to `terms` terms in the variables `vars` of total degree <= `degree`.
  Polynomial poly(const RegistryPtr& reg, const std::vector<std::size_t>& vars, unsigned degree, int terms) {
    Polynomial p = Polynomial{}.with_registry(reg);
    int k = integer(1, terms);
    for (int i = 0; i < k; ++i) {
      Monomial m{};
      unsigned left = static_cast<unsigned>(integer(0, static_cast<int>(degree)));
      for (unsigned j = 0; j < left; ++j) ++m.exp[vars[integer(0, static_cast<int>(vars.size()) - 1)]];
      p += Polynomial::monomial(reg, m, coefficient());
    }
    return p;
  }

  Polynomial nonzero_poly(const RegistryPtr& reg, const std::vector<std::size_t>& vars, unsigned degree, int terms) {
    Polynomial p;
    do p = poly(reg, vars, degree, terms);
    while (p.is_zero());
    return p;
  }

  RationalFunction rational(const RegistryPtr& reg, const std::vector<std::size_t>& vars, unsigned degree = 2) {
    Polynomial n = poly(reg, vars, degree, 3);
    if (integer(0, 2) == 0) return RationalFunction(n);
    return RationalFunction::fraction(n, nonzero_poly(reg, vars, degree, 2));
  }

  /// Random operator of order <= `order` with coefficients in `vars`.
  DiffOperator op(const RegistryPtr& reg, Block b, const std::vector<std::size_t>& vars, unsigned order,
                  bool rational = false) {
    DiffOperator d(reg, b);
    int k = integer(1, 3);
    for (int i = 0; i < k; ++i) {
      Monomial m{};
      unsigned left = static_cast<unsigned>(integer(0, static_cast<int>(order)));
      for (unsigned j = 0; j < left; ++j) ++m.exp[integer(0, static_cast<int>(reg->block_size(b)) - 1)];
      RationalFunction c = rational ? this->rational(reg, vars, 1) : RationalFunction(poly(reg, vars, 2, 2));
      DiffOperator::TermMap t;
      t.emplace(m, c);
      d += DiffOperator::from_terms(reg, b, t);
    }
    return d;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Exponential kernel E = exp(sum x_i z_i) over all x/z variables of `reg`.
inline KernelPtr exp_kernel(const RegistryPtr& reg) {
  KernelRules rules;
  for (std::size_t i = 0; i < reg->x_count(); ++i) {
    const auto& x = reg->name(i);
    const auto& z = reg->name(reg->global_index(Block::z, i));
    rules[{"E", x}] = {{"E", fn(z, reg)}};
    rules[{"E", z}] = {{"E", fn(x, reg)}};
  }
  return KernelBasis::define(reg, "exp", {"E"}, rules, true);
}

/// S_W^n with letters l_i = D[x_i] (spectral z_i) and dual letters m_i = D[z_i] (spectral x_i).
inline BispectralPair weyl_pair(const RegistryPtr& reg) {
  QuantumSystem p{"W", reg, Block::x, {}, {}}, d{"W'", reg, Block::z, {}, {}};
  for (std::size_t i = 0; i < reg->x_count(); ++i) {
    std::string k = std::to_string(i + 1);
    const auto& x = reg->name(i);
    const auto& z = reg->name(reg->global_index(Block::z, i));
    p.generators.push_back({"l" + k, poly(z, reg), op("D[" + x + "]", reg)});
    d.generators.push_back({"m" + k, poly(x, reg), op("D[" + z + "]", reg, Block::z)});
  }
  return make_pair("weyl", p, d, WaveFunction::seed(exp_kernel(reg)));
}

/// exp(x1 z1) Ai(x2 + z2) over x1, x2 / z1, z2 (plus any parameters of reg).
inline KernelPtr airy_kernel(const RegistryPtr& reg) {
  KernelRules rules;
  for (const char* a : {"A", "A1"}) {
    rules[{a, "x1"}] = {{a, fn("z1", reg)}};
    rules[{a, "z1"}] = {{a, fn("x1", reg)}};
  }
  for (const char* v : {"x2", "z2"}) {
    rules[{"A", v}] = {{"A1", fn("1", reg)}};
    rules[{"A1", v}] = {{"A", fn("x2 + z2", reg)}};
  }
  return KernelBasis::define(reg, "airy", {"A", "A1"}, rules, true);
}

inline BispectralPair airy_pair(const RegistryPtr& reg) {
  QuantumSystem p{"airy", reg, Block::x,
                  {{"l1", poly("z1", reg), op("D[x1]", reg)}, {"l2", poly("z2", reg), op("D[x2]^2 - x2", reg)}}, {}};
  QuantumSystem d{"airy'", reg, Block::z,
                  {{"m1", poly("x1", reg), op("D[z1]", reg, Block::z)},
                   {"m2", poly("x2", reg), op("D[z2]^2 - z2", reg, Block::z)}},
                  {}};
  return make_pair("airy", p, d, WaveFunction::seed(airy_kernel(reg)));
}

inline Polynomial letters(const std::string& text, const BispectralPair& p) {
  return parse_polynomial(text, p.letter_registry);
}

}  // namespace bdt::test
