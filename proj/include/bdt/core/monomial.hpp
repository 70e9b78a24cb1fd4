#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>

#include "bdt/core/errors.hpp"
#include "bdt/core/registry.hpp"

namespace bdt {

/// Dense exponent vector.  Used both for power products of registry symbols
/// and for derivative multi-indices of a block.
struct Monomial {
  std::array<std::uint16_t, kMaxVars> exp{};

  static Monomial unit(std::size_t index, unsigned power = 1) {
    Monomial m;
    m.exp[index] = static_cast<std::uint16_t>(power);
    return m;
  }

  unsigned total_degree() const noexcept {
    unsigned d = 0;
    for (auto e : exp) d += e;
    return d;
  }

  bool is_one() const noexcept {
    return std::all_of(exp.begin(), exp.end(), [](auto e) { return e == 0; });
  }

  unsigned operator[](std::size_t i) const noexcept { return exp[i]; }

  bool divides(const Monomial& other) const noexcept {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exp[i] > other.exp[i]) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      unsigned s = unsigned(a.exp[i]) + b.exp[i];
      if (s > 0xFFFFu) throw Error("exponent overflow");
      r.exp[i] = static_cast<std::uint16_t>(s);
    }
    return r;
  }

  /// Requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = static_cast<std::uint16_t>(a.exp[i] - b.exp[i]);
    return r;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;

  static Monomial min(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = std::min(a.exp[i], b.exp[i]);
    return r;
  }
};

/// Graded-lexicographic comparison with registry order: total degree first,
/// then the first differing exponent decides (earlier symbols weigh more).
/// Returns <0, 0, >0.
inline int grlex_compare(const Monomial& a, const Monomial& b) noexcept {
  unsigned da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i] ? -1 : 1;
  return 0;
}

/// Strict weak ordering placing grlex-larger monomials first.
struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept {
    return grlex_compare(a, b) > 0;
  }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto e : m.exp) {
      h ^= e;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace bdt
