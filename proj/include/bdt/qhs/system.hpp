#pragma once

/**
 * @file system.hpp
 * @brief Quantum Hamiltonian systems and their certificates.
 *
 * A system lists spectral generators: a polynomial on Lambda and the
 * commuting operator it is sent to.  Lambda coordinates are the variables of
 * the opposite block (the dual space covers Lambda), so an x-block system
 * has spectral polynomials in z.
 */

#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "bdt/ore/diff_operator.hpp"

namespace bdt {

struct SpectralGenerator {
  std::string name;
  Polynomial spectral;
  DiffOperator image;
};

struct QuantumSystem {
  std::string name;
  RegistryPtr registry;
  Block block = Block::x;
  std::vector<SpectralGenerator> generators;
  /// Denominators admitted by localization.
  std::vector<Polynomial> localizers;

  const SpectralGenerator* find(const std::string& gen) const {
    for (const auto& g : generators)
      if (g.name == gen) return &g;
    return nullptr;
  }
};

/// S_g: same generators, g appended to the localizers.
inline QuantumSystem localize(QuantumSystem s, const Polynomial& g) {
  if (g.is_zero()) throw ValidationError("cannot localize by the zero polynomial");
  if (g.is_constant()) return s;
  s.localizers.push_back(g.primitive().with_registry(s.registry));
  return s;
}

struct CommutativityReport {
  bool ok = true;
  /// First failing pair (0-based generator indices) and its commutator.
  std::optional<std::pair<std::size_t, std::size_t>> failing;
  std::optional<DiffOperator> defect;
};

inline CommutativityReport check_commutativity(const QuantumSystem& s) {
  const auto& g = s.generators;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      DiffOperator c = commutator(g[i].image, g[j].image);
      if (!c.is_zero()) return {false, std::make_pair(i, j), c};
    }
  return {};
}

namespace detail {

inline mpq_class evaluate(const Polynomial& p, const std::vector<mpq_class>& point) {
  mpq_class sum = 0;
  for (const auto& t : p.terms()) {
    mpq_class term = t.coeff;
    for (std::size_t v = 0; v < kMaxVars; ++v)
      for (unsigned k = 0; k < t.mono.exp[v]; ++k) term *= point.at(v);
    sum += term;
  }
  return sum;
}

inline std::size_t rank(std::vector<std::vector<mpq_class>> m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      mpq_class f = m[i][c] / m[r][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    ++r;
  }
  return r;
}

}  // namespace detail

/// Generic rank of the Jacobian of the spectral polynomials with respect to
/// the Lambda coordinates, at random integer points in [2, 97] (parameters
/// sampled too).  Three points are tried and the largest rank is kept.
inline std::size_t spectral_dimension(const QuantumSystem& s, std::mt19937_64& rng) {
  const auto& reg = s.registry;
  const Block lam = opposite(s.block);
  std::vector<std::vector<Polynomial>> jac;
  for (const auto& g : s.generators) {
    std::vector<Polynomial> row;
    for (std::size_t i = 0; i < reg->block_size(lam); ++i) row.push_back(g.spectral.derive(reg->global_index(lam, i)));
    jac.push_back(std::move(row));
  }
  std::uniform_int_distribution<int> coord(2, 97);
  std::size_t best = 0;
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::vector<mpq_class> point(kMaxVars, mpq_class(0));
    for (std::size_t v = 0; v < reg->size(); ++v) point[v] = coord(rng);
    std::vector<std::vector<mpq_class>> m;
    for (const auto& row : jac) {
      std::vector<mpq_class> r;
      for (const auto& p : row) r.push_back(detail::evaluate(p, point));
      m.push_back(std::move(r));
    }
    best = std::max(best, detail::rank(std::move(m)));
  }
  return best;
}

inline std::size_t spectral_dimension(const QuantumSystem& s, std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  return spectral_dimension(s, rng);
}

/// True when `den` divides a product of powers of the localizers.
inline bool denominator_confined(const Polynomial& den, const std::vector<Polynomial>& localizers) {
  Polynomial d = den;
  for (const auto& l : localizers) {
    if (d.is_constant()) break;
    if (l.is_constant()) continue;
    while (!d.is_constant()) {
      Polynomial h = gcd(d, l);
      if (h.is_constant()) break;
      d = divide_or_throw(d, h);
    }
  }
  return d.is_constant();
}

struct ConfinementReport {
  bool ok = true;
  std::string offender;  ///< "generator: denominator" of the first failure
};

inline ConfinementReport check_denominators(const QuantumSystem& s) {
  for (const auto& g : s.generators)
    for (const auto& [m, c] : g.image.terms())
      if (!denominator_confined(c.den(), s.localizers)) return {false, g.name + ": " + c.den().to_string()};
  return {};
}

}  // namespace bdt
