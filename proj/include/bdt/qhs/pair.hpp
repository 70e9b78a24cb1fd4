#pragma once

/**
 * @file pair.hpp
 * @brief Bispectral pairs: two systems, their generator table and a shared
 * eigenfunction.
 *
 * The table is read off the systems.  A primal generator `e` (image L_e on
 * the x side, spectral polynomial in z) becomes the entry
 * { e, L_e, e', multiplication by pi(e) }; a dual generator `d` becomes
 * { d, multiplication by its spectral polynomial in x, d', L'_d }.
 */

#include <string>
#include <utility>
#include <vector>

#include "bdt/algebra/generator_table.hpp"
#include "bdt/qhs/system.hpp"
#include "bdt/wave/wavefunction.hpp"

namespace bdt {

struct BispectralPair {
  std::string name;
  QuantumSystem primal;
  QuantumSystem dual;
  GeneratorTable table;
  WaveFunction psi;
  /// Base registry extended by every generator name, used to read f and g.
  RegistryPtr letter_registry;

  const RegistryPtr& registry() const { return primal.registry; }

  /// (letter_registry index, letter) of the primal and the dual generators.
  std::vector<std::pair<std::size_t, std::string>> primal_letters() const { return letters(primal); }
  std::vector<std::pair<std::size_t, std::string>> dual_letters() const { return letters(dual); }

  /// Spectral polynomial of a primal (in z) or dual (in x) letter.
  const Polynomial& spectral_of(const std::string& letter) const {
    if (auto* g = primal.find(letter)) return g->spectral;
    if (auto* g = dual.find(letter)) return g->spectral;
    throw Error("unknown generator '" + letter + "'");
  }

 private:
  std::vector<std::pair<std::size_t, std::string>> letters(const QuantumSystem& s) const {
    std::vector<std::pair<std::size_t, std::string>> out;
    for (const auto& g : s.generators) out.emplace_back(*letter_registry->find(g.name), g.name);
    return out;
  }
};

inline std::string dual_letter(const std::string& name) { return name + "'"; }

inline GeneratorTable table_from_systems(const QuantumSystem& primal, const QuantumSystem& dual) {
  const auto& reg = primal.registry;
  GeneratorTable t;
  for (const auto& g : primal.generators)
    t.add({g.name, g.image, dual_letter(g.name),
           DiffOperator::function(reg, Block::z, RationalFunction(g.spectral.with_registry(reg)))});
  for (const auto& g : dual.generators)
    t.add({g.name, DiffOperator::function(reg, Block::x, RationalFunction(g.spectral.with_registry(reg))),
           dual_letter(g.name), g.image});
  return t;
}

/// Name of the first table entry failing L psi = b(L) psi, if any.
inline std::optional<std::string> first_inconsistent_entry(const GeneratorTable& t, const WaveFunction& psi) {
  for (const auto& e : t.entries())
    if (!(apply_operator(e.x_realization, psi) == apply_operator(e.z_realization, psi))) return e.name;
  return std::nullopt;
}

namespace detail {

inline void check_spectral_block(const QuantumSystem& s) {
  const auto& reg = s.registry;
  for (const auto& g : s.generators) {
    if (!g.image.is_function() && g.image.block() != s.block)
      throw ValidationError("generator '" + g.name + "' of system '" + s.name + "' acts on the wrong block");
    unsigned sup = g.spectral.support();
    for (std::size_t i = 0; i < reg->block_size(s.block); ++i)
      if ((sup >> reg->global_index(s.block, i)) & 1u)
        throw ValidationError("spectral polynomial of '" + g.name + "' must be written in " +
                              block_name(opposite(s.block)) + "-variables");
  }
}

}  // namespace detail

/// Builds and validates a pair; throws ValidationError on any inconsistency.
inline BispectralPair make_pair(std::string name, QuantumSystem primal, QuantumSystem dual, WaveFunction psi) {
  if (primal.block != Block::x) throw ValidationError("the primal system of a pair must act on the x-block");
  if (dual.block != Block::z) throw ValidationError("the dual system of a pair must act on the z-block");
  common_registry(primal.registry, dual.registry);
  if (psi.basis()->registry() != primal.registry && !psi.basis()->registry()->same_layout(*primal.registry))
    throw ValidationError("wavefunction kernel uses a different variable registry");
  detail::check_spectral_block(primal);
  detail::check_spectral_block(dual);

  BispectralPair p;
  p.name = std::move(name);
  p.table = table_from_systems(primal, dual);
  if (auto bad = first_inconsistent_entry(p.table, psi))
    throw ValidationError("pair '" + p.name + "': generator '" + *bad + "' fails the wavefunction check L psi = b(L) psi");
  std::vector<std::string> names;
  for (const auto* s : {&primal, &dual})
    for (const auto& g : s->generators) names.push_back(g.name);
  p.letter_registry = primal.registry->extended(names);
  p.primal = std::move(primal);
  p.dual = std::move(dual);
  p.psi = std::move(psi);
  return p;
}

}  // namespace bdt
