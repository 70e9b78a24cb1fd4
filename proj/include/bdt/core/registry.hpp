#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bdt/core/errors.hpp"

namespace bdt {

/// Maximum number of symbols (x, z and parameters together) a registry may hold.
inline constexpr std::size_t kMaxVars = 16;

/// The two variable blocks operators can act on: the base space X (x) and
/// the dual space X' (z).
enum class Block { x, z };

inline const char* block_name(Block b) { return b == Block::x ? "x" : "z"; }
inline Block opposite(Block b) { return b == Block::x ? Block::z : Block::x; }

enum class VarKind { x, z, param };

/// Ordered, immutable list of symbol names.  Global indices are laid out as
/// x-variables, then z-variables, then parameters.
class VariableRegistry {
 public:
  static std::shared_ptr<const VariableRegistry> create(std::vector<std::string> x_vars,
                                                        std::vector<std::string> z_vars,
                                                        std::vector<std::string> params = {}) {
    return std::shared_ptr<const VariableRegistry>(
        new VariableRegistry(std::move(x_vars), std::move(z_vars), std::move(params)));
  }

  std::size_t size() const noexcept { return names_.size(); }
  std::size_t x_count() const noexcept { return x_count_; }
  std::size_t z_count() const noexcept { return z_count_; }
  std::size_t param_count() const noexcept { return names_.size() - x_count_ - z_count_; }

  std::size_t block_size(Block b) const noexcept { return b == Block::x ? x_count_ : z_count_; }
  std::size_t block_offset(Block b) const noexcept { return b == Block::x ? 0 : x_count_; }
  std::size_t global_index(Block b, std::size_t local) const {
    if (local >= block_size(b)) throw Error("block-local variable index out of range");
    return block_offset(b) + local;
  }

  const std::string& name(std::size_t index) const { return names_.at(index); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<std::size_t> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  VarKind kind(std::size_t index) const {
    if (index < x_count_) return VarKind::x;
    if (index < x_count_ + z_count_) return VarKind::z;
    if (index < names_.size()) return VarKind::param;
    throw Error("variable index out of range");
  }

  bool is_param(std::size_t index) const { return kind(index) == VarKind::param; }

  /// Block of an x- or z-variable; parameters have none.
  std::optional<Block> block_of(std::size_t index) const {
    switch (kind(index)) {
      case VarKind::x: return Block::x;
      case VarKind::z: return Block::z;
      default: return std::nullopt;
    }
  }

  std::size_t local_index(std::size_t index) const {
    auto b = block_of(index);
    if (!b) throw Error("parameter '" + name(index) + "' has no block index");
    return index - block_offset(*b);
  }

  /// x_i <-> z_i, when both blocks have the same size.
  std::optional<std::size_t> partner(std::size_t index) const {
    if (x_count_ != z_count_) return std::nullopt;
    switch (kind(index)) {
      case VarKind::x: return index + x_count_;
      case VarKind::z: return index - x_count_;
      default: return std::nullopt;
    }
  }

  bool exchangeable() const noexcept { return x_count_ == z_count_; }

  /// A registry with the same layout plus extra trailing parameters; indices
  /// of existing symbols are unchanged.
  std::shared_ptr<const VariableRegistry> extended(const std::vector<std::string>& extra) const {
    std::vector<std::string> x(names_.begin(), names_.begin() + x_count_);
    std::vector<std::string> z(names_.begin() + x_count_, names_.begin() + x_count_ + z_count_);
    std::vector<std::string> p(names_.begin() + x_count_ + z_count_, names_.end());
    p.insert(p.end(), extra.begin(), extra.end());
    return create(std::move(x), std::move(z), std::move(p));
  }

  bool same_layout(const VariableRegistry& other) const {
    return x_count_ == other.x_count_ && z_count_ == other.z_count_ && names_ == other.names_;
  }

 private:
  VariableRegistry(std::vector<std::string> x_vars, std::vector<std::string> z_vars,
                   std::vector<std::string> params)
      : x_count_(x_vars.size()), z_count_(z_vars.size()) {
    names_.reserve(x_vars.size() + z_vars.size() + params.size());
    for (auto* group : {&x_vars, &z_vars, &params})
      for (auto& n : *group) names_.push_back(std::move(n));
    if (names_.size() > kMaxVars)
      throw ValidationError("at most " + std::to_string(kMaxVars) + " symbols are supported");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      const auto& n = names_[i];
      if (n.empty()) throw ValidationError("empty variable name");
      if (n == "D") throw ValidationError("'D' is reserved for derivative letters");
      if (!index_.emplace(n, i).second) throw ValidationError("duplicate variable name '" + n + "'");
    }
  }

  std::size_t x_count_;
  std::size_t z_count_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

using RegistryPtr = std::shared_ptr<const VariableRegistry>;

/// Registry shared by two operands; a null registry (pure constants) is
/// compatible with everything.
inline RegistryPtr common_registry(const RegistryPtr& a, const RegistryPtr& b) {
  if (!a) return b;
  if (!b || a == b) return a;
  if (a->same_layout(*b)) return a;
  throw RegistryMismatch();
}

}  // namespace bdt
