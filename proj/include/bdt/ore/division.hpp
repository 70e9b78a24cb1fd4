#pragma once

#include <string>

#include "bdt/ore/diff_operator.hpp"

namespace bdt {

struct DivisionResult {
  DiffOperator quotient;
  DiffOperator remainder;
};

namespace detail {

/// Monomial order used for division: degree in D[pivot] first, then grlex
/// on the remaining letters.
struct PivotOrder {
  std::size_t pivot;
  bool less(const Monomial& x, const Monomial& y) const {
    if (x.exp[pivot] != y.exp[pivot]) return x.exp[pivot] < y.exp[pivot];
    Monomial xr = x, yr = y;
    xr.exp[pivot] = yr.exp[pivot] = 0;
    return grlex_compare(xr, yr) < 0;
  }
};

}  // namespace detail

/// Right division a = quotient o k + remainder.
///
/// `pivot` is a registry index of a variable in k's block; it selects the
/// monomial order (D[pivot]-degree, then grlex).  Every term of a whose
/// derivative monomial is a multiple of the leading monomial of k is
/// reduced, so no term of the remainder is divisible by it.  Coefficients
/// form a field, hence {k} is a Groebner basis of the left ideal D o k and
/// the remainder vanishes exactly when k right-divides a.
inline DivisionResult right_divide(const DiffOperator& a, const DiffOperator& k, std::size_t pivot) {
  if (k.is_zero()) throw DivisionByZero("right division by the zero operator");
  RegistryPtr reg = common_registry(a.registry(), k.registry());
  const Block blk = k.block();
  auto pb = reg->block_of(pivot);
  if (!pb || *pb != blk)
    throw UnsupportedDivisor("pivot '" + reg->name(pivot) + "' is not a variable of the divisor's block");
  if (!a.is_zero() && !a.is_function() && !k.is_function() && a.block() != blk) throw BlockMismatch();
  const detail::PivotOrder ord{reg->local_index(pivot)};

  auto leading = [&](const DiffOperator& op) {
    auto best = op.terms().begin();
    for (auto it = op.terms().begin(); it != op.terms().end(); ++it)
      if (ord.less(best->first, it->first)) best = it;
    return best;
  };
  const auto lead = leading(k);
  const Monomial lead_mono = lead->first;
  const RationalFunction lead_inv = lead->second.inverse();

  DiffOperator rem = a;
  DiffOperator kept(reg, blk);
  DiffOperator quot(reg, blk);
  // Terms not divisible by lead_mono move to `kept`; the rest are reduced.
  // Each step removes the current maximum and only introduces smaller terms.
  while (!rem.is_zero()) {
    auto top = leading(rem);
    DiffOperator::TermMap one;
    if (!lead_mono.divides(top->first)) {
      one.emplace(top->first, top->second);
      DiffOperator moved = DiffOperator::from_terms(reg, blk, std::move(one));
      kept += moved;
      rem -= moved;
      continue;
    }
    one.emplace(top->first / lead_mono, top->second * lead_inv);
    DiffOperator step = DiffOperator::from_terms(reg, blk, std::move(one));
    quot += step;
    rem -= step * k;
  }
  return {std::move(quot), std::move(kept)};
}

}  // namespace bdt
