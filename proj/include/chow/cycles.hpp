#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chow/errors.hpp"
#include "chow/fault_injection.hpp"
#include "chow/split_algebra.hpp"

// Cycle classes on products of split varieties, held as dense multi-index
// coefficient tensors (one basis index per factor). The operations here are
// the raw material of correspondence composition: external products,
// pullback and pushforward along projections, factorwise intersection, the
// generic-fiber pullback and the diagonal pullback.

namespace chow {

class ProductSpace {
 public:
  explicit ProductSpace(std::vector<AlgebraPtr> factors)
      : factors_(std::move(factors)) {
    if (factors_.empty()) throw SpaceMismatch("a product space needs at least one factor");
    for (const auto& f : factors_)
      if (!(f->modulus() == factors_[0]->modulus()))
        throw ModulusMismatch(factors_[0]->modulus().value(),
                              f->modulus().value());
  }

  std::size_t arity() const { return factors_.size(); }
  const AlgebraPtr& factor(std::size_t i) const { return factors_[i]; }
  const std::vector<AlgebraPtr>& factors() const { return factors_; }
  Modulus modulus() const { return factors_[0]->modulus(); }

  std::size_t entry_count() const {
    std::size_t n = 1;
    for (const auto& f : factors_) n *= f->rank();
    return n;
  }

  /// Sum of the variety dimensions of the factors.
  std::size_t ambient_dim() const {
    std::size_t d = 0;
    for (const auto& f : factors_) d += f->dim();
    return d;
  }

  std::size_t flatten(const std::vector<std::size_t>& idx) const {
    if (idx.size() != arity())
      throw SpaceMismatch("index tuple arity mismatch");
    std::size_t flat = 0;
    for (std::size_t i = 0; i < arity(); ++i) {
      if (idx[i] >= factors_[i]->rank())
        throw SpaceMismatch("basis index out of range in factor " + std::to_string(i));
      flat = flat * factors_[i]->rank() + idx[i];
    }
    return flat;
  }

  std::vector<std::size_t> unflatten(std::size_t flat) const {
    std::vector<std::size_t> idx(arity());
    for (std::size_t i = arity(); i-- > 0;) {
      idx[i] = flat % factors_[i]->rank();
      flat /= factors_[i]->rank();
    }
    return idx;
  }

  /// Total dimension (sum of phi) of one basis tensor.
  std::size_t dim_of(const std::vector<std::size_t>& idx) const {
    std::size_t d = 0;
    for (std::size_t i = 0; i < arity(); ++i) d += factors_[i]->phi(idx[i]);
    return d;
  }

  /// Factors are compared by identity: the same algebra object, not a copy.
  friend bool operator==(const ProductSpace& a, const ProductSpace& b) {
    return a.factors_ == b.factors_;
  }

  std::string describe() const {
    std::string s;
    for (std::size_t i = 0; i < arity(); ++i) {
      if (i) s += " x ";
      s += factors_[i]->name();
    }
    return s;
  }

 private:
  std::vector<AlgebraPtr> factors_;
};

class CycleClass {
 public:
  explicit CycleClass(ProductSpace space,
                      std::optional<std::size_t> total_dim = std::nullopt)
      : space_(std::move(space)),
        coeffs_(space_.entry_count(), Scalar::zero(space_.modulus())),
        total_dim_(total_dim) {}

  static CycleClass basis(const ProductSpace& space,
                          const std::vector<std::size_t>& idx) {
    CycleClass c(space, space.dim_of(idx));
    c.coeffs_[space.flatten(idx)] = Scalar::one(space.modulus());
    return c;
  }

  const ProductSpace& space() const { return space_; }
  Modulus modulus() const { return space_.modulus(); }
  std::optional<std::size_t> total_dim() const { return total_dim_; }

  Scalar at(const std::vector<std::size_t>& idx) const {
    return coeffs_[space_.flatten(idx)];
  }
  Scalar at_flat(std::size_t flat) const { return coeffs_[flat]; }

  void set(const std::vector<std::size_t>& idx, const Scalar& v) {
    if (total_dim_ && !v.is_zero() && space_.dim_of(idx) != *total_dim_)
      throw SpaceMismatch("coefficient breaks the declared homogeneous dimension");
    coeffs_[space_.flatten(idx)] = v;
  }
  void add(const std::vector<std::size_t>& idx, const Scalar& v) {
    set(idx, at(idx) + v);
  }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!c.is_zero()) return false;
    return true;
  }

  /// Indices carrying a nonzero coefficient, in flat order.
  std::vector<std::pair<std::vector<std::size_t>, Scalar>> support() const {
    std::vector<std::pair<std::vector<std::size_t>, Scalar>> out;
    for (std::size_t f = 0; f < coeffs_.size(); ++f)
      if (!coeffs_[f].is_zero()) out.push_back({space_.unflatten(f), coeffs_[f]});
    return out;
  }

  /// Re-tag with a homogeneity claim, verifying it against the support.
  CycleClass with_total_dim(std::optional<std::size_t> d) const {
    if (d)
      for (const auto& [idx, v] : support())
        if (space_.dim_of(idx) != *d)
          throw SpaceMismatch("cycle is not homogeneous of dimension " +
                              std::to_string(*d));
    CycleClass c = *this;
    c.total_dim_ = d;
    return c;
  }

  CycleClass operator+(const CycleClass& o) const {
    require_same_space(o);
    CycleClass r(space_, total_dim_ == o.total_dim_ ? total_dim_ : std::nullopt);
    for (std::size_t f = 0; f < coeffs_.size(); ++f)
      r.coeffs_[f] = coeffs_[f] + o.coeffs_[f];
    return r;
  }
  CycleClass operator-(const CycleClass& o) const {
    require_same_space(o);
    CycleClass r(space_, total_dim_ == o.total_dim_ ? total_dim_ : std::nullopt);
    for (std::size_t f = 0; f < coeffs_.size(); ++f)
      r.coeffs_[f] = coeffs_[f] - o.coeffs_[f];
    return r;
  }
  CycleClass scaled(const Scalar& s) const {
    CycleClass r(space_, total_dim_);
    for (std::size_t f = 0; f < coeffs_.size(); ++f) r.coeffs_[f] = coeffs_[f] * s;
    return r;
  }

  /// Equality is coefficientwise on the same space; homogeneity tags are
  /// bookkeeping and do not participate.
  friend bool operator==(const CycleClass& a, const CycleClass& b) {
    return a.space_ == b.space_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void require_same_space(const CycleClass& o) const {
    if (!(space_ == o.space_))
      throw SpaceMismatch("cycle spaces differ: " + space_.describe() + " vs " +
                          o.space_.describe());
  }

  ProductSpace space_;
  std::vector<Scalar> coeffs_;
  std::optional<std::size_t> total_dim_;
};

/// Outer product: coefficients multiply, spaces concatenate.
inline CycleClass external_product(const CycleClass& a, const CycleClass& b) {
  if (!(a.modulus() == b.modulus()))
    throw ModulusMismatch(a.modulus().value(), b.modulus().value());
  std::vector<AlgebraPtr> factors = a.space().factors();
  for (const auto& f : b.space().factors()) factors.push_back(f);
  std::optional<std::size_t> dim;
  if (a.total_dim() && b.total_dim()) dim = *a.total_dim() + *b.total_dim();
  CycleClass out{ProductSpace(std::move(factors)), dim};
  for (const auto& [ia, va] : a.support())
    for (const auto& [ib, vb] : b.support()) {
      std::vector<std::size_t> idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      out.add(idx, va * vb);
    }
  return out;
}

/// Pullback along the projection that forgets one factor: inserts the
/// fundamental class of the new factor at `position` (alpha -> alpha x 1).
inline CycleClass projection_pullback(const CycleClass& c, std::size_t position,
                                      const AlgebraPtr& inserted) {
  if (position > c.space().arity())
    throw SpaceMismatch("pullback insertion position out of range");
  std::vector<AlgebraPtr> factors = c.space().factors();
  factors.insert(factors.begin() + static_cast<std::ptrdiff_t>(position), inserted);
  std::optional<std::size_t> dim;
  if (c.total_dim()) dim = *c.total_dim() + inserted->dim();
  CycleClass out{ProductSpace(std::move(factors)), dim};
  const std::size_t unit = inserted->unit_index();
  for (const auto& [idx, v] : c.support()) {
    std::vector<std::size_t> j = idx;
    j.insert(j.begin() + static_cast<std::ptrdiff_t>(position), unit);
    out.add(j, v);
  }
  return out;
}

/// Pushforward along the projection dropping one factor: contracts the
/// dropped index against that factor's degree functional. Components of
/// positive dimension in the dropped slot die.
inline CycleClass projection_pushforward(const CycleClass& c, std::size_t position) {
  if (position >= c.space().arity())
    throw SpaceMismatch("pushforward drop position out of range");
  if (c.space().arity() == 1)
    throw SpaceMismatch("cannot push a single-factor cycle to an empty space");
  const AlgebraPtr& dropped = c.space().factor(position);
  std::vector<AlgebraPtr> factors = c.space().factors();
  factors.erase(factors.begin() + static_cast<std::ptrdiff_t>(position));
  CycleClass out{ProductSpace(std::move(factors)), c.total_dim()};
  const bool fault = testing::faults().pushforward_ignores_degree;
  for (const auto& [idx, v] : c.support()) {
    Scalar w = fault ? Scalar::one(c.modulus())
                     : dropped->degree_of_basis(idx[position]);
    if (w.is_zero()) continue;
    std::vector<std::size_t> j = idx;
    j.erase(j.begin() + static_cast<std::ptrdiff_t>(position));
    out.add(j, v * w);
  }
  return out;
}

/// Factorwise intersection product, extended multilinearly through each
/// factor's multiplication table.
inline CycleClass intersect(const CycleClass& a, const CycleClass& b) {
  if (!(a.space() == b.space()))
    throw SpaceMismatch("intersection needs one common product space");
  const std::size_t arity = a.space().arity();
  std::optional<std::size_t> dim;
  if (a.total_dim() && b.total_dim()) {
    std::size_t ambient = a.space().ambient_dim();
    std::size_t sum = *a.total_dim() + *b.total_dim();
    if (sum < ambient) {
      // empty graded piece: the product vanishes identically
      return CycleClass(a.space(), std::nullopt);
    }
    dim = sum - ambient;
  }
  CycleClass out{a.space(), dim};
  auto sa = a.support();
  auto sb = b.support();
  std::vector<std::size_t> idx(arity);
  for (const auto& [ia, va] : sa)
    for (const auto& [ib, vb] : sb) {
      // odometer over the sparse table rows of every factor
      std::vector<std::size_t> choice(arity, 0);
      for (;;) {
        Scalar coeff = va * vb;
        bool dead = false;
        for (std::size_t f = 0; f < arity && !dead; ++f) {
          const auto& row = a.space().factor(f)->product(ia[f], ib[f]);
          if (choice[f] >= row.size()) {
            dead = true;
            break;
          }
          idx[f] = row[choice[f]].first;
          coeff *= row[choice[f]].second;
        }
        if (!dead) out.add(idx, coeff);
        // advance the odometer over table rows
        std::size_t f = 0;
        for (; f < arity; ++f) {
          const auto& row = a.space().factor(f)->product(ia[f], ib[f]);
          if (row.empty()) {
            f = arity;
            break;
          }
          if (++choice[f] < row.size()) break;
          choice[f] = 0;
        }
        if (f == arity) break;
      }
    }
  return out;
}

namespace detail {
inline void require_sandwich(const CycleClass& c, const char* what) {
  if (c.space().arity() != 3)
    throw SpaceMismatch(std::string(what) + " needs a three-factor cycle");
  if (c.space().factor(0) != c.space().factor(2))
    throw SpaceMismatch(std::string(what) +
                        " needs equal first and third factors");
}
}  // namespace detail

/// Generic-fiber pullback on X x Y x X: keeps components whose third index
/// is the fundamental class and forgets that factor; components whose third
/// slot has positive codimension vanish.
inline CycleClass epsilon_pullback(const CycleClass& c) {
  detail::require_sandwich(c, "epsilon pullback");
  const AlgebraPtr& x = c.space().factor(2);
  std::size_t unit = x->unit_index();
  if (testing::faults().epsilon_wrong_slot) unit = (unit + 1) % x->rank();
  ProductSpace target({c.space().factor(0), c.space().factor(1)});
  std::optional<std::size_t> dim;
  if (c.total_dim() && *c.total_dim() >= x->dim()) dim = *c.total_dim() - x->dim();
  CycleClass out{target, dim};
  for (const auto& [idx, v] : c.support())
    if (idx[2] == unit) out.add({idx[0], idx[1]}, v);
  return out;
}

/// Diagonal pullback on X x Y x X: (alpha x beta x gamma) -> (alpha.gamma) x beta.
inline CycleClass diagonal_pullback(const CycleClass& c) {
  detail::require_sandwich(c, "diagonal pullback");
  const AlgebraPtr& x = c.space().factor(0);
  ProductSpace target({x, c.space().factor(1)});
  std::optional<std::size_t> dim;
  if (c.total_dim() && *c.total_dim() >= x->dim()) dim = *c.total_dim() - x->dim();
  const bool fault = testing::faults().diagonal_skips_intersection;
  CycleClass out{target, dim};
  for (const auto& [idx, v] : c.support()) {
    if (fault) {
      out.add({idx[0], idx[1]}, v);
      continue;
    }
    for (const auto& [k, w] : x->product(idx[0], idx[2]))
      out.add({k, idx[1]}, v * w);
  }
  return out;
}

}  // namespace chow
