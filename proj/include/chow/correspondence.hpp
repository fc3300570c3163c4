#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "chow/cycles.hpp"
#include "chow/errors.hpp"
#include "chow/fault_injection.hpp"
#include "chow/modring.hpp"
#include "chow/split_algebra.hpp"

// Correspondences between split motives. A correspondence A -> B is a cycle
// class on A x B acting as a generalized morphism; composition is the
// general pullback / intersect / pushforward pipeline, never a hard-coded
// basis rule. Mixed targets (A -> B x C, cycles on A x B x C) appear as
// lifts along the generic-fiber pullback and compose on the left the same
// way.

namespace chow {

class Correspondence {
 public:
  Correspondence(AlgebraPtr source, std::vector<AlgebraPtr> targets,
                 CycleClass cycle)
      : source_(std::move(source)),
        targets_(std::move(targets)),
        cycle_(std::move(cycle)) {
    if (targets_.empty() || targets_.size() > 2)
      throw SpaceMismatch("a correspondence needs one or two target factors");
    std::vector<AlgebraPtr> expected{source_};
    for (const auto& t : targets_) expected.push_back(t);
    if (!(cycle_.space() == ProductSpace(expected)))
      throw SpaceMismatch("correspondence cycle lives on " +
                          cycle_.space().describe() +
                          ", not on source x target");
  }

  /// The identity correspondence: sum of x_i x x_i* in the dual-basis form.
  static Correspondence identity(const AlgebraPtr& x);

  static Correspondence zero(const AlgebraPtr& a, const AlgebraPtr& b) {
    return Correspondence(a, {b},
                          CycleClass(ProductSpace({a, b}), a->dim()));
  }

  const AlgebraPtr& source() const { return source_; }
  const std::vector<AlgebraPtr>& targets() const { return targets_; }
  const AlgebraPtr& target() const {
    if (targets_.size() != 1)
      throw SpaceMismatch("correspondence has a product target");
    return targets_[0];
  }
  const CycleClass& cycle() const { return cycle_; }
  bool has_product_target() const { return targets_.size() == 2; }
  bool is_endo() const {
    return targets_.size() == 1 && targets_[0] == source_;
  }
  bool is_zero() const { return cycle_.is_zero(); }

  friend bool operator==(const Correspondence& a, const Correspondence& b) {
    return a.source_ == b.source_ && a.targets_ == b.targets_ &&
           a.cycle_ == b.cycle_;
  }

 private:
  AlgebraPtr source_;
  std::vector<AlgebraPtr> targets_;
  CycleClass cycle_;
};

/// Composition "second after first": `first` is applied first. In the
/// dual-basis matrix form this is matrix(first) * matrix(second).
inline Correspondence compose(const Correspondence& first,
                              const Correspondence& second) {
  const Correspondence* u = &first;
  const Correspondence* v = &second;
  if (testing::faults().swap_composition_order) std::swap(u, v);
  if (u->has_product_target())
    throw SpaceMismatch("the first leg of a composition must have a single target");
  if (u->target() != v->source())
    throw SpaceMismatch("composition mismatch: target " + u->target()->name() +
                        " vs source " + v->source()->name());
  // u x 1_C on A x B x C..., then 1_A x v, intersect, push out B
  CycleClass t1 = u->cycle();
  for (const auto& c : v->targets())
    t1 = projection_pullback(t1, t1.space().arity(), c);
  CycleClass t2 = projection_pullback(v->cycle(), 0, u->source());
  CycleClass pushed = projection_pushforward(intersect(t1, t2), 1);
  return Correspondence(u->source(), v->targets(), std::move(pushed));
}

/// Left composition with an endomorphism when the second leg has a product
/// target (the lift shape used by the descent pipeline).
inline Correspondence compose_mixed(const Correspondence& endo,
                                    const Correspondence& lift) {
  if (!lift.has_product_target())
    throw SpaceMismatch("compose_mixed expects a product-target second leg");
  return compose(endo, lift);
}

/// Transpose: swap the two tensor slots. An involution.
inline Correspondence transpose(const Correspondence& u) {
  if (u.has_product_target())
    throw SpaceMismatch("transpose is defined for single-target correspondences");
  ProductSpace flipped({u.target(), u.source()});
  CycleClass out(flipped, u.cycle().total_dim());
  for (const auto& [idx, val] : u.cycle().support())
    out.add({idx[1], idx[0]}, val);
  return Correspondence(u.target(), {u.source()}, std::move(out));
}

namespace detail {
inline CycleClass tag_if_homogeneous(CycleClass c, std::size_t d) {
  for (const auto& [idx, v] : c.support()) {
    (void)v;
    if (c.space().dim_of(idx) != d) return c;
  }
  return c.with_total_dim(d);
}
}  // namespace detail

/// Coefficients of an endomorphism in the x_i x x_j* basis: the matrix P
/// with cycle = sum_ij P_ij (x_i x x_j*). With T the raw tensor and G the
/// Gram matrix, P = T G; the change of basis is exact both ways.
inline Matrix matrix_form(const Correspondence& p) {
  if (!p.is_endo())
    throw SpaceMismatch("matrix form is defined for endomorphisms only");
  const AlgebraPtr& x = p.source();
  const std::size_t n = x->rank();
  x->dual_basis();  // force the DegeneratePairing check
  Matrix t(n, n, x->modulus());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t.set(a, b, p.cycle().at({a, b}));
  return t * x->gram();
}

/// Inverse change of basis: endomorphism with prescribed dual-basis matrix.
inline Correspondence from_matrix(const AlgebraPtr& x, const Matrix& p) {
  const std::size_t n = x->rank();
  if (p.rows() != n || p.cols() != n)
    throw SpaceMismatch("matrix size does not match the algebra rank");
  Matrix t = p * x->dual_basis().transposed();
  CycleClass c{ProductSpace({x, x})};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) c.set({a, b}, t.at(a, b));
  return Correspondence(x, {x},
                        detail::tag_if_homogeneous(std::move(c), x->dim()));
}

inline Correspondence Correspondence::identity(const AlgebraPtr& x) {
  return from_matrix(x, Matrix::identity(x->rank(), x->modulus()));
}

/// x_i x x_j* as a correspondence X -> X.
inline Correspondence dual_basis_unit(const AlgebraPtr& x, std::size_t i,
                                      std::size_t j) {
  Matrix p(x->rank(), x->rank(), x->modulus());
  p.set(i, j, Scalar::one(x->modulus()));
  return from_matrix(x, p);
}

struct CdminReport {
  std::size_t value = 0;
  /// (i, j) pairs of the nonzero dual-basis coefficients achieving the minimum.
  std::vector<std::pair<std::size_t, std::size_t>> support;
};

/// Least first-slot codimension dim(X) - phi(i) over the nonzero entries of
/// the dual-basis matrix. Undefined (ZeroProjector) for the zero map.
inline CdminReport cdmin(const Correspondence& p) {
  Matrix m = matrix_form(p);
  const AlgebraPtr& x = p.source();
  bool any = false;
  std::size_t best = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m.at(i, j).is_zero()) continue;
      std::size_t c = x->codim(i);
      if (!any || c < best) best = c;
      any = true;
    }
  if (!any) throw ZeroProjector();
  CdminReport out;
  out.value = best;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m.at(i, j).is_zero() && x->codim(i) == best)
        out.support.push_back({i, j});
  return out;
}

/// Smallest n >= 1 such that the n-th composition power is idempotent,
/// together with that idempotent. Exists because End(M(X)) is finite; a
/// nilpotent input yields the zero idempotent, which callers must check.
inline std::pair<std::uint64_t, Correspondence> idempotent_power(
    const Correspondence& e) {
  if (!e.is_endo())
    throw SpaceMismatch("idempotent powers require an endomorphism");
  const Matrix base = matrix_form(e);
  Matrix cur = base;
  // |Lambda|^(rank^2) bounds the subsemigroup generated by one element;
  // saturate rather than overflow.
  std::uint64_t bound = 1;
  const std::uint64_t m = e.source()->modulus().value();
  const std::size_t cells = e.source()->rank() * e.source()->rank();
  for (std::size_t i = 0; i < cells; ++i) {
    if (bound > (~0ULL) / m) {
      bound = ~0ULL;
      break;
    }
    bound *= m;
  }
  for (std::uint64_t n = 1;; ++n) {
    if (cur * cur == cur) return {n, from_matrix(e.source(), cur)};
    if (n >= bound)
      throw Error("no idempotent power within the finiteness bound");
    cur = cur * base;
  }
}

/// True iff p is a projector: p after p equals p through the cycle engine,
/// cross-checked against the matrix identity P*P = P. The two routes must
/// agree; disagreement would mean the calculus itself is broken.
inline bool verify_projector(const Correspondence& p) {
  if (!p.is_endo()) return false;
  bool via_engine = compose(p, p) == p;
  Matrix m = matrix_form(p);
  bool via_matrix = m * m == m;
  if (via_engine != via_matrix)
    throw Error("projector checks disagree between cycle engine and matrix form");
  return via_engine;
}

}  // namespace chow
