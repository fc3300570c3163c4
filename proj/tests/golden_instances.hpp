#pragma once

// Hand-built descent instances shared by the unit and acceptance suites.
// Every expected outcome asserted against these was derived on paper from
// the composition rules before the engine existed; the engine is being
// checked against them, not the other way around.

#include <optional>
#include <vector>

#include "chow/descent.hpp"
#include "model_fixtures.hpp"

namespace chow::fixtures {

inline CycleClass sparse_cycle(
    const ProductSpace& space,
    const std::vector<std::pair<std::vector<std::size_t>, std::int64_t>>& entries) {
  CycleClass c(space);
  for (const auto& [idx, v] : entries)
    c.add(idx, Scalar::from_int(v, space.modulus()));
  return c;
}

/// Everything is the diagonal: X = Y = P1 over Z/5, p = f = g = identity,
/// the lift is the tautological one. All exponents are 1.
inline DescentInstance trivial_diagonal_instance() {
  auto x = projective_line(5, "X");
  DescentInstance inst{
      x,
      x,
      Correspondence::identity(x),
      Correspondence::identity(x),
      Correspondence::identity(x),
      projection_pullback(Correspondence::identity(x).cycle(), 2, x),
      std::nullopt,
      {}};
  ProductSpace xx({x, x});
  ProductSpace xyx({x, x, x});
  inst.rational.structures = {
      RationalStructure(xx, FieldLabel::F, {inst.p.cycle()}),
      RationalStructure(xx, FieldLabel::E, {inst.p.cycle()}),
      RationalStructure(xyx, FieldLabel::F, {inst.f1}),
  };
  return inst;
}

/// Rank-1 projector x0 x x0* over Z/2 split through Y = P1 by the point
/// class; the run stays exact with every exponent 1.
inline DescentInstance rank2_z2_instance() {
  auto x = projective_line(2, "X");
  auto y = projective_line(2, "Y");
  ProductSpace xy({x, y}), yx({y, x}), xx({x, x}), xyx({x, y, x});
  Correspondence p = dual_basis_unit(x, 0, 0);
  Correspondence f(x, {y}, sparse_cycle(xy, {{{0, 1}, 1}}));      // x0 x pt
  Correspondence g(y, {x}, sparse_cycle(yx, {{{0, 1}, 1}}));      // 1 x x0*
  CycleClass f1 = sparse_cycle(xyx, {{{0, 1, 0}, 1}});
  DescentInstance inst{x, y, p, f, g, f1, std::nullopt, {}};
  CycleClass point_row = sparse_cycle(xy, {{{1, 0}, 1}});         // x1 x 1
  inst.rational.structures = {
      RationalStructure(xx, FieldLabel::F, {p.cycle()}),
      RationalStructure(xx, FieldLabel::E, {p.cycle()}),
      RationalStructure(xy, FieldLabel::F, {f.cycle(), point_row}),
      RationalStructure(xy, FieldLabel::E, {f.cycle(), point_row}),
      RationalStructure(yx, FieldLabel::F, {g.cycle()}),
      RationalStructure(yx, FieldLabel::E, {g.cycle()}),
      RationalStructure(xyx, FieldLabel::F,
                        {f1, sparse_cycle(xyx, {{{1, 0, 0}, 1}})}),
  };
  return inst;
}

/// Rank-2 over Z/4 with a genuine correction pass: the lift carries a
/// doubled third-slot tail, so g after f3 is p + 2(x1 x x1*), whose square
/// is p. Expected exponents: n1 = 2, n2 = 1, nbar = 1.
inline DescentInstance rank2_z4_n2_instance() {
  auto x = projective_line(4, "X");
  auto y = projective_line(4, "Y");
  ProductSpace xy({x, y}), yx({y, x}), xx({x, x}), xyx({x, y, x});
  Correspondence p = dual_basis_unit(x, 0, 0);
  Correspondence f(x, {y}, sparse_cycle(xy, {{{0, 1}, 1}}));
  // g = 1 x x0* + pt x x1*
  Correspondence g(y, {x}, sparse_cycle(yx, {{{0, 1}, 1}, {{1, 0}, 1}}));
  CycleClass f1 = sparse_cycle(xyx, {{{0, 1, 0}, 1}, {{0, 0, 1}, 2}});
  DescentInstance inst{x, y, p, f, g, f1, std::nullopt, {}};
  CycleClass point_row = sparse_cycle(xy, {{{1, 0}, 1}});
  inst.rational.structures = {
      RationalStructure(xx, FieldLabel::F, {p.cycle()}),
      RationalStructure(xx, FieldLabel::E, {p.cycle()}),
      RationalStructure(xy, FieldLabel::F, {f.cycle(), point_row}),
      RationalStructure(xy, FieldLabel::E, {f.cycle(), point_row}),
      RationalStructure(yx, FieldLabel::F,
                        {sparse_cycle(yx, {{{0, 1}, 1}})}),
      RationalStructure(yx, FieldLabel::E,
                        {sparse_cycle(yx, {{{0, 1}, 1}}),
                         sparse_cycle(yx, {{{1, 0}, 1}})}),
      RationalStructure(xyx, FieldLabel::F,
                        {f1, sparse_cycle(xyx, {{{1, 0, 0}, 1}}),
                         sparse_cycle(xyx, {{{0, 1, 0}, 1}})}),
  };
  return inst;
}

/// Y is the self-product of the projective line (rank 4, dimension 2) over
/// Z/3; p is the full diagonal of X, split through Y by complementary
/// classes. Exercises a product-algebra target end to end.
inline DescentInstance kunneth_y_instance() {
  auto x = projective_line(3, "X");
  auto y = kunneth(projective_line(3, "P"), projective_line(3, "Q"));
  ProductSpace xy({x, y}), yx({y, x}), xx({x, x}), xyx({x, y, x});
  Correspondence p = Correspondence::identity(x);
  // f = x0 x (pt x pt) + x1 x (1 x pt); g = (1 x 1) x x0* + (pt x 1) x x1*
  Correspondence f(x, {y}, sparse_cycle(xy, {{{0, 3}, 1}, {{1, 1}, 1}}));
  Correspondence g(y, {x}, sparse_cycle(yx, {{{0, 1}, 1}, {{2, 0}, 1}}));
  CycleClass f1 = sparse_cycle(xyx, {{{0, 3, 0}, 1}, {{1, 1, 0}, 1}});
  DescentInstance inst{x, y, p, f, g, f1, std::nullopt, {}};
  CycleClass tg = transpose(g).cycle();
  inst.rational.structures = {
      RationalStructure(xx, FieldLabel::F, {p.cycle()}),
      RationalStructure(xx, FieldLabel::E, {p.cycle()}),
      RationalStructure(xy, FieldLabel::F, {f.cycle(), tg}),
      RationalStructure(xy, FieldLabel::E, {f.cycle(), tg}),
      RationalStructure(yx, FieldLabel::F, {g.cycle()}),
      RationalStructure(yx, FieldLabel::E, {g.cycle()}),
      RationalStructure(xyx, FieldLabel::F,
                        {f1, projection_pullback(tg, 2, x)}),
  };
  return inst;
}

/// Adversarial lift over Z/2: the third-slot tail enters with coefficient 1
/// instead of a nilpotent one, so g after f3 is p plus an orthogonal
/// idempotent. The idempotent-power step must reject it.
inline DescentInstance adversarial_instance() {
  auto x = projective_line(2, "X");
  auto y = projective_line(2, "Y");
  ProductSpace xy({x, y}), yx({y, x}), xx({x, x}), xyx({x, y, x});
  Correspondence p = dual_basis_unit(x, 0, 0);
  Correspondence f(x, {y}, sparse_cycle(xy, {{{0, 1}, 1}}));
  Correspondence g(y, {x}, sparse_cycle(yx, {{{0, 1}, 1}, {{1, 0}, 1}}));
  CycleClass f1 = sparse_cycle(xyx, {{{0, 1, 0}, 1}, {{0, 0, 1}, 1}});
  DescentInstance inst{x, y, p, f, g, f1, std::nullopt, {}};
  CycleClass point_row = sparse_cycle(xy, {{{1, 0}, 1}});
  inst.rational.structures = {
      RationalStructure(xx, FieldLabel::F, {p.cycle()}),
      RationalStructure(xx, FieldLabel::E, {p.cycle()}),
      RationalStructure(xy, FieldLabel::F, {f.cycle(), point_row}),
      RationalStructure(xy, FieldLabel::E, {f.cycle(), point_row}),
      RationalStructure(yx, FieldLabel::F, {g.cycle()}),
      RationalStructure(yx, FieldLabel::E, {g.cycle()}),
      RationalStructure(xyx, FieldLabel::F,
                        {f1, sparse_cycle(xyx, {{{1, 0, 0}, 1}})}),
  };
  return inst;
}

/// p = 0: the zero motive splits off trivially, no construction runs.
inline DescentInstance zero_projector_instance() {
  auto x = projective_line(5, "X");
  auto y = projective_line(5, "Y");
  DescentInstance inst{x,
                       y,
                       Correspondence::zero(x, x),
                       Correspondence::zero(x, y),
                       Correspondence::zero(y, x),
                       CycleClass(ProductSpace({x, y, x})),
                       std::nullopt,
                       {}};
  return inst;
}

}  // namespace chow::fixtures
