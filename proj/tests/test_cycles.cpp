#include <catch2/catch_amalgamated.hpp>

#include "chow/cycles.hpp"
#include "chow/random_gen.hpp"
#include "model_fixtures.hpp"

using namespace chow;
using fixtures::projective_line;

namespace {

CycleClass random_cycle(Rng& rng, const ProductSpace& space) {
  return chow::random_cycle(rng, space, std::nullopt);
}

}  // namespace

TEST_CASE("external product of basis cycles") {
  auto x = projective_line(5, "X");
  auto y = projective_line(5, "Y");
  ProductSpace xs({x}), ys({y});
  CycleClass x1 = CycleClass::basis(xs, {1});
  CycleClass y0 = CycleClass::basis(ys, {0});
  CycleClass prod = external_product(x1, y0);
  CHECK(prod == CycleClass::basis(ProductSpace({x, y}), {1, 0}));
  CHECK(prod.total_dim() == std::optional<std::size_t>{1});

  CycleClass zero(xs);
  CHECK(external_product(zero, y0).is_zero());

  // bilinearity over a sum
  CycleClass x01 = CycleClass::basis(xs, {0}) + CycleClass::basis(xs, {1});
  CycleClass both = external_product(x01.with_total_dim(std::nullopt),
                                     CycleClass::basis(ys, {1}));
  CHECK(both.at({0, 1}).value() == 1);
  CHECK(both.at({1, 1}).value() == 1);
}

TEST_CASE("projection pullback inserts the fundamental class") {
  auto x = projective_line(5, "X");
  auto y = projective_line(5, "Y");
  ProductSpace xx({x, x});
  CycleClass c = CycleClass::basis(xx, {0, 1});
  CycleClass lifted = projection_pullback(c, 1, y);
  CHECK(lifted.at({0, 0, 1}).value() == 1);  // x_i x 1_Y x x_j pattern
  CHECK(lifted.total_dim() == std::optional<std::size_t>{2});

  CHECK(projection_pullback(CycleClass(xx), 1, y).is_zero());
}

TEST_CASE("double insertion matches insertion of the kunneth product") {
  // inserting Y then Y again agrees with inserting Y x Y once, under the
  // pair-index identification (a, b) <-> a*rank(Y)+b
  auto x = projective_line(5, "X");
  auto y = projective_line(5, "Y");
  auto yy = kunneth(y, y);
  ProductSpace xx({x, x});
  Rng rng(17);
  for (int iter = 0; iter < 20; ++iter) {
    CycleClass c = random_cycle(rng, xx);
    CycleClass twice = projection_pullback(projection_pullback(c, 2, y), 3, y);
    CycleClass once = projection_pullback(c, 2, yy);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t a = 0; a < 2; ++a)
          for (std::size_t b = 0; b < 2; ++b)
            CHECK(twice.at({i, j, a, b}) == once.at({i, j, a * 2 + b}));
  }
}

TEST_CASE("projection pushforward contracts against the degree") {
  auto x = projective_line(5, "X");
  auto y = projective_line(5, "Y");
  ProductSpace xyx({x, y, x});
  // x_0 x pt_Y x 1: dropping the middle point class keeps the rest
  CycleClass c = CycleClass::basis(xyx, {0, 1, 0});
  CycleClass pushed = projection_pushforward(c, 1);
  CHECK(pushed == CycleClass::basis(ProductSpace({x, x}), {0, 0}));

  // positive-dimension slot dies under deg
  CycleClass fat = CycleClass::basis(xyx, {0, 0, 0});
  CHECK(projection_pushforward(fat, 1).is_zero());

  // linearity
  CycleClass sum = c + fat;
  CHECK(projection_pushforward(sum, 1) == pushed);
}

TEST_CASE("factorwise intersection uses both multiplication tables") {
  auto x = projective_line(5, "X");
  ProductSpace xx({x, x});
  CycleClass a = CycleClass::basis(xx, {0, 1});
  CycleClass b = CycleClass::basis(xx, {1, 0});
  CHECK(intersect(a, b) == CycleClass::basis(xx, {1, 1}));

  // unit cycle is neutral
  CycleClass unit = CycleClass::basis(xx, {0, 0});
  Rng rng(7);
  CycleClass r = random_cycle(rng, xx);
  CHECK(intersect(r, unit) == r);

  // x1.x1 = 0 kills the first slot
  CHECK(intersect(CycleClass::basis(xx, {1, 1}), b).is_zero());
}

TEST_CASE("epsilon pullback keeps only unit third components") {
  auto x = projective_line(5, "X");
  auto y = projective_line(5, "Y");
  ProductSpace xyx({x, y, x});
  ProductSpace xy({x, y});
  CycleClass keep = CycleClass::basis(xyx, {1, 0, 0});   // x_1 x y x 1
  CycleClass kill = CycleClass::basis(xyx, {1, 0, 1});   // third slot has codim 1
  CHECK(epsilon_pullback(keep) == CycleClass::basis(xy, {1, 0}));
  CHECK(epsilon_pullback(kill).is_zero());
  CHECK(epsilon_pullback(keep + kill) == CycleClass::basis(xy, {1, 0}));
}

TEST_CASE("epsilon pullback inverts unit insertion") {
  auto x = projective_line(9, "X");
  auto y = projective_line(9, "Y");
  ProductSpace xy({x, y});
  Rng rng(11);
  for (int iter = 0; iter < 50; ++iter) {
    CycleClass c = random_cycle(rng, xy);
    CHECK(epsilon_pullback(projection_pullback(c, 2, x)) == c);
  }
}

TEST_CASE("diagonal pullback multiplies outer slots") {
  auto x = projective_line(5, "X");
  auto y = projective_line(5, "Y");
  ProductSpace xyx({x, y, x});
  ProductSpace xy({x, y});
  // alpha x beta x 1 -> alpha x beta
  CHECK(diagonal_pullback(CycleClass::basis(xyx, {1, 0, 0})) ==
        CycleClass::basis(xy, {1, 0}));
  // x1 . x1 = 0
  CHECK(diagonal_pullback(CycleClass::basis(xyx, {1, 0, 1})).is_zero());
  // linearity over Z/m
  CycleClass a = CycleClass::basis(xyx, {0, 1, 1});
  CycleClass b = CycleClass::basis(xyx, {0, 0, 0});
  CHECK(diagonal_pullback(a + b) ==
        diagonal_pullback(a) + diagonal_pullback(b));
}

TEST_CASE("diagonal pullback needs matching outer factors") {
  auto x = projective_line(5, "X");
  auto y = projective_line(5, "Y");
  CycleClass c{ProductSpace({x, y, y})};
  CHECK_THROWS_AS(diagonal_pullback(c), SpaceMismatch);
  CHECK_THROWS_AS(epsilon_pullback(c), SpaceMismatch);
}

TEST_CASE("diagonal pullback raises first-slot codimension strictly") {
  // on components whose third slot has positive codimension
  auto x = projective_line(9, "X");
  auto y = projective_line(9, "Y");
  ProductSpace xyx({x, y, x});
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t g = 0; g < 2; ++g) {
        if (x->codim(g) == 0) continue;
        CycleClass c = CycleClass::basis(xyx, {a, b, g});
        for (const auto& [idx, v] : diagonal_pullback(c).support()) {
          (void)v;
          CHECK(x->codim(idx[0]) > x->codim(a));
        }
      }
}

TEST_CASE("projection formula on random cycles") {
  // push(pull(a) . b) = a . push(b)
  auto x = projective_line(4, "X");
  auto y = projective_line(4, "Y");
  ProductSpace xy({x, y});
  ProductSpace xyy({x, y, y});
  Rng rng(13);
  for (int iter = 0; iter < 60; ++iter) {
    CycleClass a = random_cycle(rng, xy);
    CycleClass b = random_cycle(rng, xyy);
    CycleClass lhs = projection_pushforward(
        intersect(projection_pullback(a, 2, y), b), 2);
    CycleClass rhs = intersect(a, projection_pushforward(b, 2));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("homogeneity tags are enforced") {
  auto x = projective_line(5, "X");
  ProductSpace xx({x, x});
  CycleClass c(xx, 1);
  c.set({0, 1}, Scalar::one(Modulus(5)));  // dim 1+0 = 1, fine
  CHECK_THROWS_AS(c.set({0, 0}, Scalar::one(Modulus(5))), SpaceMismatch);
  CHECK_THROWS_AS(c.with_total_dim(2), SpaceMismatch);
  CHECK(c.with_total_dim(1).total_dim() == std::optional<std::size_t>{1});
}

TEST_CASE("space mismatch is rejected") {
  auto x = projective_line(5, "X");
  auto x2 = projective_line(5, "X");  // equal content, different identity
  CycleClass a{ProductSpace({x})};
  CycleClass b{ProductSpace({x2})};
  CHECK_THROWS_AS(a + b, SpaceMismatch);
  CHECK_THROWS_AS(intersect(a, b), SpaceMismatch);
}
