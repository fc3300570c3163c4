#include <catch2/catch_amalgamated.hpp>

#include "chow/correspondence.hpp"
#include "chow/random_gen.hpp"
#include "model_fixtures.hpp"

using namespace chow;
using fixtures::projective_line;

namespace {

Correspondence random_endo(Rng& rng, const AlgebraPtr& x) {
  Matrix p(x->rank(), x->rank(), x->modulus());
  for (std::size_t i = 0; i < x->rank(); ++i)
    for (std::size_t j = 0; j < x->rank(); ++j)
      p.set(i, j, static_cast<std::int64_t>(rng.below(x->modulus().value())));
  return from_matrix(x, p);
}

/// x_i x y as a correspondence X -> Y, for an arbitrary cycle y on Y.
Correspondence row_corr(const AlgebraPtr& x, const AlgebraPtr& y, std::size_t i,
                        const AlgElem& yc) {
  CycleClass c{ProductSpace({x, y})};
  for (std::size_t b = 0; b < y->rank(); ++b)
    if (!yc[b].is_zero()) c.add({i, b}, yc[b]);
  return Correspondence(x, {y}, c);
}

/// y' x x_j* as a correspondence Y -> X.
Correspondence col_corr(const AlgebraPtr& y, const AlgebraPtr& x, const AlgElem& yc,
                        std::size_t j) {
  CycleClass c{ProductSpace({y, x})};
  AlgElem dual = x->dual_basis_element(j);
  for (std::size_t b = 0; b < y->rank(); ++b)
    for (std::size_t a = 0; a < x->rank(); ++a) {
      Scalar v = yc[b] * dual[a];
      if (!v.is_zero()) c.add({b, a}, v);
    }
  return Correspondence(y, {x}, c);
}

AlgElem random_elem(Rng& rng, const AlgebraPtr& a) {
  AlgElem e = a->zero_element();
  for (auto& v : e) v = Scalar(rng.below(a->modulus().value()), a->modulus());
  return e;
}

}  // namespace

TEST_CASE("composition rule for dual-basis units") {
  // (x_i x x_j*) after (x_k x x_s*) = delta_is (x_k x x_j*)
  auto x = projective_line(5);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t s = 0; s < 2; ++s) {
          Correspondence lhs =
              compose(dual_basis_unit(x, k, s), dual_basis_unit(x, i, j));
          if (i == s)
            CHECK(lhs == dual_basis_unit(x, k, j));
          else
            CHECK(lhs.is_zero());
        }
}

TEST_CASE("composition rule for lift shapes") {
  // (x_i x y x 1) after (x_k x x_s*) = delta_is (x_k x y x 1)
  auto x = projective_line(4, "X");
  auto y = projective_line(4, "Y");
  Rng rng(5);
  ProductSpace xyx({x, y, x});
  for (int iter = 0; iter < 40; ++iter) {
    std::size_t i = rng.below(2), k = rng.below(2), s = rng.below(2);
    AlgElem yc = random_elem(rng, y);
    CycleClass lift_cycle{xyx};
    for (std::size_t b = 0; b < 2; ++b)
      if (!yc[b].is_zero()) lift_cycle.add({i, b, x->unit_index()}, yc[b]);
    Correspondence lift(x, {y, x}, lift_cycle);
    Correspondence got = compose_mixed(dual_basis_unit(x, k, s), lift);
    CycleClass want{xyx};
    if (i == s)
      for (std::size_t b = 0; b < 2; ++b)
        if (!yc[b].is_zero()) want.add({k, b, x->unit_index()}, yc[b]);
    CHECK(got.cycle() == want);
  }
}

TEST_CASE("composition rule pairing rows against columns") {
  // (y' x x_j*) after (x_i x y) = deg(y'.y) (x_i x x_j*)
  auto x = projective_line(6, "X");
  auto y = projective_line(6, "Y");
  Rng rng(6);
  for (int iter = 0; iter < 60; ++iter) {
    std::size_t i = rng.below(2), j = rng.below(2);
    AlgElem yc = random_elem(rng, y), yp = random_elem(rng, y);
    Correspondence f = row_corr(x, y, i, yc);
    Correspondence g = col_corr(y, x, yp, j);
    Correspondence got = compose(f, g);
    Scalar d = y->deg(y->multiply(yp, yc));
    Matrix want(2, 2, x->modulus());
    want.set(i, j, d);
    CHECK(matrix_form(got) == want);
  }
}

TEST_CASE("identity correspondence is two-sided neutral") {
  auto x = projective_line(9);
  Rng rng(7);
  Correspondence id = Correspondence::identity(x);
  CHECK(verify_projector(id));
  for (int iter = 0; iter < 30; ++iter) {
    Correspondence u = random_endo(rng, x);
    CHECK(compose(id, u) == u);
    CHECK(compose(u, id) == u);
  }
}

TEST_CASE("transpose swaps slots and is an involution") {
  auto x = projective_line(5, "X");
  auto y = projective_line(5, "Y");
  Rng rng(8);
  CycleClass c{ProductSpace({x, y})};
  c.add({1, 0}, Scalar(3, Modulus(5)));
  Correspondence u(x, {y}, c);
  Correspondence t = transpose(u);
  CHECK(t.cycle().at({0, 1}).value() == 3);
  CHECK(transpose(t) == u);
}

TEST_CASE("transpose is a contravariant involution on compositions") {
  auto x = projective_line(8, "X");
  auto y = projective_line(8, "Y");
  Rng rng(9);
  for (int iter = 0; iter < 40; ++iter) {
    AlgElem yc = random_elem(rng, y), yp = random_elem(rng, y);
    Correspondence u = row_corr(x, y, rng.below(2), yc);   // X -> Y
    Correspondence v = col_corr(y, x, yp, rng.below(2));   // Y -> X
    CHECK(transpose(compose(u, v)) ==
          compose(transpose(v), transpose(u)));
  }
}

TEST_CASE("matrix form is a contravariant monoid homomorphism") {
  auto x = projective_line(9);
  Rng rng(10);
  CHECK(matrix_form(Correspondence::identity(x)) ==
        Matrix::identity(2, Modulus(9)));
  for (int iter = 0; iter < 50; ++iter) {
    Correspondence u = random_endo(rng, x), v = random_endo(rng, x);
    CHECK(matrix_form(compose(u, v)) == matrix_form(u) * matrix_form(v));
  }
}

TEST_CASE("matrix form round-trips") {
  auto x = projective_line(5);
  Rng rng(11);
  for (int iter = 0; iter < 30; ++iter) {
    Correspondence u = random_endo(rng, x);
    CHECK(from_matrix(x, matrix_form(u)) == u);
  }
  // single-entry projector coefficient lands at the right slot
  Correspondence p01 = dual_basis_unit(x, 0, 1);
  Matrix m = matrix_form(p01);
  CHECK(m.at(0, 1).value() == 1);
  std::size_t nonzeros = 0;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) nonzeros += !m.at(i, j).is_zero();
  CHECK(nonzeros == 1);
}

TEST_CASE("composition is associative") {
  auto x = projective_line(6);
  Rng rng(12);
  for (int iter = 0; iter < 40; ++iter) {
    Correspondence u = random_endo(rng, x), v = random_endo(rng, x),
                   w = random_endo(rng, x);
    CHECK(compose(compose(u, v), w) == compose(u, compose(v, w)));
  }
}

TEST_CASE("least codimension report") {
  auto x = projective_line(5);
  Correspondence id = Correspondence::identity(x);
  CdminReport r = cdmin(id);
  CHECK(r.value == 0);  // the x_0 x x_0* term has full dimension
  Correspondence low = dual_basis_unit(x, 1, 0);
  CHECK(cdmin(low).value == 1);
  CHECK(cdmin(low).support ==
        std::vector<std::pair<std::size_t, std::size_t>>{{1, 0}});
  CHECK_THROWS_AS(cdmin(Correspondence::zero(x, x)), ZeroProjector);
}

TEST_CASE("idempotent power on fixed cases") {
  auto x = projective_line(5);
  auto [n_id, e_id] = idempotent_power(Correspondence::identity(x));
  CHECK(n_id == 1);
  CHECK(e_id == Correspondence::identity(x));

  // rank-1 model over Z/4: doubling the identity squares to zero
  auto pt4 = fixtures::point_model(4);
  Correspondence twice =
      from_matrix(pt4, Matrix::identity(1, Modulus(4)).scaled(Scalar(2, Modulus(4))));
  auto [n2, e2] = idempotent_power(twice);
  CHECK(n2 == 2);
  CHECK(e2.is_zero());

  // rank-1 model over Z/10: powers of 3 cycle through 3,9,7,1
  auto pt10 = fixtures::point_model(10);
  Correspondence triple =
      from_matrix(pt10, Matrix::identity(1, Modulus(10)).scaled(Scalar(3, Modulus(10))));
  auto [n3, e3] = idempotent_power(triple);
  CHECK(n3 == 4);
  CHECK(e3 == Correspondence::identity(pt10));
}

TEST_CASE("idempotent power outputs verify as projectors") {
  Rng rng(13);
  for (std::uint64_t m : {2, 3, 4, 5, 6, 8, 9}) {
    auto x = projective_line(m);
    for (int iter = 0; iter < 20; ++iter) {
      auto [n, e] = idempotent_power(random_endo(rng, x));
      CHECK(n >= 1);
      CHECK(verify_projector(e));
    }
  }
}

TEST_CASE("verify_projector rejects non-idempotents") {
  auto x = projective_line(3);
  Correspondence twice_id =
      from_matrix(x, Matrix::identity(2, Modulus(3)).scaled(Scalar(2, Modulus(3))));
  CHECK_FALSE(verify_projector(twice_id));  // 4 != 2 mod 3
  CHECK(verify_projector(Correspondence::identity(x)));
}

TEST_CASE("restricted projector identity at minimal codimension rows") {
  // for any projector, P*P = P also holds row-by-row on the cdmin rows
  Rng rng(14);
  auto x = projective_line(4);
  int checked = 0;
  while (checked < 25) {
    auto [n, e] = idempotent_power(random_endo(rng, x));
    (void)n;
    if (e.is_zero()) continue;
    Matrix p = matrix_form(e);
    Matrix sq = p * p;
    CdminReport r = cdmin(e);
    for (std::size_t i = 0; i < p.rows(); ++i) {
      if (x->codim(i) != r.value) continue;
      for (std::size_t j = 0; j < p.cols(); ++j) CHECK(sq.at(i, j) == p.at(i, j));
    }
    ++checked;
  }
}
