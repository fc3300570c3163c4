#pragma once

// Small hand-checked algebras shared across test suites.

#include <memory>
#include <string>

#include "chow/split_algebra.hpp"

namespace chow::fixtures {

/// Rank 2, dim 1: x0 = fundamental class (unit, phi=1), x1 = point (phi=0),
/// x1.x1 = 0, deg(x1) = 1. Gram is the swap matrix.
inline AlgebraPtr projective_line(std::uint64_t m, std::string name = "X") {
  Modulus mod(m);
  return std::make_shared<SplitAlgebra>(
      std::move(name), mod, 1, std::vector<std::size_t>{1, 0}, 0,
      std::vector<Scalar>{Scalar::zero(mod), Scalar::one(mod)},
      std::vector<MultEntry>{{0, 0, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}});
}

/// Rank 1, dim 0: a single point with deg = 1. Unit of the Kunneth product.
inline AlgebraPtr point_model(std::uint64_t m, std::string name = "pt") {
  Modulus mod(m);
  return std::make_shared<SplitAlgebra>(
      std::move(name), mod, 0, std::vector<std::size_t>{0}, 0,
      std::vector<Scalar>{Scalar::one(mod)},
      std::vector<MultEntry>{{0, 0, 0, 1}});
}

/// Rank 1, dim 0, deg(x0) = c: Gram [[c]]; singular over Z/m iff c is not a unit.
inline AlgebraPtr scaled_point(std::uint64_t m, std::int64_t c,
                               std::string name = "ptc") {
  Modulus mod(m);
  return std::make_shared<SplitAlgebra>(
      std::move(name), mod, 0, std::vector<std::size_t>{0}, 0,
      std::vector<Scalar>{Scalar::from_int(c, mod)},
      std::vector<MultEntry>{{0, 0, 0, 1}});
}

}  // namespace chow::fixtures
