#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "chow/cycles.hpp"
#include "chow/errors.hpp"
#include "chow/split_algebra.hpp"

// Deterministic random generation. The stream is SplitMix64 (a fixed,
// published algorithm) so the same seed reproduces the same campaign on
// any platform; bounded draws use rejection, not modulo, to stay exact.

namespace chow {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform draw in [0, n), n >= 1.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  bool coin() { return (next() & 1) != 0; }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

 private:
  std::uint64_t state_;
};

struct AlgebraBounds {
  std::size_t max_rank = 4;
  std::size_t max_dim = 2;
  std::vector<std::uint64_t> moduli = {2, 3, 4, 5, 6, 8, 9};
  std::size_t max_attempts = 20000;
};

struct GenerationStats {
  std::uint64_t attempts = 0;
  std::uint64_t rejected_axioms = 0;  // associativity or singular Gram
  std::uint64_t produced = 0;
};

namespace detail {

/// A grading multiset symmetric under k -> d-k, a necessary condition for
/// the Gram pairing to be invertible. Contains at least one top slot
/// (the unit) and, when d > 0, its dimension-zero partner.
inline std::vector<std::size_t> symmetric_grades(Rng& rng, std::size_t rank,
                                                 std::size_t d) {
  std::vector<std::size_t> grades;
  grades.push_back(d);
  if (d > 0) grades.push_back(0);
  while (grades.size() < rank) {
    if (rank - grades.size() >= 2 && (d == 0 || rng.coin())) {
      std::size_t k = rng.below(d + 1);
      grades.push_back(k);
      if (d != 0) grades.push_back(d - k);
      else if (grades.size() < rank && rng.coin()) grades.push_back(0);
    } else if (d % 2 == 0) {
      grades.push_back(d / 2);  // the self-paired middle grade
    } else {
      break;  // odd d cannot fill a single leftover slot symmetrically
    }
  }
  // deterministic shuffle
  for (std::size_t i = grades.size(); i > 1; --i)
    std::swap(grades[i - 1], grades[rng.below(i)]);
  return grades;
}

}  // namespace detail

/// Draw a valid split algebra: sample a graded structure-constant table on
/// the legal slots only, then reject anything non-associative or with a
/// singular Gram matrix. Rejection counts land in `stats`.
inline AlgebraPtr random_split_algebra(Rng& rng, const AlgebraBounds& bounds,
                                       GenerationStats& stats,
                                       std::uint64_t modulus,
                                       const std::string& name) {
  Modulus m(modulus);
  for (std::size_t attempt = 0; attempt < bounds.max_attempts; ++attempt) {
    ++stats.attempts;
    std::size_t rank = 1 + rng.below(bounds.max_rank);
    std::size_t d = rng.below(bounds.max_dim + 1);
    if (rank == 1) d = 0;
    std::vector<std::size_t> phi = detail::symmetric_grades(rng, rank, d);
    rank = phi.size();
    std::vector<std::size_t> tops;
    for (std::size_t i = 0; i < rank; ++i)
      if (phi[i] == d) tops.push_back(i);
    std::size_t unit = tops[rng.below(tops.size())];

    std::vector<Scalar> degree(rank, Scalar::zero(m));
    for (std::size_t i = 0; i < rank; ++i)
      if (phi[i] == 0 && (d > 0 || i == unit || rng.coin()))
        degree[i] = Scalar(rng.below(modulus), m);
    // d = 0: the unit must pair with itself, give it a unit degree draw
    if (d == 0) degree[unit] = Scalar(1 + rng.below(modulus - 1), m);

    std::vector<MultEntry> mult;
    for (std::size_t j = 0; j < rank; ++j) {
      mult.push_back({unit, j, j, 1});
      if (j != unit) mult.push_back({j, unit, j, 1});
    }
    for (std::size_t i = 0; i < rank; ++i) {
      if (i == unit) continue;
      for (std::size_t j = i; j < rank; ++j) {
        if (j == unit) continue;
        if (phi[i] + phi[j] < d) continue;
        std::size_t grade = phi[i] + phi[j] - d;
        for (std::size_t k = 0; k < rank; ++k) {
          if (phi[k] != grade) continue;
          if (rng.coin()) continue;  // bias towards sparse tables
          std::int64_t v = static_cast<std::int64_t>(rng.below(modulus));
          if (v == 0) continue;
          mult.push_back({i, j, k, v});
          if (j != i) mult.push_back({j, i, k, v});
        }
      }
    }
    auto alg = std::make_shared<SplitAlgebra>(name, m, d, phi, unit, degree, mult);
    if (!alg->validate().empty()) {
      ++stats.rejected_axioms;
      continue;
    }
    ++stats.produced;
    return alg;
  }
  throw Error("random algebra generation exhausted its attempt budget");
}

/// Random cycle on a product space, homogeneous of `total_dim` when given.
inline CycleClass random_cycle(Rng& rng, const ProductSpace& space,
                               std::optional<std::size_t> total_dim) {
  CycleClass c(space, total_dim);
  const std::uint64_t m = space.modulus().value();
  for (std::size_t f = 0; f < space.entry_count(); ++f) {
    auto idx = space.unflatten(f);
    if (total_dim && space.dim_of(idx) != *total_dim) continue;
    c.set(idx, Scalar(rng.below(m), space.modulus()));
  }
  return c;
}

}  // namespace chow
