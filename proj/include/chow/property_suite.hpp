#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "chow/correspondence.hpp"
#include "chow/cycles.hpp"
#include "chow/descent.hpp"
#include "chow/fault_injection.hpp"
#include "chow/random_gen.hpp"
#include "chow/split_algebra.hpp"

// Randomized verification of the algebraic laws behind the engine: the
// composition rules for basis correspondences, associativity, transpose
// anti-homomorphism, the dual-basis pairing, Kunneth compatibility, the
// pullback identities and the projector coefficient identity. Failures are
// minimized by zeroing coefficients, then by removing basis elements.

namespace chow {

struct PropertyScenario {
  AlgebraPtr x, y;
  std::vector<std::size_t> x_indices;  // basis choices on X, when a law needs them
  std::vector<CycleClass> cycles;      // law-specific cycle payload
};

struct PropertyCounterexample {
  std::string property;
  std::uint64_t iteration = 0;
  std::string description;
};

struct PropertyReport {
  std::uint64_t seed = 0;
  std::uint64_t requested = 0;
  std::uint64_t completed = 0;  // iterations that passed every law
  GenerationStats generation;
  std::vector<std::pair<std::string, std::uint64_t>> passes;
  std::optional<PropertyCounterexample> counterexample;
  bool all_passed() const { return !counterexample.has_value(); }
};

namespace detail {

// ---------------------------------------------------------------------------
// scenario plumbing: serialization and shrinking
// ---------------------------------------------------------------------------

inline std::string describe_algebra(const AlgebraPtr& a) {
  std::ostringstream os;
  os << a->name() << ": m=" << a->modulus().value() << " dim=" << a->dim()
     << " phi=[";
  for (std::size_t i = 0; i < a->rank(); ++i)
    os << (i ? "," : "") << a->phi(i);
  os << "] unit=" << a->unit_index() << " deg=[";
  for (std::size_t i = 0; i < a->rank(); ++i)
    os << (i ? "," : "") << a->degree_of_basis(i).value();
  os << "] table={";
  bool first = true;
  for (std::size_t i = 0; i < a->rank(); ++i)
    for (std::size_t j = 0; j < a->rank(); ++j)
      for (const auto& [k, v] : a->product(i, j)) {
        if (!first) os << " ";
        first = false;
        os << i << "." << j << "->" << k << ":" << v.value();
      }
  os << "}";
  return os.str();
}

inline std::string describe_scenario(const PropertyScenario& s) {
  std::ostringstream os;
  os << describe_algebra(s.x);
  if (s.y != s.x) os << " | " << describe_algebra(s.y);
  if (!s.x_indices.empty()) {
    os << " | indices=[";
    for (std::size_t i = 0; i < s.x_indices.size(); ++i)
      os << (i ? "," : "") << s.x_indices[i];
    os << "]";
  }
  for (std::size_t c = 0; c < s.cycles.size(); ++c) {
    os << " | cycle" << c << " on " << s.cycles[c].space().describe() << ": {";
    bool first = true;
    for (const auto& [idx, v] : s.cycles[c].support()) {
      if (!first) os << " ";
      first = false;
      for (std::size_t t = 0; t < idx.size(); ++t)
        os << (t ? "," : "(") << idx[t];
      os << ")=" << v.value();
    }
    os << "}";
  }
  return os.str();
}

/// Rebuild an algebra without basis index `removed`. Returns nullptr when
/// the index is load-bearing (unit, or referenced by surviving products).
inline AlgebraPtr remove_basis_index(const AlgebraPtr& a, std::size_t removed) {
  if (removed == a->unit_index()) return nullptr;
  const std::size_t n = a->rank();
  auto shift = [&](std::size_t i) { return i > removed ? i - 1 : i; };
  std::vector<std::size_t> phi;
  std::vector<Scalar> degree;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == removed) continue;
    phi.push_back(a->phi(i));
    degree.push_back(a->degree_of_basis(i));
  }
  std::vector<MultEntry> mult;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == removed) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == removed) continue;
      for (const auto& [k, v] : a->product(i, j)) {
        if (v.is_zero()) continue;
        if (k == removed) return nullptr;  // surviving product escapes
        mult.push_back({shift(i), shift(j), shift(k),
                        static_cast<std::int64_t>(v.value())});
      }
    }
  }
  return std::make_shared<SplitAlgebra>(a->name(), a->modulus(), a->dim(), phi,
                                        shift(a->unit_index()), degree, mult);
}

/// Transfer a cycle onto spaces where `from` was replaced by `to` with one
/// basis index dropped. Returns nullopt if the cycle touches that index.
inline std::optional<CycleClass> remap_cycle(const CycleClass& c,
                                             const AlgebraPtr& from,
                                             const AlgebraPtr& to,
                                             std::size_t removed) {
  std::vector<AlgebraPtr> factors;
  for (const auto& f : c.space().factors())
    factors.push_back(f == from ? to : f);
  CycleClass out{ProductSpace(std::move(factors))};
  for (const auto& [idx, v] : c.support()) {
    std::vector<std::size_t> j = idx;
    for (std::size_t t = 0; t < j.size(); ++t) {
      if (c.space().factor(t) != from) continue;
      if (j[t] == removed) return std::nullopt;
      if (j[t] > removed) --j[t];
    }
    out.add(j, v);
  }
  return out;
}

using ScenarioCheck = std::function<bool(const PropertyScenario&)>;

inline bool fails_quietly(const ScenarioCheck& holds, const PropertyScenario& s) {
  try {
    return !holds(s);
  } catch (const Error&) {
    return false;  // a different defect signature; not the same failure
  }
}

/// Two-phase minimization: zero single coefficients, then drop basis
/// elements (remapping every cycle and index), keeping the failure alive.
inline PropertyScenario shrink_scenario(PropertyScenario s,
                                        const ScenarioCheck& holds) {
  // phase 1: coefficient zeroing
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t c = 0; c < s.cycles.size(); ++c)
      for (const auto& [idx, v] : s.cycles[c].support()) {
        (void)v;
        PropertyScenario trial = s;
        trial.cycles[c].set(idx, Scalar::zero(trial.cycles[c].modulus()));
        if (fails_quietly(holds, trial)) {
          s = std::move(trial);
          progress = true;
        }
      }
  }
  // phase 2: rank reduction on both algebras
  progress = true;
  while (progress) {
    progress = false;
    for (AlgebraPtr PropertyScenario::* member : {&PropertyScenario::x,
                                                  &PropertyScenario::y}) {
      const AlgebraPtr& alg = s.*member;
      for (std::size_t removed = alg->rank(); removed-- > 0;) {
        AlgebraPtr reduced = remove_basis_index(alg, removed);
        if (!reduced) continue;
        PropertyScenario trial = s;
        bool ok = true;
        for (auto& i : trial.x_indices) {
          if (alg != s.x) break;  // indices always refer to X
          if (i == removed) {
            ok = false;
            break;
          }
          if (i > removed) --i;
        }
        if (!ok) continue;
        for (auto& c : trial.cycles) {
          auto moved = remap_cycle(c, alg, reduced, removed);
          if (!moved) {
            ok = false;
            break;
          }
          c = *moved;
        }
        if (!ok) continue;
        if (s.x == alg) trial.x = reduced;
        if (s.y == alg) trial.y = reduced;
        // both slots may alias one algebra
        if (s.y == alg && s.x == alg) trial.x = trial.y = reduced;
        if (fails_quietly(holds, trial)) {
          s = std::move(trial);
          progress = true;
          break;
        }
      }
      if (progress) break;
    }
  }
  return s;
}

struct Property {
  std::string name;
  std::function<PropertyScenario(Rng&, const AlgebraPtr&, const AlgebraPtr&)> make;
  ScenarioCheck holds;
};

inline Correspondence row_correspondence(const AlgebraPtr& x, const AlgebraPtr& y,
                                         std::size_t i, const CycleClass& yelem) {
  CycleClass c{ProductSpace({x, y})};
  for (const auto& [idx, v] : yelem.support()) c.add({i, idx[0]}, v);
  return Correspondence(x, {y}, c);
}

inline Correspondence column_correspondence(const AlgebraPtr& y,
                                            const AlgebraPtr& x,
                                            const CycleClass& yelem,
                                            std::size_t j) {
  CycleClass c{ProductSpace({y, x})};
  AlgElem dual = x->dual_basis_element(j);
  for (const auto& [idx, v] : yelem.support())
    for (std::size_t a = 0; a < x->rank(); ++a) {
      Scalar w = v * dual[a];
      if (!w.is_zero()) c.add({idx[0], a}, w);
    }
  return Correspondence(y, {x}, c);
}

inline AlgElem to_element(const AlgebraPtr& a, const CycleClass& c) {
  AlgElem e = a->zero_element();
  for (const auto& [idx, v] : c.support()) e[idx[0]] += v;
  return e;
}

/// The diagonal carried on the outer slots of X x Y x X:
/// sum_i x_i x 1 x x_i*.
inline CycleClass outer_diagonal(const AlgebraPtr& x, const AlgebraPtr& y) {
  CycleClass c{ProductSpace({x, y, x})};
  const Matrix& d = x->dual_basis();
  for (std::size_t i = 0; i < x->rank(); ++i)
    for (std::size_t b = 0; b < x->rank(); ++b) {
      Scalar v = d.at(b, i);
      if (!v.is_zero()) c.add({i, y->unit_index(), b}, v);
    }
  return c;
}

inline std::vector<Property> all_properties() {
  std::vector<Property> props;

  props.push_back(
      {"dual-basis-kronecker",
       [](Rng&, const AlgebraPtr& x, const AlgebraPtr& y) {
         return PropertyScenario{x, y, {}, {}};
       },
       [](const PropertyScenario& s) {
         for (const AlgebraPtr& a : {s.x, s.y})
           for (std::size_t i = 0; i < a->rank(); ++i)
             for (std::size_t j = 0; j < a->rank(); ++j) {
               Scalar want = i == j ? Scalar::one(a->modulus())
                                    : Scalar::zero(a->modulus());
               if (!(a->pairing(a->basis_element(i), a->dual_basis_element(j)) ==
                     want))
                 return false;
             }
         return true;
       }});

  props.push_back(
      {"compose-rule-dual-units",
       [](Rng& rng, const AlgebraPtr& x, const AlgebraPtr& y) {
         PropertyScenario s{x, y, {}, {}};
         for (int t = 0; t < 4; ++t) s.x_indices.push_back(rng.below(x->rank()));
         return s;
       },
       [](const PropertyScenario& s) {
         const auto& ix = s.x_indices;
         Correspondence u = dual_basis_unit(s.x, ix[2], ix[3]);  // x_k x x_s*
         Correspondence v = dual_basis_unit(s.x, ix[0], ix[1]);  // x_i x x_j*
         Correspondence got = compose(u, v);
         if (ix[0] == ix[3]) return got == dual_basis_unit(s.x, ix[2], ix[1]);
         return got.is_zero();
       }});

  props.push_back(
      {"compose-rule-lift",
       [](Rng& rng, const AlgebraPtr& x, const AlgebraPtr& y) {
         PropertyScenario s{x, y, {}, {}};
         for (int t = 0; t < 3; ++t) s.x_indices.push_back(rng.below(x->rank()));
         s.cycles.push_back(
             random_cycle(rng, ProductSpace({y}), std::nullopt));
         return s;
       },
       [](const PropertyScenario& s) {
         std::size_t i = s.x_indices[0], k = s.x_indices[1], ss = s.x_indices[2];
         ProductSpace xyx({s.x, s.y, s.x});
         CycleClass lift{xyx};
         for (const auto& [idx, v] : s.cycles[0].support())
           lift.add({i, idx[0], s.x->unit_index()}, v);
         Correspondence got = compose_mixed(dual_basis_unit(s.x, k, ss),
                                            Correspondence(s.x, {s.y, s.x}, lift));
         CycleClass want{xyx};
         if (i == ss)
           for (const auto& [idx, v] : s.cycles[0].support())
             want.add({k, idx[0], s.x->unit_index()}, v);
         return got.cycle() == want;
       }});

  props.push_back(
      {"compose-rule-degree",
       [](Rng& rng, const AlgebraPtr& x, const AlgebraPtr& y) {
         PropertyScenario s{x, y, {}, {}};
         s.x_indices.push_back(rng.below(x->rank()));
         s.x_indices.push_back(rng.below(x->rank()));
         s.cycles.push_back(random_cycle(rng, ProductSpace({y}), std::nullopt));
         s.cycles.push_back(random_cycle(rng, ProductSpace({y}), std::nullopt));
         return s;
       },
       [](const PropertyScenario& s) {
         std::size_t i = s.x_indices[0], j = s.x_indices[1];
         Correspondence f = row_correspondence(s.x, s.y, i, s.cycles[0]);
         Correspondence g = column_correspondence(s.y, s.x, s.cycles[1], j);
         Correspondence got = compose(f, g);
         AlgElem yc = to_element(s.y, s.cycles[0]);
         AlgElem yp = to_element(s.y, s.cycles[1]);
         Matrix want(s.x->rank(), s.x->rank(), s.x->modulus());
         want.set(i, j, s.y->pairing(yp, yc));
         return matrix_form(got) == want;
       }});

  props.push_back(
      {"associativity",
       [](Rng& rng, const AlgebraPtr& x, const AlgebraPtr& y) {
         PropertyScenario s{x, y, {}, {}};
         s.cycles.push_back(random_cycle(rng, ProductSpace({x, y}), std::nullopt));
         s.cycles.push_back(random_cycle(rng, ProductSpace({y, x}), std::nullopt));
         s.cycles.push_back(random_cycle(rng, ProductSpace({x, x}), std::nullopt));
         return s;
       },
       [](const PropertyScenario& s) {
         Correspondence u(s.x, {s.y}, s.cycles[0]);
         Correspondence v(s.y, {s.x}, s.cycles[1]);
         Correspondence w(s.x, {s.x}, s.cycles[2]);
         return compose(compose(u, v), w) == compose(u, compose(v, w));
       }});

  props.push_back(
      {"transpose-antihomomorphism",
       [](Rng& rng, const AlgebraPtr& x, const AlgebraPtr& y) {
         PropertyScenario s{x, y, {}, {}};
         s.cycles.push_back(random_cycle(rng, ProductSpace({x, y}), std::nullopt));
         s.cycles.push_back(random_cycle(rng, ProductSpace({y, x}), std::nullopt));
         return s;
       },
       [](const PropertyScenario& s) {
         Correspondence u(s.x, {s.y}, s.cycles[0]);
         Correspondence v(s.y, {s.x}, s.cycles[1]);
         if (!(transpose(compose(u, v)) ==
               compose(transpose(v), transpose(u))))
           return false;
         return transpose(transpose(u)) == u;
       }});

  props.push_back(
      {"identity-neutral",
       [](Rng& rng, const AlgebraPtr& x, const AlgebraPtr& y) {
         PropertyScenario s{x, y, {}, {}};
         s.cycles.push_back(random_cycle(rng, ProductSpace({x, y}), std::nullopt));
         return s;
       },
       [](const PropertyScenario& s) {
         Correspondence u(s.x, {s.y}, s.cycles[0]);
         return compose(Correspondence::identity(s.x), u) == u &&
                compose(u, Correspondence::identity(s.y)) == u;
       }});

  props.push_back(
      {"matrix-contravariance",
       [](Rng& rng, const AlgebraPtr& x, const AlgebraPtr& y) {
         PropertyScenario s{x, y, {}, {}};
         s.cycles.push_back(random_cycle(rng, ProductSpace({x, x}), std::nullopt));
         s.cycles.push_back(random_cycle(rng, ProductSpace({x, x}), std::nullopt));
         return s;
       },
       [](const PropertyScenario& s) {
         Correspondence a(s.x, {s.x}, s.cycles[0]);
         Correspondence b(s.x, {s.x}, s.cycles[1]);
         return matrix_form(compose(a, b)) == matrix_form(a) * matrix_form(b);
       }});

  props.push_back(
      {"kunneth-compatibility",
       [](Rng&, const AlgebraPtr& x, const AlgebraPtr& y) {
         return PropertyScenario{x, y, {}, {}};
       },
       [](const PropertyScenario& s) {
         AlgebraPtr prod = kunneth(s.x, s.y);
         if (!prod->validate().empty()) return false;
         if (!(prod->gram() == Matrix::kronecker(s.x->gram(), s.y->gram())))
           return false;
         return prod->dual_basis() ==
                Matrix::kronecker(s.x->dual_basis(), s.y->dual_basis());
       }});

  props.push_back(
      {"epsilon-inverts-insertion",
       [](Rng& rng, const AlgebraPtr& x, const AlgebraPtr& y) {
         PropertyScenario s{x, y, {}, {}};
         s.cycles.push_back(random_cycle(rng, ProductSpace({x, y}), std::nullopt));
         return s;
       },
       [](const PropertyScenario& s) {
         return epsilon_pullback(projection_pullback(s.cycles[0], 2, s.x)) ==
                s.cycles[0];
       }});

  props.push_back(
      {"diagonal-oracle",
       [](Rng& rng, const AlgebraPtr& x, const AlgebraPtr& y) {
         PropertyScenario s{x, y, {}, {}};
         s.cycles.push_back(
             random_cycle(rng, ProductSpace({x, y, x}), std::nullopt));
         return s;
       },
       [](const PropertyScenario& s) {
         // independent route: intersect with the outer diagonal carried by
         // the dual basis, then push the third slot out
         CycleClass via_diag = diagonal_pullback(s.cycles[0]);
         CycleClass oracle = projection_pushforward(
             intersect(s.cycles[0], outer_diagonal(s.x, s.y)), 2);
         return via_diag == oracle;
       }});

  props.push_back(
      {"projection-formula",
       [](Rng& rng, const AlgebraPtr& x, const AlgebraPtr& y) {
         PropertyScenario s{x, y, {}, {}};
         s.cycles.push_back(random_cycle(rng, ProductSpace({x, y}), std::nullopt));
         s.cycles.push_back(
             random_cycle(rng, ProductSpace({x, y, y}), std::nullopt));
         return s;
       },
       [](const PropertyScenario& s) {
         CycleClass lhs = projection_pushforward(
             intersect(projection_pullback(s.cycles[0], 2, s.y), s.cycles[1]), 2);
         CycleClass rhs = intersect(s.cycles[0],
                                    projection_pushforward(s.cycles[1], 2));
         return lhs == rhs;
       }});

  props.push_back(
      {"projector-coefficient-identity",
       [](Rng& rng, const AlgebraPtr& x, const AlgebraPtr& y) {
         PropertyScenario s{x, y, {}, {}};
         s.cycles.push_back(random_cycle(rng, ProductSpace({x, x}), std::nullopt));
         return s;
       },
       [](const PropertyScenario& s) {
         Correspondence e(s.x, {s.x}, s.cycles[0]);
         auto [n, idem] = idempotent_power(e);
         (void)n;
         Matrix p = matrix_form(idem);
         if (!(p * p == p)) return false;
         if (idem.is_zero()) return true;
         // restricted to the minimal-codimension rows as well
         CdminReport r = cdmin(idem);
         Matrix sq = p * p;
         for (std::size_t i = 0; i < p.rows(); ++i) {
           if (s.x->codim(i) != r.value) continue;
           for (std::size_t j = 0; j < p.cols(); ++j)
             if (!(sq.at(i, j) == p.at(i, j))) return false;
         }
         return true;
       }});

  return props;
}

}  // namespace detail

/// One deterministic campaign: `count` iterations of fresh algebra pairs,
/// every law checked on each. Stops at the first failure with a minimized
/// counterexample.
inline PropertyReport run_property_suite(std::uint64_t seed, std::uint64_t count,
                                         const AlgebraBounds& bounds = {}) {
  PropertyReport report;
  report.seed = seed;
  report.requested = count;
  Rng rng(seed);
  auto properties = detail::all_properties();
  std::vector<std::uint64_t> pass_counts(properties.size(), 0);

  for (std::uint64_t iter = 0; iter < count; ++iter) {
    std::uint64_t m = bounds.moduli[rng.below(bounds.moduli.size())];
    AlgebraPtr x = random_split_algebra(rng, bounds, report.generation, m, "A");
    AlgebraPtr y = random_split_algebra(rng, bounds, report.generation, m, "B");
    bool iteration_clean = true;
    for (std::size_t pi = 0; pi < properties.size(); ++pi) {
      PropertyScenario scenario = properties[pi].make(rng, x, y);
      bool ok;
      try {
        ok = properties[pi].holds(scenario);
      } catch (const Error&) {
        ok = false;
      }
      if (ok) {
        ++pass_counts[pi];
        continue;
      }
      iteration_clean = false;
      PropertyScenario minimal =
          detail::shrink_scenario(scenario, properties[pi].holds);
      report.counterexample = PropertyCounterexample{
          properties[pi].name, iter, detail::describe_scenario(minimal)};
      break;
    }
    if (!iteration_clean) break;
    ++report.completed;
  }
  for (std::size_t pi = 0; pi < properties.size(); ++pi)
    report.passes.push_back({properties[pi].name, pass_counts[pi]});
  return report;
}

/// Names accepted by the fault-injection switch.
inline const std::vector<std::string>& mutation_names() {
  static const std::vector<std::string> names{
      "degree-contraction", "composition-order", "epsilon-slot",
      "diagonal-intersection"};
  return names;
}

inline testing::FaultSet mutation_by_name(const std::string& name) {
  testing::FaultSet f;
  if (name == "degree-contraction") f.pushforward_ignores_degree = true;
  else if (name == "composition-order") f.swap_composition_order = true;
  else if (name == "epsilon-slot") f.epsilon_wrong_slot = true;
  else if (name == "diagonal-intersection") f.diagonal_skips_intersection = true;
  else throw Error("unknown mutation '" + name + "'");
  return f;
}

/// Run the suite with one deliberate corruption switched on; a healthy
/// suite finds a counterexample quickly.
inline PropertyReport run_mutated_suite(const std::string& mutation,
                                        std::uint64_t seed, std::uint64_t count,
                                        const AlgebraBounds& bounds = {}) {
  testing::FaultGuard guard(mutation_by_name(mutation));
  return run_property_suite(seed, count, bounds);
}

}  // namespace chow
