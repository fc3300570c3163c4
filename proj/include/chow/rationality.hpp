#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chow/correspondence.hpp"
#include "chow/cycles.hpp"
#include "chow/errors.hpp"
#include "chow/modring.hpp"

// Declared rationality: finitely generated submodules of cycle groups that
// stand in for "defined over F" / "defined over E". The engine never derives
// fields of definition; it audits the declarations. Membership is exact
// linear algebra through the Smith-form solver.

namespace chow {

enum class FieldLabel { F, E, FX, EX, Split };

inline std::string to_string(FieldLabel l) {
  switch (l) {
    case FieldLabel::F: return "F";
    case FieldLabel::E: return "E";
    case FieldLabel::FX: return "F(X)";
    case FieldLabel::EX: return "E(X)";
    case FieldLabel::Split: return "split";
  }
  return "?";
}

inline std::optional<FieldLabel> parse_field_label(const std::string& s) {
  if (s == "F") return FieldLabel::F;
  if (s == "E") return FieldLabel::E;
  if (s == "F(X)") return FieldLabel::FX;
  if (s == "E(X)") return FieldLabel::EX;
  if (s == "split") return FieldLabel::Split;
  return std::nullopt;
}

class RationalStructure {
 public:
  RationalStructure(ProductSpace space, FieldLabel label,
                    std::vector<CycleClass> generators)
      : space_(std::move(space)),
        label_(label),
        generators_(std::move(generators)),
        gen_matrix_(space_.entry_count(), generators_.size(), space_.modulus()) {
    for (std::size_t g = 0; g < generators_.size(); ++g) {
      if (!(generators_[g].space() == space_))
        throw SpaceMismatch("rational-structure generator lives on the wrong space");
      for (std::size_t e = 0; e < space_.entry_count(); ++e)
        gen_matrix_.set(e, g, generators_[g].at_flat(e));
    }
  }

  const ProductSpace& space() const { return space_; }
  FieldLabel label() const { return label_; }
  const std::vector<CycleClass>& generators() const { return generators_; }

  /// Exact membership: is c a Z/m-combination of the generators?
  bool contains(const CycleClass& c) const {
    if (!(c.space() == space_))
      throw SpaceMismatch("membership test against a different space");
    Matrix b(space_.entry_count(), 1, space_.modulus());
    for (std::size_t e = 0; e < space_.entry_count(); ++e)
      b.set(e, 0, c.at_flat(e));
    return solve(gen_matrix_, b).has_value();
  }

  /// Every generator of `sub` lies in this span.
  bool contains_structure(const RationalStructure& sub) const {
    for (const auto& g : sub.generators())
      if (!contains(g)) return false;
    return true;
  }

 private:
  ProductSpace space_;
  FieldLabel label_;
  std::vector<CycleClass> generators_;
  Matrix gen_matrix_;
};

struct ClosureViolation {
  std::string operation;
  std::size_t first_generator = 0;
  std::size_t second_generator = 0;  // unused for one-argument operations
  std::string detail;
};

/// Which closure properties to audit, and where images are expected to land.
/// Null targets switch an audit off.
struct ClosureOps {
  bool composition = false;  // pairwise composition of endomorphism generators
  const RationalStructure* transpose_into = nullptr;
  const RationalStructure* epsilon_into = nullptr;
  const RationalStructure* diagonal_into = nullptr;
  // composition with a fixed correspondence applied first, landing in:
  const Correspondence* after_fixed = nullptr;
  const RationalStructure* after_fixed_into = nullptr;
};

/// Audit the declared closures generator-by-generator.
inline std::vector<ClosureViolation> check_closure(const RationalStructure& r,
                                                   const ClosureOps& ops) {
  std::vector<ClosureViolation> out;
  const auto& gens = r.generators();

  if (ops.composition) {
    if (r.space().arity() != 2 || r.space().factor(0) != r.space().factor(1))
      throw SpaceMismatch("composition closure needs an endomorphism space");
    const AlgebraPtr& x = r.space().factor(0);
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = 0; j < gens.size(); ++j) {
        Correspondence a(x, {x}, gens[i]), b(x, {x}, gens[j]);
        if (!r.contains(compose(a, b).cycle()))
          out.push_back({"compose", i, j,
                         "composition of generators leaves the span"});
      }
  }
  if (ops.transpose_into) {
    if (r.space().arity() != 2)
      throw SpaceMismatch("transpose closure needs a two-factor space");
    const AlgebraPtr& a = r.space().factor(0);
    const AlgebraPtr& b = r.space().factor(1);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Correspondence u(a, {b}, gens[i]);
      if (!ops.transpose_into->contains(transpose(u).cycle()))
        out.push_back({"transpose", i, 0, "transpose of generator leaves the span"});
    }
  }
  if (ops.epsilon_into) {
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (!ops.epsilon_into->contains(epsilon_pullback(gens[i])))
        out.push_back({"epsilon", i, 0,
                       "generic-fiber pullback of generator leaves the span"});
  }
  if (ops.diagonal_into) {
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (!ops.diagonal_into->contains(diagonal_pullback(gens[i])))
        out.push_back({"diagonal", i, 0,
                       "diagonal pullback of generator leaves the span"});
  }
  if (ops.after_fixed && ops.after_fixed_into) {
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const AlgebraPtr& src = ops.after_fixed->source();
      std::vector<AlgebraPtr> rest(r.space().factors().begin() + 1,
                                   r.space().factors().end());
      if (r.space().factor(0) != ops.after_fixed->target())
        throw SpaceMismatch("fixed-composition closure does not type-check");
      Correspondence gen_corr(r.space().factor(0), rest, gens[i]);
      (void)src;
      if (!ops.after_fixed_into->contains(
              compose(*ops.after_fixed, gen_corr).cycle()))
        out.push_back({"compose-fixed", i, 0,
                       "composition with the fixed correspondence leaves the span"});
    }
  }
  return out;
}

/// Does the declared F(X)-structure surject onto the declared E(X)-structure?
/// True iff every E(X) generator is already F(X)-rational; this is how the
/// purely-transcendental hypothesis enters the engine.
inline bool restriction_epi_check(const RationalStructure& r_fx,
                                  const RationalStructure& r_ex) {
  if (!(r_fx.space() == r_ex.space()))
    throw SpaceMismatch("restriction check across different spaces");
  if (r_fx.label() != FieldLabel::FX || r_ex.label() != FieldLabel::EX)
    throw Error("restriction check expects F(X) and E(X) structures");
  return r_fx.contains_structure(r_ex);
}

}  // namespace chow
