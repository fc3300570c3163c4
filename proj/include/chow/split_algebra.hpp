#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chow/errors.hpp"
#include "chow/modring.hpp"

// Model of the Chow ring of a geometrically split variety with coefficients
// in Z/m: a free module on a homogeneous basis x_0..x_n carrying the
// intersection product as structure constants, a degree functional supported
// in dimension zero, and the induced non-degenerate Gram pairing
// G_ij = deg(x_i * x_j).

namespace chow {

/// Coefficient vector in the basis x_0..x_n of one algebra.
using AlgElem = std::vector<Scalar>;

struct MultEntry {
  std::size_t i, j, k;
  std::int64_t value;
};

struct AlgebraViolation {
  std::string axiom;                 // e.g. "associativity"
  std::vector<std::size_t> witness;  // offending basis indices
  std::string detail;
};

class SplitAlgebra {
 public:
  SplitAlgebra(std::string name, Modulus m, std::size_t dim,
               std::vector<std::size_t> phi, std::size_t unit_index,
               std::vector<Scalar> degree, const std::vector<MultEntry>& mult)
      : name_(std::move(name)),
        m_(m),
        dim_(dim),
        phi_(std::move(phi)),
        unit_(unit_index),
        degree_(std::move(degree)),
        table_(phi_.size() * phi_.size()),
        gram_(0, 0, m) {
    const std::size_t n = phi_.size();
    if (n == 0) throw Error("algebra '" + name_ + "' needs at least one basis element");
    if (unit_ >= n) throw Error("algebra '" + name_ + "': unit index out of range");
    if (degree_.size() != n)
      throw Error("algebra '" + name_ + "': degree table size mismatch");
    for (std::size_t i = 0; i < n; ++i) {
      if (phi_[i] > dim_)
        throw Error("algebra '" + name_ + "': phi exceeds the variety dimension");
      if (!(degree_[i].modulus() == m_))
        throw ModulusMismatch(degree_[i].modulus().value(), m_.value());
    }
    if (phi_[unit_] != dim_)
      throw Error("algebra '" + name_ + "': the unit must sit in top dimension");
    for (const auto& e : mult) {
      if (e.i >= n || e.j >= n || e.k >= n)
        throw Error("algebra '" + name_ + "': product entry index out of range");
      Scalar v = Scalar::from_int(e.value, m_);
      if (v.is_zero()) continue;
      add_entry(e.i, e.j, e.k, v);
    }
    gram_ = compute_gram();
  }

  const std::string& name() const { return name_; }
  Modulus modulus() const { return m_; }
  std::size_t rank() const { return phi_.size(); }
  std::size_t dim() const { return dim_; }
  std::size_t phi(std::size_t i) const { return phi_[i]; }
  std::size_t codim(std::size_t i) const { return dim_ - phi_[i]; }
  std::size_t unit_index() const { return unit_; }
  Scalar degree_of_basis(std::size_t i) const { return degree_[i]; }

  /// Sparse product of two basis elements: x_i * x_j as (k, coefficient).
  const std::vector<std::pair<std::size_t, Scalar>>& product(std::size_t i,
                                                             std::size_t j) const {
    return table_[i * rank() + j];
  }

  AlgElem zero_element() const { return AlgElem(rank(), Scalar::zero(m_)); }
  AlgElem basis_element(std::size_t i) const {
    AlgElem e = zero_element();
    e[i] = Scalar::one(m_);
    return e;
  }
  AlgElem unit_element() const { return basis_element(unit_); }

  AlgElem multiply(const AlgElem& a, const AlgElem& b) const {
    require_elem(a);
    require_elem(b);
    AlgElem out = zero_element();
    for (std::size_t i = 0; i < rank(); ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < rank(); ++j) {
        if (b[j].is_zero()) continue;
        Scalar c = a[i] * b[j];
        for (const auto& [k, v] : product(i, j)) out[k] += c * v;
      }
    }
    return out;
  }

  Scalar deg(const AlgElem& a) const {
    require_elem(a);
    Scalar s = Scalar::zero(m_);
    for (std::size_t i = 0; i < rank(); ++i) s += degree_[i] * a[i];
    return s;
  }

  /// Poincare pairing deg(a * b); bilinear and symmetric.
  Scalar pairing(const AlgElem& a, const AlgElem& b) const {
    return deg(multiply(a, b));
  }

  const Matrix& gram() const { return gram_; }

  /// Dual basis coefficients D with x_j* = sum_i D_ij x_i, so that
  /// pairing(x_i, x_j*) is the Kronecker delta. Throws DegeneratePairing
  /// when the Gram matrix is singular over Z/m.
  const Matrix& dual_basis() const {
    std::call_once(dual_once_, [this] {
      try {
        dual_ = mat_inverse(gram_);
      } catch (const NotInvertible& e) {
        dual_error_ = e.det_residue();
      }
    });
    if (!dual_) throw DegeneratePairing(*dual_error_);
    return *dual_;
  }

  AlgElem dual_basis_element(std::size_t j) const {
    const Matrix& d = dual_basis();
    AlgElem e = zero_element();
    for (std::size_t i = 0; i < rank(); ++i) e[i] = d.at(i, j);
    return e;
  }

  std::vector<AlgebraViolation> validate() const {
    std::vector<AlgebraViolation> out;
    const std::size_t n = rank();
    auto coeff = [&](std::size_t i, std::size_t j, std::size_t k) {
      for (const auto& [kk, v] : product(i, j))
        if (kk == k) return v;
      return Scalar::zero(m_);
    };
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          Scalar c = coeff(i, j, k);
          if (!(c == coeff(j, i, k)))
            out.push_back({"commutativity", {i, j, k}, "c(i,j,k) != c(j,i,k)"});
          if (!c.is_zero()) {
            // grading: codimensions add, empty graded pieces force zero
            bool legal = phi_[i] + phi_[j] >= dim_ &&
                         phi_[k] == phi_[i] + phi_[j] - dim_;
            if (!legal)
              out.push_back({"grading", {i, j, k},
                             "nonzero product outside the graded slot"});
          }
        }
    // associativity via full triple products
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        AlgElem ij = multiply(basis_element(i), basis_element(j));
        for (std::size_t k = 0; k < n; ++k) {
          AlgElem left = multiply(ij, basis_element(k));
          AlgElem right =
              multiply(basis_element(i), multiply(basis_element(j), basis_element(k)));
          if (left != right) {
            out.push_back({"associativity", {i, j, k}, "(xi.xj).xk != xi.(xj.xk)"});
          }
        }
      }
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Scalar expected = j == k ? Scalar::one(m_) : Scalar::zero(m_);
        if (!(coeff(unit_, j, k) == expected))
          out.push_back({"unit", {unit_, j, k}, "x_unit . x_j != x_j"});
      }
    for (std::size_t i = 0; i < n; ++i)
      if (phi_[i] != 0 && !degree_[i].is_zero())
        out.push_back({"degree-support", {i}, "deg(x_i) != 0 with phi(i) > 0"});
    try {
      dual_basis();
    } catch (const DegeneratePairing&) {
      out.push_back({"poincare-duality", {}, "Gram matrix is singular over Z/m"});
    }
    return out;
  }

  friend std::shared_ptr<const SplitAlgebra> kunneth(
      const std::shared_ptr<const SplitAlgebra>& a,
      const std::shared_ptr<const SplitAlgebra>& b);

 private:
  void add_entry(std::size_t i, std::size_t j, std::size_t k, Scalar v) {
    auto& row = table_[i * rank() + j];
    for (auto& [kk, vv] : row)
      if (kk == k) {
        vv += v;
        return;
      }
    row.push_back({k, v});
  }

  void require_elem(const AlgElem& a) const {
    if (a.size() != rank())
      throw Error("element length " + std::to_string(a.size()) +
                  " does not match algebra rank " + std::to_string(rank()));
  }

  Matrix compute_gram() const {
    const std::size_t n = rank();
    Matrix g(n, n, m_);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Scalar s = Scalar::zero(m_);
        for (const auto& [k, v] : product(i, j)) s += degree_[k] * v;
        g.set(i, j, s);
      }
    return g;
  }

  std::string name_;
  Modulus m_;
  std::size_t dim_;
  std::vector<std::size_t> phi_;
  std::size_t unit_;
  std::vector<Scalar> degree_;
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> table_;
  Matrix gram_;
  mutable std::once_flag dual_once_;
  mutable std::optional<Matrix> dual_;
  mutable std::optional<std::uint64_t> dual_error_;
};

using AlgebraPtr = std::shared_ptr<const SplitAlgebra>;

/// Product algebra on basis pairs (i,a), flattened as i*rank(B)+a.
/// Structure constants, grading, degree and unit all multiply through.
inline AlgebraPtr kunneth(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (!(a->modulus() == b->modulus()))
    throw ModulusMismatch(a->modulus().value(), b->modulus().value());
  const std::size_t ra = a->rank(), rb = b->rank();
  const Modulus m = a->modulus();
  std::vector<std::size_t> phi(ra * rb);
  std::vector<Scalar> degree(ra * rb, Scalar::zero(m));
  for (std::size_t i = 0; i < ra; ++i)
    for (std::size_t x = 0; x < rb; ++x) {
      phi[i * rb + x] = a->phi(i) + b->phi(x);
      degree[i * rb + x] = a->degree_of_basis(i) * b->degree_of_basis(x);
    }
  std::vector<MultEntry> mult;
  for (std::size_t i = 0; i < ra; ++i)
    for (std::size_t j = 0; j < ra; ++j)
      for (const auto& [k, v] : a->product(i, j))
        for (std::size_t x = 0; x < rb; ++x)
          for (std::size_t y = 0; y < rb; ++y)
            for (const auto& [z, w] : b->product(x, y)) {
              Scalar c = v * w;
              if (!c.is_zero())
                mult.push_back({i * rb + x, j * rb + y, k * rb + z,
                                static_cast<std::int64_t>(c.value())});
            }
  return std::make_shared<SplitAlgebra>(
      a->name() + "*" + b->name(), m, a->dim() + b->dim(), std::move(phi),
      a->unit_index() * rb + b->unit_index(), std::move(degree), mult);
}

}  // namespace chow
