#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "chow/errors.hpp"

// Exact arithmetic and linear algebra over Z/m for arbitrary m >= 2,
// composite moduli included. Linear solving goes through the integer
// Smith normal form of a lift, never through naive Gaussian elimination,
// so zero divisors are handled exactly.

namespace chow {

class Modulus {
 public:
  explicit Modulus(std::uint64_t m) : m_(m) {
    if (m < 2) throw Error("modulus must be at least 2, got " + std::to_string(m));
  }
  std::uint64_t value() const { return m_; }
  friend bool operator==(const Modulus&, const Modulus&) = default;

 private:
  std::uint64_t m_;
};

namespace detail {

inline std::uint64_t reduce_signed(std::int64_t v, std::uint64_t m) {
  std::int64_t r = v % static_cast<std::int64_t>(m);
  if (r < 0) r += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(r);
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % m);
}

// Extended gcd on int64 lifts: returns (g, s, t) with s*a + t*b = g >= 0.
struct Xgcd {
  std::int64_t g, s, t;
};

inline Xgcd xgcd(std::int64_t a, std::int64_t b) {
  std::int64_t s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    std::int64_t q = a / b;
    std::int64_t r = a - q * b;
    a = b;
    b = r;
    std::int64_t s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
    std::int64_t t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (a < 0) return {-a, -s0, -t0};
  return {a, s0, t0};
}

}  // namespace detail

/// A canonical residue in [0, m) tagged with its modulus.
class Scalar {
 public:
  Scalar(std::uint64_t value, Modulus m) : v_(value % m.value()), m_(m) {}

  static Scalar zero(Modulus m) { return Scalar(0, m); }
  static Scalar one(Modulus m) { return Scalar(1, m); }
  static Scalar from_int(std::int64_t value, Modulus m) {
    return Scalar(detail::reduce_signed(value, m.value()), m);
  }

  std::uint64_t value() const { return v_; }
  Modulus modulus() const { return m_; }
  bool is_zero() const { return v_ == 0; }

  bool is_unit() const { return std::gcd(v_, m_.value()) == 1; }

  Scalar operator+(const Scalar& o) const {
    check(o);
    std::uint64_t m = m_.value();
    std::uint64_t s = v_ + o.v_;  // both < m <= 2^63ish, no overflow for m < 2^63
    if (s >= m) s -= m;
    return Scalar(s, m_);
  }
  Scalar operator-(const Scalar& o) const {
    check(o);
    std::uint64_t m = m_.value();
    return Scalar(v_ >= o.v_ ? v_ - o.v_ : v_ + m - o.v_, m_);
  }
  Scalar operator*(const Scalar& o) const {
    check(o);
    return Scalar(detail::mulmod(v_, o.v_, m_.value()), m_);
  }
  Scalar operator-() const {
    return Scalar(v_ == 0 ? 0 : m_.value() - v_, m_);
  }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    a.check(b);
    return a.v_ == b.v_;
  }

  /// Multiplicative inverse; throws NotInvertible when gcd(v, m) != 1.
  Scalar inverse() const {
    auto [g, s, t] = detail::xgcd(static_cast<std::int64_t>(v_),
                                  static_cast<std::int64_t>(m_.value()));
    (void)t;
    if (g != 1) throw NotInvertible(v_);
    return Scalar(detail::reduce_signed(s, m_.value()), m_);
  }

  Scalar pow(std::uint64_t e) const {
    Scalar acc = one(m_), base = *this;
    while (e > 0) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

 private:
  void check(const Scalar& o) const {
    if (!(m_ == o.m_)) throw ModulusMismatch(m_.value(), o.m_.value());
  }

  std::uint64_t v_;
  Modulus m_;
};

inline bool is_unit(const Scalar& a) { return a.is_unit(); }

/// Dense row-major matrix over Z/m. All entries share one modulus.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, Modulus m)
      : rows_(rows), cols_(cols), m_(m), data_(rows * cols, 0) {}

  static Matrix identity(std::size_t n, Modulus m) {
    Matrix eye(n, n, m);
    for (std::size_t i = 0; i < n; ++i) eye.data_[i * n + i] = 1;
    return eye;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Modulus modulus() const { return m_; }
  bool is_square() const { return rows_ == cols_; }

  Scalar at(std::size_t r, std::size_t c) const {
    return Scalar(data_[r * cols_ + c], m_);
  }
  void set(std::size_t r, std::size_t c, const Scalar& v) {
    if (!(v.modulus() == m_)) throw ModulusMismatch(m_.value(), v.modulus().value());
    data_[r * cols_ + c] = v.value();
  }
  void set(std::size_t r, std::size_t c, std::int64_t v) {
    data_[r * cols_ + c] = detail::reduce_signed(v, m_.value());
  }

  bool is_zero() const {
    for (auto v : data_)
      if (v != 0) return false;
    return true;
  }

  Matrix operator+(const Matrix& o) const {
    require_same_shape(o);
    Matrix r(rows_, cols_, m_);
    for (std::size_t i = 0; i < data_.size(); ++i) {
      std::uint64_t s = data_[i] + o.data_[i];
      if (s >= m_.value()) s -= m_.value();
      r.data_[i] = s;
    }
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    require_same_shape(o);
    Matrix r(rows_, cols_, m_);
    for (std::size_t i = 0; i < data_.size(); ++i) {
      std::uint64_t a = data_[i], b = o.data_[i];
      r.data_[i] = a >= b ? a - b : a + m_.value() - b;
    }
    return r;
  }

  Matrix operator*(const Matrix& o) const {
    if (!(m_ == o.m_)) throw ModulusMismatch(m_.value(), o.m_.value());
    if (cols_ != o.rows_)
      throw Error("matrix product shape mismatch: " + shape() + " * " + o.shape());
    Matrix r(rows_, o.cols_, m_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        std::uint64_t a = data_[i * cols_ + k];
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          std::uint64_t prod = detail::mulmod(a, o.data_[k * o.cols_ + j], m_.value());
          std::uint64_t s = r.data_[i * o.cols_ + j] + prod;
          if (s >= m_.value()) s -= m_.value();
          r.data_[i * o.cols_ + j] = s;
        }
      }
    return r;
  }

  Matrix scaled(const Scalar& c) const {
    Matrix r(rows_, cols_, m_);
    for (std::size_t i = 0; i < data_.size(); ++i)
      r.data_[i] = detail::mulmod(data_[i], c.value(), m_.value());
    return r;
  }

  Matrix transposed() const {
    Matrix r(cols_, rows_, m_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        r.data_[j * rows_ + i] = data_[i * cols_ + j];
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.m_ == b.m_ &&
           a.data_ == b.data_;
  }

  /// Kronecker product, row-major pair order ((i,a),(j,b)) -> (i*rB+a, j*cB+b).
  static Matrix kronecker(const Matrix& a, const Matrix& b) {
    if (!(a.m_ == b.m_)) throw ModulusMismatch(a.m_.value(), b.m_.value());
    Matrix r(a.rows_ * b.rows_, a.cols_ * b.cols_, a.m_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) {
        std::uint64_t v = a.data_[i * a.cols_ + j];
        if (v == 0) continue;
        for (std::size_t x = 0; x < b.rows_; ++x)
          for (std::size_t y = 0; y < b.cols_; ++y)
            r.data_[(i * b.rows_ + x) * r.cols_ + (j * b.cols_ + y)] =
                detail::mulmod(v, b.data_[x * b.cols_ + y], a.m_.value());
      }
    return r;
  }

 private:
  void require_same_shape(const Matrix& o) const {
    if (!(m_ == o.m_)) throw ModulusMismatch(m_.value(), o.m_.value());
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw Error("matrix shape mismatch: " + shape() + " vs " + o.shape());
  }
  std::string shape() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

  std::size_t rows_, cols_;
  Modulus m_;
  std::vector<std::uint64_t> data_;
};

namespace detail {

// ---------------------------------------------------------------------------
// Integer Smith normal form. Entries live in 128-bit integers and every
// product is checked: transform-matrix growth, while tame at the sizes this
// engine sees, is not formally bounded.
// ---------------------------------------------------------------------------

using WideInt = __int128;

inline WideInt checked_mul(WideInt a, WideInt b) {
  WideInt r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Error("integer overflow during Smith reduction");
  return r;
}

inline WideInt checked_add(WideInt a, WideInt b) {
  WideInt r;
  if (__builtin_add_overflow(a, b, &r))
    throw Error("integer overflow during Smith reduction");
  return r;
}

/// Canonical residue of a (possibly negative) wide integer.
inline std::uint64_t reduce_wide(WideInt v, std::uint64_t m) {
  WideInt r = v % static_cast<WideInt>(m);
  if (r < 0) r += static_cast<WideInt>(m);
  return static_cast<std::uint64_t>(r);
}

using IntMat = std::vector<std::vector<WideInt>>;

inline IntMat int_identity(std::size_t n) {
  IntMat eye(n, std::vector<WideInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) eye[i][i] = 1;
  return eye;
}

/// U * A_input * V = diag(d_1..d_r, 0..), d_1 | d_2 | ... | d_r, d_i > 0.
/// sign is det(U)*det(V) in {+1,-1}; both transforms are unimodular.
struct SmithForm {
  IntMat u, v;
  std::vector<WideInt> diag;
  int sign = 1;
};

inline SmithForm smith_form(IntMat a) {
  const std::size_t nr = a.size();
  const std::size_t nc = nr == 0 ? 0 : a[0].size();
  SmithForm out;
  out.u = int_identity(nr);
  out.v = int_identity(nc);

  auto row_op = [&](std::size_t i, std::size_t j, WideInt q) {
    // row_i -= q * row_j, mirrored in U
    for (std::size_t k = 0; k < nc; ++k)
      a[i][k] = checked_add(a[i][k], -checked_mul(q, a[j][k]));
    for (std::size_t k = 0; k < nr; ++k)
      out.u[i][k] = checked_add(out.u[i][k], -checked_mul(q, out.u[j][k]));
  };
  auto col_op = [&](std::size_t i, std::size_t j, WideInt q) {
    // col_i -= q * col_j, mirrored in V
    for (std::size_t k = 0; k < nr; ++k)
      a[k][i] = checked_add(a[k][i], -checked_mul(q, a[k][j]));
    for (std::size_t k = 0; k < nc; ++k)
      out.v[k][i] = checked_add(out.v[k][i], -checked_mul(q, out.v[k][j]));
  };
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(a[i], a[j]);
    std::swap(out.u[i], out.u[j]);
    out.sign = -out.sign;
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < nr; ++k) std::swap(a[k][i], a[k][j]);
    for (std::size_t k = 0; k < nc; ++k) std::swap(out.v[k][i], out.v[k][j]);
    out.sign = -out.sign;
  };
  auto negate_row = [&](std::size_t i) {
    for (std::size_t k = 0; k < nc; ++k) a[i][k] = -a[i][k];
    for (std::size_t k = 0; k < nr; ++k) out.u[i][k] = -out.u[i][k];
    out.sign = -out.sign;
  };

  std::size_t t = 0;
  while (t < nr && t < nc) {
    // pick the nonzero entry of smallest magnitude in the trailing block
    std::size_t pr = nr, pc = nc;
    WideInt best = 0;
    for (std::size_t i = t; i < nr; ++i)
      for (std::size_t j = t; j < nc; ++j) {
        WideInt v = a[i][j] < 0 ? -a[i][j] : a[i][j];
        if (v != 0 && (best == 0 || v < best)) {
          best = v;
          pr = i;
          pc = j;
        }
      }
    if (best == 0) break;  // trailing block vanished
    swap_rows(t, pr);
    swap_cols(t, pc);
    if (a[t][t] < 0) negate_row(t);

    bool clean = true;
    for (std::size_t i = t + 1; i < nr; ++i)
      if (a[i][t] != 0) {
        row_op(i, t, a[i][t] / a[t][t]);
        if (a[i][t] != 0) clean = false;
      }
    for (std::size_t j = t + 1; j < nc; ++j)
      if (a[t][j] != 0) {
        col_op(j, t, a[t][j] / a[t][t]);
        if (a[t][j] != 0) clean = false;
      }
    if (!clean) continue;  // remainders left; rerun with a smaller pivot

    // divisibility: the pivot must divide every entry of the trailing block
    bool divides = true;
    for (std::size_t i = t + 1; i < nr && divides; ++i)
      for (std::size_t j = t + 1; j < nc && divides; ++j)
        if (a[i][j] % a[t][t] != 0) {
          row_op(t, i, -1);  // fold row i into row t and restart this pivot
          divides = false;
        }
    if (!divides) continue;
    ++t;
  }
  for (std::size_t i = 0; i < t; ++i) out.diag.push_back(a[i][i]);
  return out;
}

inline IntMat lift(const Matrix& m) {
  IntMat a(m.rows(), std::vector<WideInt>(m.cols(), 0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      a[i][j] = static_cast<WideInt>(m.at(i, j).value());
  return a;
}

/// det(A) mod m, from the invariant factors and the tracked transform sign.
inline std::uint64_t det_mod(const SmithForm& sf, std::size_t n, std::uint64_t m) {
  if (sf.diag.size() < n) return 0;
  std::uint64_t d = 1;
  for (auto f : sf.diag) d = mulmod(d, reduce_wide(f, m), m);
  if (sf.sign < 0) d = (m - d) % m;
  return d;
}

// ---------------------------------------------------------------------------
// Howell form over Z/m: the canonical echelon shape for submodules of
// (Z/m)^n. Used to pick the lexicographically smallest solution of a
// linear system and reused by rational-structure audits.
// ---------------------------------------------------------------------------

using ModRow = std::vector<std::uint64_t>;

/// A unit u of Z/m with u*a == gcd(a, m) mod m.
inline std::uint64_t normalizing_unit(std::uint64_t a, std::uint64_t m) {
  std::uint64_t g = std::gcd(a, m);
  if (g == 0) return 1;
  std::uint64_t a1 = (a / g) % (m / g);
  auto [gg, s, t] = xgcd(static_cast<std::int64_t>(a1),
                         static_cast<std::int64_t>(m / g));
  (void)t;
  (void)gg;
  std::uint64_t u0 = reduce_signed(s, m / g);
  for (std::uint64_t k = 0;; ++k) {
    std::uint64_t cand = u0 + k * (m / g);
    if (cand >= m) cand %= m;
    if (cand != 0 && std::gcd(cand, m) == 1) return cand;
  }
}

inline std::size_t leading_col(const ModRow& r) {
  for (std::size_t j = 0; j < r.size(); ++j)
    if (r[j] != 0) return j;
  return r.size();
}

inline ModRow row_combine(const ModRow& x, std::uint64_t cx, const ModRow& y,
                          std::uint64_t cy, std::uint64_t m) {
  ModRow r(x.size());
  for (std::size_t j = 0; j < x.size(); ++j)
    r[j] = (mulmod(cx, x[j], m) + mulmod(cy, y[j], m)) % m;
  return r;
}

inline std::vector<ModRow> howell_form(std::vector<ModRow> rows, std::uint64_t m) {
  std::vector<ModRow> result;
  if (rows.empty()) return result;
  const std::size_t n = rows[0].size();
  std::vector<ModRow> active;
  for (auto& r : rows)
    if (leading_col(r) < n) active.push_back(std::move(r));

  for (std::size_t col = 0; col < n; ++col) {
    std::vector<ModRow> here, later;
    for (auto& r : active) {
      (leading_col(r) == col ? here : later).push_back(std::move(r));
    }
    active = std::move(later);
    if (here.empty()) continue;

    ModRow pivot = std::move(here[0]);
    for (std::size_t i = 1; i < here.size(); ++i) {
      const ModRow& r = here[i];
      auto [g, s, t] = xgcd(static_cast<std::int64_t>(pivot[col]),
                            static_cast<std::int64_t>(r[col]));
      ModRow merged = row_combine(pivot, reduce_signed(s, m), r,
                                  reduce_signed(t, m), m);
      // the discarded combination has a zero in this column
      ModRow rest = row_combine(r, pivot[col] / static_cast<std::uint64_t>(g),
                                pivot, m - (r[col] / static_cast<std::uint64_t>(g)) % m,
                                m);
      pivot = std::move(merged);
      if (leading_col(rest) < n) active.push_back(std::move(rest));
    }
    std::uint64_t u = normalizing_unit(pivot[col], m);
    for (auto& v : pivot) v = mulmod(v, u, m);

    // Howell closure: (m/pivot)*row has leading column further right and
    // must stay representable by later rows.
    std::uint64_t d = pivot[col];
    ModRow stab(n, 0);
    std::uint64_t f = m / d;
    for (std::size_t j = 0; j < n; ++j) stab[j] = mulmod(f, pivot[j], m);
    if (leading_col(stab) < n) active.push_back(std::move(stab));

    result.push_back(std::move(pivot));
  }

  // reduce entries above each pivot modulo the pivot value
  for (std::size_t j = 1; j < result.size(); ++j) {
    std::size_t c = leading_col(result[j]);
    std::uint64_t d = result[j][c];
    for (std::size_t i = 0; i < j; ++i) {
      std::uint64_t q = result[i][c] / d;
      if (q == 0) continue;
      for (std::size_t k = 0; k < n; ++k) {
        std::uint64_t sub = mulmod(q, result[j][k], m);
        result[i][k] = (result[i][k] + m - sub) % m;
      }
    }
  }
  return result;
}

}  // namespace detail

/// Inverse over Z/m via the Smith form of an integer lift.
/// Throws NotInvertible carrying det(A) mod m when the determinant is
/// not a unit; this is how a degenerate pairing is detected upstream.
inline Matrix mat_inverse(const Matrix& a) {
  if (!a.is_square()) throw Error("mat_inverse needs a square matrix");
  const std::size_t n = a.rows();
  const std::uint64_t m = a.modulus().value();
  detail::SmithForm sf = detail::smith_form(detail::lift(a));
  std::uint64_t det = detail::det_mod(sf, n, m);
  if (std::gcd(det, m) != 1) throw NotInvertible(det);

  // D = U A V with every invariant factor a unit mod m, so
  // A^{-1} = V D^{-1} U.
  Matrix inv(n, n, a.modulus());
  std::vector<std::uint64_t> dinv(n);
  for (std::size_t i = 0; i < n; ++i)
    dinv[i] = Scalar(detail::reduce_wide(sf.diag[i], m), a.modulus()).inverse().value();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < n; ++k) {
        std::uint64_t vik = detail::reduce_wide(sf.v[i][k], m);
        std::uint64_t ukj = detail::reduce_wide(sf.u[k][j], m);
        acc = (acc + detail::mulmod(vik, detail::mulmod(dinv[k], ukj, m), m)) % m;
      }
      inv.set(i, j, Scalar(acc, a.modulus()));
    }
  return inv;
}

/// Solve A x = b over Z/m. Returns the canonical representative: the
/// lexicographically smallest solution vector per column of b (after a
/// Smith-form particular solution, the kernel is put in Howell form and
/// greedily reduced). Returns nullopt when no solution exists.
inline std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows())
    throw Error("solve: row count mismatch between matrix and right-hand side");
  if (!(a.modulus() == b.modulus()))
    throw ModulusMismatch(a.modulus().value(), b.modulus().value());
  const std::size_t nr = a.rows(), nc = a.cols();
  const std::uint64_t m = a.modulus().value();
  if (nr == 0) return Matrix(nc, b.cols(), a.modulus());  // 0 = 0, pick x = 0
  detail::SmithForm sf = detail::smith_form(detail::lift(a));
  const std::size_t r = sf.diag.size();

  // kernel generators of A mod m, expressed through V
  std::vector<detail::ModRow> kernel;
  for (std::size_t i = 0; i < nc; ++i) {
    std::uint64_t f = 1;
    if (i < r) {
      std::uint64_t di = detail::reduce_wide(sf.diag[i], m);
      std::uint64_t g = std::gcd(di, m);
      if (g == 0) g = m;
      f = m / g;
      if (f % m == 0) continue;  // column contributes nothing mod m
    }
    detail::ModRow gen(nc);
    for (std::size_t k = 0; k < nc; ++k)
      gen[k] = detail::mulmod(f, detail::reduce_wide(sf.v[k][i], m), m);
    kernel.push_back(std::move(gen));
  }
  std::vector<detail::ModRow> hw = detail::howell_form(std::move(kernel), m);

  Matrix x(nc, b.cols(), a.modulus());
  for (std::size_t col = 0; col < b.cols(); ++col) {
    // z solves D z = U b
    std::vector<std::uint64_t> ub(nr, 0);
    for (std::size_t i = 0; i < nr; ++i) {
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < nr; ++k) {
        std::uint64_t uik = detail::reduce_wide(sf.u[i][k], m);
        acc = (acc + detail::mulmod(uik, b.at(k, col).value(), m)) % m;
      }
      ub[i] = acc;
    }
    std::vector<std::uint64_t> z(nc, 0);
    bool ok = true;
    for (std::size_t i = 0; i < nr && ok; ++i) {
      if (i < r) {
        std::uint64_t di = detail::reduce_wide(sf.diag[i], m);
        std::uint64_t g = std::gcd(di, m);
        if (g == 0) g = m;
        if (ub[i] % g != 0) {
          ok = false;
          break;
        }
        // d_i z = ub_i (mod m): divide through by g, invert the unit part
        std::uint64_t mg = m / g;
        if (mg == 1) {
          z[i] = 0;
        } else {
          Scalar unit_part(di / g, Modulus(mg));
          std::uint64_t zi =
              detail::mulmod((ub[i] / g) % mg, unit_part.inverse().value(), mg);
          z[i] = zi;
        }
      } else if (ub[i] % m != 0) {
        ok = false;
      }
    }
    if (!ok) return std::nullopt;

    std::vector<std::uint64_t> xs(nc, 0);
    for (std::size_t k = 0; k < nc; ++k) {
      std::uint64_t acc = 0;
      for (std::size_t i = 0; i < nc; ++i) {
        std::uint64_t vki = detail::reduce_wide(sf.v[k][i], m);
        acc = (acc + detail::mulmod(vki, z[i], m)) % m;
      }
      xs[k] = acc;
    }
    // lexicographic minimum over the solution coset
    for (const auto& h : hw) {
      std::size_t c = detail::leading_col(h);
      std::uint64_t d = h[c];
      std::uint64_t q = xs[c] / d;
      if (q == 0) continue;
      for (std::size_t k = 0; k < nc; ++k)
        xs[k] = (xs[k] + m - detail::mulmod(q, h[k], m)) % m;
    }
    for (std::size_t k = 0; k < nc; ++k) x.set(k, col, Scalar(xs[k], a.modulus()));
  }
  return x;
}

}  // namespace chow
