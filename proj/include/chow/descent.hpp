#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chow/correspondence.hpp"
#include "chow/cycles.hpp"
#include "chow/errors.hpp"
#include "chow/rationality.hpp"
#include "chow/split_algebra.hpp"

// The going-down construction as an executable, certifying procedure.
// Input: a projector p on X, witnesses f: X -> Y and g: Y -> X with
// g(f(.)) = p presenting (M(X), p) as a summand over the big field, and a
// declared-rational lift f1 of f along the generic-fiber pullback. Output:
// witnesses g_hat, f_hat inside the declared small-field structures with
// g_hat(f_hat(.)) = p, every intermediate identity checked exactly.

namespace chow {

/// One asserted identity of the pipeline failed. `step` is the pipeline
/// stage (hypotheses, lift-compose, diagonal, low-codim, idempotent,
/// transposed-*, final, ...), `detail` says what broke.
class StepFailure : public Error {
 public:
  StepFailure(std::string step, const std::string& detail)
      : Error("descent failed at step '" + step + "': " + detail),
        step_(std::move(step)) {}
  const std::string& step() const { return step_; }

 private:
  std::string step_;
};

/// A constructed cycle fell outside its declared rational structure.
class RationalityFailure : public Error {
 public:
  RationalityFailure(std::string cycle_name, FieldLabel label)
      : Error("cycle '" + cycle_name + "' is not in the declared " +
              to_string(label) + "-rational structure"),
        cycle_name_(std::move(cycle_name)),
        label_(label) {}
  const std::string& cycle_name() const { return cycle_name_; }
  FieldLabel label() const { return label_; }

 private:
  std::string cycle_name_;
  FieldLabel label_;
};

struct RationalContext {
  std::vector<RationalStructure> structures;

  const RationalStructure* find(FieldLabel label, const ProductSpace& space) const {
    for (const auto& s : structures)
      if (s.label() == label && s.space() == space) return &s;
    return nullptr;
  }
};

struct DescentInstance {
  AlgebraPtr x;
  AlgebraPtr y;
  Correspondence p;  // projector on X
  Correspondence f;  // X -> Y
  Correspondence g;  // Y -> X
  CycleClass f1;     // lift of f on X x Y x X
  /// Lift of the transposed derived witness used by the second run; when
  /// absent the tautological section (append the fundamental class) is used.
  std::optional<CycleClass> tg1_lift;
  RationalContext rational;
};

struct HypothesisViolation {
  std::string code;
  std::string detail;
};

struct HypothesisReport {
  std::vector<HypothesisViolation> violations;
  /// verified | inconclusive (cap exceeded) | violated | skipped (p = 0)
  std::string indecomposability = "skipped";
  bool trivial_zero = false;
};

/// Row support of f, column support of g, and the rows of minimal
/// codimension among them.
struct Supports {
  std::vector<std::size_t> f_rows;
  std::vector<std::size_t> g_cols;
  std::vector<std::size_t> minimal_rows;  // f rows at codim = cdmin(p)
};

struct CheckRecord {
  std::string name;
  bool passed = false;
  friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

struct DescentCertificate {
  bool trivial_zero = false;
  std::size_t cdmin_value = 0;
  Supports supports;
  std::uint64_t n1 = 0, n2 = 0, nbar = 0;
  std::optional<Correspondence> f2;      // X -> Y x X
  std::optional<Correspondence> f3;      // X -> Y
  std::optional<Correspondence> g1;      // Y -> X
  std::optional<Correspondence> g_tilde; // X -> Y, second-run diagonal image
  std::optional<Correspondence> g_hat;   // Y -> X
  std::optional<Correspondence> f_hat;   // X -> Y
  std::string indecomposability_check;
  std::vector<CheckRecord> checks;
};

/// n-fold composition power of an endomorphism, n >= 1, via exponentiation
/// by squaring on the dual-basis matrix (the change of basis is exact, so
/// the higher-codimension tail is carried along, not truncated).
inline Correspondence power(const Correspondence& u, std::uint64_t n) {
  if (!u.is_endo()) throw SpaceMismatch("powers require an endomorphism");
  if (n == 0) throw Error("power expects an exponent of at least 1");
  Matrix base = matrix_form(u);
  Matrix acc = Matrix::identity(base.rows(), base.modulus());
  while (n > 0) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return from_matrix(u.source(), acc);
}

/// True iff u agrees with p on every dual-basis row of codimension
/// cdmin(p).
inline bool low_codim_component_check(const Correspondence& u,
                                      const Correspondence& p) {
  CdminReport r = cdmin(p);
  Matrix mu = matrix_form(u), mp = matrix_form(p);
  const AlgebraPtr& x = p.source();
  for (std::size_t i = 0; i < mu.rows(); ++i) {
    if (x->codim(i) != r.value) continue;
    for (std::size_t j = 0; j < mu.cols(); ++j)
      if (!(mu.at(i, j) == mp.at(i, j))) return false;
  }
  return true;
}

/// True iff every row of u - p with a nonzero entry has codimension
/// strictly above cdmin(p).
inline bool tail_above_cdmin(const Correspondence& u, const Correspondence& p) {
  CdminReport r = cdmin(p);
  Matrix d = matrix_form(u) - matrix_form(p);
  const AlgebraPtr& x = p.source();
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (!d.at(i, j).is_zero() && x->codim(i) <= r.value) return false;
  return true;
}

namespace detail {

/// Column decomposition of g: elements v_j of CH(Y) with
/// g = sum_j v_j x x_j*. Row b of the raw tensor pairs against the Gram
/// matrix of X.
inline std::vector<AlgElem> column_decomposition(const Correspondence& g) {
  const AlgebraPtr& y = g.source();
  const AlgebraPtr& x = g.target();
  const Matrix& gram = x->gram();
  std::vector<AlgElem> cols(x->rank(), y->zero_element());
  for (std::size_t j = 0; j < x->rank(); ++j)
    for (std::size_t c = 0; c < y->rank(); ++c) {
      Scalar acc = Scalar::zero(y->modulus());
      for (std::size_t b = 0; b < x->rank(); ++b)
        acc += g.cycle().at({c, b}) * gram.at(j, b);
      cols[j][c] = acc;
    }
  return cols;
}

/// Row decomposition of f: elements u_i of CH(Y) with f = sum_i x_i x u_i.
inline std::vector<AlgElem> row_decomposition(const Correspondence& f) {
  const AlgebraPtr& x = f.source();
  const AlgebraPtr& y = f.target();
  std::vector<AlgElem> rows(x->rank(), y->zero_element());
  for (std::size_t i = 0; i < x->rank(); ++i)
    for (std::size_t b = 0; b < y->rank(); ++b)
      rows[i][b] = f.cycle().at({i, b});
  return rows;
}

/// The projector coefficients recomputed through the pairing formula
/// P_ij = deg_Y(v_j . u_i), an algebraic route independent of the
/// pullback-intersect-pushforward engine.
inline Matrix pairing_route_matrix(const Correspondence& f,
                                   const Correspondence& g) {
  const AlgebraPtr& x = f.source();
  const AlgebraPtr& y = f.target();
  auto rows = row_decomposition(f);
  auto cols = column_decomposition(g);
  Matrix out(x->rank(), x->rank(), x->modulus());
  for (std::size_t i = 0; i < x->rank(); ++i)
    for (std::size_t j = 0; j < x->rank(); ++j)
      out.set(i, j, y->pairing(cols[j], rows[i]));
  return out;
}

inline std::string serialize_matrix(const Matrix& m) {
  std::string s;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      s += std::to_string(m.at(i, j).value()) + ",";
  return s;
}

struct IndecomposabilityScan {
  std::string status;  // verified | inconclusive | violated
  std::string detail;
};

/// Desk-scale substitute for hypothesis (1): enumerate the composition
/// monoid generated by the declared E-rational endomorphisms (capped) and
/// look for an idempotent q with q.p = p.q = q other than 0 and p. The
/// pipeline never relies on this check alone; the idempotent-power step
/// verifies the needed consequence directly.
inline IndecomposabilityScan scan_indecomposability(
    const AlgebraPtr& x, const Matrix& p, const RationalStructure* endo_structure,
    std::size_t cap = 512) {
  IndecomposabilityScan out{"verified", ""};
  if (!endo_structure) {
    out.status = "inconclusive";
    out.detail = "no declared E-rational endomorphism structure";
    return out;
  }
  std::vector<Matrix> gens;
  for (const auto& gcycle : endo_structure->generators())
    gens.push_back(matrix_form(Correspondence(x, {x}, gcycle)));
  std::set<std::string> seen;
  std::vector<Matrix> frontier = gens;
  std::vector<Matrix> monoid;
  for (const auto& m : gens)
    if (seen.insert(serialize_matrix(m)).second) monoid.push_back(m);
  while (!frontier.empty()) {
    std::vector<Matrix> next;
    for (const auto& a : frontier)
      for (const auto& b : gens) {
        Matrix c = a * b;
        if (seen.insert(serialize_matrix(c)).second) {
          monoid.push_back(c);
          next.push_back(c);
          if (monoid.size() > cap) {
            out.status = "inconclusive";
            out.detail = "generated monoid exceeded the enumeration cap";
            return out;
          }
        }
      }
    frontier = std::move(next);
  }
  Matrix zero(p.rows(), p.cols(), p.modulus());
  for (const auto& q : monoid) {
    if (!(q * q == q)) continue;
    if (q == zero || q == p) continue;
    if (p * q == q && q * p == q) {
      out.status = "violated";
      out.detail = "found a proper nonzero sub-idempotent of the projector";
      return out;
    }
  }
  return out;
}

}  // namespace detail

inline Supports compute_supports(const DescentInstance& inst,
                                 std::size_t cdmin_value) {
  Supports s;
  const AlgebraPtr& x = inst.x;
  auto rows = detail::row_decomposition(inst.f);
  for (std::size_t i = 0; i < x->rank(); ++i)
    if (rows[i] != inst.y->zero_element()) s.f_rows.push_back(i);
  auto cols = detail::column_decomposition(inst.g);
  for (std::size_t j = 0; j < x->rank(); ++j)
    if (cols[j] != inst.y->zero_element()) s.g_cols.push_back(j);
  for (std::size_t i : s.f_rows)
    if (x->codim(i) == cdmin_value) s.minimal_rows.push_back(i);
  return s;
}

inline HypothesisReport check_hypotheses(const DescentInstance& inst) {
  HypothesisReport report;
  auto violation = [&](std::string code, std::string detail) {
    report.violations.push_back({std::move(code), std::move(detail)});
  };

  for (const auto& v : inst.x->validate())
    violation("algebra-X", v.axiom + ": " + v.detail);
  for (const auto& v : inst.y->validate())
    violation("algebra-Y", v.axiom + ": " + v.detail);
  if (!report.violations.empty()) return report;

  if (inst.p.source() != inst.x || !inst.p.is_endo())
    violation("shape", "p must be an endomorphism of X");
  if (inst.f.source() != inst.x || inst.f.has_product_target() ||
      inst.f.target() != inst.y)
    violation("shape", "f must map X to Y");
  if (inst.g.source() != inst.y || inst.g.has_product_target() ||
      inst.g.target() != inst.x)
    violation("shape", "g must map Y to X");
  if (!report.violations.empty()) return report;

  if (inst.p.is_zero()) {
    // the zero summand is trivially split; nothing else to demand
    report.trivial_zero = true;
    return report;
  }

  // homogeneity: p, f at dim X; g at dim Y; f1 at 2 dim X
  const std::size_t dx = inst.x->dim(), dy = inst.y->dim();
  auto homogeneous = [](const CycleClass& c, std::size_t d) {
    for (const auto& [idx, v] : c.support()) {
      (void)v;
      if (c.space().dim_of(idx) != d) return false;
    }
    return true;
  };
  if (!homogeneous(inst.p.cycle(), dx))
    violation("grading", "p is not homogeneous of the dimension of X");
  if (!homogeneous(inst.f.cycle(), dx))
    violation("grading", "f is not homogeneous of the dimension of X");
  if (!homogeneous(inst.g.cycle(), dy))
    violation("grading", "g is not homogeneous of the dimension of Y");
  if (!homogeneous(inst.f1, 2 * dx))
    violation("grading", "the lift of f is not homogeneous of twice the dimension of X");

  if (!verify_projector(inst.p)) violation("projector", "p composed with p differs from p");

  if (!(compose(inst.f, inst.g) == inst.p))
    violation("direct-summand", "g after f differs from p");

  // the same coefficients through the independent pairing route
  if (!(detail::pairing_route_matrix(inst.f, inst.g) == matrix_form(inst.p)))
    violation("projector-coefficients",
              "pairing-formula coefficients differ from the dual-basis matrix of p");

  ProductSpace lift_space({inst.x, inst.y, inst.x});
  if (!(inst.f1.space() == lift_space))
    violation("shape", "the lift of f must live on X x Y x X");
  else if (!(epsilon_pullback(inst.f1) == inst.f.cycle()))
    violation("epsilon-lift", "the declared lift does not restrict to f");

  if (inst.tg1_lift) {
    if (!(inst.tg1_lift->space() == lift_space))
      violation("shape", "the transposed-run lift must live on X x Y x X");
    if (!homogeneous(*inst.tg1_lift, dx + dy))
      violation("grading",
                "the transposed-run lift is not homogeneous of dim X + dim Y");
  }

  // declared rationality
  ProductSpace xx({inst.x, inst.x}), xy({inst.x, inst.y}), yx({inst.y, inst.x});
  auto member = [&](FieldLabel label, const ProductSpace& space,
                    const CycleClass& c, const char* what) {
    const RationalStructure* r = inst.rational.find(label, space);
    if (!r) {
      violation("missing-rational-structure",
                std::string(what) + ": no declared " + to_string(label) +
                    " structure on " + space.describe());
      return;
    }
    if (!r->contains(c))
      violation("rationality", std::string(what) + " is not " +
                                   to_string(label) + "-rational as declared");
  };
  member(FieldLabel::E, xy, inst.f.cycle(), "f");
  member(FieldLabel::E, yx, inst.g.cycle(), "g");
  member(FieldLabel::F, xx, inst.p.cycle(), "p");
  member(FieldLabel::F, lift_space, inst.f1, "lift of f");
  if (inst.tg1_lift)
    member(FieldLabel::F, lift_space, *inst.tg1_lift, "transposed-run lift");

  // declared inclusion chains, per space: F <= E, F <= F(X) <= E(X)
  for (const auto& s : inst.rational.structures) {
    auto check_chain = [&](FieldLabel small, FieldLabel big) {
      const RationalStructure* lo = inst.rational.find(small, s.space());
      const RationalStructure* hi = inst.rational.find(big, s.space());
      if (lo && hi && !hi->contains_structure(*lo))
        violation("inclusion-chain",
                  to_string(small) + " is not inside " + to_string(big) +
                      " on " + s.space().describe());
    };
    if (s.label() == FieldLabel::F) {
      check_chain(FieldLabel::F, FieldLabel::E);
      check_chain(FieldLabel::F, FieldLabel::FX);
    }
    if (s.label() == FieldLabel::FX) check_chain(FieldLabel::FX, FieldLabel::EX);
  }

  // hypothesis (2): declared F(X) -> E(X) surjectivity where both exist
  for (const auto& s : inst.rational.structures) {
    if (s.label() != FieldLabel::EX) continue;
    const RationalStructure* fx = inst.rational.find(FieldLabel::FX, s.space());
    if (fx && !restriction_epi_check(*fx, s))
      violation("restriction-not-epi",
                "declared E(X) classes on " + s.space().describe() +
                    " do not all come from F(X)");
  }

  // hypothesis (1), desk-scale scan
  auto scan = detail::scan_indecomposability(
      inst.x, matrix_form(inst.p), inst.rational.find(FieldLabel::E, xx));
  report.indecomposability = scan.status;
  if (scan.status == "violated") violation("decomposable", scan.detail);

  return report;
}

namespace detail {

/// Compact support dump of the difference of two endomorphisms, for
/// failure payloads.
inline std::string residual_description(const Correspondence& got,
                                        const Correspondence& want) {
  if (!got.is_endo() || !want.is_endo() || got.source() != want.source())
    return "";
  Matrix d = matrix_form(got) - matrix_form(want);
  std::string s;
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (!d.at(i, j).is_zero()) {
        if (!s.empty()) s += " ";
        s += "(" + std::to_string(i) + "," + std::to_string(j) +
             ")=" + std::to_string(d.at(i, j).value());
      }
  return s.empty() ? "" : " [residual: " + s + "]";
}

struct RunChecks {
  std::vector<CheckRecord>* sink;
  void record(const std::string& name, bool ok, const std::string& step,
              const std::string& fail_detail) {
    sink->push_back({name, ok});
    if (!ok) throw StepFailure(step, fail_detail);
  }
};

/// Audit one constructed cycle against a declared structure; absence of the
/// structure was already reported by check_hypotheses for the inputs, and
/// derived spaces fall back to a violation here.
inline void audit(const DescentInstance& inst, FieldLabel label,
                  const CycleClass& c, const std::string& name,
                  std::vector<CheckRecord>& checks) {
  const RationalStructure* r = inst.rational.find(label, c.space());
  bool ok = r && r->contains(c);
  checks.push_back({"rational(" + name + ", " + to_string(label) + ")", ok});
  if (!ok) throw RationalityFailure(name, label);
}

}  // namespace detail

inline DescentCertificate run_descent(const DescentInstance& inst) {
  HypothesisReport hypotheses = check_hypotheses(inst);
  if (!hypotheses.violations.empty())
    throw StepFailure("hypotheses", hypotheses.violations.front().code + ": " +
                                        hypotheses.violations.front().detail);

  DescentCertificate cert;
  cert.indecomposability_check = hypotheses.indecomposability;
  if (hypotheses.trivial_zero) {
    // p = 0: the zero motive is a summand of anything; nothing to build
    cert.trivial_zero = true;
    cert.checks.push_back({"zero-projector-short-circuit", true});
    return cert;
  }
  detail::RunChecks run{&cert.checks};

  const AlgebraPtr& x = inst.x;
  const AlgebraPtr& y = inst.y;
  cert.cdmin_value = cdmin(inst.p).value;
  cert.supports = compute_supports(inst, cert.cdmin_value);

  // (a) compose the lift with the projector
  Correspondence f1_corr(x, {y, x}, inst.f1);
  Correspondence f2 = compose_mixed(inst.p, f1_corr);
  cert.f2 = f2;
  auto f_label = [&](FieldLabel l, const CycleClass& c, const std::string& n) {
    detail::audit(inst, l, c, n, cert.checks);
  };

  // (b) diagonal pullback back to X x Y
  Correspondence f3(x, {y}, diagonal_pullback(f2.cycle()));
  cert.f3 = f3;

  // (c) the composite g after f3 agrees with p on the minimal-codimension
  // rows, and everything else sits strictly above them
  Correspondence u = compose(f3, inst.g);
  run.record("low-codim rows of (g after f3) match p",
             low_codim_component_check(u, inst.p), "low-codim",
             "the distinguished coefficients of g after f3 differ from p" +
                 detail::residual_description(u, inst.p));
  run.record("tail of (g after f3) sits above cdmin",
             tail_above_cdmin(u, inst.p), "low-codim",
             "g after f3 has residual components at or below cdmin" +
                 detail::residual_description(u, inst.p));

  // (d) idempotent power and the derived left witness
  auto [n1, e1] = idempotent_power(u);
  cert.n1 = n1;
  if (e1.is_zero())
    throw StepFailure("idempotent",
                      "the powers of g after f3 collapse to the zero idempotent; "
                      "no nonzero summand can be presented by this witness pair");
  run.record("idempotent power of (g after f3) equals p", e1 == inst.p,
             "idempotent",
             "the idempotent power differs from p; the declared summand is "
             "not indecomposable as hypothesis (1) requires" +
                 detail::residual_description(e1, inst.p));
  Correspondence g1 = n1 == 1 ? inst.g : compose(inst.g, power(u, n1 - 1));
  cert.g1 = g1;
  run.record("derived witness g1 splits p through f3",
             compose(f3, g1) == inst.p, "idempotent",
             "g1 after f3 differs from p");

  // (e) transposed run
  Correspondence tp = transpose(inst.p);
  Correspondence tf3 = transpose(f3);
  Correspondence tg1 = transpose(g1);
  run.record("transposed identity", compose(tg1, tf3) == tp, "transposed-setup",
             "the transposed witnesses do not split the transposed projector");
  CycleClass lift2 = inst.tg1_lift
                         ? *inst.tg1_lift
                         : projection_pullback(tg1.cycle(), 2, x);
  run.record("transposed lift restricts to the transposed witness",
             epsilon_pullback(lift2) == tg1.cycle(), "transposed-setup",
             "the transposed-run lift does not restrict to the transposed witness");
  Correspondence f2t = compose_mixed(tp, Correspondence(x, {y, x}, lift2));
  Correspondence g_tilde(x, {y}, diagonal_pullback(f2t.cycle()));
  cert.g_tilde = g_tilde;
  Correspondence u2 = compose(g_tilde, tf3);
  run.record("low-codim rows of the transposed composite match",
             low_codim_component_check(u2, tp), "transposed-low-codim",
             "the transposed composite disagrees with the transposed projector "
             "on its minimal-codimension rows");
  run.record("tail of the transposed composite sits above cdmin",
             tail_above_cdmin(u2, tp), "transposed-low-codim",
             "the transposed composite has residual components at or below cdmin");
  auto [n2, e2] = idempotent_power(u2);
  cert.n2 = n2;
  if (e2.is_zero())
    throw StepFailure("transposed-idempotent",
                      "the transposed powers collapse to the zero idempotent");
  run.record("transposed idempotent power equals the transposed projector",
             e2 == tp, "transposed-idempotent",
             "the transposed idempotent power differs from the transposed projector");
  Correspondence g1t = n2 == 1 ? tf3 : compose(tf3, power(u2, n2 - 1));
  run.record("transposed derived witness splits the transposed projector",
             compose(g_tilde, g1t) == tp, "transposed-idempotent",
             "the transposed derived witness fails");

  Correspondence tg_tilde = transpose(g_tilde);
  Correspondence w = compose(f3, tg_tilde);
  Correspondence g_hat = n2 == 1 ? tg_tilde : compose(tg_tilde, power(w, n2 - 1));
  cert.g_hat = g_hat;
  run.record("g_hat splits p through f3", compose(f3, g_hat) == inst.p,
             "g-hat", "g_hat after f3 differs from p");

  // (f) final exponent and the right witness
  Correspondence w2 = compose(f3, g_hat);
  auto [nbar, e3] = idempotent_power(w2);
  cert.nbar = nbar;
  run.record("final idempotent power equals p", e3 == inst.p, "final",
             "the final idempotent power differs from p");
  Correspondence f_hat = nbar == 1 ? f3 : compose(power(w2, nbar - 1), f3);
  cert.f_hat = f_hat;
  run.record("g_hat after f_hat equals p", compose(f_hat, g_hat) == inst.p,
             "final", "the constructed witnesses do not recover p");

  // (g) rationality audit of every constructed cycle
  f_label(FieldLabel::F, inst.f1, "lift of f");
  f_label(FieldLabel::F, f2.cycle(), "f2");
  f_label(FieldLabel::F, f3.cycle(), "f3");
  f_label(FieldLabel::F, lift2, "transposed-run lift");
  f_label(FieldLabel::F, g_tilde.cycle(), "g_tilde");
  f_label(FieldLabel::F, g_hat.cycle(), "g_hat");
  f_label(FieldLabel::F, f_hat.cycle(), "f_hat");
  f_label(FieldLabel::E, g1.cycle(), "g1");

  return cert;
}

/// Recompute the pipeline from scratch and compare against a certificate.
/// Certificates carry no trusted claims: everything must reproduce exactly.
inline bool replay_matches(const DescentInstance& inst,
                           const DescentCertificate& cert) {
  DescentCertificate fresh = run_descent(inst);
  auto same = [](const std::optional<Correspondence>& a,
                 const std::optional<Correspondence>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a || *a == *b;
  };
  return fresh.trivial_zero == cert.trivial_zero &&
         fresh.cdmin_value == cert.cdmin_value && fresh.n1 == cert.n1 &&
         fresh.n2 == cert.n2 && fresh.nbar == cert.nbar &&
         same(fresh.f2, cert.f2) && same(fresh.f3, cert.f3) &&
         same(fresh.g1, cert.g1) && same(fresh.g_tilde, cert.g_tilde) &&
         same(fresh.g_hat, cert.g_hat) && same(fresh.f_hat, cert.f_hat) &&
         fresh.checks == cert.checks;
}

}  // namespace chow
