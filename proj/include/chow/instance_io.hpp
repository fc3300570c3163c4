#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "chow/descent.hpp"
#include "chow/errors.hpp"
#include "chow/property_suite.hpp"
#include "chow/rationality.hpp"
#include "chow/split_algebra.hpp"

// Instance files: one JSON document declaring the coefficient modulus, the
// split algebras (sparse structure-constant tables), named cycles as sparse
// (index tuple, value) lists, the rational structures, and optionally the
// descent block wiring named cycles into a run. Sparse everywhere: Kunneth
// products make dense tables explode.

namespace chow {

using Json = nlohmann::json;

struct InstanceDescentNames {
  std::string p, f, g, f1;
  std::optional<std::string> tg1_lift;
};

struct Instance {
  std::uint64_t modulus = 0;
  std::map<std::string, AlgebraPtr> algebras;
  std::map<std::string, CycleClass> cycles;
  std::vector<std::pair<FieldLabel, std::string>> rational_spaces;  // echo only
  RationalContext rational;
  std::optional<InstanceDescentNames> descent_names;

  const AlgebraPtr& algebra(const std::string& name) const {
    auto it = algebras.find(name);
    if (it == algebras.end()) throw ParseError("unknown algebra '" + name + "'");
    return it->second;
  }
  const CycleClass& cycle(const std::string& name) const {
    auto it = cycles.find(name);
    if (it == cycles.end()) throw ParseError("unknown cycle '" + name + "'");
    return it->second;
  }

  bool has_descent_block() const { return descent_names.has_value(); }

  /// Wire the named cycles into a runnable descent instance. X and Y are
  /// inferred from the space of f.
  DescentInstance descent_instance() const {
    if (!descent_names) throw ParseError("instance has no descent block");
    const auto& names = *descent_names;
    const CycleClass& fc = cycle(names.f);
    if (fc.space().arity() != 2)
      throw ParseError("descent cycle '" + names.f + "' must live on X x Y");
    AlgebraPtr x = fc.space().factor(0);
    AlgebraPtr y = fc.space().factor(1);
    auto corr = [&](const std::string& name, const ProductSpace& space,
                    std::vector<AlgebraPtr> targets) {
      const CycleClass& c = cycle(name);
      if (!(c.space() == space))
        throw ParseError("descent cycle '" + name + "' lives on " +
                         c.space().describe() + ", expected " +
                         space.describe());
      return Correspondence(space.factor(0), std::move(targets), c);
    };
    DescentInstance inst{
        x,
        y,
        corr(names.p, ProductSpace({x, x}), {x}),
        corr(names.f, ProductSpace({x, y}), {y}),
        corr(names.g, ProductSpace({y, x}), {x}),
        cycle(names.f1),
        std::nullopt,
        rational};
    if (!(inst.f1.space() == ProductSpace({x, y, x})))
      throw ParseError("descent cycle '" + names.f1 + "' must live on X x Y x X");
    if (names.tg1_lift) {
      const CycleClass& lift = cycle(*names.tg1_lift);
      if (!(lift.space() == ProductSpace({x, y, x})))
        throw ParseError("descent cycle '" + *names.tg1_lift +
                         "' must live on X x Y x X");
      inst.tg1_lift = lift;
    }
    return inst;
  }
};

namespace detail {

inline const Json& require_field(const Json& j, const char* key,
                                 const std::string& where) {
  auto it = j.find(key);
  if (it == j.end())
    throw ParseError("missing field '" + std::string(key) + "' in " + where);
  return *it;
}

inline AlgebraPtr parse_algebra(const std::string& name, const Json& j,
                                Modulus m) {
  const std::string where = "algebra '" + name + "'";
  std::size_t dim = require_field(j, "dim", where).get<std::size_t>();
  std::vector<std::size_t> phi =
      require_field(j, "phi", where).get<std::vector<std::size_t>>();
  std::size_t unit = require_field(j, "unit", where).get<std::size_t>();
  std::vector<Scalar> degree(phi.size(), Scalar::zero(m));
  for (const auto& d : require_field(j, "degree", where)) {
    if (!d.is_array() || d.size() != 2)
      throw ParseError("degree entries of " + where + " must be [index, value]");
    std::size_t i = d[0].get<std::size_t>();
    if (i >= phi.size()) throw ParseError("degree index out of range in " + where);
    degree[i] = Scalar::from_int(d[1].get<std::int64_t>(), m);
  }
  std::vector<MultEntry> mult;
  bool implicit_unit = j.value("implicit_unit", true);
  for (const auto& e : require_field(j, "mult", where)) {
    if (!e.is_array() || e.size() != 4)
      throw ParseError("mult entries of " + where + " must be [i, j, k, value]");
    MultEntry entry{e[0].get<std::size_t>(), e[1].get<std::size_t>(),
                    e[2].get<std::size_t>(), e[3].get<std::int64_t>()};
    if (implicit_unit && (entry.i == unit || entry.j == unit))
      throw ParseError(where + " declares implicit unit rows but also lists " +
                       "an explicit product with the unit");
    mult.push_back(entry);
  }
  if (implicit_unit && unit < phi.size()) {
    for (std::size_t k = 0; k < phi.size(); ++k) {
      mult.push_back({unit, k, k, 1});
      if (k != unit) mult.push_back({k, unit, k, 1});
    }
  }
  try {
    return std::make_shared<SplitAlgebra>(name, m, dim, std::move(phi), unit,
                                          std::move(degree), mult);
  } catch (const Error& e) {
    throw ParseError(where + ": " + e.what());
  }
}

inline ProductSpace parse_space(const Json& j, const Instance& inst,
                                const std::string& where) {
  std::vector<AlgebraPtr> factors;
  for (const auto& name : j) factors.push_back(inst.algebra(name.get<std::string>()));
  if (factors.empty() || factors.size() > 3)
    throw ParseError(where + ": a space lists one to three factors");
  return ProductSpace(std::move(factors));
}

inline CycleClass parse_cycle(const std::string& name, const Json& j,
                              const Instance& inst, Modulus m) {
  const std::string where = "cycle '" + name + "'";
  ProductSpace space = parse_space(require_field(j, "space", where), inst, where);
  std::optional<std::size_t> dim;
  if (j.contains("dim") && !j["dim"].is_null()) dim = j["dim"].get<std::size_t>();
  CycleClass c(space, dim);
  for (const auto& e : require_field(j, "entries", where)) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_array())
      throw ParseError(where + " entries must be [[indices...], value]");
    std::vector<std::size_t> idx = e[0].get<std::vector<std::size_t>>();
    try {
      c.add(idx, Scalar::from_int(e[1].get<std::int64_t>(), m));
    } catch (const Error& err) {
      throw ParseError(where + ": " + err.what());
    }
  }
  return c;
}

}  // namespace detail

inline Instance parse_instance(const Json& doc) {
  if (!doc.is_object()) throw ParseError("instance document must be a JSON object");
  Instance inst;
  inst.modulus = detail::require_field(doc, "modulus", "instance").get<std::uint64_t>();
  if (inst.modulus < 2) throw ParseError("modulus must be at least 2");
  Modulus m(inst.modulus);

  for (const auto& [name, body] :
       detail::require_field(doc, "algebras", "instance").items())
    inst.algebras.emplace(name, detail::parse_algebra(name, body, m));

  if (doc.contains("cycles"))
    for (const auto& [name, body] : doc["cycles"].items())
      inst.cycles.emplace(name, detail::parse_cycle(name, body, inst, m));

  if (doc.contains("rational")) {
    for (const auto& r : doc["rational"]) {
      const std::string where = "rational structure";
      std::string label_text =
          detail::require_field(r, "label", where).get<std::string>();
      auto label = parse_field_label(label_text);
      if (!label) throw ParseError("unknown field label '" + label_text + "'");
      ProductSpace space =
          detail::parse_space(detail::require_field(r, "space", where), inst, where);
      std::vector<CycleClass> gens;
      for (const auto& gname : detail::require_field(r, "generators", where)) {
        const CycleClass& g = inst.cycle(gname.get<std::string>());
        if (!(g.space() == space))
          throw ParseError("generator '" + gname.get<std::string>() +
                           "' lives outside the declared space");
        gens.push_back(g);
      }
      inst.rational.structures.push_back(
          RationalStructure(space, *label, std::move(gens)));
      inst.rational_spaces.push_back({*label, space.describe()});
    }
  }

  if (doc.contains("descent")) {
    const Json& d = doc["descent"];
    InstanceDescentNames names;
    names.p = detail::require_field(d, "p", "descent block").get<std::string>();
    names.f = detail::require_field(d, "f", "descent block").get<std::string>();
    names.g = detail::require_field(d, "g", "descent block").get<std::string>();
    names.f1 = detail::require_field(d, "f1", "descent block").get<std::string>();
    if (d.contains("tg1_lift") && !d["tg1_lift"].is_null())
      names.tg1_lift = d["tg1_lift"].get<std::string>();
    inst.descent_names = names;
    inst.descent_instance();  // resolve now so dangling names fail at parse time
  }
  return inst;
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError("instance file '" + path + "': " + e.what());
  }
  return parse_instance(doc);
}

// ---------------------------------------------------------------------------
// report serialization
// ---------------------------------------------------------------------------

inline Json cycle_to_json(const CycleClass& c) {
  Json entries = Json::array();
  for (const auto& [idx, v] : c.support())
    entries.push_back(Json::array({idx, v.value()}));
  Json out;
  out["space"] = [&] {
    std::vector<std::string> names;
    for (const auto& f : c.space().factors()) names.push_back(f->name());
    return names;
  }();
  if (c.total_dim()) out["dim"] = *c.total_dim();
  out["entries"] = entries;
  return out;
}

inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).value());
    rows.push_back(row);
  }
  return rows;
}

inline Json certificate_to_json(const DescentCertificate& cert) {
  Json out;
  out["trivial_zero"] = cert.trivial_zero;
  if (cert.trivial_zero) return out;
  out["cdmin"] = cert.cdmin_value;
  out["supports"]["f_rows"] = cert.supports.f_rows;
  out["supports"]["g_cols"] = cert.supports.g_cols;
  out["supports"]["minimal_rows"] = cert.supports.minimal_rows;
  out["n1"] = cert.n1;
  out["n2"] = cert.n2;
  out["nbar"] = cert.nbar;
  out["indecomposability_check"] = cert.indecomposability_check;
  auto put = [&](const char* key, const std::optional<Correspondence>& c) {
    if (c) out[key] = cycle_to_json(c->cycle());
  };
  put("f2", cert.f2);
  put("f3", cert.f3);
  put("g1", cert.g1);
  put("g_tilde", cert.g_tilde);
  put("g_hat", cert.g_hat);
  put("f_hat", cert.f_hat);
  Json checks = Json::array();
  for (const auto& c : cert.checks)
    checks.push_back(Json{{"name", c.name}, {"passed", c.passed}});
  out["checks"] = checks;
  return out;
}

inline Json property_report_to_json(const PropertyReport& r) {
  Json out;
  out["seed"] = r.seed;
  out["requested"] = r.requested;
  out["completed"] = r.completed;
  out["generation"] = {{"attempts", r.generation.attempts},
                       {"produced", r.generation.produced},
                       {"rejected", r.generation.rejected_axioms}};
  Json passes = Json::object();
  for (const auto& [name, n] : r.passes) passes[name] = n;
  out["passes"] = passes;
  if (r.counterexample) {
    out["counterexample"] = {{"property", r.counterexample->property},
                             {"iteration", r.counterexample->iteration},
                             {"witness", r.counterexample->description}};
  }
  out["all_passed"] = r.all_passed();
  return out;
}

}  // namespace chow
