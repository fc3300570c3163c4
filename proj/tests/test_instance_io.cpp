#include <catch2/catch_amalgamated.hpp>

#include "chow/instance_io.hpp"

using namespace chow;

namespace {
const char* kInstanceDir = CHOW_INSTANCE_DIR;
const char* kDataDir = CHOW_TEST_DATA_DIR;
std::string inst_path(const std::string& f) { return std::string(kInstanceDir) + "/" + f; }
std::string data_path(const std::string& f) { return std::string(kDataDir) + "/" + f; }
}  // namespace

TEST_CASE("golden instance files load and validate") {
  for (const char* file :
       {"trivial_p1.json", "rank1_projector_z2.json", "correction_pass_z4.json",
        "kunneth_target_z3.json", "adversarial_idempotent.json",
        "zero_projector.json"}) {
    CAPTURE(file);
    Instance inst = load_instance(inst_path(file));
    for (const auto& [name, alg] : inst.algebras) {
      CAPTURE(name);
      CHECK(alg->validate().empty());
    }
    REQUIRE(inst.has_descent_block());
    DescentInstance d = inst.descent_instance();
    (void)d;
  }
}

TEST_CASE("golden runs match the in-memory fixtures") {
  Instance trivial = load_instance(inst_path("trivial_p1.json"));
  DescentCertificate c1 = run_descent(trivial.descent_instance());
  CHECK(c1.n1 == 1);
  CHECK(c1.nbar == 1);

  Instance corr = load_instance(inst_path("correction_pass_z4.json"));
  DescentCertificate c2 = run_descent(corr.descent_instance());
  CHECK(c2.n1 == 2);
  CHECK(c2.n2 == 1);
  CHECK(c2.nbar == 1);

  Instance kun = load_instance(inst_path("kunneth_target_z3.json"));
  CHECK(kun.algebra("Y")->rank() == 4);
  DescentCertificate c3 = run_descent(kun.descent_instance());
  CHECK(c3.n1 == 1);

  Instance adv = load_instance(inst_path("adversarial_idempotent.json"));
  CHECK_THROWS_AS(run_descent(adv.descent_instance()), StepFailure);

  Instance zero = load_instance(inst_path("zero_projector.json"));
  CHECK(run_descent(zero.descent_instance()).trivial_zero);
}

TEST_CASE("the kunneth-target algebra equals the engine's kunneth square") {
  Instance kun = load_instance(inst_path("kunneth_target_z3.json"));
  AlgebraPtr y = kun.algebra("Y");
  AlgebraPtr p1 = kun.algebra("X");  // same shape, modulus 3
  AlgebraPtr square = kunneth(p1, p1);
  REQUIRE(y->rank() == square->rank());
  CHECK(y->dim() == square->dim());
  for (std::size_t i = 0; i < y->rank(); ++i) {
    CHECK(y->phi(i) == square->phi(i));
    CHECK(y->degree_of_basis(i) == square->degree_of_basis(i));
  }
  CHECK(y->gram() == square->gram());
}

TEST_CASE("parse failures") {
  CHECK_THROWS_AS(load_instance(data_path("empty.json")), ParseError);
  CHECK_THROWS_AS(load_instance(data_path("no_such_file.json")), ParseError);

  // modulus below 2
  CHECK_THROWS_AS(parse_instance(Json{{"modulus", 1}, {"algebras", Json::object()}}),
                  ParseError);
  // dangling cycle name in the descent block
  Json doc = Json::parse(R"({
    "modulus": 5,
    "algebras": {"X": {"dim": 1, "phi": [1, 0], "unit": 0,
                        "degree": [[1, 1]], "mult": []}},
    "cycles": {"d": {"space": ["X", "X"], "entries": [[[0, 1], 1]]}},
    "descent": {"p": "d", "f": "d", "g": "d", "f1": "missing"}
  })");
  CHECK_THROWS_AS(parse_instance(doc), ParseError);
  // generator outside its declared space
  Json doc2 = Json::parse(R"({
    "modulus": 5,
    "algebras": {"X": {"dim": 1, "phi": [1, 0], "unit": 0,
                        "degree": [[1, 1]], "mult": []}},
    "cycles": {"d": {"space": ["X", "X"], "entries": [[[0, 1], 1]]}},
    "rational": [{"label": "F", "space": ["X", "X", "X"], "generators": ["d"]}]
  })");
  CHECK_THROWS_AS(parse_instance(doc2), ParseError);
  // unknown field label
  Json doc3 = Json::parse(R"({
    "modulus": 5,
    "algebras": {"X": {"dim": 1, "phi": [1, 0], "unit": 0,
                        "degree": [[1, 1]], "mult": []}},
    "cycles": {"d": {"space": ["X", "X"], "entries": [[[0, 1], 1]]}},
    "rational": [{"label": "K", "space": ["X", "X"], "generators": ["d"]}]
  })");
  CHECK_THROWS_AS(parse_instance(doc3), ParseError);
}

TEST_CASE("broken algebras load but fail validation") {
  Instance broken = load_instance(data_path("broken_assoc.json"));
  auto violations = broken.algebra("A")->validate();
  bool assoc = false;
  for (const auto& v : violations) assoc |= v.axiom == "associativity";
  CHECK(assoc);

  Instance degen = load_instance(data_path("degenerate_gram.json"));
  auto v2 = degen.algebra("A")->validate();
  bool poincare = false;
  for (const auto& v : v2) poincare |= v.axiom == "poincare-duality";
  CHECK(poincare);
}

TEST_CASE("implicit unit rows may not clash with explicit ones") {
  Json doc = Json::parse(R"({
    "modulus": 5,
    "algebras": {"X": {"dim": 1, "phi": [1, 0], "unit": 0,
                        "degree": [[1, 1]], "mult": [[0, 1, 1, 1]]}}
  })");
  CHECK_THROWS_AS(parse_instance(doc), ParseError);
  // explicit tables are accepted verbatim when implicit_unit is off
  Json doc2 = Json::parse(R"({
    "modulus": 5,
    "algebras": {"X": {"dim": 1, "phi": [1, 0], "unit": 0,
                        "degree": [[1, 1]], "implicit_unit": false,
                        "mult": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1]]}}
  })");
  Instance inst = parse_instance(doc2);
  CHECK(inst.algebra("X")->validate().empty());
}

TEST_CASE("certificate serialization carries the run") {
  Instance corr = load_instance(inst_path("correction_pass_z4.json"));
  DescentCertificate cert = run_descent(corr.descent_instance());
  Json j = certificate_to_json(cert);
  CHECK(j["n1"] == 2);
  CHECK(j["cdmin"] == 0);
  CHECK(j["checks"].size() == cert.checks.size());
  for (const auto& c : j["checks"]) CHECK(c["passed"] == true);
  // serialization is deterministic
  CHECK(certificate_to_json(cert).dump() == j.dump());
}
