#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "emergent/laws.hpp"
#include "emergent/models.hpp"

using namespace emg;

namespace {

// dil(x,eps,y) = y + 1: violates (R1) and unit by construction. Note the
// bare projection dil(x,eps,y) = y is NOT broken -- it satisfies all four
// axioms (the trivial irq) -- so a constant shift is added to actually
// break idempotence.
class BrokenModel : public AffineModel {
 public:
  BrokenModel() : AffineModel(1, true) {}
  Point dil(const Point&, const Scale&, const Point& y) const override {
    return Point(RatVec{y.rats()[0] + 1});
  }
};

Scale rs(long n, long d) { return Scale::from_rational(Rational(n, d)); }

}  // namespace

TEST_CASE("irq axioms hold exactly in every exact model") {
  auto models = {json{{"model", "affine"}, {"dimension", 3}},
                 json{{"model", "alexander"}},
                 json{{"model", "heisenberg"}, {"grading", "graded"}},
                 json{{"model", "heisenberg"}, {"grading", "isotropic"}},
                 json{{"model", "contractible"}},
                 json{{"model", "mobius"}}};
  for (const auto& cfg : models) {
    auto m = make_model(cfg);
    auto report = verify_irq_axioms(*m, 1000, 7);
    CAPTURE(cfg.dump());
    CHECK(report.pass());
    for (const auto& law : report.laws) {
      CHECK(law.max_residual == 0.0);
      CHECK(law.violations == 0);
    }
  }
}

TEST_CASE("irq axioms hold within 1e-9 in double models") {
  for (const auto& cfg : {json{{"model", "warped"}, {"dimension", 2}},
                          json{{"model", "affine"}, {"dimension", 2}, {"mode", "double"}},
                          json{{"model", "mobius"}, {"mode", "double"}}}) {
    auto m = make_model(cfg);
    auto report = verify_irq_axioms(*m, 500, 7);
    CAPTURE(cfg.dump());
    CHECK(report.pass());
  }
}

TEST_CASE("a broken model is reported with an (R1) violation") {
  BrokenModel broken;
  auto report = verify_irq_axioms(broken, 50, 7);
  CHECK_FALSE(report.pass());
  CHECK_FALSE(report.law("R1").pass);
  CHECK(report.law("R1").violations > 0);
  CHECK(report.law("R1").max_residual > 0.0);
}

TEST_CASE("the bare projection dil(x,eps,y) = y is a (trivial) irq") {
  class Projection : public AffineModel {
   public:
    Projection() : AffineModel(1, true) {}
    Point dil(const Point&, const Scale&, const Point& y) const override { return y; }
  };
  Projection proj;
  CHECK(verify_irq_axioms(proj, 50, 7).pass());
}

TEST_CASE("sampled suites require at least one sample") {
  AffineModel m(1, true);
  CHECK_THROWS_AS(verify_irq_axioms(m, 0, 7), ConfigError);
}

TEST_CASE("a model without a metric reports unsupported on distance") {
  class Bare : public AffineModel {
   public:
    Bare() : AffineModel(1, true) {}
    bool has_metric() const override { return false; }
    double distance(const Point& a, const Point& b) const override {
      return Model::distance(a, b);
    }
  };
  Bare bare;
  Point p(RatVec{Rational(0)}), q(RatVec{Rational(1)});
  CHECK_THROWS_AS(bare.distance(p, q), UnsupportedError);
  // law suites still run; residuals fall back to pass/fail indicators
  CHECK(verify_irq_axioms(bare, 50, 7).pass());
}

TEST_CASE("the seven gate identities hold at any fixed scale") {
  AffineModel aff(2, true);
  auto report = verify_pplay(aff, rs(3, 7), 1000, 11);
  CHECK(report.pass());
  CHECK(report.laws.size() == 7);
  for (const auto& law : report.laws) CHECK(law.max_residual == 0.0);

  // Alexander quandle: residuals are the zero Laurent polynomial
  AlexanderQuandleModel alex;
  auto ralex = verify_pplay(alex, Scale::from_power(2), 500, 11);
  CHECK(ralex.pass());
  for (const auto& law : ralex.laws) CHECK(law.max_residual == 0.0);

  // Heisenberg at eps = 1/4, exact rationals
  HeisenbergModel heis(true, true);
  auto rheis = verify_pplay(heis, rs(1, 4), 500, 11);
  CHECK(rheis.pass());
  CHECK(rheis.law("e_shifted_associativity").max_residual == 0.0);

  MobiusModel mob(true);
  CHECK(verify_pplay(mob, rs(1, 2), 300, 11).pass());
}

TEST_CASE("distributivity: exact for affine/alexander/graded, fails on mobius") {
  Scale e = rs(1, 2), l = rs(1, 2);
  CHECK(verify_distributivity(AffineModel(1, true), e, l, 500, 13).pass());
  CHECK(verify_distributivity(AlexanderQuandleModel(), Scale::from_power(1),
                              Scale::from_power(1), 500, 13)
            .pass());
  CHECK(verify_distributivity(HeisenbergModel(true, true), e, l, 500, 13).pass());
  CHECK(verify_distributivity(ContractibleUnipotentModel(), Scale::from_power(1),
                              Scale::from_power(2), 500, 13)
            .pass());

  auto rmob = verify_distributivity(MobiusModel(true), e, l, 200, 13);
  CHECK_FALSE(rmob.pass());
  CHECK(rmob.law("self_distributivity").max_residual > 0.0);
}

TEST_CASE("isotropic heisenberg is self-distributive (collapse to affine)") {
  // Direct consequence of the dilation-field collapse; documents that this
  // model cannot serve as a distributivity counterexample.
  auto r = verify_distributivity(HeisenbergModel(false, true), rs(1, 2), rs(1, 2), 500, 13);
  CHECK(r.pass());
  CHECK(r.law("self_distributivity").max_residual == 0.0);
}

TEST_CASE("mobius distributivity defect against an independent evaluator") {
  // Standalone Moebius arithmetic, written out longhand: not the model code.
  auto dil = [](Rational x, Rational e, Rational y) {
    Rational k = x / 32;
    Rational w = (y - x) / (1 + k * (y - x));
    Rational z = e * w;
    return x + z / (1 - k * z);
  };
  Rational x(1), y(1, 4), z(-3, 4), e(1, 2), l(1, 2);
  Rational lhs = dil(x, e, dil(y, l, z));
  Rational rhs = dil(dil(x, e, y), l, dil(x, e, z));
  CHECK(lhs != rhs);

  MobiusModel m(true);
  Scale es = Scale::from_rational(e), ls = Scale::from_rational(l);
  Point px(RatVec{x}), py(RatVec{y}), pz(RatVec{z});
  CHECK(m.dil(px, es, m.dil(py, ls, pz)).rats()[0] == lhs);
  CHECK(m.dil(m.dil(px, es, py), ls, m.dil(px, es, pz)).rats()[0] == rhs);
}

TEST_CASE("law reports serialize with stable fields") {
  auto report = verify_irq_axioms(AffineModel(1, true), 10, 3);
  json j = report.to_json();
  CHECK(j["test"] == "irq_axioms");
  CHECK(j["pass"] == true);
  CHECK(j["laws"].size() == 4);
  CHECK(j["laws"][0]["law"] == "R1");
  CHECK(j["samples"] == 10);
}
