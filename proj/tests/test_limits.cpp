#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "emergent/limits.hpp"
#include "emergent/models.hpp"

using namespace emg;

namespace {
Point r1(Rational a) { return Point(RatVec{a}); }
Point rats(std::initializer_list<Rational> cs) { return Point(RatVec(cs)); }
Scale rs(long n, long d) { return Scale::from_rational(Rational(n, d)); }
}  // namespace

TEST_CASE("estimate_limit on a constructed geometric sequence") {
  AffineModel m(1, false);
  std::vector<Point> values;
  std::vector<double> abs_eps;
  const double L = 0.75;
  for (int k = 1; k <= 12; ++k) {
    values.push_back(Point(DblVec{L + std::ldexp(1.0, -k)}));
    abs_eps.push_back(std::ldexp(1.0, -k));
  }
  auto est = estimate_limit(values, m, abs_eps);
  CHECK(est.limit.dbls()[0] == doctest::Approx(L).epsilon(1e-3));
  CHECK(est.converged);
  REQUIRE(est.rate.has_value());
  CHECK(*est.rate == doctest::Approx(1.0).epsilon(0.05));

  CHECK_THROWS_AS(estimate_limit({values[0]}, m, {abs_eps[0]}), ConfigError);
}

TEST_CASE("non-Cauchy sequences are flagged, not raised") {
  AffineModel m(1, false);
  std::vector<Point> values;
  std::vector<double> abs_eps;
  for (int k = 1; k <= 8; ++k) {
    values.push_back(Point(DblVec{k % 2 ? 1.0 : -1.0}));
    abs_eps.push_back(std::ldexp(1.0, -k));
  }
  auto est = estimate_limit(values, m, abs_eps);
  CHECK_FALSE(est.converged);
}

TEST_CASE("affine difference gate converges to x - u + v") {
  AffineModel m(1, true);
  std::vector<Point> values;
  std::vector<double> abs_eps;
  for (int k = 1; k <= 20; ++k) {
    values.push_back(approx_difference(m, r1(0), Scale::from_rational(dyadic(k)), r1(4), r1(6)));
    abs_eps.push_back(std::ldexp(1.0, -k));
  }
  auto est = estimate_limit(values, m, abs_eps);
  CHECK(m.distance(est.limit, r1(2)) <= 1e-5);
  CHECK(est.converged);
  CHECK(*est.rate == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("warped sum limit matches the chart-conjugation oracle") {
  WarpedAffineModel m(1);
  auto phi = WarpedAffineModel::chart;
  auto phinv = WarpedAffineModel::chart_inverse;
  double x = 0.5, u = -1.25, v = 1.75;
  Point px(DblVec{x}), pu(DblVec{u}), pv(DblVec{v});
  // exact conjugation identity at every scale
  for (int k = 1; k <= 20; ++k) {
    double e = std::ldexp(1.0, -k);
    Point got = approx_sum(m, px, Scale::from_rational(dyadic(k)), pu, pv);
    double expect = phinv(phi(u) + e * (phi(x) - phi(u)) + (phi(v) - phi(x)));
    CHECK(got.dbls()[0] == doctest::Approx(expect).epsilon(1e-9));
  }
  // the residual at 2^-20 is eps * |phi(x) - phi(u)| to leading order, so
  // the 1e-6 bound needs |phi(u) - phi(x)| about 1 or less
  double u2 = -0.25, v2 = 1.25;
  Point limit(DblVec{phinv(phi(u2) - phi(x) + phi(v2))});
  Point finest = approx_sum(m, px, Scale::from_rational(dyadic(20)), Point(DblVec{u2}),
                            Point(DblVec{v2}));
  CHECK(m.distance(finest, limit) <= 1e-6);
  CHECK(m.distance(finest, m.tangent_sum(px, Point(DblVec{u2}), Point(DblVec{v2}))) <= 1e-6);
}

TEST_CASE("emergent operations: affine exact limits, linear rate") {
  AffineModel m(2, true);
  Point x = rats({Rational(1, 3), -1});
  auto [ops, report] = emergent_ops(m, x, 20, Schedule::dyadic(1, 20), 5);
  CHECK(report.converged);
  CHECK(report.params["contraction_to_zero"] == true);
  REQUIRE(report.rate.has_value());
  CHECK(*report.rate == doctest::Approx(1.0).epsilon(0.05));

  // sigma at the finest scale is within eps_f * |x - u| of u - x + v
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    Point u = m.sample(rng), v = m.sample(rng);
    RatVec expect(2);
    for (int c = 0; c < 2; ++c) expect[c] = u.rats()[c] - x.rats()[c] + v.rats()[c];
    CHECK(m.distance(ops.sigma(u, v), Point(expect)) <= 1e-5);
  }
}

TEST_CASE("graded heisenberg: sigma at e has the exact closed form u delta(u^-1) v") {
  HeisenbergModel m(true, true);
  Point e = m.identity();
  Rng rng(9);
  std::vector<double> dists;
  for (int k = 1; k <= 12; ++k) {
    Scale eps = Scale::from_rational(dyadic(k));
    double sup = 0.0;
    Rng r2(9);
    for (int i = 0; i < 30; ++i) {
      Point u = m.sample(r2), v = m.sample(r2);
      Point got = approx_sum(m, e, eps, u, v);
      // group-arithmetic oracle
      CHECK(got == m.mul(m.mul(u, m.delta(eps, m.inverse(u))), v));
      sup = std::max(sup, m.distance(got, m.mul(u, v)));
    }
    dists.push_back(sup);
  }
  // converges to the group law; the Koranyi distance of the conjugated
  // remainder scales like sqrt(eps), so the decay is geometric with ratio
  // about 1/sqrt(2)
  for (std::size_t i = 1; i < dists.size(); ++i) CHECK(dists[i] < dists[i - 1]);
  CHECK(dists.back() < 0.1);
  // and the closed-form tangent sum at e is the group law itself
  for (int i = 0; i < 20; ++i) {
    Point u = m.sample(rng), v = m.sample(rng);
    CHECK(m.tangent_sum(e, u, v) == m.mul(u, v));
  }
}

TEST_CASE("isotropic heisenberg: sigma at e is u + v - eps u, limit abelian") {
  HeisenbergModel m(false, true);
  Point e = m.identity();
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    Point u = m.sample(rng), v = m.sample(rng);
    Scale eps = m.sample_scale(rng);
    Rational ev = eps.value();
    RatVec expect(3);
    for (int c = 0; c < 3; ++c) expect[c] = u.rats()[c] + v.rats()[c] - ev * u.rats()[c];
    CHECK(approx_sum(m, e, eps, u, v) == Point(expect));
  }
  auto [ops, report] = emergent_ops(m, e, 20, Schedule::dyadic(1, 20), 5);
  CHECK(report.converged);
  Point u = rats({1, 0, 0}), v = rats({0, 1, 0});
  RatVec sum(3);
  for (int c = 0; c < 3; ++c) sum[c] = u.rats()[c] + v.rats()[c];
  CHECK(m.distance(ops.sigma(u, v), Point(sum)) <= 1e-5);

  // the closed-form limit operation is an abelian group law, exactly, on
  // rational samples
  for (int i = 0; i < 100; ++i) {
    Point p = m.sample(rng), q = m.sample(rng), w = m.sample(rng);
    CHECK(m.tangent_sum(e, p, q) == m.tangent_sum(e, q, p));
    CHECK(m.tangent_sum(e, p, m.tangent_sum(e, q, w)) ==
          m.tangent_sum(e, m.tangent_sum(e, p, q), w));
    CHECK(m.tangent_sum(e, e, p) == p);
    CHECK(m.tangent_sum(e, p, m.tangent_difference(e, p, e)) == e);
  }
}

TEST_CASE("conical models reconstruct dil from the emergent group structure") {
  // x o_eps y = Sigma^e(x, e o_eps Delta^e(x, y)) exactly, where e is the
  // group identity and the tangent operations are the emergent group law
  auto models = {json{{"model", "affine"}, {"dimension", 2}},
                 json{{"model", "heisenberg"}, {"grading", "graded"}},
                 json{{"model", "heisenberg"}, {"grading", "isotropic"}},
                 json{{"model", "contractible"}}};
  Rng rng(21);
  for (const auto& cfg : models) {
    auto m = make_model(cfg);
    Point e = m->identity();
    for (int i = 0; i < 150; ++i) {
      Point x = m->sample(rng), y = m->sample(rng);
      Scale eps = m->sample_scale(rng);
      Point rebuilt =
          m->tangent_sum(e, x, m->dil(e, eps, m->tangent_difference(e, x, y)));
      CHECK(rebuilt == m->dil(x, eps, y));
    }
  }
}

TEST_CASE("conical-group axioms of the emergent sum") {
  // affine: exact at tabulation level
  AffineModel aff(2, true);
  auto [aops, areport] = emergent_ops(aff, aff.default_basepoint(), 10, Schedule::dyadic(1, 12), 3);
  auto alaw = verify_conical_group(aops, 200, 3, 0.0);
  for (const auto& c : alaw.laws) {
    if (c.law == "sigma_neutral" || c.law == "sigma_inverse") CHECK(c.max_residual == 0.0);
  }
  // associativity in affine is off by eps_f * |x-u|; exact only in the limit
  CHECK(alaw.law("sigma_associative").max_residual <= 1e-2);

  // warped at 2^-20 within 1e-6 on a radius-1/2 ball
  WarpedAffineModel warped(2);
  auto [wops, wreport] = emergent_ops(warped, warped.default_basepoint(), 20,
                                      Schedule::dyadic(1, 20), 3);
  auto wlaw = verify_conical_group(wops, 200, 3, 1e-6, 0.5);
  CHECK(wlaw.pass());
}

TEST_CASE("relative dilation limit") {
  // affine: identically zero at every scale
  AffineModel aff(1, true);
  auto areport = verify_relative_limit(aff, r1(Rational(1, 3)), Schedule::dyadic(1, 10), 20,
                                       rs(1, 2), 7);
  CHECK(areport.identically_zero);
  CHECK(areport.pass);

  // mobius: decreasing with slope >= 0.9
  MobiusModel mob(true);
  auto mreport = verify_relative_limit(mob, r1(1), Schedule::dyadic(1, 12), 12, rs(1, 2), 7);
  CHECK(mreport.converged);
  CHECK(mreport.values.front() > 0.0);
  REQUIRE(mreport.rate.has_value());
  CHECK(*mreport.rate >= 0.9);

  // lambda = 1: both sides are the second projection
  auto ureport = verify_relative_limit(mob, r1(1), Schedule::dyadic(1, 8), 12,
                                       Scale::one(ScaleKind::rational), 7);
  CHECK(ureport.identically_zero);
}

TEST_CASE("group-with-dilations axioms") {
  // graded: beta equals the group law at every scale
  HeisenbergModel graded(true, true);
  auto greport = verify_gwd_axioms(graded, Schedule::dyadic(1, 12), 60, 3, 1e-9);
  CHECK(greport.pass());
  CHECK(greport.law("H1_beta_limit").note == "beta constant in eps");
  CHECK(greport.params["beta_vs_group_law"].get<double>() == 0.0);
  CHECK(greport.params["beta_commutator_defect"].get<double>() > 0.1);
  CHECK(greport.law("H2_inverse_limit").max_residual == 0.0);

  // isotropic: beta is the abelian addition
  HeisenbergModel iso(false, true);
  auto ireport = verify_gwd_axioms(iso, Schedule::dyadic(1, 20), 60, 3, 1e-4);
  CHECK(ireport.pass());
  CHECK(ireport.params["beta_vs_group_law"].get<double>() > 0.1);
  CHECK(ireport.params["beta_commutator_defect"].get<double>() <= 1e-5);
  // frozen: beta((1,0,0),(0,1,0)) -> (1,1,0); c-term is eps/2
  Scale fine = Scale::from_rational(dyadic(20));
  Point b = iso.delta(fine.inverse(),
                      iso.mul(iso.delta(fine, rats({1, 0, 0})), iso.delta(fine, rats({0, 1, 0}))));
  CHECK(b == rats({1, 1, dyadic(21)}));
  CHECK(iso.distance(b, rats({1, 1, 0})) <= 1e-6);

  // contractible: conical, beta equals the group law
  ContractibleUnipotentModel contr;
  auto creport = verify_gwd_axioms(contr, Schedule::powers(1, 12), 60, 3, 1e-9);
  CHECK(creport.pass());
  CHECK(creport.params["beta_vs_group_law"].get<double>() == 0.0);

  WarpedAffineModel warped(1);
  CHECK_THROWS_AS(verify_gwd_axioms(warped, Schedule::dyadic(1, 4), 5, 3, 1e-9),
                  UnsupportedError);
}

TEST_CASE("A2 compatibility of metric and dilations") {
  // affine: exact scaling, defect at float noise
  AffineModel aff(2, true);
  auto areport = verify_A2(aff, aff.default_basepoint(), 1.5, Schedule::dyadic(1, 12), 50, 3);
  CHECK(areport.identically_zero);

  // graded heisenberg with the Koranyi metric: defect 0 at every scale
  HeisenbergModel graded(true, true);
  auto greport = verify_A2(graded, graded.identity(), 1.5, Schedule::dyadic(1, 12), 50, 3);
  CHECK(greport.identically_zero);
  for (double v : greport.values) CHECK(v <= 1e-12);

  // warped: defect decreasing with slope >= 0.9
  WarpedAffineModel warped(1);
  auto wreport =
      verify_A2(warped, warped.default_basepoint(), 1.25, Schedule::dyadic(1, 20), 200, 3);
  CHECK(wreport.converged);
  CHECK(wreport.values.front() > 0.0);
  REQUIRE(wreport.rate.has_value());
  CHECK(*wreport.rate >= 0.9);
}

TEST_CASE("metric cone identity") {
  std::vector<Scale> lambdas{rs(1, 3), rs(1, 2), rs(3, 4)};
  AffineModel aff(2, true);
  auto areport = verify_cone(aff, aff.default_basepoint(), lambdas, Schedule::dyadic(1, 12), 60,
                             3, 1e-12);
  CHECK(areport.pass());

  HeisenbergModel graded(true, true);
  auto greport = verify_cone(graded, graded.identity(), lambdas, Schedule::dyadic(1, 12), 60, 3,
                             1e-12);
  CHECK(greport.pass());

  WarpedAffineModel warped(1);
  auto wreport = verify_cone(warped, warped.default_basepoint(), lambdas,
                             Schedule::dyadic(1, 20), 60, 3, 1e-5);
  CHECK(wreport.pass());
}

TEST_CASE("norm limits") {
  HeisenbergModel m(true, true);
  // Koranyi: homogeneous, so the rescaled norm is constant and the limit is
  // the norm itself
  auto kreport = verify_norm_limit(m, "koranyi", Schedule::dyadic(1, 20), 50, 3, 1e-9);
  CHECK(kreport.pass());
  CHECK(kreport.flagged.empty());
  CHECK(kreport.law("limit_exists").note == "rescaled norm constant in eps");
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    Point p = m.sample(rng);
    CHECK(rescaled_norm(m, "koranyi", rs(1, 1024), p) ==
          doctest::Approx(m.norm("koranyi", p)).epsilon(1e-12));
  }

  // euclidean norm under graded dilations: limit sqrt(a^2+b^2), (0,0,1)
  // degenerate and flagged
  std::vector<Point> probes{rats({0, 0, 1})};
  auto ereport = verify_norm_limit(m, "euclidean", Schedule::dyadic(1, 20), 50, 3, 1e-9,
                                   /*expect_definite=*/false, probes);
  CHECK(ereport.pass());
  CHECK_FALSE(ereport.flagged.empty());
  bool found = false;
  for (const auto& f : ereport.flagged)
    if (f == rats({0, 0, 1}).str()) found = true;
  CHECK(found);
  for (int i = 0; i < 50; ++i) {
    Point p = m.sample(rng);
    const auto& c = p.rats();
    double expect = std::sqrt(to_double(c[0] * c[0] + c[1] * c[1]));
    CHECK(std::fabs(rescaled_norm(m, "euclidean", Scale::from_rational(dyadic(20)), p) - expect) <=
          1e-9);
  }
  // the same check in the spec's closed form (1/eps)sqrt(eps^2(a^2+b^2)+eps^4 c^2)
  Point p = rats({3, -4, 7});
  double e = std::ldexp(1.0, -20);
  double closed = std::sqrt(e * e * 25.0 + e * e * e * e * 49.0) / e;
  CHECK(rescaled_norm(m, "euclidean", Scale::from_rational(dyadic(20)), p) ==
        doctest::Approx(closed).epsilon(1e-12));

  // ||e||^N = 0 and e is not flagged
  CHECK(rescaled_norm(m, "koranyi", rs(1, 4), m.identity()) == 0.0);
}

TEST_CASE("derivative convergence") {
  AffineModel m(1, true);
  // f(y) = y^2 at x=1 toward u=2: D_eps = 3 + eps exactly, limit 3, rate 1
  auto f = builtin_function(m, "square");
  auto report = derivative_convergence(m, f, r1(1), r1(2), Schedule::dyadic(1, 20),
                                       std::optional<Point>(r1(3)));
  CHECK(report.converged);
  CHECK(report.params["limit_defect"].get<double>() <= 1e-6);
  REQUIRE(report.rate.has_value());
  CHECK(*report.rate == doctest::Approx(1.0).epsilon(0.02));

  // affine maps: constant in eps, zero defect against the closed form
  auto g = builtin_function(m, "affine:3/2,-2");
  auto areport = derivative_convergence(m, g, r1(Rational(1, 3)), r1(2),
                                        Schedule::dyadic(1, 12),
                                        std::optional<Point>(r1(Rational(3, 2) * 2 - 2)));
  CHECK(areport.identically_zero);
  // the returned point is identical across all scales
  Point first = derivative(m, g, r1(Rational(1, 3)), rs(1, 2), r1(2));
  for (int k = 2; k <= 12; ++k)
    CHECK(derivative(m, g, r1(Rational(1, 3)), Scale::from_rational(dyadic(k)), r1(2)) == first);

  // identity function: D_eps f(x) u = u at every eps
  auto ident = builtin_function(m, "identity");
  auto ireport = derivative_convergence(m, ident, r1(5), r1(-7), Schedule::dyadic(1, 8),
                                        std::optional<Point>(r1(-7)));
  CHECK(ireport.identically_zero);

  CHECK_THROWS_AS(builtin_function(m, "cubic"), ConfigError);
}
