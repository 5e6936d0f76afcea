#include "emergent/laws.hpp"

#include <algorithm>

#include "emergent/gates.hpp"

namespace emg {

bool LawReport::pass() const {
  return std::all_of(laws.begin(), laws.end(), [](const LawCheck& c) { return c.pass; });
}

const LawCheck& LawReport::law(const std::string& name) const {
  for (const auto& c : laws)
    if (c.law == name) return c;
  throw Error("no law named '" + name + "' in report " + test);
}

json LawReport::to_json() const {
  json jl = json::array();
  for (const auto& c : laws) {
    json e{{"law", c.law},
           {"pass", c.pass},
           {"max_residual", c.max_residual},
           {"violations", c.violations}};
    if (!c.note.empty()) e["note"] = c.note;
    jl.push_back(e);
  }
  json out{{"test", test}, {"model", model}};
  if (!params.is_null()) out["params"] = params;
  out["seed"] = seed;
  out["samples"] = samples;
  out["laws"] = jl;
  if (!flagged.empty()) out["flagged"] = flagged;
  out["pass"] = pass();
  return out;
}

namespace {

// Accumulates one law over samples: exact models demand point equality,
// double models compare under the metric with the shared tolerance.
class LawAccumulator {
 public:
  LawAccumulator(const Model& m, std::string name) : m_(m), check_{} {
    check_.law = std::move(name);
    check_.pass = true;
  }

  void observe(const Point& lhs, const Point& rhs) {
    double r = 0.0;
    bool equal = m_.equal(lhs, rhs);
    if (m_.has_metric()) r = equal ? 0.0 : m_.distance(lhs, rhs);
    else r = equal ? 0.0 : 1.0;
    check_.max_residual = std::max(check_.max_residual, r);
    bool ok = m_.exact() ? equal : r <= kDoubleLawTolerance;
    if (!ok) {
      ++check_.violations;
      check_.pass = false;
    }
  }

  LawCheck take() && { return std::move(check_); }

 private:
  const Model& m_;
  LawCheck check_;
};

}  // namespace

LawReport verify_irq_axioms(const Model& m, long n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw ConfigError("verify_irq_axioms needs n_samples >= 1");
  LawReport report{"irq_axioms", m.config(), {}, seed, n_samples, {}, {}};
  Rng rng(seed);
  LawAccumulator r1(m, "R1"), r2(m, "R2"), unit(m, "unit"), fusion(m, "fusion");
  Scale one = Scale::one(m.scale_kind());
  for (long i = 0; i < n_samples; ++i) {
    Point x = m.sample(rng);
    Point y = m.sample(rng);
    Scale e = m.sample_scale(rng);
    Scale mu = m.sample_scale(rng);
    r1.observe(m.dil(x, e, x), x);
    r2.observe(m.dil(x, e, codil(m, x, e, y)), y);
    r2.observe(codil(m, x, e, m.dil(x, e, y)), y);
    unit.observe(m.dil(x, one, y), y);
    fusion.observe(m.dil(x, e, m.dil(x, mu, y)), m.dil(x, e.times(mu), y));
  }
  report.laws.push_back(std::move(r1).take());
  report.laws.push_back(std::move(r2).take());
  report.laws.push_back(std::move(unit).take());
  report.laws.push_back(std::move(fusion).take());
  return report;
}

LawReport verify_pplay(const Model& m, const Scale& eps, long n_samples, std::uint64_t seed) {
  LawReport report{"pplay", m.config(), {}, seed, n_samples, {}, {}};
  report.params = json{{"eps", eps.str()}};
  Rng rng(seed);
  LawAccumulator a(m, "a_delta_after_sigma");
  LawAccumulator b(m, "b_sigma_after_delta");
  LawAccumulator c(m, "c_delta_via_shifted_sigma");
  LawAccumulator d(m, "d_inverse_involution");
  LawAccumulator e_(m, "e_shifted_associativity");
  LawAccumulator f(m, "f_inverse_is_delta_to_base");
  LawAccumulator g(m, "g_right_neutral");
  for (long i = 0; i < n_samples; ++i) {
    Point x = m.sample(rng);
    Point u = m.sample(rng);
    Point v = m.sample(rng);
    Point w = m.sample(rng);
    Point xu = m.dil(x, eps, u);
    a.observe(approx_difference(m, x, eps, u, approx_sum(m, x, eps, u, v)), v);
    b.observe(approx_sum(m, x, eps, u, approx_difference(m, x, eps, u, v)), v);
    c.observe(approx_difference(m, x, eps, u, v),
              approx_sum(m, xu, eps, approx_inverse(m, x, eps, u), v));
    d.observe(approx_inverse(m, xu, eps, approx_inverse(m, x, eps, u)), u);
    e_.observe(approx_sum(m, x, eps, u, approx_sum(m, xu, eps, v, w)),
               approx_sum(m, x, eps, approx_sum(m, x, eps, u, v), w));
    f.observe(approx_inverse(m, x, eps, u), approx_difference(m, x, eps, u, x));
    g.observe(approx_sum(m, x, eps, x, u), u);
  }
  report.laws.push_back(std::move(a).take());
  report.laws.push_back(std::move(b).take());
  report.laws.push_back(std::move(c).take());
  report.laws.push_back(std::move(d).take());
  report.laws.push_back(std::move(e_).take());
  report.laws.push_back(std::move(f).take());
  report.laws.push_back(std::move(g).take());
  return report;
}

LawReport verify_distributivity(const Model& m, const Scale& eps, const Scale& lambda,
                                long n_samples, std::uint64_t seed) {
  LawReport report{"distributivity", m.config(), {}, seed, n_samples, {}, {}};
  report.params = json{{"eps", eps.str()}, {"lambda", lambda.str()}};
  Rng rng(seed);
  LawAccumulator dist(m, "self_distributivity");
  for (long i = 0; i < n_samples; ++i) {
    Point x = m.sample(rng);
    Point y = m.sample(rng);
    Point z = m.sample(rng);
    dist.observe(m.dil(x, eps, m.dil(y, lambda, z)),
                 m.dil(m.dil(x, eps, y), lambda, m.dil(x, eps, z)));
  }
  report.laws.push_back(std::move(dist).take());
  return report;
}

}  // namespace emg
