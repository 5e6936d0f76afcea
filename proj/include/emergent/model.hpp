// The model contract: one primitive operation dil(x, ε, y) = x ∘_ε y per
// carrier, plus optional metric, group, group-dilation and norm structure.
// Everything else in the library (gates, law suites, braids, limit sweeps)
// is written against this interface.
#pragma once

#include <json.hpp>
#include <memory>
#include <string>
#include <vector>

#include "emergent/errors.hpp"
#include "emergent/point.hpp"
#include "emergent/rng.hpp"
#include "emergent/scale.hpp"

namespace emg {

using json = nlohmann::ordered_json;

class Model {
 public:
  virtual ~Model() = default;

  virtual std::string name() const = 0;
  virtual json config() const = 0;
  virtual bool exact() const = 0;
  virtual ScaleKind scale_kind() const = 0;

  // The Γ-irq operation x ∘_ε y. Must satisfy, for all sampled points and
  // scales: dil(x,ε,x) = x, dil(x,1,y) = y, dil(x,ε,dil(x,μ,y)) = dil(x,εμ,y).
  virtual Point dil(const Point& x, const Scale& eps, const Point& y) const = 0;

  virtual Point sample(Rng& rng) const = 0;
  virtual Scale sample_scale(Rng& rng) const;
  virtual Point default_basepoint() const = 0;
  virtual bool equal(const Point& a, const Point& b) const { return a == b; }

  virtual bool has_metric() const { return false; }
  virtual double distance(const Point&, const Point&) const;

  // Group structure (models realizing a group with dilations).
  virtual bool has_group() const { return false; }
  virtual Point identity() const;
  virtual Point mul(const Point&, const Point&) const;
  virtual Point inverse(const Point&) const;

  // The basepoint-free dilation δ_ε of a group with dilations.
  virtual bool has_delta() const { return false; }
  virtual Point delta(const Scale&, const Point&) const;

  // Closed forms of the emergent tangent operations at basepoint x, where
  // the model admits them (conical groups: u x^-1 v and x u^-1 v; chart
  // conjugates of affine space: chart-level sums). These are the oracle
  // side of the limit sweeps; the sweeps themselves always measure the
  // gate compositions.
  virtual bool has_tangent_ops() const { return false; }
  virtual Point tangent_sum(const Point& x, const Point& u, const Point& v) const;
  virtual Point tangent_difference(const Point& x, const Point& u, const Point& v) const;

  virtual std::vector<std::string> norms() const { return {}; }
  virtual double norm(const std::string& which, const Point&) const;

  virtual Point point_from_json(const json&) const = 0;
  virtual json point_to_json(const Point&) const;

 protected:
  // Double-arithmetic models reject scale magnitudes outside [2^-60, 2^60].
  void check_scale_magnitude(const Scale& eps) const;
};

// Builds a model from a configuration record such as
//   {"model":"affine","dimension":2,"mode":"exact"}
//   {"model":"heisenberg","grading":"isotropic","mode":"exact"}
//   {"model":"warped","dimension":1}
//   {"model":"contractible"} {"model":"alexander"} {"model":"mobius"}
std::unique_ptr<Model> make_model(const json& config);

}  // namespace emg
