// Concrete carriers: affine space, a warped chart of it, the Heisenberg
// group with graded or isotropic dilations, a contractible unipotent matrix
// group (Γ = ℤ), the Alexander quandle on Laurent polynomials, and a
// basepoint-dependent Moebius chart field on an interval (the documented
// counterexample to self-distributivity).
#pragma once

#include "emergent/model.hpp"

namespace emg {

class AffineModel : public Model {
 public:
  AffineModel(int dimension, bool exact_mode);
  std::string name() const override { return "affine"; }
  json config() const override;
  bool exact() const override { return exact_; }
  ScaleKind scale_kind() const override { return ScaleKind::rational; }
  Point dil(const Point& x, const Scale& eps, const Point& y) const override;
  Point sample(Rng& rng) const override;
  Point default_basepoint() const override;
  bool has_metric() const override { return true; }
  double distance(const Point&, const Point&) const override;
  bool has_group() const override { return true; }
  Point identity() const override;
  Point mul(const Point&, const Point&) const override;
  Point inverse(const Point&) const override;
  bool has_delta() const override { return true; }
  Point delta(const Scale&, const Point&) const override;
  bool has_tangent_ops() const override { return true; }
  Point tangent_sum(const Point&, const Point&, const Point&) const override;
  Point tangent_difference(const Point&, const Point&, const Point&) const override;
  std::vector<std::string> norms() const override { return {"euclidean"}; }
  double norm(const std::string&, const Point&) const override;
  Point point_from_json(const json&) const override;
  int dimension() const { return dim_; }

 private:
  int dim_;
  bool exact_;
};

class WarpedAffineModel : public Model {
 public:
  explicit WarpedAffineModel(int dimension);
  std::string name() const override { return "warped"; }
  json config() const override;
  bool exact() const override { return false; }
  ScaleKind scale_kind() const override { return ScaleKind::rational; }
  Point dil(const Point& x, const Scale& eps, const Point& y) const override;
  Point sample(Rng& rng) const override;
  Point default_basepoint() const override;
  bool has_metric() const override { return true; }
  double distance(const Point&, const Point&) const override;
  bool has_tangent_ops() const override { return true; }
  Point tangent_sum(const Point&, const Point&, const Point&) const override;
  Point tangent_difference(const Point&, const Point&, const Point&) const override;
  Point point_from_json(const json&) const override;

  // chart y -> y + y^3/10, componentwise; exposed for test oracles
  static double chart(double y);
  static double chart_inverse(double z);

 private:
  int dim_;
};

class HeisenbergModel : public Model {
 public:
  HeisenbergModel(bool graded, bool exact_mode);
  std::string name() const override { return "heisenberg"; }
  json config() const override;
  bool exact() const override { return exact_; }
  ScaleKind scale_kind() const override { return ScaleKind::rational; }
  Point dil(const Point& x, const Scale& eps, const Point& y) const override;
  Point sample(Rng& rng) const override;
  Point default_basepoint() const override { return identity(); }
  bool has_metric() const override { return true; }
  double distance(const Point&, const Point&) const override;
  bool has_group() const override { return true; }
  Point identity() const override;
  Point mul(const Point&, const Point&) const override;
  Point inverse(const Point&) const override;
  bool has_delta() const override { return true; }
  Point delta(const Scale&, const Point&) const override;
  bool has_tangent_ops() const override { return true; }
  Point tangent_sum(const Point&, const Point&, const Point&) const override;
  Point tangent_difference(const Point&, const Point&, const Point&) const override;
  std::vector<std::string> norms() const override { return {"koranyi", "euclidean"}; }
  double norm(const std::string&, const Point&) const override;
  Point point_from_json(const json&) const override;
  bool graded() const { return graded_; }

 private:
  bool graded_;
  bool exact_;
};

// Upper-triangular unipotent 3x3 matrices in coordinates (a,b,c), with the
// contracting automorphism alpha = conjugation by diag(4,2,1):
// alpha(a,b,c) = (a/2, b/2, c/4). Gamma = Z acting by alpha^n.
class ContractibleUnipotentModel : public Model {
 public:
  ContractibleUnipotentModel() = default;
  std::string name() const override { return "contractible"; }
  json config() const override;
  bool exact() const override { return true; }
  ScaleKind scale_kind() const override { return ScaleKind::power; }
  Point dil(const Point& x, const Scale& eps, const Point& y) const override;
  Point sample(Rng& rng) const override;
  Point default_basepoint() const override { return identity(); }
  bool has_metric() const override { return true; }
  double distance(const Point&, const Point&) const override;
  bool has_group() const override { return true; }
  Point identity() const override;
  Point mul(const Point&, const Point&) const override;
  Point inverse(const Point&) const override;
  bool has_delta() const override { return true; }
  Point delta(const Scale&, const Point&) const override;
  bool has_tangent_ops() const override { return true; }
  Point tangent_sum(const Point&, const Point&, const Point&) const override;
  Point tangent_difference(const Point&, const Point&, const Point&) const override;
  std::vector<std::string> norms() const override { return {"euclidean"}; }
  double norm(const std::string&, const Point&) const override;
  Point point_from_json(const json&) const override;
};

class AlexanderQuandleModel : public Model {
 public:
  AlexanderQuandleModel() = default;
  std::string name() const override { return "alexander"; }
  json config() const override;
  bool exact() const override { return true; }
  ScaleKind scale_kind() const override { return ScaleKind::power; }
  Point dil(const Point& x, const Scale& eps, const Point& y) const override;
  Point sample(Rng& rng) const override;
  Point default_basepoint() const override { return Point(LaurentPoly()); }
  bool has_metric() const override { return true; }
  double distance(const Point&, const Point&) const override;
  bool has_tangent_ops() const override { return true; }
  Point tangent_sum(const Point&, const Point&, const Point&) const override;
  Point tangent_difference(const Point&, const Point&, const Point&) const override;
  Point point_from_json(const json&) const override;
  json point_to_json(const Point&) const override;
};

// dil(x,eps,y) = psi_x^{-1}(eps * psi_x(y)) with the Moebius chart
// psi_x(y) = (y-x)/(1 + k(x)(y-x)), k(x) = x/32. Fusion, unit and
// idempotence hold exactly; self-distributivity genuinely fails.
class MobiusModel : public Model {
 public:
  explicit MobiusModel(bool exact_mode) : exact_(exact_mode) {}
  std::string name() const override { return "mobius"; }
  json config() const override;
  bool exact() const override { return exact_; }
  ScaleKind scale_kind() const override { return ScaleKind::rational; }
  Point dil(const Point& x, const Scale& eps, const Point& y) const override;
  Point sample(Rng& rng) const override;
  Point default_basepoint() const override;
  bool has_metric() const override { return true; }
  double distance(const Point&, const Point&) const override;
  bool has_tangent_ops() const override { return true; }
  Point tangent_sum(const Point&, const Point&, const Point&) const override;
  Point tangent_difference(const Point&, const Point&, const Point&) const override;
  Point point_from_json(const json&) const override;

 private:
  bool exact_;
};

}  // namespace emg
