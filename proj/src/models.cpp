#include "emergent/models.hpp"

#include <cmath>

namespace emg {

namespace {

Rational rat_of_scale(const Scale& eps) {
  if (eps.kind() != ScaleKind::rational)
    throw ConfigError("this model takes scales from Gamma = (0,+inf)");
  return eps.value();
}

double euclid(const RatVec& a, const RatVec& b) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    Rational d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(to_double(s));
}

double euclid(const DblVec& a, const DblVec& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

RatVec rats_from_json(const json& j, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw ConfigError("point must be an array of " + std::to_string(dim) + " coordinates");
  RatVec v;
  for (const auto& c : j) {
    if (c.is_string())
      v.push_back(parse_rational(c.get<std::string>()));
    else if (c.is_number_integer())
      v.push_back(Rational(c.get<long>()));
    else
      throw ConfigError("exact-mode coordinates must be integers or \"p/q\" strings");
  }
  return v;
}

DblVec dbls_from_json(const json& j, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw ConfigError("point must be an array of " + std::to_string(dim) + " coordinates");
  DblVec v;
  for (const auto& c : j) {
    if (c.is_number())
      v.push_back(c.get<double>());
    else if (c.is_string())
      v.push_back(to_double(parse_rational(c.get<std::string>())));
    else
      throw ConfigError("coordinates must be numbers");
  }
  return v;
}

}  // namespace

Scale Model::sample_scale(Rng& rng) const {
  if (scale_kind() == ScaleKind::rational)
    return Scale::from_rational(rng.positive_rational());
  long n = rng.range(-3, 3);
  return Scale::from_power(n);
}

double Model::distance(const Point&, const Point&) const {
  throw UnsupportedError(name() + " model has no metric");
}

Point Model::identity() const { throw UnsupportedError(name() + " model has no group structure"); }
Point Model::mul(const Point&, const Point&) const {
  throw UnsupportedError(name() + " model has no group structure");
}
Point Model::inverse(const Point&) const {
  throw UnsupportedError(name() + " model has no group structure");
}
Point Model::delta(const Scale&, const Point&) const {
  throw UnsupportedError(name() + " model has no group dilations");
}
double Model::norm(const std::string& which, const Point&) const {
  throw UnsupportedError(name() + " model has no norm '" + which + "'");
}

Point Model::tangent_sum(const Point&, const Point&, const Point&) const {
  throw UnsupportedError(name() + " model has no closed-form tangent operations");
}
Point Model::tangent_difference(const Point&, const Point&, const Point&) const {
  throw UnsupportedError(name() + " model has no closed-form tangent operations");
}

json Model::point_to_json(const Point& p) const {
  json out = json::array();
  if (p.is_rats())
    for (const auto& c : p.rats()) out.push_back(rat_str(c));
  else if (p.is_dbls())
    for (double c : p.dbls()) out.push_back(c);
  else
    throw UnsupportedError("no generic JSON form for this point");
  return out;
}

void Model::check_scale_magnitude(const Scale& eps) const {
  if (exact()) return;
  static const Rational lo = rat_pow(Rational(1, 2), 60);
  static const Rational hi = rat_pow(Rational(2), 60);
  Rational a = eps.abs();
  if (a < lo || a > hi)
    throw DomainError("scale magnitude " + rat_str(a) +
                      " outside [2^-60, 2^60] in a double-arithmetic model");
}

// ---------------------------------------------------------------- affine

AffineModel::AffineModel(int dimension, bool exact_mode) : dim_(dimension), exact_(exact_mode) {
  if (dimension < 1 || dimension > 16) throw ConfigError("affine dimension must be in 1..16");
}

json AffineModel::config() const {
  return json{{"model", "affine"}, {"dimension", dim_}, {"mode", exact_ ? "exact" : "double"}};
}

Point AffineModel::dil(const Point& x, const Scale& eps, const Point& y) const {
  if (exact_) {
    Rational e = rat_of_scale(eps);
    const auto& xv = x.rats();
    const auto& yv = y.rats();
    RatVec out(xv.size());
    for (std::size_t i = 0; i < xv.size(); ++i) out[i] = xv[i] + e * (yv[i] - xv[i]);
    return Point(std::move(out));
  }
  check_scale_magnitude(eps);
  double e = to_double(rat_of_scale(eps));
  const auto& xv = x.dbls();
  const auto& yv = y.dbls();
  DblVec out(xv.size());
  for (std::size_t i = 0; i < xv.size(); ++i) out[i] = xv[i] + e * (yv[i] - xv[i]);
  return Point(std::move(out));
}

Point AffineModel::sample(Rng& rng) const {
  if (exact_) {
    RatVec v(dim_);
    for (auto& c : v) c = rng.rational_in_box(2);
    return Point(std::move(v));
  }
  DblVec v(dim_);
  for (auto& c : v) c = rng.uniform(-2.0, 2.0);
  return Point(std::move(v));
}

Point AffineModel::default_basepoint() const {
  return exact_ ? Point(RatVec(dim_, Rational(0))) : Point(DblVec(dim_, 0.0));
}

double AffineModel::distance(const Point& p, const Point& q) const {
  return exact_ ? euclid(p.rats(), q.rats()) : euclid(p.dbls(), q.dbls());
}

Point AffineModel::identity() const { return default_basepoint(); }

Point AffineModel::mul(const Point& p, const Point& q) const {
  if (exact_) {
    RatVec out = p.rats();
    const auto& qv = q.rats();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += qv[i];
    return Point(std::move(out));
  }
  DblVec out = p.dbls();
  const auto& qv = q.dbls();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += qv[i];
  return Point(std::move(out));
}

Point AffineModel::inverse(const Point& p) const {
  if (exact_) {
    RatVec out = p.rats();
    for (auto& c : out) c = -c;
    return Point(std::move(out));
  }
  DblVec out = p.dbls();
  for (auto& c : out) c = -c;
  return Point(std::move(out));
}

Point AffineModel::delta(const Scale& eps, const Point& p) const {
  return dil(identity(), eps, p);
}

Point AffineModel::tangent_sum(const Point& x, const Point& u, const Point& v) const {
  if (exact_) {
    RatVec out(static_cast<std::size_t>(dim_));
    for (int i = 0; i < dim_; ++i) out[i] = u.rats()[i] - x.rats()[i] + v.rats()[i];
    return Point(std::move(out));
  }
  DblVec out(static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i) out[i] = u.dbls()[i] - x.dbls()[i] + v.dbls()[i];
  return Point(std::move(out));
}

Point AffineModel::tangent_difference(const Point& x, const Point& u, const Point& v) const {
  return tangent_sum(u, x, v);
}

double AffineModel::norm(const std::string& which, const Point& p) const {
  if (which != "euclidean") return Model::norm(which, p);
  return distance(identity(), p);
}

Point AffineModel::point_from_json(const json& j) const {
  return exact_ ? Point(rats_from_json(j, dim_)) : Point(dbls_from_json(j, dim_));
}

// ---------------------------------------------------------------- warped

WarpedAffineModel::WarpedAffineModel(int dimension) : dim_(dimension) {
  if (dimension < 1 || dimension > 16) throw ConfigError("warped dimension must be in 1..16");
}

json WarpedAffineModel::config() const {
  return json{{"model", "warped"}, {"dimension", dim_}, {"mode", "double"}};
}

double WarpedAffineModel::chart(double y) { return y + y * y * y / 10.0; }

double WarpedAffineModel::chart_inverse(double z) {
  // real root of t^3 + 10 t - 10 z = 0 (Cardano), then two Newton steps
  double disc = std::sqrt(25.0 * z * z + 1000.0 / 27.0);
  double t = std::cbrt(5.0 * z + disc) + std::cbrt(5.0 * z - disc);
  for (int i = 0; i < 2; ++i) {
    double f = t + t * t * t / 10.0 - z;
    double fp = 1.0 + 0.3 * t * t;
    t -= f / fp;
  }
  return t;
}

Point WarpedAffineModel::dil(const Point& x, const Scale& eps, const Point& y) const {
  check_scale_magnitude(eps);
  double e = to_double(rat_of_scale(eps));
  const auto& xv = x.dbls();
  const auto& yv = y.dbls();
  DblVec out(xv.size());
  for (std::size_t i = 0; i < xv.size(); ++i) {
    double cx = chart(xv[i]);
    out[i] = chart_inverse(cx + e * (chart(yv[i]) - cx));
  }
  return Point(std::move(out));
}

Point WarpedAffineModel::sample(Rng& rng) const {
  DblVec v(dim_);
  for (auto& c : v) c = rng.uniform(-2.0, 2.0);
  return Point(std::move(v));
}

Point WarpedAffineModel::default_basepoint() const { return Point(DblVec(dim_, 0.5)); }

double WarpedAffineModel::distance(const Point& p, const Point& q) const {
  return euclid(p.dbls(), q.dbls());
}

Point WarpedAffineModel::tangent_sum(const Point& x, const Point& u, const Point& v) const {
  DblVec out(static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i)
    out[i] = chart_inverse(chart(u.dbls()[i]) - chart(x.dbls()[i]) + chart(v.dbls()[i]));
  return Point(std::move(out));
}

Point WarpedAffineModel::tangent_difference(const Point& x, const Point& u,
                                            const Point& v) const {
  return tangent_sum(u, x, v);
}

Point WarpedAffineModel::point_from_json(const json& j) const {
  return Point(dbls_from_json(j, dim_));
}

// ------------------------------------------------------------- heisenberg

HeisenbergModel::HeisenbergModel(bool graded, bool exact_mode)
    : graded_(graded), exact_(exact_mode) {}

json HeisenbergModel::config() const {
  return json{{"model", "heisenberg"},
              {"grading", graded_ ? "graded" : "isotropic"},
              {"mode", exact_ ? "exact" : "double"}};
}

Point HeisenbergModel::identity() const {
  return exact_ ? Point(RatVec(3, Rational(0))) : Point(DblVec(3, 0.0));
}

Point HeisenbergModel::mul(const Point& p, const Point& q) const {
  if (exact_) {
    const auto& a = p.rats();
    const auto& b = q.rats();
    return Point(RatVec{a[0] + b[0], a[1] + b[1],
                        a[2] + b[2] + (a[0] * b[1] - a[1] * b[0]) / 2});
  }
  const auto& a = p.dbls();
  const auto& b = q.dbls();
  return Point(DblVec{a[0] + b[0], a[1] + b[1],
                      a[2] + b[2] + (a[0] * b[1] - a[1] * b[0]) / 2.0});
}

Point HeisenbergModel::inverse(const Point& p) const {
  if (exact_) {
    const auto& a = p.rats();
    return Point(RatVec{-a[0], -a[1], -a[2]});
  }
  const auto& a = p.dbls();
  return Point(DblVec{-a[0], -a[1], -a[2]});
}

Point HeisenbergModel::delta(const Scale& eps, const Point& p) const {
  Rational e = rat_of_scale(eps);
  if (exact_) {
    const auto& a = p.rats();
    return Point(RatVec{e * a[0], e * a[1], (graded_ ? e * e : e) * a[2]});
  }
  check_scale_magnitude(eps);
  double ed = to_double(e);
  const auto& a = p.dbls();
  return Point(DblVec{ed * a[0], ed * a[1], (graded_ ? ed * ed : ed) * a[2]});
}

Point HeisenbergModel::dil(const Point& x, const Scale& eps, const Point& y) const {
  return mul(x, delta(eps, mul(inverse(x), y)));
}

Point HeisenbergModel::sample(Rng& rng) const {
  if (exact_) {
    RatVec v(3);
    for (auto& c : v) c = rng.rational_in_box(2);
    return Point(std::move(v));
  }
  DblVec v(3);
  for (auto& c : v) c = rng.uniform(-2.0, 2.0);
  return Point(std::move(v));
}

double HeisenbergModel::norm(const std::string& which, const Point& p) const {
  double a, b, c;
  if (exact_) {
    const auto& v = p.rats();
    a = to_double(v[0]), b = to_double(v[1]), c = to_double(v[2]);
  } else {
    const auto& v = p.dbls();
    a = v[0], b = v[1], c = v[2];
  }
  if (which == "koranyi") {
    double q = a * a + b * b;
    return std::pow(q * q + 16.0 * c * c, 0.25);
  }
  if (which == "euclidean") return std::sqrt(a * a + b * b + c * c);
  return Model::norm(which, p);
}

double HeisenbergModel::distance(const Point& p, const Point& q) const {
  // graded: left-invariant Koranyi metric d(p,q) = ||p^-1 q||. isotropic:
  // ambient euclidean distance -- the euclidean norm is only locally
  // subadditive on the group, so ||p^-1 q|| would break the triangle
  // inequality at box scale.
  if (graded_) return norm("koranyi", mul(inverse(p), q));
  if (exact_) {
    const auto& a = p.rats();
    const auto& b = q.rats();
    Rational s(0);
    for (int i = 0; i < 3; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(to_double(s));
  }
  const auto& a = p.dbls();
  const auto& b = q.dbls();
  double s = 0;
  for (int i = 0; i < 3; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

Point HeisenbergModel::tangent_sum(const Point& x, const Point& u, const Point& v) const {
  // graded dilations are group morphisms, so the emergent sum is the
  // translated group law u x^-1 v; the isotropic dilation field collapses
  // to the affine one, so its tangent operations are the abelian forms
  if (graded_) return mul(u, mul(inverse(x), v));
  if (exact_) {
    RatVec out(3);
    for (int i = 0; i < 3; ++i) out[i] = u.rats()[i] - x.rats()[i] + v.rats()[i];
    return Point(std::move(out));
  }
  DblVec out(3);
  for (int i = 0; i < 3; ++i) out[i] = u.dbls()[i] - x.dbls()[i] + v.dbls()[i];
  return Point(std::move(out));
}

Point HeisenbergModel::tangent_difference(const Point& x, const Point& u, const Point& v) const {
  if (graded_) return mul(x, mul(inverse(u), v));
  return tangent_sum(u, x, v);
}

Point HeisenbergModel::point_from_json(const json& j) const {
  return exact_ ? Point(rats_from_json(j, 3)) : Point(dbls_from_json(j, 3));
}

// ------------------------------------------------------------ contractible

json ContractibleUnipotentModel::config() const {
  return json{{"model", "contractible"}, {"mode", "exact"}};
}

Point ContractibleUnipotentModel::identity() const { return Point(RatVec(3, Rational(0))); }

Point ContractibleUnipotentModel::mul(const Point& p, const Point& q) const {
  const auto& a = p.rats();
  const auto& b = q.rats();
  // [[1,a0,a2],[0,1,a1],[0,0,1]] * [[1,b0,b2],[0,1,b1],[0,0,1]]
  return Point(RatVec{a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1]});
}

Point ContractibleUnipotentModel::inverse(const Point& p) const {
  const auto& a = p.rats();
  return Point(RatVec{-a[0], -a[1], a[0] * a[1] - a[2]});
}

Point ContractibleUnipotentModel::delta(const Scale& eps, const Point& p) const {
  if (eps.kind() != ScaleKind::power)
    throw ConfigError("contractible model takes scales from Gamma = Z (powers of alpha)");
  long n = eps.exponent();
  Rational h = rat_pow(Rational(1, 2), n);
  const auto& a = p.rats();
  return Point(RatVec{h * a[0], h * a[1], h * h * a[2]});
}

Point ContractibleUnipotentModel::dil(const Point& x, const Scale& eps, const Point& y) const {
  return mul(x, delta(eps, mul(inverse(x), y)));
}

Point ContractibleUnipotentModel::sample(Rng& rng) const {
  RatVec v(3);
  for (auto& c : v) c = rng.rational_in_box(2);
  return Point(std::move(v));
}

double ContractibleUnipotentModel::norm(const std::string& which, const Point& p) const {
  if (which != "euclidean") return Model::norm(which, p);
  const auto& v = p.rats();
  Rational s = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
  return std::sqrt(to_double(s));
}

double ContractibleUnipotentModel::distance(const Point& p, const Point& q) const {
  // ambient euclidean on coordinates; ||p^-1 q|| is not even symmetric in
  // the polarized coordinates (the inverse is (-a,-b,ab-c))
  const auto& a = p.rats();
  const auto& b = q.rats();
  Rational s(0);
  for (int i = 0; i < 3; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(to_double(s));
}

Point ContractibleUnipotentModel::tangent_sum(const Point& x, const Point& u,
                                              const Point& v) const {
  return mul(u, mul(inverse(x), v));
}

Point ContractibleUnipotentModel::tangent_difference(const Point& x, const Point& u,
                                                     const Point& v) const {
  return mul(x, mul(inverse(u), v));
}

Point ContractibleUnipotentModel::point_from_json(const json& j) const {
  return Point(rats_from_json(j, 3));
}

// --------------------------------------------------------------- alexander

json AlexanderQuandleModel::config() const {
  return json{{"model", "alexander"}, {"mode", "exact"}};
}

Point AlexanderQuandleModel::dil(const Point& x, const Scale& eps, const Point& y) const {
  if (eps.kind() != ScaleKind::power)
    throw ConfigError("alexander model takes scales t^k from Gamma = Z");
  const auto& xp = x.laurent();
  const auto& yp = y.laurent();
  return Point(xp + (yp - xp).shift(eps.exponent()));
}

Point AlexanderQuandleModel::sample(Rng& rng) const {
  LaurentPoly p;
  long terms = rng.range(0, 3);
  for (long i = 0; i < terms; ++i) {
    long e = rng.range(-2, 2);
    p.set_coeff(e, p.coeff(e) + rng.rational_in_box(2));
  }
  return Point(std::move(p));
}

double AlexanderQuandleModel::distance(const Point& p, const Point& q) const {
  return to_double((p.laurent() - q.laurent()).coeff_l1());
}

Point AlexanderQuandleModel::tangent_sum(const Point& x, const Point& u, const Point& v) const {
  return Point(u.laurent() - x.laurent() + v.laurent());
}

Point AlexanderQuandleModel::tangent_difference(const Point& x, const Point& u,
                                                const Point& v) const {
  return Point(x.laurent() - u.laurent() + v.laurent());
}

Point AlexanderQuandleModel::point_from_json(const json& j) const {
  if (j.is_object() && j.contains("coeffs")) {
    LaurentPoly p;
    for (const auto& pair : j.at("coeffs")) {
      if (!pair.is_array() || pair.size() != 2)
        throw ConfigError("alexander point coeffs must be [exponent, coefficient] pairs");
      long e = pair[0].get<long>();
      Rational c = pair[1].is_string() ? parse_rational(pair[1].get<std::string>())
                                       : Rational(pair[1].get<long>());
      p.set_coeff(e, c);
    }
    return Point(std::move(p));
  }
  if (j.is_string()) return Point(LaurentPoly(parse_rational(j.get<std::string>())));
  if (j.is_number_integer()) return Point(LaurentPoly(Rational(j.get<long>())));
  throw ConfigError("alexander point must be {\"coeffs\": [[k, c], ...]} or a rational");
}

json AlexanderQuandleModel::point_to_json(const Point& p) const {
  json pairs = json::array();
  for (const auto& [e, c] : p.laurent().coeffs()) pairs.push_back(json::array({e, rat_str(c)}));
  return json{{"coeffs", pairs}};
}

// ------------------------------------------------------------------ mobius

namespace {

// k(x) = x/32; chart and inverse are Moebius in y with an exact pole check
Rational mobius_chart(const Rational& x, const Rational& y) {
  Rational k = x / 32;
  Rational den = 1 + k * (y - x);
  if (den == 0) throw DomainError("mobius chart pole at y = " + rat_str(y));
  return (y - x) / den;
}

Rational mobius_chart_inverse(const Rational& x, const Rational& z) {
  Rational k = x / 32;
  Rational den = 1 - k * z;
  if (den == 0) throw DomainError("mobius inverse chart pole at z = " + rat_str(z));
  return x + z / den;
}

double mobius_chart_d(double x, double y) {
  double k = x / 32.0;
  double den = 1.0 + k * (y - x);
  if (std::fabs(den) < 1e-12) throw DomainError("mobius chart pole");
  return (y - x) / den;
}

double mobius_chart_inverse_d(double x, double z) {
  double k = x / 32.0;
  double den = 1.0 - k * z;
  if (std::fabs(den) < 1e-12) throw DomainError("mobius inverse chart pole");
  return x + z / den;
}

}  // namespace

json MobiusModel::config() const {
  return json{{"model", "mobius"}, {"mode", exact_ ? "exact" : "double"}};
}

Point MobiusModel::dil(const Point& x, const Scale& eps, const Point& y) const {
  if (exact_) {
    Rational e = rat_of_scale(eps);
    const Rational& xv = x.rats()[0];
    return Point(RatVec{mobius_chart_inverse(xv, e * mobius_chart(xv, y.rats()[0]))});
  }
  check_scale_magnitude(eps);
  double e = to_double(rat_of_scale(eps));
  double xv = x.dbls()[0];
  return Point(DblVec{mobius_chart_inverse_d(xv, e * mobius_chart_d(xv, y.dbls()[0]))});
}

Point MobiusModel::sample(Rng& rng) const {
  if (exact_) {
    long den = rng.range(2, 16);
    long num = rng.range(-3 * den / 2, 3 * den / 2);
    return Point(RatVec{Rational(num, den)});
  }
  return Point(DblVec{rng.uniform(-1.5, 1.5)});
}

Point MobiusModel::default_basepoint() const {
  return exact_ ? Point(RatVec{Rational(1)}) : Point(DblVec{1.0});
}

double MobiusModel::distance(const Point& p, const Point& q) const {
  if (exact_) return std::fabs(to_double(p.rats()[0] - q.rats()[0]));
  return std::fabs(p.dbls()[0] - q.dbls()[0]);
}

Point MobiusModel::tangent_sum(const Point& x, const Point& u, const Point& v) const {
  if (exact_) {
    const Rational& xv = x.rats()[0];
    return Point(
        RatVec{mobius_chart_inverse(xv, mobius_chart(xv, u.rats()[0]) + mobius_chart(xv, v.rats()[0]))});
  }
  double xv = x.dbls()[0];
  return Point(DblVec{
      mobius_chart_inverse_d(xv, mobius_chart_d(xv, u.dbls()[0]) + mobius_chart_d(xv, v.dbls()[0]))});
}

Point MobiusModel::tangent_difference(const Point& x, const Point& u, const Point& v) const {
  if (exact_) {
    const Rational& xv = x.rats()[0];
    return Point(
        RatVec{mobius_chart_inverse(xv, mobius_chart(xv, v.rats()[0]) - mobius_chart(xv, u.rats()[0]))});
  }
  double xv = x.dbls()[0];
  return Point(DblVec{
      mobius_chart_inverse_d(xv, mobius_chart_d(xv, v.dbls()[0]) - mobius_chart_d(xv, u.dbls()[0]))});
}

Point MobiusModel::point_from_json(const json& j) const {
  return exact_ ? Point(rats_from_json(j, 1)) : Point(dbls_from_json(j, 1));
}

// ----------------------------------------------------------------- factory

std::unique_ptr<Model> make_model(const json& config) {
  if (!config.is_object() || !config.contains("model"))
    throw ConfigError("model config must be an object with a \"model\" field");
  std::string kind = config.at("model").get<std::string>();
  std::string mode = config.value("mode", std::string());
  auto want_exact = [&](bool dflt) {
    if (mode.empty()) return dflt;
    if (mode == "exact") return true;
    if (mode == "double") return false;
    throw ConfigError("mode must be \"exact\" or \"double\", got \"" + mode + "\"");
  };
  int dim = config.value("dimension", 1);
  if (kind == "affine") return std::make_unique<AffineModel>(dim, want_exact(true));
  if (kind == "warped") {
    if (mode == "exact") throw ConfigError("warped model is double-arithmetic only");
    return std::make_unique<WarpedAffineModel>(dim);
  }
  if (kind == "heisenberg") {
    std::string grading = config.value("grading", std::string("graded"));
    if (grading != "graded" && grading != "isotropic")
      throw ConfigError("grading must be \"graded\" or \"isotropic\"");
    return std::make_unique<HeisenbergModel>(grading == "graded", want_exact(true));
  }
  if (kind == "contractible") {
    if (mode == "double") throw ConfigError("contractible model is exact-arithmetic only");
    return std::make_unique<ContractibleUnipotentModel>();
  }
  if (kind == "alexander") {
    if (mode == "double") throw ConfigError("alexander model is exact-arithmetic only");
    return std::make_unique<AlexanderQuandleModel>();
  }
  if (kind == "mobius") return std::make_unique<MobiusModel>(want_exact(true));
  throw ConfigError("unknown model \"" + kind + "\"");
}

}  // namespace emg
