// Numerical realization of the scale-to-zero statements: emergent sum /
// difference limits and their group structure, the relative-dilation limit,
// group-with-dilations axioms H0-H2, metric compatibility A2, the cone
// identity, norm limits, and derivative convergence. Every sweep walks a
// strictly decreasing schedule and reports per-scale sup defects, Cauchy
// residuals and a fitted log-log rate.
#pragma once

#include <optional>

#include "emergent/gates.hpp"
#include "emergent/laws.hpp"
#include "emergent/scale.hpp"

namespace emg {

struct ConvergenceReport {
  std::string test;
  json model;
  json params;
  std::string schedule;
  std::vector<double> schedule_abs;
  std::vector<double> values;     // per-scale measured sup defect
  std::vector<double> residuals;  // Cauchy residuals between consecutive scales
  std::optional<double> rate;     // log-log slope of values against |eps|
  bool identically_zero = false;
  bool converged = false;
  double tolerance = 0.0;
  bool pass = false;

  json to_json() const;
};

// Defects at or below this are float round-off of an exact zero (metrics
// here are O(1)); they count as zero for sweep classification and are
// excluded from rate fits.
inline constexpr double kSweepNoiseFloor = 1e-13;

// Least-squares slope of log(value) against log(|eps|); values at the noise
// floor are excluded, and at least four surviving points are required.
std::optional<double> loglog_slope(const std::vector<double>& abs_eps,
                                   const std::vector<double>& values);

// Strictly decreasing over the last `window` entries, or identically zero.
bool decreasing_tail(const std::vector<double>& values, std::size_t window = 4);

// Fills residuals/rate/converged/identically_zero from schedule_abs+values.
void finish_sweep(ConvergenceReport& report);

struct LimitEstimate {
  Point limit;                    // the finest-scale value
  std::vector<double> residuals;  // d(v_k, v_last), k < last
  std::vector<double> cauchy;     // d(v_k, v_{k+1})
  std::optional<double> rate;
  bool converged = false;  // flag only; a non-Cauchy sequence is not an error
};

LimitEstimate estimate_limit(const std::vector<Point>& values, const Model& m,
                             const std::vector<double>& abs_eps);

// The emergent operations at basepoint x, realized at the finest schedule
// scale. The attached report justifies treating that scale as the limit.
struct EmergentOps {
  const Model* model = nullptr;
  Point x;
  Scale finest;

  Point sigma(const Point& u, const Point& v) const;
  Point delta(const Point& u, const Point& v) const;
  Point inv(const Point& u) const;
};

std::pair<EmergentOps, ConvergenceReport> emergent_ops(const Model& m, const Point& x,
                                                       int n_samples, const Schedule& schedule,
                                                       std::uint64_t seed);

// Group axioms of the emergent sum at tabulation level: associativity,
// neutral element x, inverse, and compatibility with the dilations.
// sample_radius > 0 restricts samples to that metric ball around the
// basepoint (the compact set on which the limits are uniform).
LawReport verify_conical_group(const EmergentOps& ops, int n_samples, std::uint64_t seed,
                               double tolerance, double sample_radius = -1.0);

// d(u o^{x,eps}_lambda v, Sigma^x(u, x o_lambda Delta^x(u,v))) per scale.
ConvergenceReport verify_relative_limit(const Model& m, const Point& x,
                                        const Schedule& schedule, int n_samples,
                                        const Scale& lambda, std::uint64_t seed);

// H0-H2 plus the conical-group axioms of the rescaled operation beta at the
// finest scale. The report's json carries the commutator defect of beta.
LawReport verify_gwd_axioms(const Model& m, const Schedule& schedule, int n_samples,
                            std::uint64_t seed, double tolerance);

// sup over a pair grid in the ball B(x, radius) of
// |(1/|eps|) d(dil_eps u, dil_eps v) - d^x(u,v)|, d^x from the finest scale.
ConvergenceReport verify_A2(const Model& m, const Point& x, double radius,
                            const Schedule& schedule, int grid_pairs, std::uint64_t seed);

// Residual of d^x(dil_lambda u, dil_lambda v) = |lambda| d^x(u,v) per lambda.
LawReport verify_cone(const Model& m, const Point& x, const std::vector<Scale>& lambdas,
                      const Schedule& tangent_schedule, int n_samples, std::uint64_t seed,
                      double tolerance);

// Norm axioms on samples, the rescaled-norm limit, and definiteness of the
// limit norm. Degenerate directions (limit 0 at p != e) are recorded in
// `flagged`; with expect_definite=false they are the documented outcome.
LawReport verify_norm_limit(const Model& m, const std::string& norm_name,
                            const Schedule& schedule, int n_samples, std::uint64_t seed,
                            double tolerance, bool expect_definite = true,
                            const std::vector<Point>& probes = {});

// (1/|eps|)||delta_eps p|| at one scale; the finest-scale value estimates
// the limit norm.
double rescaled_norm(const Model& m, const std::string& norm_name, const Scale& eps,
                     const Point& p);

ConvergenceReport derivative_convergence(const Model& m, const PointFn& f, const Point& x,
                                         const Point& u, const Schedule& schedule,
                                         const std::optional<Point>& oracle);

// "identity", "square", or "affine:<A>,<b>" (componentwise, exact rationals
// in exact models).
PointFn builtin_function(const Model& m, const std::string& fname);

}  // namespace emg
