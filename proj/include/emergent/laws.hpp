// Law verification suites: per-law maximal residuals over seeded samples.
// In exact-arithmetic models a passing law has residual exactly zero, so a
// green check is a proof-by-evaluation at every sampled instance.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "emergent/model.hpp"

namespace emg {

struct LawCheck {
  std::string law;
  bool pass = false;
  double max_residual = 0.0;  // metric residual; 0/1 indicator without metric
  long violations = 0;
  std::string note;
};

struct LawReport {
  std::string test;
  json model;
  json params;
  std::uint64_t seed = 0;
  long samples = 0;
  std::vector<LawCheck> laws;
  std::vector<std::string> flagged;  // e.g. degenerate points for norm limits

  bool pass() const;
  const LawCheck& law(const std::string& name) const;
  json to_json() const;
};

// Absolute tolerance for laws in double-arithmetic models; exact models
// always demand residual == 0.
inline constexpr double kDoubleLawTolerance = 1e-9;

// (R1), (R2), unit, fusion over n_samples seeded tuples.
LawReport verify_irq_axioms(const Model& m, long n_samples, std::uint64_t seed);

// The seven gate identities at one fixed scale; they are consequences of the
// axioms, so they must hold at every ε, not only in the limit.
LawReport verify_pplay(const Model& m, const Scale& eps, long n_samples, std::uint64_t seed);

// x∘_ε(y∘_λ z) = (x∘_ε y)∘_λ(x∘_ε z)
LawReport verify_distributivity(const Model& m, const Scale& eps, const Scale& lambda,
                                long n_samples, std::uint64_t seed);

}  // namespace emg
