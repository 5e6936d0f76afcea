// Decorated planar binary trees over formal scale products, with the
// three-rule normalizer (UNIT, IDEM, FUSION) and the normalize-and-compare
// identity prover. The bullet operation is eliminated at parse time
// (b{e}(x,y) = o{e^-1}(x,y)), which keeps the rule set at three and makes
// (R2) derivable. Scale expressions are formal exponent vectors, so a
// successful proof is valid for every instantiation of its scale variables.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "emergent/model.hpp"

namespace emg {

struct ScaleExpr {
  Rational coeff{1};                // positive rational literal factor
  std::map<std::string, long> exps;  // variable -> exponent, no zero entries

  static ScaleExpr one();
  static ScaleExpr var(const std::string& name, long exponent = 1);
  static ScaleExpr literal(const Rational& value);

  ScaleExpr times(const ScaleExpr& other) const;
  ScaleExpr inverse() const;
  bool is_one() const { return coeff == 1 && exps.empty(); }
  bool operator==(const ScaleExpr&) const = default;
  std::size_t weight() const;
  std::string str() const;
};

class Term;
using TermPtr = std::shared_ptr<const Term>;

class Term {
 public:
  static TermPtr mk_var(std::string name);
  static TermPtr mk_dil(ScaleExpr scale, TermPtr base, TermPtr arg);

  bool is_var() const { return base_ == nullptr; }
  const std::string& var_name() const { return name_; }
  const ScaleExpr& scale() const { return scale_; }
  const TermPtr& base() const { return base_; }
  const TermPtr& arg() const { return arg_; }

 private:
  Term() = default;
  std::string name_;
  ScaleExpr scale_;
  TermPtr base_;
  TermPtr arg_;
};

bool term_equal(const TermPtr& a, const TermPtr& b);
std::size_t term_size(const TermPtr& t);
std::size_t term_scale_weight(const TermPtr& t);
std::string term_str(const TermPtr& t);
std::vector<std::string> free_point_vars(const TermPtr& t);
std::vector<std::string> free_scale_vars(const TermPtr& t);

// Grammar:
//   term  := var | ("o" | "b") "{" scale "}" "(" term "," term ")"
//   scale := factor { ("*" | whitespace) factor }
//   factor:= identifier ["^" integer] | positive rational literal
//   var   := identifier other than "o"/"b"
TermPtr parse_term(std::string_view src);

// One rewrite at `path` (0 = base child, 1 = arg child); before/after are
// the rewritten subterm. Replaying a trace re-applies each named rule.
struct RewriteStep {
  std::string rule;
  std::vector<int> path;
  TermPtr before;
  TermPtr after;
};

struct DerivationTrace {
  std::vector<RewriteStep> steps;
  std::string str() const;
};

enum class Strategy { innermost, outermost };

std::pair<TermPtr, DerivationTrace> normalize(const TermPtr& t,
                                              Strategy strategy = Strategy::innermost);

// Re-applies each step's rule at its recorded path, checking the recorded
// before/after subterms along the way; returns the final term.
TermPtr replay(const TermPtr& start, const DerivationTrace& trace);

struct Identity {
  std::string name;
  std::vector<std::string> point_vars;
  std::vector<std::string> scale_vars;
  TermPtr lhs;
  TermPtr rhs;
};

// "lhs = rhs"; quantified variables are inferred from the free variables.
Identity parse_identity(std::string_view src, std::string name = "identity");

struct Counterexample {
  std::map<std::string, Rational> points;
  std::map<std::string, Rational> scales;
  Rational lhs_value;
  Rational rhs_value;
  std::string str() const;
};

struct ProofResult {
  bool success = false;
  TermPtr lhs_nf;
  TermPtr rhs_nf;
  DerivationTrace lhs_trace;
  DerivationTrace rhs_trace;
  std::optional<Counterexample> counterexample;  // on failure, when found
  std::string note;
  json to_json() const;
};

// Normal forms equal => proved for all models and all scale instantiations.
// Otherwise a numeric counterexample is searched in the exact affine line.
ProofResult prove_identity(const Identity& id, int counterexample_trials = 100,
                           std::uint64_t seed = 2);

// The seven gate identities, with difference / sum / inverse gates expanded
// into dilation trees.
std::vector<Identity> builtin_identities();

struct TermEnv {
  std::map<std::string, Point> points;
  std::map<std::string, Scale> scales;
};

Scale eval_scale(const ScaleExpr& se, const Model& m, const TermEnv& env);
Point eval_term(const TermPtr& t, const Model& m, const TermEnv& env);

}  // namespace emg
