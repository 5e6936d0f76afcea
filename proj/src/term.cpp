#include "emergent/term.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "emergent/models.hpp"

namespace emg {

// --------------------------------------------------------------- ScaleExpr

ScaleExpr ScaleExpr::one() { return ScaleExpr{}; }

ScaleExpr ScaleExpr::var(const std::string& name, long exponent) {
  ScaleExpr s;
  if (exponent != 0) s.exps[name] = exponent;
  return s;
}

ScaleExpr ScaleExpr::literal(const Rational& value) {
  if (value <= 0) throw ConfigError("scale literals must be positive, got " + rat_str(value));
  ScaleExpr s;
  s.coeff = value;
  return s;
}

ScaleExpr ScaleExpr::times(const ScaleExpr& other) const {
  ScaleExpr out = *this;
  out.coeff *= other.coeff;
  for (const auto& [v, k] : other.exps) {
    long n = (out.exps.count(v) ? out.exps[v] : 0) + k;
    if (n == 0)
      out.exps.erase(v);
    else
      out.exps[v] = n;
  }
  return out;
}

ScaleExpr ScaleExpr::inverse() const {
  ScaleExpr out;
  out.coeff = Rational(denominator(coeff), numerator(coeff));
  for (const auto& [v, k] : exps) out.exps[v] = -k;
  return out;
}

std::size_t ScaleExpr::weight() const {
  std::size_t w = coeff == 1 ? 0 : 1;
  for (const auto& [v, k] : exps) w += static_cast<std::size_t>(k < 0 ? -k : k);
  return w;
}

std::string ScaleExpr::str() const {
  std::ostringstream os;
  bool printed = false;
  if (coeff != 1 || exps.empty()) {
    os << rat_str(coeff);
    printed = true;
  }
  for (const auto& [v, k] : exps) {
    if (printed) os << " ";
    os << v;
    if (k != 1) os << "^" << k;
    printed = true;
  }
  return os.str();
}

// -------------------------------------------------------------------- Term

TermPtr Term::mk_var(std::string name) {
  auto t = std::shared_ptr<Term>(new Term());
  t->name_ = std::move(name);
  return t;
}

TermPtr Term::mk_dil(ScaleExpr scale, TermPtr base, TermPtr arg) {
  auto t = std::shared_ptr<Term>(new Term());
  t->scale_ = std::move(scale);
  t->base_ = std::move(base);
  t->arg_ = std::move(arg);
  return t;
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (a->is_var() != b->is_var()) return false;
  if (a->is_var()) return a->var_name() == b->var_name();
  return a->scale() == b->scale() && term_equal(a->base(), b->base()) &&
         term_equal(a->arg(), b->arg());
}

std::size_t term_size(const TermPtr& t) {
  if (t->is_var()) return 1;
  return 1 + term_size(t->base()) + term_size(t->arg());
}

std::size_t term_scale_weight(const TermPtr& t) {
  if (t->is_var()) return 0;
  return t->scale().weight() + term_scale_weight(t->base()) + term_scale_weight(t->arg());
}

std::string term_str(const TermPtr& t) {
  if (t->is_var()) return t->var_name();
  return "o{" + t->scale().str() + "}(" + term_str(t->base()) + ", " + term_str(t->arg()) + ")";
}

namespace {
void collect_vars(const TermPtr& t, std::set<std::string>& points,
                  std::set<std::string>& scales) {
  if (t->is_var()) {
    points.insert(t->var_name());
    return;
  }
  for (const auto& [v, k] : t->scale().exps) scales.insert(v);
  collect_vars(t->base(), points, scales);
  collect_vars(t->arg(), points, scales);
}
}  // namespace

std::vector<std::string> free_point_vars(const TermPtr& t) {
  std::set<std::string> p, s;
  collect_vars(t, p, s);
  return {p.begin(), p.end()};
}

std::vector<std::string> free_scale_vars(const TermPtr& t) {
  std::set<std::string> p, s;
  collect_vars(t, p, s);
  return {s.begin(), s.end()};
}

// ------------------------------------------------------------------ parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  TermPtr parse() {
    TermPtr t = term();
    skip_ws();
    if (pos_ != src_.size()) fail("trailing input after term");
    return t;
  }

  TermPtr term() {
    skip_ws();
    std::size_t start = pos_;
    std::string id = ident();
    if (id == "o" || id == "b") {
      skip_ws();
      if (pos_ >= src_.size() || src_[pos_] != '{')
        fail("'" + id + "' must be followed by '{scale}'", start);
      expect('{');
      ScaleExpr se = scale();
      expect('}');
      expect('(');
      TermPtr base = term();
      expect(',');
      TermPtr arg = term();
      expect(')');
      if (id == "b") se = se.inverse();
      return Term::mk_dil(std::move(se), std::move(base), std::move(arg));
    }
    return Term::mk_var(std::move(id));
  }

 private:
  ScaleExpr scale() {
    ScaleExpr acc = ScaleExpr::one();
    bool any = false;
    for (;;) {
      skip_ws();
      if (pos_ < src_.size() && src_[pos_] == '*') {
        ++pos_;
        skip_ws();
      }
      if (pos_ >= src_.size()) fail("unterminated scale expression");
      char c = src_[pos_];
      if (c == '}') break;
      if (std::isdigit(static_cast<unsigned char>(c))) {
        acc = acc.times(ScaleExpr::literal(rational_literal()));
        any = true;
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string name = ident();
        long k = 1;
        if (pos_ < src_.size() && src_[pos_] == '^') {
          ++pos_;
          k = integer();
        }
        acc = acc.times(ScaleExpr::var(name, k));
        any = true;
        continue;
      }
      fail(std::string("unexpected character '") + c + "' in scale");
    }
    if (!any) fail("empty scale expression");
    return acc;
  }

  Rational rational_literal() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '/') {
      ++pos_;
      if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
        fail("expected digits after '/'");
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    return parse_rational(src_.substr(start, pos_ - start));
  }

  long integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) ++pos_;
    if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
      fail("expected an integer");
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    return std::stol(std::string(src_.substr(start, pos_ - start)));
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= src_.size() ||
        !(std::isalpha(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      fail("expected an identifier");
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                  src_[pos_] == '_'))
      ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= src_.size() || src_[pos_] != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) { fail(msg, pos_); }
  [[noreturn]] void fail(const std::string& msg, std::size_t at) { throw ParseError(msg, at); }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

TermPtr parse_term(std::string_view src) { return Parser(src).parse(); }

// -------------------------------------------------------------- normalizer

namespace {

// Tries one rule at the root. Order fixes the derivation, not the normal
// form (overlaps agree; see the confluence tests).
std::optional<std::pair<std::string, TermPtr>> root_step(const TermPtr& t) {
  if (t->is_var()) return std::nullopt;
  if (t->scale().is_one()) return std::make_pair(std::string("UNIT"), t->arg());
  if (term_equal(t->base(), t->arg())) return std::make_pair(std::string("IDEM"), t->base());
  if (!t->arg()->is_var() && term_equal(t->base(), t->arg()->base())) {
    return std::make_pair(
        std::string("FUSION"),
        Term::mk_dil(t->scale().times(t->arg()->scale()), t->base(), t->arg()->arg()));
  }
  return std::nullopt;
}

TermPtr normalize_innermost(const TermPtr& t, std::vector<int>& path,
                            std::vector<RewriteStep>& steps) {
  if (t->is_var()) return t;
  path.push_back(0);
  TermPtr base = normalize_innermost(t->base(), path, steps);
  path.back() = 1;
  TermPtr arg = normalize_innermost(t->arg(), path, steps);
  path.pop_back();
  TermPtr cur = Term::mk_dil(t->scale(), std::move(base), std::move(arg));
  while (auto step = root_step(cur)) {
    steps.push_back({step->first, path, cur, step->second});
    cur = step->second;
    if (cur->is_var()) break;
  }
  return cur;
}

// Leftmost-outermost redex: root first, then base, then arg.
bool outermost_step(const TermPtr& t, std::vector<int>& path, RewriteStep& out) {
  if (t->is_var()) return false;
  if (auto step = root_step(t)) {
    out = {step->first, path, t, step->second};
    return true;
  }
  path.push_back(0);
  if (outermost_step(t->base(), path, out)) {
    path.pop_back();
    return true;
  }
  path.back() = 1;
  if (outermost_step(t->arg(), path, out)) {
    path.pop_back();
    return true;
  }
  path.pop_back();
  return false;
}

TermPtr splice(const TermPtr& t, const std::vector<int>& path, std::size_t depth,
               const TermPtr& replacement) {
  if (depth == path.size()) return replacement;
  if (t->is_var()) throw Error("rewrite path walks through a variable");
  if (path[depth] == 0)
    return Term::mk_dil(t->scale(), splice(t->base(), path, depth + 1, replacement), t->arg());
  return Term::mk_dil(t->scale(), t->base(), splice(t->arg(), path, depth + 1, replacement));
}

TermPtr subterm_at(const TermPtr& t, const std::vector<int>& path) {
  TermPtr cur = t;
  for (int step : path) {
    if (cur->is_var()) throw Error("rewrite path walks through a variable");
    cur = step == 0 ? cur->base() : cur->arg();
  }
  return cur;
}

}  // namespace

std::string DerivationTrace::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& s = steps[i];
    os << "  " << (i + 1) << ". " << s.rule << " at [";
    for (std::size_t j = 0; j < s.path.size(); ++j) os << (j ? "," : "") << s.path[j];
    os << "]: " << term_str(s.before) << "  ->  " << term_str(s.after) << "\n";
  }
  return os.str();
}

std::pair<TermPtr, DerivationTrace> normalize(const TermPtr& t, Strategy strategy) {
  DerivationTrace trace;
  if (strategy == Strategy::innermost) {
    std::vector<int> path;
    TermPtr nf = normalize_innermost(t, path, trace.steps);
    return {nf, trace};
  }
  TermPtr cur = t;
  for (;;) {
    std::vector<int> path;
    RewriteStep step;
    if (!outermost_step(cur, path, step)) break;
    trace.steps.push_back(step);
    cur = splice(cur, step.path, 0, step.after);
  }
  return {cur, trace};
}

TermPtr replay(const TermPtr& start, const DerivationTrace& trace) {
  TermPtr cur = start;
  for (const auto& step : trace.steps) {
    TermPtr sub = subterm_at(cur, step.path);
    if (!term_equal(sub, step.before))
      throw Error("trace replay mismatch: expected " + term_str(step.before) + ", found " +
                  term_str(sub));
    auto applied = root_step(sub);
    if (!applied || applied->first != step.rule || !term_equal(applied->second, step.after))
      throw Error("trace replay: rule " + step.rule + " does not reproduce " +
                  term_str(step.after));
    cur = splice(cur, step.path, 0, applied->second);
  }
  return cur;
}

// ------------------------------------------------------------------ prover

Identity parse_identity(std::string_view src, std::string name) {
  auto eq = src.find('=');
  if (eq == std::string_view::npos) throw ParseError("identity needs 'lhs = rhs'", 0);
  Identity id;
  id.name = std::move(name);
  id.lhs = parse_term(src.substr(0, eq));
  id.rhs = parse_term(src.substr(eq + 1));
  std::set<std::string> pv, sv;
  for (const auto& v : free_point_vars(id.lhs)) pv.insert(v);
  for (const auto& v : free_point_vars(id.rhs)) pv.insert(v);
  for (const auto& v : free_scale_vars(id.lhs)) sv.insert(v);
  for (const auto& v : free_scale_vars(id.rhs)) sv.insert(v);
  id.point_vars.assign(pv.begin(), pv.end());
  id.scale_vars.assign(sv.begin(), sv.end());
  return id;
}

std::string Counterexample::str() const {
  std::ostringstream os;
  for (const auto& [v, r] : points) os << v << " = " << rat_str(r) << "  ";
  for (const auto& [v, r] : scales) os << v << " = " << rat_str(r) << "  ";
  os << "=> lhs " << rat_str(lhs_value) << " != rhs " << rat_str(rhs_value);
  return os.str();
}

json ProofResult::to_json() const {
  json out{{"success", success},
           {"lhs_nf", term_str(lhs_nf)},
           {"rhs_nf", term_str(rhs_nf)},
           {"lhs_steps", lhs_trace.steps.size()},
           {"rhs_steps", rhs_trace.steps.size()}};
  if (counterexample) out["counterexample"] = counterexample->str();
  if (!note.empty()) out["note"] = note;
  return out;
}

ProofResult prove_identity(const Identity& id, int counterexample_trials, std::uint64_t seed) {
  ProofResult result;
  std::tie(result.lhs_nf, result.lhs_trace) = normalize(id.lhs);
  std::tie(result.rhs_nf, result.rhs_trace) = normalize(id.rhs);
  result.success = term_equal(result.lhs_nf, result.rhs_nf);
  if (result.success) return result;

  AffineModel line(1, true);
  Rng rng(seed);
  for (int trial = 0; trial < counterexample_trials; ++trial) {
    TermEnv env;
    Counterexample ce;
    for (const auto& v : id.point_vars) {
      Rational r = rng.rational_in_box(8);
      ce.points[v] = r;
      env.points[v] = Point(RatVec{r});
    }
    for (const auto& v : id.scale_vars) {
      Rational r = rng.positive_rational();
      ce.scales[v] = r;
      env.scales[v] = Scale::from_rational(r);
    }
    Point l = eval_term(id.lhs, line, env);
    Point r = eval_term(id.rhs, line, env);
    if (!(l == r)) {
      ce.lhs_value = l.rats()[0];
      ce.rhs_value = r.rats()[0];
      result.counterexample = std::move(ce);
      return result;
    }
  }
  result.note =
      "no counterexample found in " + std::to_string(counterexample_trials) + " trials";
  return result;
}

// --------------------------------------------------------------- built-ins

namespace {

TermPtr dil_t(const ScaleExpr& e, const TermPtr& b, const TermPtr& a) {
  return Term::mk_dil(e, b, a);
}

struct GateBuilder {
  ScaleExpr e = ScaleExpr::var("e");
  ScaleExpr einv = ScaleExpr::var("e", -1);

  TermPtr contract(const TermPtr& x, const TermPtr& u) const { return dil_t(e, x, u); }
  // (x o_e u) b_e (x o_e v)
  TermPtr delta(const TermPtr& x, const TermPtr& u, const TermPtr& v) const {
    return dil_t(einv, contract(x, u), contract(x, v));
  }
  // x b_e ((x o_e u) o_e v)
  TermPtr sigma(const TermPtr& x, const TermPtr& u, const TermPtr& v) const {
    return dil_t(einv, x, dil_t(e, contract(x, u), v));
  }
  // the two-crossing inverse gate tree (x o_e u) b_e x
  TermPtr inv(const TermPtr& x, const TermPtr& u) const {
    return dil_t(einv, contract(x, u), x);
  }
};

Identity make_identity(std::string name, std::vector<std::string> pvars, TermPtr lhs,
                       TermPtr rhs) {
  Identity id;
  id.name = std::move(name);
  id.point_vars = std::move(pvars);
  id.scale_vars = {"e"};
  id.lhs = std::move(lhs);
  id.rhs = std::move(rhs);
  return id;
}

}  // namespace

std::vector<Identity> builtin_identities() {
  GateBuilder g;
  TermPtr x = Term::mk_var("x");
  TermPtr u = Term::mk_var("u");
  TermPtr v = Term::mk_var("v");
  TermPtr w = Term::mk_var("w");
  TermPtr xu = g.contract(x, u);

  std::vector<Identity> ids;
  ids.push_back(make_identity("a_delta_after_sigma", {"x", "u", "v"},
                              g.delta(x, u, g.sigma(x, u, v)), v));
  ids.push_back(make_identity("b_sigma_after_delta", {"x", "u", "v"},
                              g.sigma(x, u, g.delta(x, u, v)), v));
  ids.push_back(make_identity("c_delta_via_shifted_sigma", {"x", "u", "v"}, g.delta(x, u, v),
                              g.sigma(xu, g.inv(x, u), v)));
  ids.push_back(make_identity("d_inverse_involution", {"x", "u"},
                              g.inv(xu, g.inv(x, u)), u));
  ids.push_back(make_identity("e_shifted_associativity", {"x", "u", "v", "w"},
                              g.sigma(x, u, g.sigma(xu, v, w)),
                              g.sigma(x, g.sigma(x, u, v), w)));
  ids.push_back(make_identity("f_inverse_is_delta_to_base", {"x", "u"}, g.inv(x, u),
                              g.delta(x, u, x)));
  ids.push_back(make_identity("g_right_neutral", {"x", "u"}, g.sigma(x, x, u), u));
  return ids;
}

// -------------------------------------------------------------- evaluation

Scale eval_scale(const ScaleExpr& se, const Model& m, const TermEnv& env) {
  if (m.scale_kind() == ScaleKind::rational) {
    Rational acc = se.coeff;
    for (const auto& [v, k] : se.exps) {
      auto it = env.scales.find(v);
      if (it == env.scales.end()) throw Error("unbound scale variable '" + v + "'");
      acc *= rat_pow(it->second.value(), k);
    }
    return Scale::from_rational(acc);
  }
  if (se.coeff != 1)
    throw ConfigError("rational scale literal " + rat_str(se.coeff) +
                      " cannot be evaluated in a Gamma = Z model");
  long n = 0;
  Rational gen_abs(1, 2);
  for (const auto& [v, k] : se.exps) {
    auto it = env.scales.find(v);
    if (it == env.scales.end()) throw Error("unbound scale variable '" + v + "'");
    n += k * it->second.exponent();
    gen_abs = it->second.generator_abs();
  }
  return Scale::from_power(n, gen_abs);
}

Point eval_term(const TermPtr& t, const Model& m, const TermEnv& env) {
  if (t->is_var()) {
    auto it = env.points.find(t->var_name());
    if (it == env.points.end()) throw Error("unbound point variable '" + t->var_name() + "'");
    return it->second;
  }
  return m.dil(eval_term(t->base(), m, env), eval_scale(t->scale(), m, env),
               eval_term(t->arg(), m, env));
}

}  // namespace emg
