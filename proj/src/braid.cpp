#include "emergent/braid.hpp"

#include <cctype>
#include <sstream>

namespace emg {

bool word_equal(const BraidWord& a, const BraidWord& b) {
  if (a.strands != b.strands || a.crossings.size() != b.crossings.size()) return false;
  for (std::size_t i = 0; i < a.crossings.size(); ++i) {
    const auto& ca = a.crossings[i];
    const auto& cb = b.crossings[i];
    if (ca.pos != cb.pos || ca.sign != cb.sign || !(ca.scale == cb.scale)) return false;
  }
  return true;
}

std::string braid_str(const BraidWord& w) {
  std::ostringstream os;
  os << "braid n=" << w.strands << ":";
  for (const auto& c : w.crossings)
    os << " s" << c.pos << (c.sign == Sign::positive ? "+" : "-") << "{" << c.scale.str() << "}";
  return os.str();
}

namespace {

Scale parse_scale_literal(std::string_view text, std::size_t offset) {
  try {
    return Scale::parse(text);
  } catch (const ParseError& e) {
    throw ParseError(std::string(e.what()), offset + e.offset);
  }
}

}  // namespace

BraidWord parse_braid(std::string_view src, std::optional<int> strands) {
  BraidWord w;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  };
  skip_ws();
  std::optional<int> declared;
  if (src.substr(pos, 5) == "braid") {
    pos += 5;
    skip_ws();
    if (src.substr(pos, 2) != "n=") throw ParseError("expected n=<count> after 'braid'", pos);
    pos += 2;
    std::size_t start = pos;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
    if (start == pos) throw ParseError("expected a strand count", pos);
    declared = std::stoi(std::string(src.substr(start, pos - start)));
    skip_ws();
    if (pos >= src.size() || src[pos] != ':') throw ParseError("expected ':'", pos);
    ++pos;
  }
  int max_pos = 0;
  for (;;) {
    skip_ws();
    if (pos >= src.size()) break;
    std::size_t tok_start = pos;
    if (src[pos] != 's') throw ParseError("expected a crossing token 's<i>{+|-}{scale}'", pos);
    ++pos;
    std::size_t dstart = pos;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
    if (dstart == pos) throw ParseError("expected a crossing position", pos);
    int cpos = std::stoi(std::string(src.substr(dstart, pos - dstart)));
    if (pos >= src.size() || (src[pos] != '+' && src[pos] != '-'))
      throw ParseError("expected '+' or '-'", pos);
    Sign sign = src[pos] == '+' ? Sign::positive : Sign::negative;
    ++pos;
    if (pos >= src.size() || src[pos] != '{') throw ParseError("expected '{scale}'", pos);
    ++pos;
    std::size_t sstart = pos;
    while (pos < src.size() && src[pos] != '}') ++pos;
    if (pos >= src.size()) throw ParseError("unterminated scale literal", tok_start);
    Scale scale = parse_scale_literal(src.substr(sstart, pos - sstart), sstart);
    ++pos;
    if (cpos < 1) throw ParseError("crossing positions are 1-based", tok_start);
    max_pos = std::max(max_pos, cpos);
    w.crossings.push_back({cpos, sign, scale});
  }
  w.strands = strands ? *strands : declared ? *declared : max_pos + 1;
  for (const auto& c : w.crossings)
    if (c.pos >= w.strands)
      throw ParseError("crossing s" + std::to_string(c.pos) + " needs at least " +
                           std::to_string(c.pos + 1) + " strands",
                       0);
  return w;
}

Coloring color(const BraidWord& w, const Model& m, const Coloring& input) {
  if (static_cast<int>(input.size()) != w.strands)
    throw ConfigError("coloring has " + std::to_string(input.size()) + " points but the word has " +
                      std::to_string(w.strands) + " strands");
  Coloring s = input;
  for (const auto& c : w.crossings) {
    Point& a = s[static_cast<std::size_t>(c.pos - 1)];
    Point& b = s[static_cast<std::size_t>(c.pos)];
    if (c.sign == Sign::positive) {
      Point over = m.dil(a, c.scale, b);
      b = a;
      a = std::move(over);
    } else {
      Point under = codil(m, b, c.scale, a);
      a = b;
      b = std::move(under);
    }
  }
  return s;
}

BraidWord inverse_word(const BraidWord& w) {
  BraidWord out;
  out.strands = w.strands;
  for (auto it = w.crossings.rbegin(); it != w.crossings.rend(); ++it) {
    DecoratedCrossing c = *it;
    c.sign = c.sign == Sign::positive ? Sign::negative : Sign::positive;
    out.crossings.push_back(c);
  }
  return out;
}

BraidWord apply_r2_cancel(const BraidWord& w, std::size_t at) {
  if (at + 1 >= w.crossings.size())
    throw DomainError("R2-cancel needs two crossings at index " + std::to_string(at));
  const auto& c1 = w.crossings[at];
  const auto& c2 = w.crossings[at + 1];
  if (c1.pos != c2.pos || c1.sign == c2.sign || !(c1.scale == c2.scale))
    throw DomainError(
        "R2-cancel expects sigma_i^{+e} sigma_i^{-e} (same position, opposite signs, equal "
        "scales) at index " +
        std::to_string(at) + ", found " + braid_str(w));
  BraidWord out = w;
  out.crossings.erase(out.crossings.begin() + static_cast<long>(at),
                      out.crossings.begin() + static_cast<long>(at) + 2);
  return out;
}

BraidWord apply_r2_insert(const BraidWord& w, std::size_t at, const DecoratedCrossing& c) {
  if (at > w.crossings.size())
    throw DomainError("R2-insert index " + std::to_string(at) + " out of range");
  if (c.pos < 1 || c.pos >= w.strands)
    throw DomainError("R2-insert crossing position out of range");
  DecoratedCrossing twin = c;
  twin.sign = c.sign == Sign::positive ? Sign::negative : Sign::positive;
  BraidWord out = w;
  out.crossings.insert(out.crossings.begin() + static_cast<long>(at), {c, twin});
  return out;
}

BraidWord apply_r3_shift(const BraidWord& w, std::size_t at) {
  if (at + 2 >= w.crossings.size())
    throw DomainError("R3-shift needs three crossings at index " + std::to_string(at));
  const auto& c1 = w.crossings[at];
  const auto& c2 = w.crossings[at + 1];
  const auto& c3 = w.crossings[at + 2];
  bool all_positive =
      c1.sign == Sign::positive && c2.sign == Sign::positive && c3.sign == Sign::positive;
  bool equal_scales = c1.scale == c2.scale && c2.scale == c3.scale;
  bool aba = c1.pos == c3.pos && (c2.pos == c1.pos + 1 || c2.pos + 1 == c1.pos);
  if (!all_positive || !equal_scales || !aba)
    throw DomainError(
        "R3-shift expects sigma_i sigma_{i+1} sigma_i or sigma_{i+1} sigma_i sigma_{i+1}, all "
        "positive with equal decorations, at index " +
        std::to_string(at));
  BraidWord out = w;
  out.crossings[at].pos = c2.pos;
  out.crossings[at + 1].pos = c1.pos;
  out.crossings[at + 2].pos = c2.pos;
  return out;
}

double coloring_defect(const BraidWord& a, const BraidWord& b, const Model& m,
                       const Coloring& input) {
  if (a.strands != b.strands) throw ConfigError("coloring_defect: strand counts differ");
  if (!m.has_metric()) throw UnsupportedError("coloring_defect needs a metric model");
  Coloring ca = color(a, m, input);
  Coloring cb = color(b, m, input);
  double defect = 0.0;
  for (std::size_t i = 0; i < ca.size(); ++i)
    defect = std::max(defect, m.distance(ca[i], cb[i]));
  return defect;
}

Coloring encircle(const BraidWord& w, const Model& m, const EncircleSpec& spec,
                  const Coloring& input) {
  if (spec.mode == EncircleSpec::Mode::whole) {
    Coloring in = input;
    for (auto& p : in) p = m.dil(spec.basepoint, spec.eps, p);
    Coloring out = color(w, m, in);
    for (auto& p : out) p = codil(m, spec.basepoint, spec.eps, p);
    return out;
  }
  // per-crossing: every crossing operation becomes the relative dilation
  // with respect to (basepoint, eps)
  if (static_cast<int>(input.size()) != w.strands)
    throw ConfigError("coloring length does not match strand count");
  Coloring s = input;
  for (const auto& c : w.crossings) {
    Point& a = s[static_cast<std::size_t>(c.pos - 1)];
    Point& b = s[static_cast<std::size_t>(c.pos)];
    if (c.sign == Sign::positive) {
      Point over = relative_dilation(m, spec.basepoint, spec.eps, c.scale, a, b);
      b = a;
      a = std::move(over);
    } else {
      Point under = relative_dilation(m, spec.basepoint, spec.eps, c.scale.inverse(), b, a);
      a = b;
      b = std::move(under);
    }
  }
  return s;
}

ConvergenceReport r3_defect_sweep(const BraidWord& a, const BraidWord& b, const Model& m,
                                  const Point& basepoint, const Schedule& schedule,
                                  const Coloring& input) {
  if (!m.has_metric()) throw UnsupportedError("r3_defect_sweep needs a metric model");
  bool related = false;
  for (std::size_t at = 0; !related && at + 3 <= a.crossings.size(); ++at) {
    try {
      if (word_equal(apply_r3_shift(a, at), b)) related = true;
    } catch (const DomainError&) {
    }
  }
  if (!related) throw ConfigError("r3_defect_sweep: words are not related by one R3 move");

  ConvergenceReport report;
  report.test = "encircled_r3_defect";
  report.model = m.config();
  report.params = json{{"word", braid_str(a)},
                       {"word2", braid_str(b)},
                       {"x", m.point_to_json(basepoint)}};
  report.schedule = schedule.description();
  for (const auto& r : schedule.abs_values()) report.schedule_abs.push_back(to_double(r));
  for (const auto& s : schedule.scales()) {
    EncircleSpec spec{basepoint, s, EncircleSpec::Mode::whole};
    Coloring ca = encircle(a, m, spec, input);
    Coloring cb = encircle(b, m, spec, input);
    double defect = 0.0;
    for (std::size_t i = 0; i < ca.size(); ++i)
      defect = std::max(defect, m.distance(ca[i], cb[i]));
    report.values.push_back(defect);
  }
  finish_sweep(report);
  report.pass = report.converged;
  return report;
}

}  // namespace emg
