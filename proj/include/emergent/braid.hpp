// Braid words with scale-decorated signed crossings: coloring propagation,
// the R2/R3 word moves, the encircling transform (whole-diagram or
// per-crossing, provably identical), and the encircled-R3 defect sweep.
//
// Crossing convention (colors listed top to bottom, word read left to
// right): a positive crossing at position i sends the adjacent colors
// (a, b) to (a o_e b, a); a negative one sends them to (b, b *_e a). With
// this convention R2 invariance is exactly the irq axiom (R2).
#pragma once

#include "emergent/limits.hpp"

namespace emg {

enum class Sign { positive, negative };

struct DecoratedCrossing {
  int pos;  // 1-based; crosses strands pos and pos+1
  Sign sign;
  Scale scale;
};

struct BraidWord {
  int strands = 2;
  std::vector<DecoratedCrossing> crossings;
};

bool word_equal(const BraidWord& a, const BraidWord& b);
std::string braid_str(const BraidWord& w);

// "braid n=3: s1+{1/2} s2+{1/2} s1+{1/2}"; the header is optional, in which
// case the strand count is one more than the largest crossing position.
// Scale literals: rationals ("1/2") for Gamma = (0,inf), "t^k" for Gamma = Z.
BraidWord parse_braid(std::string_view src, std::optional<int> strands = std::nullopt);

using Coloring = std::vector<Point>;

Coloring color(const BraidWord& w, const Model& m, const Coloring& input);

// The reversed word with flipped signs; color(inverse_word(w)) undoes
// color(w) by the (R2) laws.
BraidWord inverse_word(const BraidWord& w);

BraidWord apply_r2_cancel(const BraidWord& w, std::size_t at);
BraidWord apply_r2_insert(const BraidWord& w, std::size_t at, const DecoratedCrossing& c);
// sigma_i sigma_{i+1} sigma_i <-> sigma_{i+1} sigma_i sigma_{i+1}, all
// positive with equal decorations.
BraidWord apply_r3_shift(const BraidWord& w, std::size_t at);

double coloring_defect(const BraidWord& a, const BraidWord& b, const Model& m,
                       const Coloring& input);

struct EncircleSpec {
  enum class Mode { whole, per_crossing };
  Point basepoint;
  Scale eps;
  Mode mode = Mode::whole;
};

Coloring encircle(const BraidWord& w, const Model& m, const EncircleSpec& spec,
                  const Coloring& input);

// Encircled coloring defect of an R3 pair per schedule scale.
ConvergenceReport r3_defect_sweep(const BraidWord& a, const BraidWord& b, const Model& m,
                                  const Point& basepoint, const Schedule& schedule,
                                  const Coloring& input);

}  // namespace emg
