#include "emergent/gates.hpp"

namespace emg {

Point codil(const Model& m, const Point& x, const Scale& eps, const Point& y) {
  return m.dil(x, eps.inverse(), y);
}

Point approx_difference(const Model& m, const Point& x, const Scale& eps, const Point& u,
                        const Point& v) {
  return codil(m, m.dil(x, eps, u), eps, m.dil(x, eps, v));
}

Point approx_sum(const Model& m, const Point& x, const Scale& eps, const Point& u,
                 const Point& v) {
  return codil(m, x, eps, m.dil(m.dil(x, eps, u), eps, v));
}

Point approx_inverse(const Model& m, const Point& x, const Scale& eps, const Point& u) {
  return approx_difference(m, x, eps, u, x);
}

Point relative_dilation(const Model& m, const Point& x, const Scale& eps, const Scale& lambda,
                        const Point& u, const Point& v) {
  return codil(m, x, eps, m.dil(m.dil(x, eps, u), lambda, m.dil(x, eps, v)));
}

Point derivative(const Model& m, const PointFn& f, const Point& x, const Scale& eps,
                 const Point& u) {
  return codil(m, f(x), eps, f(m.dil(x, eps, u)));
}

}  // namespace emg
