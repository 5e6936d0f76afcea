// Model-generic gate compositions of the single dil primitive: codilation,
// approximate difference / sum / inverse, relative dilation and the scale
// derivative. The bullet operation x •_ε y is dil at the inverse scale.
#pragma once

#include <functional>

#include "emergent/model.hpp"

namespace emg {

using PointFn = std::function<Point(const Point&)>;

// x •_ε y: the unique solution w of dil(x, ε, w) = y.
Point codil(const Model& m, const Point& x, const Scale& eps, const Point& y);

// Δ^x_ε(u,v) = (x ∘_ε u) •_ε (x ∘_ε v)
Point approx_difference(const Model& m, const Point& x, const Scale& eps, const Point& u,
                        const Point& v);

// Σ^x_ε(u,v) = x •_ε ((x ∘_ε u) ∘_ε v)
Point approx_sum(const Model& m, const Point& x, const Scale& eps, const Point& u,
                 const Point& v);

// inv^x_ε(u) = Δ^x_ε(u, x)
Point approx_inverse(const Model& m, const Point& x, const Scale& eps, const Point& u);

// u ∘^{x,ε}_λ v = x •_ε ((x ∘_ε u) ∘_λ (x ∘_ε v))
Point relative_dilation(const Model& m, const Point& x, const Scale& eps, const Scale& lambda,
                        const Point& u, const Point& v);

// D_ε f(x) u = dil(f(x), ε⁻¹, f(dil(x, ε, u)))
Point derivative(const Model& m, const PointFn& f, const Point& x, const Scale& eps,
                 const Point& u);

}  // namespace emg
