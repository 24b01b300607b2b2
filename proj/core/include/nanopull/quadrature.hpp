#pragma once

#include <vector>

#include "nanopull/constants.hpp"

namespace nanopull {

// Gauss-Legendre rule on [-1, 1]; cached per order.
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};
const GaussRule& gauss_legendre(int n);

struct Panel {
  double a;
  double b;
};

// Uniform subdivision of [a, b].
std::vector<Panel> uniform_panels(double a, double b, int count);

// Panels on [a, b] refined geometrically toward the point `to` (which must be
// an endpoint): widths shrink by `ratio` until `min_width`. Used to resolve
// integrable singularities at a panel edge.
std::vector<Panel> graded_panels(double a, double b, double to,
                                 double min_width, double ratio = 2.0);

// Nodes/weights of a composite rule over a panel list.
struct CompositeRule {
  std::vector<double> x;
  std::vector<double> w;
};
CompositeRule composite(const std::vector<Panel>& panels, int order);

template <class F>
auto integrate(const std::vector<Panel>& panels, int order, F&& f)
    -> decltype(f(0.0) * 0.0) {
  const GaussRule& gr = gauss_legendre(order);
  decltype(f(0.0) * 0.0) acc{};
  for (const Panel& p : panels) {
    const double mid = 0.5 * (p.a + p.b);
    const double half = 0.5 * (p.b - p.a);
    for (size_t i = 0; i < gr.x.size(); ++i)
      acc += (half * gr.w[i]) * f(mid + half * gr.x[i]);
  }
  return acc;
}

}  // namespace nanopull
