#include "nanopull/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "nanopull/errors.hpp"

namespace nanopull {

namespace {
// Newton iteration on Legendre polynomials; standard Golub-Welsch is overkill
// for the handful of orders we use.
GaussRule make_rule(int n) {
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(constants::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.x[i] = -x;
    r.x[n - 1 - i] = x;
    r.w[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    r.w[n - 1 - i] = r.w[i];
  }
  return r;
}
}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1 || n > 128) throw ConfigError("gauss_legendre: bad order");
  static std::map<int, GaussRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_rule(n)).first;
  return it->second;
}

std::vector<Panel> uniform_panels(double a, double b, int count) {
  std::vector<Panel> ps;
  ps.reserve(count);
  const double h = (b - a) / count;
  for (int i = 0; i < count; ++i)
    ps.push_back({a + i * h, a + (i + 1) * h});
  return ps;
}

std::vector<Panel> graded_panels(double a, double b, double to,
                                 double min_width, double ratio) {
  if (!(b > a)) throw ConfigError("graded_panels: empty interval");
  const double len = b - a;
  if (min_width >= len) return {{a, b}};
  // Geometric breakpoints measured from `to`.
  std::vector<double> d;
  double w = len / ratio;
  while (w > min_width) {
    d.push_back(w);
    w /= ratio;
  }
  d.push_back(w);  // innermost panel edge; interval [0, w] stays one panel
  std::vector<Panel> ps;
  if (to == a) {
    double prev = a;
    for (auto it = d.rbegin(); it != d.rend(); ++it) {
      ps.push_back({prev, a + *it});
      prev = a + *it;
    }
    ps.push_back({prev, b});
  } else if (to == b) {
    double prev = a;
    for (double x : d) {
      ps.push_back({prev, b - x});
      prev = b - x;
    }
    ps.push_back({prev, b});
  } else {
    throw ConfigError("graded_panels: grading point must be an endpoint");
  }
  return ps;
}

CompositeRule composite(const std::vector<Panel>& panels, int order) {
  const GaussRule& gr = gauss_legendre(order);
  CompositeRule cr;
  cr.x.reserve(panels.size() * order);
  cr.w.reserve(panels.size() * order);
  for (const Panel& p : panels) {
    const double mid = 0.5 * (p.a + p.b);
    const double half = 0.5 * (p.b - p.a);
    for (int i = 0; i < order; ++i) {
      cr.x.push_back(mid + half * gr.x[i]);
      cr.w.push_back(half * gr.w[i]);
    }
  }
  return cr;
}

}  // namespace nanopull
