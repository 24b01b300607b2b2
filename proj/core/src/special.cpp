#include "nanopull/special.hpp"

#include <limits>

#include "nanopull/errors.hpp"

namespace nanopull {
namespace {

constexpr double euler_gamma = 0.57721566490153286061;

// Si and Ci together: power series below x=2, Lentz continued fraction for
// the exponential integral E1(i x) above (Ci = -Re E1(ix), Si = pi/2 + Im).
void cisi(double x, double& ci, double& si) {
  if (x <= 0.0) throw DomainError("cisi: argument must be positive");
  if (x < 2.0) {
    const double x2 = -x * x;
    double sum_s = 0.0;
    double ts = x;  // (-1)^k x^{2k+1} / (2k+1)!
    for (int k = 0;; ++k) {
      const int n = 2 * k + 1;
      sum_s += ts / n;
      ts *= x2 / double((n + 1) * (n + 2));
      if (std::abs(ts) < 1e-18) break;
    }
    double sum_c = 0.0;
    double tc = x2 / 2.0;  // (-1)^k x^{2k} / (2k)!
    for (int k = 1;; ++k) {
      sum_c += tc / (2.0 * k);
      tc *= x2 / ((2.0 * k + 1) * (2.0 * k + 2));
      if (std::abs(tc) < 1e-18) break;
    }
    si = sum_s;
    ci = euler_gamma + std::log(x) + sum_c;
    return;
  }
  // Modified Lentz for the continued fraction of E1(z), z = i x.
  const cplx z(0.0, x);
  const double fpmin = std::numeric_limits<double>::min() / 1e-10;
  cplx b = z + 1.0;
  cplx c = 1.0 / fpmin;
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 2; i <= 200; ++i) {
    const double a = -double(i - 1) * double(i - 1);
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const cplx del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  h *= cplx(std::cos(x), -std::sin(x));
  ci = -h.real();
  si = constants::pi / 2.0 + h.imag();
}

}  // namespace

double sine_integral(double x) {
  if (x == 0.0) return 0.0;
  double ci, si;
  cisi(std::abs(x), ci, si);
  return x > 0 ? si : -si;
}

double cosine_integral(double x) {
  double ci, si;
  cisi(x, ci, si);
  return ci;
}

}  // namespace nanopull
