#include "nanopull/green.hpp"

#include <algorithm>
#include <cmath>

#include "nanopull/errors.hpp"
#include "nanopull/quadrature.hpp"
#include "nanopull/special.hpp"

namespace nanopull {

namespace {

// exp(i u x) for x >= 0 with Im u >= 0: modulus <= 1.
struct ExpHelper {
  cplx u;
  cplx operator()(double x) const { return std::exp(I * u * x); }
};

cplx denominator_4L(const ExpHelper& E, double L) {
  const cplx d = E(4.0 * L) - 1.0;
  if (std::abs(d) < 1e-12)
    throw DomainError(
        "line response at a cavity resonance (sin(2 alpha L) ~ 0)");
  return d;
}

}  // namespace

cplx line_green(cplx alpha, double L, double z, double zp) {
  const ExpHelper E{upper_half(alpha)};
  const double d = std::abs(z - zp);
  const cplx num = E(d) + E(4.0 * L - d) - E(2.0 * L + z + zp) -
                   E(2.0 * L - z - zp);
  return -I * num / (2.0 * E.u * denominator_4L(E, L));
}

cplx line_green_modal(cplx alpha, double L, double z, double zp, int n_max) {
  const cplx a2 = alpha * alpha;
  cplx sum = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    const double kn = n * constants::pi / (2.0 * L);
    const double un_z = std::sin(kn * (z + L));
    const double un_zp = std::sin(kn * (zp + L));
    sum += un_z * un_zp / (kn * kn - a2);
  }
  return sum / L;
}

LineCoeffs line_coeffs(cplx alpha, double L, double z) {
  const ExpHelper E{upper_half(alpha)};
  const cplx den = denominator_4L(E, L);
  LineCoeffs lc;
  lc.c2 = -(E(3.0 * L - z) - E(L + z)) / den;  //  sin(a(z-L))/sin(2aL)
  lc.c3 = -(E(3.0 * L + z) - E(L - z)) / den;  // -sin(a(z+L))/sin(2aL)
  return lc;
}

cplx line_green_fourier(cplx alpha, double L, double h, double z) {
  const cplx a = upper_half(alpha);
  const LineCoeffs lc = line_coeffs(a, L, z);
  auto S = [&](cplx hh) {
    return std::exp(-I * hh * z) + lc.c2 * std::exp(I * hh * L) +
           lc.c3 * std::exp(-I * hh * L);
  };
  // S vanishes at h = +-alpha; bridge the 0/0 with a 3-term Taylor expansion
  // of S/(h - h0) when h comes close to either point.
  const double tol = 1e-3 / L;
  for (double sgn : {1.0, -1.0}) {
    const cplx h0 = sgn * a;
    const cplx dh = h - h0;
    if (std::abs(dh) < tol) {
      const cplx e1 = std::exp(-I * h0 * z);
      const cplx e2 = lc.c2 * std::exp(I * h0 * L);
      const cplx e3 = lc.c3 * std::exp(-I * h0 * L);
      const cplx s1 = -I * z * e1 + I * L * e2 - I * L * e3;
      const cplx s2 = -z * z * e1 - L * L * e2 - L * L * e3;
      const cplx s3 = I * z * z * z * e1 - I * L * L * L * e2 + I * L * L * L * e3;
      const cplx ratio = s1 + 0.5 * s2 * dh + s3 / 6.0 * dh * dh;
      // (alpha^2 - h^2)/(h - h0) = -(h + h0) for h0 = alpha,
      //                            -(h - alpha) ... = -(h - h0) - 2 h0 either way
      const cplx den_ratio = (sgn > 0) ? -(h + a) : -(h - a);
      return -ratio / den_ratio;
    }
  }
  return -S(h) / (a * a - h * h);
}

// ---------------------------------------------------------------------------

namespace {

struct PhiGeometry {
  double s2;    // (r-R)^2 + dz^2, squared distance at psi = 0
  double rr4;   // 4 r R
  double dz;
  double rbar(double psi) const {
    const double s = std::sin(0.5 * psi);
    return std::sqrt(s2 + rr4 * s * s);
  }
};

// Panels on psi in [0, pi], refined toward the near-singular point psi = 0.
std::vector<Panel> phi_panels(double s_over_R) {
  const double w = std::clamp(s_over_R / 4.0, 1e-10, 0.5);
  return graded_panels(0.0, constants::pi, 0.0, w);
}

}  // namespace

cplx TubeGreen::value(double dz, double r_obs) const {
  const double r = r_obs > 0.0 ? r_obs : radius;
  const double R = radius;
  double adz = std::max(std::abs(dz), dz_floor_rel * R);
  const PhiGeometry geo{(r - R) * (r - R) + adz * adz, 4.0 * r * R, adz};
  const double s0 = std::sqrt(geo.s2);
  // static part: int_0^{2pi} dphi / Rbar = 4 K(m) / sqrt((r+R)^2 + dz^2)
  const double den = std::sqrt((r + R) * (r + R) + adz * adz);
  const double m = std::sqrt(geo.rr4) / den;  // elliptic modulus
  // Complementary modulus m' = s0/den; when it underflows past double
  // precision (m rounds to 1) fall back to K ~ ln(4/m').
  const double mp = s0 / den;
  const double kcomp =
      mp < 1e-7 ? std::log(4.0 / mp) : std::comp_ellint_1(m);
  const double stat = 4.0 * kcomp / den;
  const double kk = k;
  const cplx osc = 2.0 * integrate(phi_panels(s0 / R), phi_order,
                                   [&](double psi) -> cplx {
                                     const double rb = geo.rbar(psi);
                                     return (std::exp(I * kk * rb) - 1.0) / rb;
                                   });
  return R * (osc + stat);
}

cplx TubeGreen::d1(double dz, double r_obs) const {
  const double r = r_obs > 0.0 ? r_obs : radius;
  const double R = radius;
  if (std::abs(dz) < dz_floor_rel * R) return 0.0;  // odd in dz
  const PhiGeometry geo{(r - R) * (r - R) + dz * dz, 4.0 * r * R, dz};
  const double s0 = std::sqrt(geo.s2);
  const double kk = k;
  const cplx val = 2.0 * integrate(phi_panels(s0 / R), phi_order,
                                   [&](double psi) -> cplx {
                                     const double rb = geo.rbar(psi);
                                     const cplx e = std::exp(I * kk * rb);
                                     return dz * (I * kk * rb - 1.0) * e /
                                            (rb * rb * rb);
                                   });
  return R * val;
}

cplx TubeGreen::d2(double dz, double r_obs) const {
  const double r = r_obs > 0.0 ? r_obs : radius;
  const double R = radius;
  const double adz = std::max(std::abs(dz), dz_floor_rel * R);
  const PhiGeometry geo{(r - R) * (r - R) + adz * adz, 4.0 * r * R, adz};
  const double s0 = std::sqrt(geo.s2);
  const double kk = k;
  const double dz2 = adz * adz;
  const cplx val = 2.0 * integrate(
      phi_panels(s0 / R), phi_order, [&](double psi) -> cplx {
        const double rb = geo.rbar(psi);
        const double rb3 = rb * rb * rb;
        const cplx e = std::exp(I * kk * rb);
        const cplx q = I * kk * rb - 1.0;
        return e * (q / rb3 - dz2 * kk * kk / rb3 - 3.0 * dz2 * q / (rb3 * rb * rb));
      });
  return R * val;
}

cplx spectral_weight(double h, double k, double radius) {
  const double ah = std::abs(h);
  const double R = radius;
  if (ah < k) {
    const double kap = std::sqrt(k * k - h * h);
    const double j0 = std::cyl_bessel_j(0.0, kap * R);
    const double y0 = std::cyl_neumann(0.0, kap * R);
    return I * constants::pi * R * j0 * (j0 + I * y0);
  }
  const double t = R * std::sqrt(h * h - k * k);
  if (t < 1e-12) {
    // kappa -> 0: J0 -> 1, H0 ~ 1 + (2i/pi) ln(kappa R / 2): log-singular but
    // integrable; nudge off the branch point.
    return spectral_weight(h + (h >= 0 ? 1e-12 : -1e-12) * std::max(k, 1.0 / R),
                           k, radius);
  }
  double k0i0;
  if (t < 25.0) {
    k0i0 = std::cyl_bessel_k(0.0, t) * std::cyl_bessel_i(0.0, t);
  } else {
    k0i0 = 0.5 / t * (1.0 + 0.125 / (t * t));
  }
  return 2.0 * R * k0i0;
}

cplx TubeGreen::value_spectral(double dz, double h_max_factor) const {
  const double R = radius;
  const double adz = std::max(std::abs(dz), dz_floor_rel * R);
  const double H = h_max_factor / R;
  // G = 2 int_0^H cos(h dz) W(h) dh + tail, with the sqrt branch point at
  // h = k resolved by grading from both sides.
  std::vector<Panel> ps;
  auto add = [&](std::vector<Panel> more) {
    for (auto& p : more) ps.push_back(p);
  };
  const double osc_w = constants::pi / (2.5 * adz);
  add(graded_panels(0.0, k, k, k * 1e-7));
  const double upper = std::min(2.0 * k, H);
  add(graded_panels(k, upper, k, k * 1e-7));
  if (H > upper) {
    const int nosc = std::max(8, int((H - upper) / osc_w) + 1);
    add(uniform_panels(upper, H, nosc));
  }
  const cplx main = 2.0 * integrate(ps, 10, [&](double h) {
    return std::cos(h * adz) * spectral_weight(h, k, R);
  });
  return main - 2.0 * cosine_integral(H * adz);
}

}  // namespace nanopull
