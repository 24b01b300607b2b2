#include "nanopull/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "nanopull/errors.hpp"
#include "nanopull/green.hpp"
#include "nanopull/quadrature.hpp"
#include "nanopull/special.hpp"

namespace nanopull {

namespace {

int wrap_index(int d, int n) { return d + n - 1; }  // d in [-(n-1), n-1]

struct Grid {
  int n;
  double L, delta;
  Eigen::VectorXd mid;
  Grid(int n_, double L_) : n(n_), L(L_), delta(2.0 * L_ / n_), mid(n_) {
    for (int i = 0; i < n; ++i) mid(i) = -L + (i + 0.5) * delta;
  }
  double edge(int j) const { return -L + j * delta; }
};

// Closed-form line response evaluated through shared exponential tables on
// the uniform difference/sum lattice of collocation and quadrature points.
struct LineTables {
  cplx u;      // upper-half wave parameter
  cplx den;    // E(4L) - 1
  double L;
  cplx E(double x) const { return std::exp(I * u * x); }
  cplx g(double z, double zp) const {
    const double d = std::abs(z - zp);
    return -I *
           (E(d) + E(4.0 * L - d) - E(2.0 * L + z + zp) - E(2.0 * L - z - zp)) /
           (2.0 * u * den);
  }
};

LineTables make_line_tables(cplx alpha, double L) {
  LineTables lt;
  lt.u = upper_half(alpha);
  lt.L = L;
  lt.den = lt.E(4.0 * L) - 1.0;
  if (std::abs(lt.den) < 1e-12)
    throw DomainError("kernel assembly at a cavity resonance of the line response");
  return lt;
}

}  // namespace

// ---------------------------------------------------------------------------
// Singular (real-space) form
// ---------------------------------------------------------------------------
//
// Integrating the d^2/dz'^2 term by parts twice and using the defining
// equation of the line response (g'' = -alpha^2 g - delta) collapses the
// kernel to
//   K(z, s) = (k^2 - alpha^2) int g(z,z') G(s-z') dz'
//             - c3(z) G(s - L) - c2(z) G(s + L) - G(s - z),
// which has only integrable log singularities. Every s-integration over a
// segment then reduces to exact differences of the cumulative integral
// IG(x) = int_0^x G(u) du.

namespace {

// IG on a fixed lattice of abscissas, built by one incremental pass.
class CumulativeG {
 public:
  CumulativeG(const TubeGreen& tg, std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    x_ = std::move(xs);
    v_.resize(x_.size());
    double prev = 0.0;
    cplx acc = 0.0;
    for (size_t i = 0; i < x_.size(); ++i) {
      const double hi = x_[i];
      if (hi > prev) {
        const double w = hi - prev;
        std::vector<Panel> ps;
        if (prev == 0.0)
          ps = graded_panels(0.0, hi, 0.0, 1e-5 * hi);  // log endpoint
        else if (w > 0.5 * prev)
          ps = graded_panels(prev, hi, prev, 0.25 * prev);
        else
          ps = {Panel{prev, hi}};
        acc += integrate(ps, 10, [&](double uu) { return tg.value(uu); });
      }
      v_[i] = acc;
      prev = hi;
    }
    tol_ = 1e-9 * (x_.empty() ? 1.0 : x_.back());
  }
  cplx at(double x) const {  // odd in x
    const double ax = std::abs(x);
    if (ax <= tol_) return cplx(0.0);
    size_t i = std::lower_bound(x_.begin(), x_.end(), ax) - x_.begin();
    if (i == x_.size() || std::abs(x_[i] - ax) > tol_) {
      if (i > 0 && std::abs(x_[i - 1] - ax) <= tol_) --i;
      else throw NumericsError("cumulative-integral lattice miss");
    }
    return x > 0 ? v_[i] : -v_[i];
  }

 private:
  std::vector<double> x_;
  std::vector<cplx> v_;
  double tol_ = 0.0;
};

}  // namespace

static KernelMatrix assemble_singular(int n, const KernelParams& p) {
  const Grid grid(n, p.half_length);
  const double L = p.half_length, delta = grid.delta;
  const double dh = 0.5 * delta;  // z' panels are half segments so that the
                                  // |z - z'| kink always falls on a boundary
  const cplx u = upper_half(p.alpha);
  const LineTables lt = make_line_tables(p.alpha, L);
  const TubeGreen tg{p.k, p.radius, p.phi_order};
  const int q = std::max(4, p.seg_order / 2);
  const GaussRule& gq = gauss_legendre(q);

  // lattice of IG abscissas: segment edges relative to every z' node, plus
  // the integer/half-integer multiples for the boundary and G(s-z) terms
  auto ylat = [&](int dd, int t) { return dh * (dd - 0.5 - 0.5 * gq.x[t]); };
  std::vector<double> xs;
  xs.reserve(size_t(4 * n + 2) * q + 2 * n + 2);
  for (int dd = -(2 * n - 1); dd <= 2 * n; ++dd)
    for (int t = 0; t < q; ++t) xs.push_back(std::abs(ylat(dd, t)));
  for (int m = 0; m <= 2 * n + 1; ++m) xs.push_back(m * dh);
  const CumulativeG ig(tg, std::move(xs));

  // line response at (z_i, x_{c,t}), x_{c,t} = -L + (c + 0.5) dh + 0.5 dh xi_t,
  // through shared exponential tables on the difference/sum lattices
  Eigen::MatrixXcd gmat(n, 2 * n * q);
  {
    Eigen::MatrixXcd A1(4 * n - 1, q), A2(4 * n - 1, q);
    Eigen::MatrixXcd B1(4 * n - 1, q), B2(4 * n - 1, q);
    for (int e = 2 - 2 * n; e <= 2 * n - 1; ++e)  // e = 2i + 1 - c
      for (int t = 0; t < q; ++t) {
        const double dd = std::abs(dh * (e - 0.5 - 0.5 * gq.x[t]));
        A1(e - (2 - 2 * n), t) = lt.E(dd);
        A2(e - (2 - 2 * n), t) = lt.E(4.0 * L - dd);
      }
    for (int f = 1; f <= 4 * n - 2; ++f)  // f = 2i + 1 + c
      for (int t = 0; t < q; ++t) {
        const double y = dh * (f + 0.5 + 0.5 * gq.x[t]);
        B1(f - 1, t) = lt.E(y);
        B2(f - 1, t) = lt.E(4.0 * L - y);
      }
    const cplx pref = -I / (2.0 * lt.u * lt.den);
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < 2 * n; ++c) {
        const int re = 2 * i + 1 - c - (2 - 2 * n);
        const int rf = 2 * i + 1 + c - 1;
        for (int t = 0; t < q; ++t)
          gmat(i, c * q + t) =
              pref * (A1(re, t) + A2(re, t) - B1(rf, t) - B2(rf, t));
      }
  }

  // Wc((c,t), j) = w_t int_seg_j G(s - x_{c,t}) ds, exact via IG
  Eigen::MatrixXcd Iseg(4 * n, q);  // dd = 2j - c in [-(2n-1), 2n-2]
  for (int dd = -(2 * n - 1); dd <= 2 * n - 2; ++dd)
    for (int t = 0; t < q; ++t)
      Iseg(dd + 2 * n - 1, t) = ig.at(ylat(dd + 2, t)) - ig.at(ylat(dd, t));
  Eigen::MatrixXcd Wc(2 * n * q, n);
  for (int c = 0; c < 2 * n; ++c)
    for (int t = 0; t < q; ++t) {
      const double wt = 0.5 * dh * gq.w[t];
      for (int j = 0; j < n; ++j)
        Wc(c * q + t, j) = wt * Iseg(2 * j - c + 2 * n - 1, t);
    }
  const Eigen::MatrixXcd D = gmat * Wc;  // the one big product

  Eigen::VectorXcd IeL(n), IeR(n), Ibar(n);
  for (int j = 0; j < n; ++j) {
    IeL(j) = ig.at((2 * j + 2) * dh) - ig.at((2 * j) * dh);
    IeR(j) = ig.at((2 * (j + 1 - n)) * dh) - ig.at((2 * (j - n)) * dh);
  }
  for (int d = 0; d < n; ++d)
    Ibar(d) = ig.at((2 * d + 1) * dh) - ig.at((2 * d - 1) * dh);

  const cplx k2ma2 = p.k * p.k - u * u;
  KernelMatrix km;
  km.n = n;
  km.half_length = L;
  km.delta = delta;
  km.mid = grid.mid;
  km.form = KernelForm::Singular;
  km.a.resize(n, n);
  for (int i = 0; i < n; ++i) {
    const LineCoeffs lc = line_coeffs(u, L, grid.mid(i));
    for (int j = 0; j < n; ++j)
      km.a(i, j) = k2ma2 * D(i, j) - lc.c3 * IeR(j) - lc.c2 * IeL(j) -
                   Ibar(std::abs(j - i));
  }
  return km;
}

// ---------------------------------------------------------------------------
// Spectral form
// ---------------------------------------------------------------------------

static std::vector<Panel> spectral_panels(const KernelParams& p, double H,
                                          double rate) {
  const double k = p.k;
  std::vector<Panel> half;
  auto add = [&half](std::vector<Panel> more) {
    for (auto& pp : more) half.push_back(pp);
  };
  add(graded_panels(0.0, k, k, k * 1e-6));
  add(graded_panels(k, std::min(2.0 * k, H), k, k * 1e-6));
  const double w_osc = p.osc_cycles * 2.0 * constants::pi / rate;
  double lo = std::min(2.0 * k, H);
  // refine around Re(alpha) if the line response has a sharp pole there
  const cplx u = upper_half(p.alpha);
  const double ra = std::abs(u.real()), ia = std::abs(u.imag());
  if (ra > lo + w_osc && ra < H - w_osc && ia < w_osc) {
    const double a1 = ra - w_osc, a2 = ra + w_osc;
    const double wmin = std::max(ia / 4.0, ra * 1e-12);
    if (a1 > lo) {
      const int m = std::max(1, int((a1 - lo) / w_osc) + 1);
      add(uniform_panels(lo, a1, m));
    }
    add(graded_panels(a1, ra, ra, wmin));
    add(graded_panels(ra, a2, ra, wmin));
    lo = a2;
  }
  if (H > lo) {
    const int m = std::max(1, int((H - lo) / w_osc) + 1);
    add(uniform_panels(lo, H, m));
  }
  return half;
}

static KernelMatrix assemble_spectral(int n, const KernelParams& p) {
  const Grid grid(n, p.half_length);
  const double L = p.half_length, delta = grid.delta;
  const cplx u = upper_half(p.alpha);
  if (u.imag() * L < 1e-3)
    throw NumericsError(
        "spectral kernel form is ill-conditioned for nearly-real alpha; "
        "use the singular form");
  const LineTables lt = make_line_tables(p.alpha, L);
  const double H = p.h_max_factor / p.radius;
  const double rate = 2.0 * L + delta;
  const std::vector<Panel> half = spectral_panels(p, H, rate);

  const cplx a2c = u * u;
  const double k2 = p.k * p.k;

  Eigen::VectorXcd T = Eigen::VectorXcd::Zero(2 * n - 1);
  Eigen::VectorXcd V2 = Eigen::VectorXcd::Zero(n), V3 = Eigen::VectorXcd::Zero(n);

  const GaussRule& gr_osc = gauss_legendre(p.osc_order);
  for (int side = 0; side < 2; ++side) {
    const double sgn = side == 0 ? 1.0 : -1.0;
    for (const Panel& pp : half) {
      const double mid = 0.5 * (pp.a + pp.b), hw = 0.5 * (pp.b - pp.a);
      for (int t = 0; t < p.osc_order; ++t) {
        const double h = sgn * (mid + hw * gr_osc.x[t]);
        const double wq = hw * gr_osc.w[t];
        const cplx C = -(k2 - h * h) * spectral_weight(h, p.k, p.radius) *
                       sinc(0.5 * h * delta) * wq / (a2c - h * h);
        const cplx step = std::exp(I * cplx(h * delta));
        // T[d] over d = j - i in [-(n-1), n-1]
        cplx ph = std::exp(I * cplx(-h * (n - 1) * delta));
        for (int d = 0; d < 2 * n - 1; ++d) {
          T(d) += C * ph;
          ph *= step;
        }
        // V2[j]: phase h (L + s_j); V3[j]: phase h (s_j - L)
        cplx p2 = std::exp(I * cplx(h * (L + grid.mid(0))));
        cplx p3 = std::exp(I * cplx(h * (grid.mid(0) - L)));
        for (int j = 0; j < n; ++j) {
          V2(j) += C * p2;
          V3(j) += C * p3;
          p2 *= step;
          p3 *= step;
        }
      }
    }
  }

  // tail beyond |h| = H: integrand ~ -e^{i h s} S(h, z)/|h| with the segment
  // average folded in; reduces to differences of
  //   F(b) = 2 sign(b) (sin(|b|H)/H - |b| Ci(|b|H))
  // on the half-integer and integer lattices of b.
  auto Fb = [H](double b) -> double {
    if (b == 0.0) return 0.0;
    const double ab = std::abs(b);
    const double s = b > 0 ? 1.0 : -1.0;
    return s * 2.0 * (std::sin(ab * H) / H - ab * cosine_integral(ab * H));
  };
  Eigen::VectorXd Fhalf(2 * n);  // F((d + 1/2) delta), d in [-n, n-1]
  for (int d = -n; d <= n - 1; ++d) Fhalf(d + n) = Fb((d + 0.5) * delta);
  Eigen::VectorXd Fint(2 * n + 1);  // F(c delta), c in [-n, n]
  for (int c = -n; c <= n; ++c) Fint(c + n) = Fb(c * delta);
  Eigen::VectorXcd Tail1(2 * n - 1);
  for (int d = -(n - 1); d <= n - 1; ++d)
    Tail1(wrap_index(d, n)) = -(Fhalf(d + n) - Fhalf(d - 1 + n)) / delta;
  Eigen::VectorXcd W2(n), W3(n);
  for (int j = 0; j < n; ++j) {
    W2(j) = -(Fint(j + 1 + n) - Fint(j + n)) / delta;          // b = s_j + L -+ ...
    W3(j) = -(Fint(j + 1 - n + n) - Fint(j - n + n)) / delta;  // b = s_j - L
  }

  KernelMatrix km;
  km.n = n;
  km.half_length = L;
  km.delta = delta;
  km.mid = grid.mid;
  km.form = KernelForm::Spectral;
  km.a.resize(n, n);
  for (int i = 0; i < n; ++i) {
    const LineCoeffs lc = line_coeffs(u, L, grid.mid(i));
    for (int j = 0; j < n; ++j) {
      const int d = wrap_index(j - i, n);
      km.a(i, j) = delta * (T(d) + Tail1(d) + lc.c2 * (V2(j) + W2(j)) +
                            lc.c3 * (V3(j) + W3(j)));
    }
  }
  return km;
}

// ---------------------------------------------------------------------------

KernelMatrix assemble_kernel(int n, const KernelParams& p, KernelForm form) {
  if (n < 3) throw ConfigError("kernel: need at least 3 segments");
  if (p.half_length <= 0 || p.k <= 0 || p.radius <= 0)
    throw ConfigError("kernel: bad geometry parameters");
  return form == KernelForm::Singular ? assemble_singular(n, p)
                                      : assemble_spectral(n, p);
}

KernelMatrix assemble_kernel_local(int n, const KernelParams& p,
                                   cplx alpha_large) {
  if (n < 3) throw ConfigError("kernel: need at least 3 segments");
  const Grid grid(n, p.half_length);
  const double delta = grid.delta;
  const TubeGreen tg{p.k, p.radius, p.phi_order};
  const double k2 = p.k * p.k;
  const cplx inv_a2 = 1.0 / (alpha_large * alpha_large);

  // segment integrals of G on the difference lattice (even in d)
  Eigen::VectorXcd Ibar(n);  // d = |j - i| in [0, n-1]
  for (int d = 0; d < n; ++d) {
    cplx v;
    if (d == 0) {
      v = 2.0 * integrate(graded_panels(0.0, 0.5 * delta, 0.0, 1e-6 * delta), 10,
                          [&](double w) { return tg.value(w); });
    } else {
      const double a = d * delta - 0.5 * delta, b = d * delta + 0.5 * delta;
      v = integrate(graded_panels(a, b, a, delta / 16.0), 10,
                    [&](double w) { return tg.value(w); });
    }
    Ibar(d) = v;
  }
  // G' on the half-integer lattice: Gph[m] = G'((m + 1/2) delta), m >= 0;
  // odd in its argument.
  Eigen::VectorXcd Gph(n + 1);
  for (int m = 0; m <= n; ++m) Gph(m) = tg.d1((m + 0.5) * delta);
  auto gp = [&](int m) -> cplx {  // G'((m + 1/2) delta) for any integer m
    return m >= 0 ? Gph(std::min(m, n)) : -Gph(std::min(-m - 1, n));
  };

  KernelMatrix km;
  km.n = n;
  km.half_length = p.half_length;
  km.delta = delta;
  km.mid = grid.mid;
  km.form = KernelForm::Singular;
  km.local_limit = true;
  km.a.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int d = j - i;
      km.a(i, j) = -inv_a2 * (k2 * Ibar(std::abs(d)) + gp(d) - gp(d - 1));
    }
  return km;
}

// ---------------------------------------------------------------------------

cplx kernel_point(double z, double s, const KernelParams& p, KernelForm form) {
  const double L = p.half_length;
  if (std::abs(z) > L || std::abs(s) >= L)
    throw ConfigError("kernel_point: need |z| <= L and s strictly inside (-L, L)");
  const LineTables lt = make_line_tables(p.alpha, L);
  const TubeGreen tg{p.k, p.radius, p.phi_order};
  const double k2 = p.k * p.k;

  if (form == KernelForm::Spectral) {
    const cplx u = upper_half(p.alpha);
    if (u.imag() * L < 1e-3)
      throw NumericsError("spectral kernel form needs Im(alpha) L >= 1e-3");
    const double H = p.h_max_factor / p.radius;
    const std::vector<Panel> half = spectral_panels(p, H, 2.0 * L);
    cplx acc = 0.0;
    for (int side = 0; side < 2; ++side) {
      const double sgn = side == 0 ? 1.0 : -1.0;
      for (const Panel& pp : half)
        acc += integrate(std::vector<Panel>{pp}, p.osc_order, [&](double hh) {
          const double h = sgn * hh;
          return (k2 - h * h) * spectral_weight(h, p.k, p.radius) *
                 std::exp(I * cplx(h * s)) * line_green_fourier(u, L, h, z) *
                 (side == 0 ? 1.0 : 1.0);
        });
    }
    const LineCoeffs lc = line_coeffs(u, L, z);
    const double floor_a = 1e-6 * L;
    auto ci = [&](double a) {
      return cosine_integral(std::max(std::abs(a), floor_a) * H);
    };
    acc += 2.0 * (ci(s - z) + lc.c2 * ci(s + L) + lc.c3 * ci(s - L));
    return acc;
  }

  // Singular form: parts-integrated real-space representation; only log
  // singularities remain (at z' = s, plus the |z - z'| kink).
  const cplx u = upper_half(p.alpha);
  std::vector<double> cuts{-L, std::min(z, s), std::max(z, s), L};
  std::vector<Panel> ps;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    if (hi - lo < 1e-14 * L) continue;
    const double mid = 0.5 * (lo + hi);
    auto grade = [&](double a, double b, double to) {
      const double fine = (to == s) ? 1e-7 * L : 1e-3 * (b - a);
      for (auto& pp : graded_panels(a, b, to, fine)) ps.push_back(pp);
    };
    grade(lo, mid, lo);
    grade(mid, hi, hi);
  }
  const cplx integral = integrate(
      ps, 12, [&](double zp) { return lt.g(z, zp) * tg.value(s - zp); });
  const LineCoeffs lc = line_coeffs(u, L, z);
  return (k2 - u * u) * integral - lc.c3 * tg.value(s - L) -
         lc.c2 * tg.value(s + L) - tg.value(s - z);
}

}  // namespace nanopull
