#include <cmath>
#include <vector>

#include "doctest.h"
#include "nanopull/conductivity.hpp"
#include "nanopull/config.hpp"
#include "nanopull/errors.hpp"

using namespace nanopull;

namespace {

CntSystem reference_system() {
  return build_system(12, 100e-9, 0.413 * constants::eV, 0.0);
}

double edge_omega(const CntSystem& s) { return 2.0 * s.mu / constants::hbar; }

}  // namespace

TEST_SUITE("conductivity") {

TEST_CASE("sigma0 scale is e^2 / (4 hbar)") {
  const CntSystem s = reference_system();
  CHECK(sigma0_scale(s) ==
        doctest::Approx(constants::e * constants::e / (4.0 * constants::hbar))
            .epsilon(1e-14));
}

TEST_CASE("interband real part switches on at the absorption edge") {
  const CntSystem s = reference_system();
  const double w0 = edge_omega(s);
  // exactly zero below the edge at T = 0
  CHECK(sigma_inter(0.7 * w0, s).real() == 0.0);
  CHECK(sigma_inter(0.99 * w0, s).real() == 0.0);
  // finite and positive above it
  CHECK(sigma_inter(1.2 * w0, s).real() > 0.0);
}

TEST_CASE("passivity: total dissipation is non-negative") {
  const CntSystem s = reference_system();
  const double w0 = edge_omega(s);
  for (double x : {0.3, 0.8, 1.001, 1.3, 2.0, 3.5}) {
    const Conductivity c = evaluate_conductivity(x * w0, s);
    CHECK(c.sigma.real() >= 0.0);
  }
}

TEST_CASE("intraband is Drude-like: purely imaginary, 1/omega") {
  const CntSystem s = reference_system();
  const double w0 = edge_omega(s);
  const cplx s1 = sigma_intra(0.5 * w0, s);
  const cplx s2 = sigma_intra(1.0 * w0, s);
  CHECK(std::abs(s1.real()) < 1e-12 * std::abs(s1));
  CHECK(s1.imag() < 0.0);  // e^{-i w t} convention: inductive response
  CHECK(s1.imag() / s2.imag() == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("finite-temperature quadrature matches the degenerate closed form") {
  CntSystem s = reference_system();
  const double w = 1.5 * edge_omega(s);
  ConductivityOptions closed, quad;
  closed.sigma_method = SigmaMethod::Closed;
  quad.sigma_method = SigmaMethod::Quadrature;

  // interband at T = 30 K (kT ~ mu/160, deep in the degenerate regime)
  s.temperature = 30.0;
  const cplx ref = sigma_inter(w, reference_system(), closed);
  const cplx q = sigma_inter(w, s, quad);
  CHECK(std::abs(q - ref) / std::abs(ref) < 2e-2);

  // intraband thermal smearing of the Drude weight at T = 10 K
  s.temperature = 10.0;
  const cplx d0 = sigma_intra(0.8 * edge_omega(s), reference_system(), quad);
  const cplx dT = sigma_intra(0.8 * edge_omega(s), s, quad);
  CHECK(std::abs(dT - d0) / std::abs(d0) < 1e-2);
}

TEST_CASE("Auto method selection") {
  CntSystem s = reference_system();
  const double w = 1.5 * edge_omega(s);
  ConductivityOptions closed;
  closed.sigma_method = SigmaMethod::Closed;
  // T = 30 K is degenerate: Auto must route to the closed form
  s.temperature = 30.0;
  CHECK(sigma_inter(w, s) == sigma_inter(w, s, closed));
  // hot system: closed form must refuse, Auto must still work
  s.temperature = 4000.0;
  CHECK_THROWS_AS(sigma_inter(w, s, closed), DomainError);
  CHECK_NOTHROW(sigma_inter(w, s));
}

TEST_CASE("Kramers-Kronig consistency of the interband term") {
  // Re sigma(w) = (2/pi) PV int_0^inf w' Im sigma(w') / (w'^2 - w^2) dw',
  // window [0.1, 3] w0 on a trapezoid grid plus a log-spaced tail completion
  // out to 500 w0 evaluated from the same closed form.
  const CntSystem s = reference_system();
  const double w0 = edge_omega(s);
  const int M = 4001;
  std::vector<double> ws(M), im(M);
  for (int i = 0; i < M; ++i) {
    ws[i] = (0.1 + 2.9 * i / (M - 1.0)) * w0;
    im[i] = sigma_inter(ws[i], s).imag();
  }
  auto recon = [&](double w) {
    double acc = 0.0;
    for (int i = 0; i + 1 < M; ++i) {
      const double wa = 0.5 * (ws[i] + ws[i + 1]), dw = ws[i + 1] - ws[i];
      if (std::abs(wa - w) < 1.5 * dw) continue;  // PV: skip the pole cell
      acc += 0.5 * (im[i] + im[i + 1]) * wa / (wa * wa - w * w) * dw;
    }
    const double t0 = std::log(3.0 * w0), t1 = std::log(500.0 * w0);
    const int K = 4000;
    for (int i = 0; i < K; ++i) {
      const double wa = std::exp(t0 + (t1 - t0) * (i + 0.5) / K);
      acc += sigma_inter(wa, s).imag() * wa / (wa * wa - w * w) *
             wa * (t1 - t0) / K;
    }
    return 2.0 / constants::pi * acc;
  };
  for (double x : {1.2, 1.5, 2.0}) {
    const double direct = sigma_inter(x * w0, s).real();
    CHECK(std::abs(recon(x * w0) - direct) / std::abs(direct) < 5e-2);
  }
}

TEST_CASE("xi_intra obeys the closed 1/omega^3 relation") {
  const CntSystem s = reference_system();
  for (double x : {0.5, 1.0, 2.1}) {
    const double w = x * edge_omega(s);
    // sigma_intra = i A / w  =>  (v^2/2) sigma'' = sigma_intra v^2 / w^2
    const cplx expect =
        sigma_intra(w, s) * s.v_fermi * s.v_fermi / (w * w);
    const cplx got = xi_intra(w, s);
    CHECK(std::abs(got - expect) / std::abs(expect) < 1e-12);
  }
}

TEST_CASE("finite-difference xi converges at better than second order") {
  const CntSystem s = reference_system();
  const double w = 1.3 * edge_omega(s);
  ConductivityOptions oref;
  oref.deriv_step_rel = 1e-4;
  const cplx ref = xi_from_derivative(w, s, oref);
  double prev = 0.0, worst_order = 100.0;
  for (double h : {0.16, 0.08, 0.04, 0.02}) {
    ConductivityOptions o;
    o.deriv_step_rel = h;
    const double err = std::abs(xi_from_derivative(w, s, o) - ref);
    if (prev > 0.0) worst_order = std::min(worst_order, std::log2(prev / err));
    prev = err;
  }
  CHECK(worst_order >= 2.0);
}

TEST_CASE("alpha is the principal root: alpha^2 xi = sigma") {
  const CntSystem s = reference_system();
  for (double f_thz : {160.0, 200.0, 210.0, 245.0}) {
    const Conductivity c = evaluate_conductivity(thz_to_omega(f_thz), s);
    const cplx lhs = c.alpha * c.alpha * c.xi;
    CHECK(std::abs(lhs - c.sigma) / std::abs(c.sigma) < 1e-12);
    CHECK(c.alpha.real() >= 0.0);  // principal branch
  }
}

TEST_CASE("frozen reference point at 210 THz") {
  const CntSystem s = reference_system();
  const Conductivity c = evaluate_conductivity(thz_to_omega(210.0), s);
  CHECK(c.sigma.real() == doctest::Approx(6.06924e-5).epsilon(1e-4));
  CHECK(c.sigma.imag() == doctest::Approx(-8.20821e-5).epsilon(1e-4));
  CHECK(c.alpha.real() == doctest::Approx(1.02875e8).epsilon(1e-4));
  CHECK(c.alpha.imag() == doctest::Approx(3.39052e7).epsilon(1e-4));
  CHECK_FALSE(c.near_edge);
}

TEST_CASE("edge-adjacent evaluations are flagged") {
  const CntSystem s = reference_system();
  const Conductivity c =
      evaluate_conductivity(edge_omega(s) * (1.0 + 1e-5), s);
  CHECK(c.near_edge);
}

}  // TEST_SUITE
