#pragma once

#include <Eigen/Dense>
#include <optional>

#include "nanopull/conductivity.hpp"
#include "nanopull/kernel.hpp"
#include "nanopull/model.hpp"

namespace nanopull {

struct SolveOptions {
  int n_segments = 411;
  KernelForm form = KernelForm::Singular;
  // Overall sign of the coupling term in (I + s lambda K) j = B. Calibrated
  // against the closed local-limit force; -1 is the calibrated default.
  double lambda_sign = -1.0;
  double residual_tol = 1e-8;
  double rcond_min = 1e-12;
  // If set, replaces alpha by local_override * alpha and uses the collapsed
  // (delta-function) line response; models the local-conductivity limit.
  std::optional<double> local_override;
  int seg_order = 10;
  int band_s_order = 8;
  int phi_order = 8;
  double h_max_factor = 40.0;
};

struct Solution {
  Eigen::VectorXd z;           // collocation points
  Eigen::VectorXcd current;    // surface current density j_z [A/m]
  Eigen::VectorXcd efield;     // total axial surface field E_z [V/m]
  Eigen::VectorXcd incident;   // incident axial field at the surface [V/m]
  cplx alpha{};                // wave parameter actually used
  cplx sigma{};
  double omega = 0, half_length = 0, delta = 0, k = 0;
  double e0 = 0, theta0 = 0;
  double radius = 0;
  double residual_rel = 0, rcond = 0;
  bool local = false;
};

// Coupling strength lambda = i sigma alpha^2 / (omega eps0) [1/m].
cplx coupling_lambda(cplx sigma, cplx alpha, double omega);

// Driving term B(z) = sigma alpha^2 E0 sin(theta0) gf(h0, z) with
// h0 = -k cos(theta0); closed form through the transform of the line
// response.
Eigen::VectorXcd rhs_vector(const CntSystem& sys, const Excitation& exc,
                            cplx sigma, cplx alpha, const Eigen::VectorXd& z);

// Incident axial field E0 sin(theta0) exp(i k cos(theta0) z).
Eigen::VectorXcd incident_field(const Excitation& exc, const Eigen::VectorXd& z);

// Total axial surface field from the solved current:
// E_z = (j'' + alpha^2 j) / (sigma alpha^2), second derivative by central
// 3-point stencils (one-sided 4-point at the ends).
Eigen::VectorXcd surface_field(const Eigen::VectorXcd& j, cplx sigma,
                               cplx alpha, double delta);

// Assemble (or reuse) the kernel and solve the second-kind system.
Solution solve_current(const CntSystem& sys, const Excitation& exc,
                       const Conductivity& cond, const SolveOptions& opt = {});
Solution solve_with_kernel(const CntSystem& sys, const Excitation& exc,
                           cplx sigma, cplx alpha, const KernelMatrix& km,
                           const SolveOptions& opt = {});

}  // namespace nanopull
