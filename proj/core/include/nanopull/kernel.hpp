#pragma once

#include <Eigen/Dense>

#include "nanopull/constants.hpp"

namespace nanopull {

// Two independent evaluations of the same scattering kernel
//   K(z, s) = int_-L^L g(z, z') (k^2 + d^2/dz'^2) G(s - z') dz',
// used to cross-validate each other:
//   Singular: real-space form; the d^2 G term is integrated by parts twice
//     (g'' = -alpha^2 g - delta), leaving end-point terms plus integrals with
//     only logarithmic singularities.
//   Spectral: plane-wave decomposition of G; the oscillatory tail beyond
//     h_max is completed with cosine-integral corrections.
enum class KernelForm { Singular, Spectral };

struct KernelParams {
  cplx alpha;               // wave parameter of the line response [1/m]
  double half_length = 0;   // L [m]
  double k = 0;             // free-space wavenumber [1/m]
  double radius = 0;        // tube radius [m]
  int seg_order = 10;       // Gauss order of the per-segment z' quadrature
  int band_s_order = 8;     // Gauss order of the near-diagonal s average
  int phi_order = 8;        // azimuthal Gauss order inside G
  double h_max_factor = 40.0;  // spectral cutoff h_max = factor / radius
  int osc_order = 16;          // Gauss order per oscillatory h panel
  double osc_cycles = 3.0;     // phase cycles per oscillatory h panel
};

// Nystrom discretization on n equal segments with midpoint collocation.
// a(i, j) approximates int_{segment j} K(z_i, s) ds, i.e. the segment
// quadrature weight is already folded in. K(z, s) has an integrable log
// singularity at s = z, so near-diagonal entries are exact segment averages
// rather than midpoint values (pointwise K(z, z) does not exist).
struct KernelMatrix {
  int n = 0;
  double half_length = 0;
  double delta = 0;
  Eigen::VectorXd mid;    // collocation points z_i
  Eigen::MatrixXcd a;
  KernelForm form = KernelForm::Singular;
  bool local_limit = false;
};

KernelMatrix assemble_kernel(int n, const KernelParams& p,
                             KernelForm form = KernelForm::Singular);

// |alpha| -> infinity limit: the line response collapses to
// -alpha^-2 delta(z - z'), so entries reduce to closed s-integrals of G and
// its derivatives. alpha_large is the (finite, large) override value.
KernelMatrix assemble_kernel_local(int n, const KernelParams& p,
                                   cplx alpha_large);

// Pointwise evaluation for spot checks and --dump-kernel (s != z).
cplx kernel_point(double z, double s, const KernelParams& p,
                  KernelForm form = KernelForm::Singular);

}  // namespace nanopull
