#pragma once

#include <vector>

#include "gaborflow/fields.hpp"

namespace gaborflow {

enum class Adaptivity { hessian, structure_tensor };

struct DiffusionParams {
  double beta = 0.0;  // <= 0 selects the default beta^2 = dq/dp
  double eps = 0.2;   // isotropy floor, in (0, 1]
  double c = 1.0;     // anisotropy contrast
  double sigma = 2.0; // pre-smoothing scale in grid cells
  double dt = 0.0;    // <= 0 selects half the stability bound
  double t_final = 1.0;
  Adaptivity adaptivity = Adaptivity::hessian;
  bool readapt = false;  // re-adapt conductivity to the evolving modulus
};

struct Sym2 {
  double xx = 0.0, xy = 0.0, yy = 0.0;
};

double resolve_beta_sq(const DiffusionParams& dp, const GaborParams& p);

// Auxiliary matrix field from the modulus in the beta-scaled coordinates
// (x1, x2) = (beta^2 p, q): Gaussian-derivative Hessian or component-smoothed
// structure tensor.
std::vector<Sym2> auxiliary_matrix(const std::vector<double>& gabs,
                                   const DiffusionParams& dp, const GaborParams& p);

// S diag(eps, (1-eps) e^{-c/(l1-l2)^2} + eps) S^T with |l1| <= |l2|; the
// isotropic limit returns eps I.
Sym2 conductivity(const Sym2& A, const DiffusionParams& dp);

// Largest admissible explicit step for the given conductivity field.
double ced_stable_dt(const std::vector<Sym2>& C, const DiffusionParams& dp,
                     const GaborParams& p);

// Coherence-enhancing left-invariant diffusion in divergence form: forward
// left-invariant differences inside, conductivity multiply, backward
// differences outside. Conductivity frozen from |G(0)| unless readapt is set.
PhaseField ced_evolve(const PhaseField& G, const DiffusionParams& dp);

// Same evolution on the full group field (used to exercise the section-map
// correspondence).
GroupField ced_evolve_group(const GroupField& W, const DiffusionParams& dp);

struct SmoothingParams {
  double d11 = 1.0;
  double d22 = 1.0;
  double c_loc = 1.0;
  double t = 0.05;
  double truncation = 1e-8;  // drop kernel terms whose gaussian factor is below
};

// Continuous twisted kernel k(p,q,p',q'); the left-invariance identity ties
// its arguments, which the tests exercise directly.
cplx smoothing_kernel(const SmoothingParams& sp, double p, double q, double pp,
                      double qp);

// Truncated direct application of the twisted kernel operator.
PhaseField linear_smooth(const PhaseField& G, const SmoothingParams& sp);

}  // namespace gaborflow
