#pragma once

#include <array>
#include <complex>
#include <vector>

#include "gaborflow/fields.hpp"
#include "gaborflow/params.hpp"

namespace gaborflow {

// Chirp f(xi) = exp(-xi^2/(2 b^2)) exp(i pi r xi^2).
struct ChirpParams {
  double b = 1.0;
  double r = 0.0;
};

// Samples f((n - n0)/N), n = 0..N-1. n0 = N/2 centers the chirp mid-domain.
std::vector<cplx> chirp_signal(const ChirpParams& c, int N, int n0 = 0);

// Symmetric complex 2x2 quadratic form.
struct Mat2c {
  cplx a11, a12, a22;
  cplx quad(double p, double q) const {
    return a11 * p * p + 2.0 * a12 * p * q + a22 * q * q;
  }
};

// Exact Gabor transform of the chirp with unit-scale Gaussian window:
// W(p,q,s) = prefactor e^{-2 pi i (s + pq/2)} e^{(p,q) B (p,q)^T}.
struct ChirpGaborForm {
  ChirpParams c;
  cplx prefactor;
  Mat2c B;

  cplx eval(double p, double q, double s) const;
  double re(int i, int j) const;  // Re(B) entries, 0-based
};

ChirpGaborForm chirp_gabor_exact(const ChirpParams& c);

// Transform with window scale a via the dilation relation
// W_a[f](p,q,s) = a * W_1[chirp(b/a, r a^2)](p/a, a q, s).
cplx chirp_gabor_scaled(const ChirpParams& c, double a, double p, double q, double s);

// Eigen data of Re(B): |lambda1| < |lambda2|, orthonormal eigenvectors with a
// deterministic sign convention, alpha-coordinates along them.
struct EigenFrame {
  double lambda1 = 0.0, lambda2 = 0.0;
  std::array<double, 2> k1{}, k2{};
  double alpha1(double p, double q) const { return k1[0] * p + k1[1] * q; }
  double alpha2(double p, double q) const { return k2[0] * p + k2[1] * q; }
};

EigenFrame eigenframe(const ChirpGaborForm& form);

// Euler-Lagrange multiplier of the circle-constrained minimum of the
// quadratic modulus exponent.
struct LagrangeRoot {
  double lambda = 0.0;
  enum Branch { generic, axis1, axis2 } branch = generic;
};

LagrangeRoot lagrange_multiplier(const EigenFrame& fr, double p, double q, double t);

// P_t(lambda), scaled so a residual test can normalize by coefficients.
double quartic_eval(const EigenFrame& fr, double p, double q, double t, double lambda);
double quartic_scale(const EigenFrame& fr, double p, double q, double t);

// Collapse time of the on-axis branch, for the point alpha1 = p on the k1
// axis; found by a 1D solve of the tangency condition t * kappa = 1 with the
// isoline curvature evaluated numerically.
double t_max(const EigenFrame& fr, double p);

// Aspect ratio of the eroded isocontour at log-level c > 0:
// (sqrt(c/|l1|) - t) / (sqrt(c/|l2|) - t); valid for t < sqrt(c/|l2|).
double collapse_anisotropy(const EigenFrame& fr, double t, double c);

// Two-branch closed approximation to the Lagrange multiplier (comparison
// only; exact on the principal axes).
double lagrange_approximation(const EigenFrame& fr, double p, double q, double t,
                              double c_knob);

// Modulus exponent of the flat-kernel eroded transform at (p,q), i.e. the
// minimum of the Re(B) form over the closed disc of radius t.
double eroded_exponent(const EigenFrame& fr, double p, double q, double t);

// Exact eroded transform (eta = 1/2) with window scale a; t = 0 returns the
// plain transform.
cplx eroded_chirp_exact(const ChirpParams& c, double a, double eta, double t, double p,
                        double q, double s);

// Exact transform evaluated on the discrete grid with the conventions of the
// sampled CR Gaussian window (peak at index 0) and the signal centered at
// sample n0. Comparable entrywise with gabor_analysis output.
PhaseField chirp_grid_reference(const ChirpParams& c, const GaborParams& p, int n0);

// Modulated-Gaussian linear chirp used by the reassignment evaluation runs.
std::vector<cplx> evaluation_chirp(int N);

}  // namespace gaborflow
