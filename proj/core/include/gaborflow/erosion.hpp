#pragma once

#include <vector>

#include "gaborflow/params.hpp"

namespace gaborflow {

enum class Boundary { periodic, clamp };

// Kernel on displacement (dx*sx, dy*sy) in physical units with weights
// already folded in; see erode_modulus for the conventions.
struct ErodeGrid {
  int nx = 0;        // rows (slow index)
  int ny = 0;        // columns
  double sx = 1.0;   // physical step per row index
  double sy = 1.0;   // physical step per column index
  Boundary boundary = Boundary::periodic;
};

// out(i,j) = min_{i',j'} f(i',j') + wx (sx (i-i'))^2 + wy (sy (j-j'))^2,
// exact separable lower-envelope transform.
std::vector<double> erode_quadratic(const std::vector<double>& f, const ErodeGrid& g,
                                    double wx, double wy);

// Flat elliptical kernel: out(i,j) = min over wx dx^2 + wy dy^2 < 1 (physical
// displacements); sliding-window minima per row offset.
std::vector<double> erode_flat(const std::vector<double>& f, const ErodeGrid& g,
                               double wx, double wy);

// General power kernel c_t * (wx dx^2 + wy dy^2)^s; direct search with radius
// pruning (exact).
std::vector<double> erode_power(const std::vector<double>& f, const ErodeGrid& g,
                                double wx, double wy, double coeff, double expo);

// Morphological erosion of a nonnegative modulus field A[l][m] on the Gabor
// grid (periodic, physical coordinates p = l/K, q = m K/P):
//   eta = 1:        kernel (a^-2 dp^2 + a^2 dq^2) / (4t)
//   eta in (1/2,1): kernel (2eta-1)/(2eta) t^{-1/(2eta-1)} rho^{2eta/(2eta-1)}
//                   with rho^2 = a^-2 dp^2 + a^2 dq^2
//   eta = 1/2:      flat kernel on rho < t
std::vector<double> erode_modulus(const std::vector<double>& A, double t, double a,
                                  double eta, const GaborParams& p);

// Separable quadratic erosion of a 4D modulus on the 2D Gabor grid with
// kernel (a^-2 (dp1^2+dp2^2) + a^2 (dq1^2+dq2^2)) / (4t); layout
// [l1][l2][m1][m2].
std::vector<double> erode_modulus_2d(const std::vector<double>& A, double t, double a,
                                     const GaborParams& p);

}  // namespace gaborflow
