#pragma once

#include <complex>
#include <vector>

#include "gaborflow/params.hpp"

namespace gaborflow {

enum class WindowKind { sampled_gaussian, discrete_cr };

// N-periodic analysis window. samples holds one period [0, N); operator()
// reads with wraparound.
struct Window {
  WindowKind kind = WindowKind::sampled_gaussian;
  double a = 0.0;
  std::vector<std::complex<double>> samples;

  int size() const { return (int)samples.size(); }
  std::complex<double> operator()(int n) const {
    int N = size();
    int r = n % N;
    if (r < 0) r += N;
    return samples[r];
  }
  double l2_norm() const;
};

// Two-sided Gaussian sample exp(-(|n| - floor((N-1)/2))^2 pi / (N a)^2),
// defined for n in [-(N-1), N-1]. The stored window is its restriction to
// [0, N) continued periodically; the peak sits at index floor((N-1)/2).
double gaussian_window_sample(int n, int N, double a);

Window make_gaussian_window(const GaborParams& p);

// Sampled continuous Cauchy-Riemann kernel: exp(-pi (n/N)^2 / a^2) with n the
// symmetric representative in [-N/2, N/2). Peak at index 0; this is the
// centering the discrete Cauchy-Riemann relation singles out.
Window make_cr_gaussian_window(const GaborParams& p);

// Window whose Gabor transforms annihilate the centered discrete
// Cauchy-Riemann operator. Requires extreme oversampling K = M = N, L = 1.
// The constraint operator assembled from delta signals has a two-dimensional
// numerical nullspace (the smooth solution and its checkerboard-modulated
// mirror); the smooth one is selected by projecting the sampled
// Cauchy-Riemann Gaussian onto the nullspace. Unit l2 norm, center sample
// (index 0) real positive.
Window make_discrete_cr_window(const GaborParams& p);

}  // namespace gaborflow
