#pragma once

#include <vector>

#include "gaborflow/fields.hpp"
#include "gaborflow/window.hpp"

namespace gaborflow {

// Zak data of a window: values[n][k] = Z(psi)[n,k] (n in [0,L), k in [0,K))
// and the frame-operator eigenvalues on the same grid.
struct ZakCoefficients {
  int L = 0;
  int K = 0;
  std::vector<cplx> values;
  std::vector<double> eigenvalues;

  const cplx& value(int n, int k) const { return values[(size_t)n * K + k]; }
  double eigenvalue(int n, int k) const { return eigenvalues[(size_t)n * K + k]; }
};

// Z f[n,k] = (u_nk, f) with the 1/N-normalized inner product; u_nk the
// L-strided comb modulated by e^{2 pi i k (.)/N}. Output is L x K row major.
std::vector<cplx> zak_transform(const std::vector<cplx>& f, const GaborParams& p);

// Inverse of zak_transform on its image: f = N * sum z[n,k] u_nk.
std::vector<cplx> zak_inverse(const std::vector<cplx>& z, const GaborParams& p);

// Frame-operator eigenvalues lambda[n,k] = N^2 sum_{j=0}^{P-1}
// |Z psi[n, k - j N/M]|^2. The N^2 puts them on the same scale as the frame
// operator built with the 1/N inner product, so that F = Z^{-1} Lambda Z
// holds as an operator identity. Throws "window-not-frame" if any eigenvalue
// collapses.
ZakCoefficients frame_eigenvalues(const Window& w, const GaborParams& p);

// F f (frame operator) and F^{-1} f via Zak diagonalization.
std::vector<cplx> apply_frame(const ZakCoefficients& zc, const std::vector<cplx>& f,
                              const GaborParams& p);
std::vector<cplx> apply_frame_inverse(const ZakCoefficients& zc,
                                      const std::vector<cplx>& f, const GaborParams& p);

}  // namespace gaborflow
