#pragma once

#include <vector>

#include "gaborflow/fields.hpp"
#include "gaborflow/window.hpp"
#include "gaborflow/zak.hpp"

namespace gaborflow {

// Discrete inner product (a,b) = (1/N) sum conj(a) b.
cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b);

// Time-frequency shift U_[l,m,k] acting on a signal:
// (U f)[n] = e^{2 pi i (k/Q - m l/(2P))} e^{2 pi i n m / M} f[n - lL].
std::vector<cplx> apply_shift(const std::vector<cplx>& f, const GroupElement& g,
                              const GaborParams& p);

// Phase-space Gabor coefficients G[l,m] = (1/N) e^{2 pi i l m / P}
// sum_n conj(psi[n - lL]) f[n] e^{-2 pi i n m / M}, via one FFT per shift.
PhaseField gabor_analysis(const std::vector<cplx>& f, const Window& w,
                          const GaborParams& p);

// Frame inversion: F^{-1} sum_{l,m} G[l,m] psi_lm.
std::vector<cplx> gabor_synthesis(const PhaseField& G, const Window& w,
                                  const GaborParams& p);
std::vector<cplx> gabor_synthesis(const PhaseField& G, const Window& w,
                                  const ZakCoefficients& zc, const GaborParams& p);

// Section maps between phase space and the group:
//   apply_s_inverse: W[l,m,k] = e^{-2 pi i (k/Q + l m/(2P))} G[l,m]
//   apply_s:         G[l,m]   = W[l, m, -Q l m/(2P) mod Q]
GroupField apply_s_inverse(const PhaseField& G);
PhaseField apply_s(const GroupField& W);

// Left-regular action on the group field, (L_g W)(h) = W(g^{-1} h) with exact
// quotient arithmetic.
GroupField left_translate(const GroupField& W, const GroupElement& g);

// The same action conjugated to phase space. For analysis fields this is an
// exact intertwiner: gabor_analysis(U_g f) == left_translate(gabor_analysis(f), g).
PhaseField left_translate(const PhaseField& G, const GroupElement& g);

}  // namespace gaborflow
