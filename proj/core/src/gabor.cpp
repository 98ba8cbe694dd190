#include "gaborflow/gabor.hpp"

#include <cmath>
#include <numbers>

#include "gaborflow/errors.hpp"
#include "gaborflow/fft.hpp"
#include "gaborflow/parallel.hpp"

namespace gaborflow {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

// e^{2 pi i num/den} with the rational reduced mod den first, so large grid
// indices do not lose phase accuracy.
cplx unit_phase(long long num, long long den) {
  long long r = num % den;
  if (r < 0) r += den;
  return std::polar(1.0, two_pi * double(r) / double(den));
}
}  // namespace

cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) throw ValidationError("inner: length mismatch");
  cplx s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s / double(a.size());
}

std::vector<cplx> apply_shift(const std::vector<cplx>& f, const GroupElement& g,
                              const GaborParams& p) {
  if ((int)f.size() != p.N) throw ValidationError("shift: signal length must be N");
  std::vector<cplx> out(p.N);
  // e^{2 pi i (k/Q - m l /(2P))}: reduce on the common denominator 2 P Q.
  const cplx lead = unit_phase(2LL * p.P * g.k - (long long)p.Q * g.m * g.l, 2LL * p.P * p.Q);
  for (int n = 0; n < p.N; ++n) {
    out[n] = lead * unit_phase((long long)n * g.m, p.M) *
             f[mod_floor(n - (long long)g.l * p.L, p.N)];
  }
  return out;
}

PhaseField gabor_analysis(const std::vector<cplx>& f, const Window& w,
                          const GaborParams& p) {
  if ((int)f.size() != p.N) throw ValidationError("gabor: signal length must be N");
  if (w.size() != p.N) throw ValidationError("gabor: window length must be N");
  PhaseField G(p);
  const int fold = p.N / p.M;  // e^{-2 pi i n m / M} has period M | N
  parallel_for(p.K, [&](int l0, int l1) {
    std::vector<cplx> buf(p.M);
    for (int l = l0; l < l1; ++l) {
      std::fill(buf.begin(), buf.end(), cplx(0.0));
      for (int r = 0; r < fold; ++r) {
        for (int j = 0; j < p.M; ++j) {
          int n = j + r * p.M;
          buf[j] += std::conj(w(n - l * p.L)) * f[n];
        }
      }
      fft::forward(buf.data(), p.M);
      for (int m = 0; m < p.M; ++m)
        G.at(l, m) = buf[m] * unit_phase((long long)l * m, p.P) / double(p.N);
    }
  });
  return G;
}

std::vector<cplx> gabor_synthesis(const PhaseField& G, const Window& w,
                                  const ZakCoefficients& zc, const GaborParams& p) {
  if ((int)G.data.size() != p.K * p.M) throw ValidationError("gabor: field shape mismatch");
  // T = sum_{l,m} G[l,m] psi_lm, with psi_lm[n] = e^{-2 pi i l m/P}
  // e^{2 pi i n m/M} psi[n - lL].
  std::vector<cplx> T(p.N, cplx(0.0));
  std::vector<cplx> buf(p.M);
  for (int l = 0; l < p.K; ++l) {
    for (int m = 0; m < p.M; ++m)
      buf[m] = G.at(l, m) * unit_phase(-(long long)l * m, p.P);
    fft::backward(buf.data(), p.M);
    for (int n = 0; n < p.N; ++n) T[n] += w(n - l * p.L) * buf[n % p.M];
  }
  return apply_frame_inverse(zc, T, p);
}

std::vector<cplx> gabor_synthesis(const PhaseField& G, const Window& w,
                                  const GaborParams& p) {
  return gabor_synthesis(G, w, frame_eigenvalues(w, p), p);
}

GroupField apply_s_inverse(const PhaseField& G) {
  const GaborParams& p = G.params;
  GroupField W(p);
  for (int l = 0; l < p.K; ++l)
    for (int m = 0; m < p.M; ++m) {
      const cplx g = G.at(l, m);
      // e^{-2 pi i (k/Q + l m/(2P))}
      const cplx sec = unit_phase(-(long long)p.Q * l * m, 2LL * p.P * p.Q);
      for (int k = 0; k < p.Q; ++k)
        W.at(l, m, k) = g * sec * unit_phase(-(long long)k, p.Q);
    }
  return W;
}

PhaseField apply_s(const GroupField& W) {
  const GaborParams& p = W.params;
  PhaseField G(p);
  const int half = p.half_twist();
  for (int l = 0; l < p.K; ++l)
    for (int m = 0; m < p.M; ++m) {
      int k = mod_floor(-(long long)half * l * m, p.Q);
      G.at(l, m) = W.at(l, m, k);
    }
  return G;
}

GroupField left_translate(const GroupField& W, const GroupElement& g) {
  const GaborParams& p = W.params;
  GroupField out(p);
  const GroupElement ginv = group_inv(g, p);
  for (int l = 0; l < p.K; ++l)
    for (int m = 0; m < p.M; ++m)
      for (int k = 0; k < p.Q; ++k)
        out.at(l, m, k) = W.at(group_mul(ginv, {l, m, k}, p));
  return out;
}

PhaseField left_translate(const PhaseField& G, const GroupElement& g) {
  const GaborParams& p = G.params;
  PhaseField out(p);
  // (L_g G)[l,m] = e^{2 pi i (k0/Q + m0 l/P - l0 m0/(2P))} G[l-l0, m-m0].
  const cplx fixed = unit_phase(2LL * p.P * g.k - (long long)p.Q * g.l * g.m, 2LL * p.P * p.Q);
  for (int l = 0; l < p.K; ++l) {
    const cplx ph = fixed * unit_phase((long long)g.m * l, p.P);
    for (int m = 0; m < p.M; ++m)
      out.at(l, m) = ph * G.wrap(l - g.l, m - g.m);
  }
  return out;
}

}  // namespace gaborflow
