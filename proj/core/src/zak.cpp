#include "gaborflow/zak.hpp"

#include <cmath>

#include "gaborflow/errors.hpp"
#include "gaborflow/fft.hpp"

namespace gaborflow {

std::vector<cplx> zak_transform(const std::vector<cplx>& f, const GaborParams& p) {
  if ((int)f.size() != p.N) throw ValidationError("zak: signal length must be N");
  const int L = p.L, K = p.K;
  std::vector<cplx> z((size_t)L * K);
  std::vector<cplx> line(K);
  const double scale = 1.0 / (p.N * std::sqrt(double(K)));
  for (int n = 0; n < L; ++n) {
    for (int j = 0; j < K; ++j) line[j] = f[n + (size_t)j * L];
    fft::forward(line.data(), K);
    for (int k = 0; k < K; ++k) z[(size_t)n * K + k] = scale * line[k];
  }
  return z;
}

std::vector<cplx> zak_inverse(const std::vector<cplx>& z, const GaborParams& p) {
  const int L = p.L, K = p.K;
  if ((int)z.size() != L * K) throw ValidationError("zak: coefficient shape must be L x K");
  std::vector<cplx> f(p.N);
  std::vector<cplx> line(K);
  const double scale = double(p.N) / std::sqrt(double(K));
  for (int n = 0; n < L; ++n) {
    for (int k = 0; k < K; ++k) line[k] = z[(size_t)n * K + k];
    fft::backward(line.data(), K);
    for (int j = 0; j < K; ++j) f[n + (size_t)j * L] = scale * line[j];
  }
  return f;
}

ZakCoefficients frame_eigenvalues(const Window& w, const GaborParams& p) {
  if (w.size() != p.N) throw ValidationError("frame: window length must be N");
  ZakCoefficients zc;
  zc.L = p.L;
  zc.K = p.K;
  zc.values = zak_transform(w.samples, p);
  zc.eigenvalues.assign((size_t)p.L * p.K, 0.0);
  const int step = p.N / p.M;  // = K/P
  const double n2 = double(p.N) * p.N;
  for (int n = 0; n < p.L; ++n) {
    for (int k = 0; k < p.K; ++k) {
      double acc = 0.0;
      for (int j = 0; j < p.P; ++j) {
        int kk = mod_floor(k - (long long)j * step, p.K);
        acc += std::norm(zc.value(n, kk));
      }
      zc.eigenvalues[(size_t)n * p.K + k] = n2 * acc;
    }
  }
  double lo = zc.eigenvalues[0], hi = zc.eigenvalues[0];
  for (double v : zc.eigenvalues) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(lo > 1e-14 * hi)) throw ComputationError("window-not-frame");
  return zc;
}

std::vector<cplx> apply_frame(const ZakCoefficients& zc, const std::vector<cplx>& f,
                              const GaborParams& p) {
  std::vector<cplx> z = zak_transform(f, p);
  for (size_t i = 0; i < z.size(); ++i) z[i] *= zc.eigenvalues[i];
  return zak_inverse(z, p);
}

std::vector<cplx> apply_frame_inverse(const ZakCoefficients& zc,
                                      const std::vector<cplx>& f, const GaborParams& p) {
  std::vector<cplx> z = zak_transform(f, p);
  for (size_t i = 0; i < z.size(); ++i) z[i] /= zc.eigenvalues[i];
  return zak_inverse(z, p);
}

}  // namespace gaborflow
