#include "gaborflow/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "gaborflow/errors.hpp"
#include "gaborflow/invariant.hpp"

namespace gaborflow {

namespace {
constexpr double pi = std::numbers::pi;

struct Kernel1d {
  std::vector<double> g, g1, g2;  // value, first, second derivative (index units)
  int radius = 0;
};

Kernel1d gaussian_kernels(double sigma) {
  Kernel1d k;
  k.radius = std::max(1, (int)std::ceil(4.0 * sigma));
  int n = 2 * k.radius + 1;
  k.g.resize(n);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    double d = i - k.radius;
    k.g[i] = std::exp(-d * d / (2.0 * sigma * sigma));
    sum += k.g[i];
  }
  for (double& v : k.g) v /= sum;
  k.g1.resize(n);
  k.g2.resize(n);
  for (int i = 0; i < n; ++i) {
    double d = i - k.radius;
    k.g1[i] = -(d / (sigma * sigma)) * k.g[i];
    k.g2[i] = ((d * d - sigma * sigma) / (sigma * sigma * sigma * sigma)) * k.g[i];
  }
  // Discrete moment condition: the second-derivative taps must annihilate
  // constants despite truncation.
  double mean2 = 0.0;
  for (double v : k.g2) mean2 += v;
  mean2 /= n;
  for (double& v : k.g2) v -= mean2;
  return k;
}

// Periodic separable convolution of a K x M scalar field with per-axis taps.
std::vector<double> conv2(const std::vector<double>& f, int K, int M,
                          const std::vector<double>& kl, const std::vector<double>& km,
                          int radius) {
  std::vector<double> tmp((size_t)K * M, 0.0), out((size_t)K * M, 0.0);
  for (int l = 0; l < K; ++l)
    for (int m = 0; m < M; ++m) {
      double acc = 0.0;
      for (int d = -radius; d <= radius; ++d)
        acc += km[d + radius] * f[(size_t)l * M + mod_floor(m - d, M)];
      tmp[(size_t)l * M + m] = acc;
    }
  for (int l = 0; l < K; ++l)
    for (int m = 0; m < M; ++m) {
      double acc = 0.0;
      for (int d = -radius; d <= radius; ++d)
        acc += kl[d + radius] * tmp[(size_t)mod_floor(l - d, K) * M + m];
      out[(size_t)l * M + m] = acc;
    }
  return out;
}

}  // namespace

double resolve_beta_sq(const DiffusionParams& dp, const GaborParams& p) {
  if (dp.beta > 0.0) return dp.beta * dp.beta;
  return default_beta_sq(p);
}

std::vector<Sym2> auxiliary_matrix(const std::vector<double>& gabs,
                                   const DiffusionParams& dp, const GaborParams& p) {
  if ((int)gabs.size() != p.K * p.M)
    throw ValidationError("auxiliary: field shape mismatch");
  if (!(dp.sigma > 0.0)) throw ValidationError("auxiliary: sigma must be positive");
  const double bsq = resolve_beta_sq(dp, p);
  const double h1 = bsq * p.dp();  // metric step per l cell
  const double h2 = p.dq();        // metric step per m cell
  Kernel1d k = gaussian_kernels(dp.sigma);
  std::vector<Sym2> A((size_t)p.K * p.M);
  if (dp.adaptivity == Adaptivity::hessian) {
    auto axx = conv2(gabs, p.K, p.M, k.g2, k.g, k.radius);
    auto ayy = conv2(gabs, p.K, p.M, k.g, k.g2, k.radius);
    auto axy = conv2(gabs, p.K, p.M, k.g1, k.g1, k.radius);
    for (size_t i = 0; i < A.size(); ++i) {
      A[i].xx = axx[i] / (h1 * h1);
      A[i].yy = ayy[i] / (h2 * h2);
      A[i].xy = axy[i] / (h1 * h2);
    }
  } else {
    auto gx = conv2(gabs, p.K, p.M, k.g1, k.g, k.radius);
    auto gy = conv2(gabs, p.K, p.M, k.g, k.g1, k.radius);
    std::vector<double> xx(A.size()), xy(A.size()), yy(A.size());
    for (size_t i = 0; i < A.size(); ++i) {
      double u = gx[i] / h1, v = gy[i] / h2;
      xx[i] = u * u;
      xy[i] = u * v;
      yy[i] = v * v;
    }
    xx = conv2(xx, p.K, p.M, k.g, k.g, k.radius);
    xy = conv2(xy, p.K, p.M, k.g, k.g, k.radius);
    yy = conv2(yy, p.K, p.M, k.g, k.g, k.radius);
    for (size_t i = 0; i < A.size(); ++i) {
      A[i].xx = xx[i];
      A[i].xy = xy[i];
      A[i].yy = yy[i];
    }
  }
  return A;
}

Sym2 conductivity(const Sym2& A, const DiffusionParams& dp) {
  if (!(dp.eps > 0.0 && dp.eps <= 1.0))
    throw ValidationError("conductivity: eps must lie in (0, 1]");
  const double mean = 0.5 * (A.xx + A.yy);
  const double disc = std::sqrt(0.25 * (A.xx - A.yy) * (A.xx - A.yy) + A.xy * A.xy);
  double la = mean + disc, lb = mean - disc;
  // |l1| <= |l2| ordering
  double l1 = la, l2 = lb;
  if (std::abs(l1) > std::abs(l2)) std::swap(l1, l2);
  double gap = l1 - l2;
  if (gap == 0.0) return {dp.eps, 0.0, dp.eps};
  double d2 = (1.0 - dp.eps) * std::exp(-dp.c / (gap * gap)) + dp.eps;
  // eigenvector of l1
  double vx, vy;
  double r1x = A.xx - l1, r1y = A.xy;
  double r2x = A.xy, r2y = A.yy - l1;
  if (r1x * r1x + r1y * r1y >= r2x * r2x + r2y * r2y) {
    vx = -r1y;
    vy = r1x;
  } else {
    vx = -r2y;
    vy = r2x;
  }
  double n = std::hypot(vx, vy);
  if (n == 0.0) return {dp.eps, 0.0, dp.eps};
  vx /= n;
  vy /= n;
  // C = eps v v^T + d2 w w^T with w perpendicular to v.
  double wx = -vy, wy = vx;
  Sym2 C;
  C.xx = dp.eps * vx * vx + d2 * wx * wx;
  C.xy = dp.eps * vx * vy + d2 * wx * wy;
  C.yy = dp.eps * vy * vy + d2 * wy * wy;
  return C;
}

double ced_stable_dt(const std::vector<Sym2>& C, const DiffusionParams& dp,
                     const GaborParams& p) {
  const double bsq = resolve_beta_sq(dp, p);
  const double h1 = bsq * p.dp(), h2 = p.dq();
  double lmax = 0.0;
  for (const Sym2& c : C) {
    double mean = 0.5 * (c.xx + c.yy);
    double disc = std::sqrt(0.25 * (c.xx - c.yy) * (c.xx - c.yy) + c.xy * c.xy);
    lmax = std::max(lmax, mean + disc);
  }
  if (lmax <= 0.0) lmax = 1.0;
  return 0.25 * std::min(h1 * h1, h2 * h2) / lmax;
}

namespace {

template <typename Field, typename DiffFn>
Field ced_steps(const Field& G0, const DiffusionParams& dp, const GaborParams& p,
                const std::vector<double>& modulus0, const DiffFn& diff,
                const std::function<std::vector<double>(const Field&)>& take_modulus) {
  const double bsq = resolve_beta_sq(dp, p);
  std::vector<Sym2> C((size_t)p.K * p.M);
  auto adapt = [&](const std::vector<double>& mod) {
    std::vector<Sym2> A = auxiliary_matrix(mod, dp, p);
    for (size_t i = 0; i < A.size(); ++i) C[i] = conductivity(A[i], dp);
  };
  adapt(modulus0);
  double dtmax = ced_stable_dt(C, dp, p);
  double dt = dp.dt > 0.0 ? dp.dt : 0.5 * dtmax;
  if (dt > dtmax * (1.0 + 1e-12)) throw ComputationError("cfl-violated");

  Field W = G0;
  double remaining = dp.t_final;
  while (remaining > 1e-15 * dp.t_final) {
    double step = std::min(dt, remaining);
    if (dp.readapt) adapt(take_modulus(W));
    Field d1 = diff(W, Axis::spatial, Dir::forward);
    Field d2 = diff(W, Axis::frequency, Dir::forward);
    // scale spatial derivative by beta^-2
    Field f1 = d1, f2 = d2;
    const size_t cells = (size_t)p.K * p.M;
    const size_t depth = d1.data.size() / cells;
    for (size_t i = 0; i < cells; ++i) {
      const Sym2& c = C[i];
      for (size_t k = 0; k < depth; ++k) {
        cplx a = d1.data[i * depth + k] / bsq;
        cplx b = d2.data[i * depth + k];
        f1.data[i * depth + k] = c.xx * a + c.xy * b;
        f2.data[i * depth + k] = c.xy * a + c.yy * b;
      }
    }
    Field b1 = diff(f1, Axis::spatial, Dir::backward);
    Field b2 = diff(f2, Axis::frequency, Dir::backward);
    for (size_t i = 0; i < W.data.size(); ++i)
      W.data[i] += step * (b1.data[i] / bsq + b2.data[i]);
    remaining -= step;
  }
  return W;
}

}  // namespace

PhaseField ced_evolve(const PhaseField& G, const DiffusionParams& dp) {
  const GaborParams& p = G.params;
  return ced_steps<PhaseField>(
      G, dp, p, G.modulus(),
      [](const PhaseField& f, Axis a, Dir d) { return diff_phase(f, a, d); },
      [](const PhaseField& f) { return f.modulus(); });
}

GroupField ced_evolve_group(const GroupField& W, const DiffusionParams& dp) {
  const GaborParams& p = W.params;
  // s-independent modulus of the initial condition
  std::vector<double> mod((size_t)p.K * p.M);
  for (int l = 0; l < p.K; ++l)
    for (int m = 0; m < p.M; ++m) mod[(size_t)l * p.M + m] = std::abs(W.at(l, m, 0));
  return ced_steps<GroupField>(
      W, dp, p, mod,
      [](const GroupField& f, Axis a, Dir d) { return diff_group(f, a, d); },
      [&p](const GroupField& f) {
        std::vector<double> m2((size_t)p.K * p.M);
        for (int l = 0; l < p.K; ++l)
          for (int m = 0; m < p.M; ++m) m2[(size_t)l * p.M + m] = std::abs(f.at(l, m, 0));
        return m2;
      });
}

cplx smoothing_kernel(const SmoothingParams& sp, double p, double q, double pp,
                      double qp) {
  const double c = sp.c_loc;
  const double gauss = std::exp(-((p - pp) * (p - pp) / sp.d11 +
                                  (q - qp) * (q - qp) / sp.d22) *
                                c / (4.0 * sp.t));
  const double norm = (c / (4.0 * pi * sp.t * std::sqrt(sp.d11 * sp.d22))) /
                      (1.0 + 64.0 * sp.d11 * sp.d22 * sp.t * sp.t / (c * c));
  return norm * gauss * std::polar(1.0, -pi * (pp - p) * (qp + q));
}

PhaseField linear_smooth(const PhaseField& G, const SmoothingParams& sp) {
  const GaborParams& p = G.params;
  if (!(sp.t > 0.0)) throw ValidationError("smooth: t must be positive");
  const double c = sp.c_loc;
  const double dpc = p.dp(), dqc = p.dq();
  // truncation radii where the gaussian factor falls below the cutoff
  const double logcut = -std::log(std::max(sp.truncation, 1e-300));
  int Rl = (int)std::ceil(std::sqrt(logcut * 4.0 * sp.t * sp.d11 / c) / dpc);
  int Rm = (int)std::ceil(std::sqrt(logcut * 4.0 * sp.t * sp.d22 / c) / dqc);
  Rl = std::min(Rl, p.K / 2);
  Rm = std::min(Rm, p.M / 2);
  const double norm = (c / (4.0 * pi * sp.t * std::sqrt(sp.d11 * sp.d22))) /
                      (1.0 + 64.0 * sp.d11 * sp.d22 * sp.t * sp.t / (c * c));
  const double measure = dpc * dqc;
  PhaseField out(p);
  for (int l = 0; l < p.K; ++l)
    for (int m = 0; m < p.M; ++m) {
      cplx acc = 0.0;
      for (int dl = -Rl; dl <= Rl; ++dl) {
        double dx = dl * dpc;
        double gx = std::exp(-dx * dx * c / (4.0 * sp.t * sp.d11));
        for (int dm = -Rm; dm <= Rm; ++dm) {
          double dy = dm * dqc;
          double g = gx * std::exp(-dy * dy * c / (4.0 * sp.t * sp.d22));
          if (g < sp.truncation) continue;
          // phase e^{-i pi (p'-p)(q'+q)} with raw displacements
          double phase = -pi * dx * ((2.0 * m + dm) * dqc);
          acc += g * std::polar(1.0, phase) * G.wrap(l + dl, m + dm);
        }
      }
      out.at(l, m) = norm * measure * acc;
    }
  return out;
}

}  // namespace gaborflow
