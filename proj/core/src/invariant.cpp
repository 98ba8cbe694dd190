#include "gaborflow/invariant.hpp"

#include <cmath>
#include <numbers>

#include "gaborflow/errors.hpp"

namespace gaborflow {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

cplx unit_phase(long long num, long long den) {
  long long r = num % den;
  if (r < 0) r += den;
  return std::polar(1.0, two_pi * double(r) / double(den));
}
}  // namespace

double default_beta_sq(const GaborParams& p) { return p.dq() / p.dp(); }

PhaseField diff_phase(const PhaseField& G, Axis axis, Dir dir) {
  const GaborParams& p = G.params;
  PhaseField out(p);
  const double Kf = p.K;
  const double MN = double(p.M) / p.N;
  const bool fwd = dir == Dir::forward;
  switch (axis) {
    case Axis::spatial:
      for (int l = 0; l < p.K; ++l)
        for (int m = 0; m < p.M; ++m) {
          // twist e^{∓ 2 pi i L m / M}
          if (fwd)
            out.at(l, m) = Kf * (unit_phase(-(long long)p.L * m, p.M) * G.wrap(l + 1, m) -
                                 G.at(l, m));
          else
            out.at(l, m) = Kf * (G.at(l, m) -
                                 unit_phase((long long)p.L * m, p.M) * G.wrap(l - 1, m));
        }
      break;
    case Axis::frequency:
      for (int l = 0; l < p.K; ++l)
        for (int m = 0; m < p.M; ++m) {
          if (fwd)
            out.at(l, m) = MN * (G.wrap(l, m + 1) - G.at(l, m));
          else
            out.at(l, m) = MN * (G.at(l, m) - G.wrap(l, m - 1));
        }
      break;
    case Axis::phase: {
      const cplx factor = fwd ? double(p.Q) * (unit_phase(-1, p.Q) - 1.0)
                              : double(p.Q) * (1.0 - unit_phase(1, p.Q));
      for (size_t i = 0; i < out.data.size(); ++i) out.data[i] = factor * G.data[i];
      break;
    }
  }
  return out;
}

GroupField diff_group(const GroupField& W, Axis axis, Dir dir) {
  const GaborParams& p = W.params;
  GroupField out(p);
  GroupElement step;
  double inv_h = 0.0;
  switch (axis) {
    case Axis::spatial:
      step = {1, 0, 0};
      inv_h = p.K;
      break;
    case Axis::frequency:
      step = {0, 1, 0};
      inv_h = double(p.M) / p.N;
      break;
    case Axis::phase:
      step = {0, 0, 1};
      inv_h = p.Q;
      break;
  }
  if (dir == Dir::backward) step = group_inv(step, p);
  for (int l = 0; l < p.K; ++l)
    for (int m = 0; m < p.M; ++m)
      for (int k = 0; k < p.Q; ++k) {
        const cplx shifted = W.at(group_mul({l, m, k}, step, p));
        const cplx here = W.at(l, m, k);
        out.at(l, m, k) =
            dir == Dir::forward ? inv_h * (shifted - here) : inv_h * (here - shifted);
      }
  return out;
}

double cr_residual(const PhaseField& G, double a) {
  if (!(a > 0.0)) throw ValidationError("cr-residual: a must be positive");
  PhaseField d2 = diff_phase(G, Axis::frequency, Dir::forward);
  PhaseField tmp = diff_phase(G, Axis::frequency, Dir::backward);
  for (size_t i = 0; i < d2.data.size(); ++i) d2.data[i] = (d2.data[i] + tmp.data[i]) / a;
  PhaseField d1 = diff_phase(G, Axis::spatial, Dir::forward);
  tmp = diff_phase(G, Axis::spatial, Dir::backward);
  const cplx ia(0.0, a);
  for (size_t i = 0; i < d1.data.size(); ++i) d1.data[i] = ia * (d1.data[i] + tmp.data[i]);
  double num = 0.0, den1 = 0.0, den2 = 0.0;
  for (size_t i = 0; i < d1.data.size(); ++i) {
    num += std::norm(d1.data[i] + d2.data[i]);
    den1 += std::norm(d1.data[i]);
    den2 += std::norm(d2.data[i]);
  }
  const double den = std::sqrt(den1) + std::sqrt(den2);
  if (den == 0.0) return 0.0;
  return std::sqrt(num) / den;
}

}  // namespace gaborflow
