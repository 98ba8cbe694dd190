#include "gaborflow/reassign.hpp"

#include <algorithm>
#include <cmath>

#include "gaborflow/errors.hpp"
#include "gaborflow/invariant.hpp"

namespace gaborflow {

PhaseField upwind_reassign(const PhaseField& G, const ReassignParams& rp,
                           UpwindStats* stats) {
  const GaborParams& p = G.params;
  if (rp.mobility != Mobility::unit)
    throw ValidationError("upwind: only unit mobility is implemented");
  if (rp.t_final == 0.0) {
    if (stats) *stats = {};
    return G;
  }
  if (!(rp.dt > 0.0) || rp.dt > rp.t_final + 1e-15)
    throw ValidationError("upwind: need 0 < dt <= t_final");

  // Velocities from the initial modulus; cells below the floor are frozen.
  std::vector<double> vp((size_t)p.K * p.M, 0.0), vq((size_t)p.K * p.M, 0.0);
  std::vector<double> logmod((size_t)p.K * p.M);
  long frozen = 0;
  for (size_t i = 0; i < logmod.size(); ++i) {
    double m = std::abs(G.data[i]);
    logmod[i] = m < 1e-300 ? 0.0 : std::log(m);
    if (m < 1e-300) ++frozen;
  }
  auto lm = [&](int l, int m) {
    return logmod[(size_t)mod_floor(l, p.K) * p.M + mod_floor(m, p.M)];
  };
  const double a2 = rp.a * rp.a;
  for (int l = 0; l < p.K; ++l)
    for (int m = 0; m < p.M; ++m) {
      size_t i = (size_t)l * p.M + m;
      if (std::abs(G.data[i]) < 1e-300 || std::abs(G.wrap(l + 1, m)) < 1e-300 ||
          std::abs(G.wrap(l - 1, m)) < 1e-300 || std::abs(G.wrap(l, m + 1)) < 1e-300 ||
          std::abs(G.wrap(l, m - 1)) < 1e-300)
        continue;  // frozen
      vp[i] = -a2 * 0.5 * p.K * (lm(l + 1, m) - lm(l - 1, m));
      vq[i] = -(0.5 * p.M / p.N) / a2 * (lm(l, m + 1) - lm(l, m - 1));
    }

  PhaseField W = G;
  const int steps = (int)std::llround(rp.t_final / rp.dt);
  const double dt_last = rp.t_final - rp.dt * (steps > 0 ? steps - 1 : 0);
  for (int step = 0; step < std::max(steps, 1); ++step) {
    double dt = (step == steps - 1) ? dt_last : rp.dt;
    PhaseField d1f = diff_phase(W, Axis::spatial, Dir::forward);
    PhaseField d1b = diff_phase(W, Axis::spatial, Dir::backward);
    PhaseField d2f = diff_phase(W, Axis::frequency, Dir::forward);
    PhaseField d2b = diff_phase(W, Axis::frequency, Dir::backward);
    double prev_max = 0.0, new_max = 0.0;
    for (size_t i = 0; i < W.data.size(); ++i) {
      double zp = std::max(vp[i], 0.0), zm = std::min(vp[i], 0.0);
      double yp = std::max(vq[i], 0.0), ym = std::min(vq[i], 0.0);
      cplx upd = zp * d1b.data[i] + zm * d1f.data[i] + yp * d2b.data[i] +
                 ym * d2f.data[i];
      prev_max = std::max(prev_max, std::abs(W.data[i]));
      W.data[i] -= dt * upd;
      new_max = std::max(new_max, std::abs(W.data[i]));
    }
    if (new_max > 10.0 * prev_max && prev_max > 0.0)
      throw ComputationError("unstable-step");
  }
  if (stats) {
    stats->frozen_cells = frozen;
    stats->steps = std::max(steps, 1);
  }
  return W;
}

PhaseField erosion_reassign(const PhaseField& G, const ReassignParams& rp) {
  const GaborParams& p = G.params;
  std::vector<double> mod = G.modulus();
  // The erosion of a modulus is not scale invariant; work on the field
  // normalized to peak 1 so the kernel time means the same thing for every
  // input, and restore the scale afterwards.
  double peak = 0.0;
  for (double v : mod) peak = std::max(peak, v);
  if (peak == 0.0) return G;
  std::vector<double> unit(mod);
  for (double& v : unit) v /= peak;
  std::vector<double> eroded = erode_modulus(unit, rp.t_final, rp.a, rp.eta, p);
  PhaseField out(p);
  for (size_t i = 0; i < out.data.size(); ++i) {
    double m = mod[i];
    // phase stored and restored untouched
    out.data[i] = m > 0.0 ? G.data[i] * (peak * eroded[i] / m) : cplx(peak * eroded[i]);
  }
  return out;
}

std::pair<double, double> reconstruction_errors(const std::vector<cplx>& f,
                                                const std::vector<cplx>& g) {
  if (f.size() != g.size()) throw ValidationError("errors: length mismatch");
  double num1 = 0.0, num2 = 0.0, den = 0.0;
  for (size_t i = 0; i < f.size(); ++i) {
    num1 += std::norm(f[i] - g[i]);
    double dm = std::abs(f[i]) - std::abs(g[i]);
    num2 += dm * dm;
    den += std::norm(f[i]);
  }
  if (den == 0.0) throw ValidationError("errors: zero-norm reference");
  return {std::sqrt(num1 / den), std::sqrt(num2 / den)};
}

std::vector<cplx> energy_rescale(const std::vector<cplx>& g, const std::vector<cplx>& f) {
  double ef = 0.0, eg = 0.0;
  for (const cplx& z : f) ef += std::norm(z);
  for (const cplx& z : g) eg += std::norm(z);
  if (eg == 0.0) throw ValidationError("rescale: zero-norm signal");
  double s = std::sqrt(ef / eg);
  std::vector<cplx> out(g.size());
  for (size_t i = 0; i < g.size(); ++i) out[i] = s * g[i];
  return out;
}

}  // namespace gaborflow
