#include "gaborflow/heisenberg.hpp"

#include <cmath>

namespace gaborflow {

GroupElement normalize(const GroupElement& g, const GaborParams& p) {
  return {mod_floor(g.l, p.K), mod_floor(g.m, p.M), mod_floor(g.k, p.Q)};
}

GroupElement group_mul(const GroupElement& g, const GroupElement& h, const GaborParams& p) {
  const long long twist = (long long)p.half_twist() *
                          ((long long)g.m * h.l - (long long)h.m * g.l);
  GroupElement out;
  out.l = mod_floor((long long)g.l + h.l, p.K);
  out.m = mod_floor((long long)g.m + h.m, p.M);
  out.k = mod_floor((long long)g.k + h.k + twist, p.Q);
  return out;
}

GroupElement group_mul_raw(const GroupElement& g, const GroupElement& h, const GaborParams& p) {
  const long long twist = (long long)p.half_twist() *
                          ((long long)g.m * h.l - (long long)h.m * g.l);
  GroupElement out;
  out.l = g.l + h.l;
  out.m = g.m + h.m;
  out.k = mod_floor((long long)g.k + h.k + twist, p.Q);
  return out;
}

GroupElement group_inv(const GroupElement& g, const GaborParams& p) {
  // Cross terms cancel for (-l,-m,-k): m(-l) - (-m)l = 0.
  return normalize({-g.l, -g.m, -g.k}, p);
}

GroupElement group_identity() { return {0, 0, 0}; }

std::array<double, 3> embed_phi(const GroupElement& g, const GaborParams& p) {
  return {double(g.l) / p.K, double(g.m) * p.K / p.P, double(g.k) / p.Q};
}

std::array<double, 3> continuous_mul(const std::array<double, 3>& x,
                                     const std::array<double, 3>& y) {
  double s = x[2] + y[2] + 0.5 * (x[1] * y[0] - x[0] * y[1]);
  s -= std::floor(s);
  return {x[0] + y[0], x[1] + y[1], s};
}

}  // namespace gaborflow
