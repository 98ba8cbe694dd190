#pragma once

#include <complex>
#include <vector>

#include "gaborflow/heisenberg.hpp"
#include "gaborflow/params.hpp"

namespace gaborflow {

using cplx = std::complex<double>;

// Phase-space Gabor coefficients G[l][m], row major, periodic in both indices.
struct PhaseField {
  GaborParams params;
  std::vector<cplx> data;

  PhaseField() = default;
  explicit PhaseField(const GaborParams& p) : params(p), data((size_t)p.K * p.M) {}

  cplx& at(int l, int m) { return data[(size_t)l * params.M + m]; }
  const cplx& at(int l, int m) const { return data[(size_t)l * params.M + m]; }
  const cplx& wrap(int l, int m) const {
    return data[(size_t)mod_floor(l, params.K) * params.M + mod_floor(m, params.M)];
  }
  std::vector<double> modulus() const;
};

// Full group-domain transform W[l][m][k].
struct GroupField {
  GaborParams params;
  std::vector<cplx> data;

  GroupField() = default;
  explicit GroupField(const GaborParams& p)
      : params(p), data((size_t)p.K * p.M * p.Q) {}

  cplx& at(int l, int m, int k) {
    return data[((size_t)l * params.M + m) * params.Q + k];
  }
  const cplx& at(int l, int m, int k) const {
    return data[((size_t)l * params.M + m) * params.Q + k];
  }
  const cplx& at(const GroupElement& g) const { return at(g.l, g.m, g.k); }
};

// 4D phase-space field of a 2D image, same grid parameters on both axes.
// Layout [l1][l2][m1][m2].
struct PhaseField2 {
  GaborParams params;
  std::vector<cplx> data;

  PhaseField2() = default;
  explicit PhaseField2(const GaborParams& p)
      : params(p), data((size_t)p.K * p.K * p.M * p.M) {}

  size_t idx(int l1, int l2, int m1, int m2) const {
    return (((size_t)l1 * params.K + l2) * params.M + m1) * params.M + m2;
  }
  cplx& at(int l1, int l2, int m1, int m2) { return data[idx(l1, l2, m1, m2)]; }
  const cplx& at(int l1, int l2, int m1, int m2) const {
    return data[idx(l1, l2, m1, m2)];
  }
  std::vector<double> modulus() const;
};

double field_norm(const std::vector<cplx>& v);
double max_abs(const std::vector<cplx>& v);
double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b);

}  // namespace gaborflow
