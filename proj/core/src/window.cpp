#include "gaborflow/window.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "gaborflow/errors.hpp"
#include "gaborflow/gabor.hpp"
#include "gaborflow/invariant.hpp"

namespace gaborflow {

double Window::l2_norm() const {
  double s = 0.0;
  for (const auto& z : samples) s += std::norm(z);
  return std::sqrt(s);
}

double gaussian_window_sample(int n, int N, double a) {
  const int c = (N - 1) / 2;
  const double d = std::abs(n) - c;
  return std::exp(-d * d * std::numbers::pi / (double(N) * N * a * a));
}

Window make_gaussian_window(const GaborParams& p) {
  Window w;
  w.kind = WindowKind::sampled_gaussian;
  w.a = p.a;
  w.samples.resize(p.N);
  for (int n = 0; n < p.N; ++n) w.samples[n] = gaussian_window_sample(n, p.N, p.a);
  return w;
}

Window make_cr_gaussian_window(const GaborParams& p) {
  Window w;
  w.kind = WindowKind::sampled_gaussian;
  w.a = p.a;
  w.samples.resize(p.N);
  for (int n = 0; n < p.N; ++n) {
    int nn = n < (p.N + 1) / 2 ? n : n - p.N;
    double x = double(nn) / p.N;
    w.samples[n] = std::exp(-std::numbers::pi * x * x / (p.a * p.a));
  }
  return w;
}

namespace {

// Residual of the centered Cauchy-Riemann operator on the analysis field of a
// delta signal, for a given candidate window.
std::vector<cplx> cr_constraint_column(const Window& w, const std::vector<cplx>& delta,
                                       const GaborParams& p) {
  PhaseField G = gabor_analysis(delta, w, p);
  PhaseField d2f = diff_phase(G, Axis::frequency, Dir::forward);
  PhaseField d2b = diff_phase(G, Axis::frequency, Dir::backward);
  PhaseField d1f = diff_phase(G, Axis::spatial, Dir::forward);
  PhaseField d1b = diff_phase(G, Axis::spatial, Dir::backward);
  const cplx ia(0.0, p.a);
  PhaseField res(p);
  for (size_t i = 0; i < res.data.size(); ++i)
    res.data[i] = (d2f.data[i] + d2b.data[i]) / p.a + ia * (d1f.data[i] + d1b.data[i]);
  // For the delta at 0 the residual factors as e^{2 pi i l m / N} rho[-l];
  // the m = 0 column carries every distinct row of the constraint operator.
  std::vector<cplx> col(p.K);
  for (int l = 0; l < p.K; ++l) col[l] = res.at(l, 0);
  return col;
}

}  // namespace

Window make_discrete_cr_window(const GaborParams& p) {
  if (p.K != p.N || p.M != p.N || p.L != 1)
    throw ValidationError("cr-window-requires-extreme-oversampling");
  const int N = p.N;

  std::vector<cplx> delta(N, cplx(0.0));
  delta[0] = 1.0;

  // Column c of the constraint operator = residual pattern of the basis
  // window e_c. The analysis map is antilinear in the window, so the
  // nullvector solves A conj(psi) = 0.
  Eigen::MatrixXcd A(N, N);
  Window basis;
  basis.kind = WindowKind::discrete_cr;
  basis.a = p.a;
  basis.samples.assign(N, cplx(0.0));
  for (int c = 0; c < N; ++c) {
    basis.samples[c] = 1.0;
    std::vector<cplx> col = cr_constraint_column(basis, delta, p);
    for (int d = 0; d < N; ++d) A(d, c) = col[d];
    basis.samples[c] = 0.0;
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  int nulldim = 0;
  while (nulldim < N && sv(N - 1 - nulldim) <= 1e-8 * smax) ++nulldim;
  // The centered differences admit the smooth solution plus one
  // checkerboard-modulated ghost.
  if (nulldim < 1 || nulldim > 2) throw ComputationError("cr-nullspace-degenerate");

  // Project the sampled CR Gaussian onto the nullspace to pick the smooth
  // solution; the map window -> residual is antilinear, so columns of V are
  // conj(psi).
  Window guide = make_cr_gaussian_window(p);
  Eigen::VectorXcd g(N);
  for (int n = 0; n < N; ++n) g(n) = std::conj(guide.samples[n]);
  Eigen::VectorXcd null = Eigen::VectorXcd::Zero(N);
  for (int j = 0; j < nulldim; ++j) {
    Eigen::VectorXcd v = svd.matrixV().col(N - 1 - j);
    null += v * v.dot(g);
  }
  if (null.norm() < 1e-6) throw ComputationError("cr-nullspace-degenerate");

  Window w;
  w.kind = WindowKind::discrete_cr;
  w.a = p.a;
  w.samples.resize(N);
  for (int n = 0; n < N; ++n) w.samples[n] = std::conj(null(n));

  // Fix the global phase: center sample (index 0) real positive, then unit
  // l2 norm.
  cplx ph = w.samples[0];
  if (std::abs(ph) == 0.0) throw ComputationError("cr-nullspace-degenerate");
  ph /= std::abs(ph);
  double norm = w.l2_norm();
  for (auto& z : w.samples) z = z / ph / norm;
  return w;
}

}  // namespace gaborflow
