#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gaborflow/erosion.hpp"
#include "gaborflow/gabor.hpp"
#include "gaborflow/image2d.hpp"
#include "gaborflow/phantom.hpp"
#include "gaborflow/window.hpp"

using namespace gaborflow;

namespace {
constexpr double pi = std::numbers::pi;

std::vector<double> plane_wave(int size, double q1, double q2, double amp = 1.0,
                               double bias = 0.0) {
  std::vector<double> img((size_t)size * size);
  for (int y = 0; y < size; ++y)
    for (int x = 0; x < size; ++x)
      img[(size_t)y * size + x] = bias + amp * std::cos(2 * pi * (q1 * x + q2 * y));
  return img;
}
}  // namespace

TEST_CASE("separable 2D analysis equals the direct double sum") {
  GaborParams p = GaborParams::create(16, 8, 8, 16, 0.4);  // L=2, P=4
  Window w = make_gaussian_window(p);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> img((size_t)p.N * p.N);
  for (double& v : img) v = u(rng);
  PhaseField2 G = gabor2d_analysis(img, p.N, w, p);
  // direct O(N^4): G[l1,l2,m1,m2] = (1/N^2) e^{2pi i(l1 m1 + l2 m2)/P}
  //   sum_{x,y} conj(w[x-l1 L] w[y-l2 L]) img[y,x] e^{-2pi i (x m1 + y m2)/M}
  for (int l1 = 0; l1 < p.K; l1 += 3)
    for (int l2 = 0; l2 < p.K; l2 += 2)
      for (int m1 = 0; m1 < p.M; m1 += 3)
        for (int m2 = 0; m2 < p.M; m2 += 2) {
          cplx acc = 0.0;
          for (int y = 0; y < p.N; ++y)
            for (int x = 0; x < p.N; ++x) {
              cplx ww = std::conj(w(x - l1 * p.L) * w(y - l2 * p.L));
              double ph = -2.0 * pi * (double(x) * m1 + double(y) * m2) / p.M;
              acc += ww * img[(size_t)y * p.N + x] * std::polar(1.0, ph);
            }
          acc /= double(p.N) * p.N;
          acc *= std::polar(1.0, 2.0 * pi * (double(l1) * m1 + double(l2) * m2) / p.P);
          CHECK(std::abs(acc - G.at(l1, l2, m1, m2)) < 1e-12);
        }
  // zero image maps to zero
  std::vector<double> zero((size_t)p.N * p.N, 0.0);
  CHECK(max_abs(gabor2d_analysis(zero, p.N, w, p).data) == 0.0);
}

TEST_CASE("plane wave concentrates at its frequency") {
  GaborParams p = GaborParams::create(64, 32, 32, 64, 0.25);  // L=2, P=16
  Window w = make_gaussian_window(p);
  // on-grid frequency: bins are (K/P)/N = 1/32 cycles/px
  double q1 = 5.0 / 32.0, q2 = 3.0 / 32.0;
  auto img = plane_wave(p.N, q1, q2);
  PhaseField2 G = gabor2d_analysis(img, p.N, w, p);
  FrequencyField F = frequency_field(G, 2.0, FreqRefine::argmax);
  for (int i = 4; i < p.K - 4; ++i)
    for (int j = 4; j < p.K - 4; ++j) {
      const Vec2& q = F.at(i, j);
      CHECK(q[0] == doctest::Approx(q1).epsilon(1e-12));
      CHECK(q[1] == doctest::Approx(q2).epsilon(1e-12));
    }
}

TEST_CASE("center-of-mass refinement resolves off-grid frequencies") {
  GaborParams p = GaborParams::create(64, 32, 32, 64, 0.25);
  Window w = make_gaussian_window(p);
  // periodic on the image (q N integer) but half a bin off the grid
  double q1 = 11.0 / 64.0, q2 = 5.0 / 64.0;
  auto img = plane_wave(p.N, q1, q2);
  PhaseField2 G = gabor2d_analysis(img, p.N, w, p);
  FrequencyField F = frequency_field(G, 2.0, FreqRefine::center_of_mass);
  double bin = 1.0 / 32.0;
  for (int i = 8; i < p.K - 8; ++i)
    for (int j = 8; j < p.K - 8; ++j) {
      const Vec2& q = F.at(i, j);
      CHECK(std::abs(q[0] - q1) < 0.25 * bin);
      CHECK(std::abs(q[1] - q2) < 0.25 * bin);
    }
}

TEST_CASE("sign canonicalization is conjugation invariant") {
  GaborParams p = GaborParams::create(32, 16, 16, 32, 0.4);
  Window w = make_gaussian_window(p);
  auto img = plane_wave(p.N, -3.0 / 16.0, 0.0);  // negative q1, zero q2
  PhaseField2 G = gabor2d_analysis(img, p.N, w, p);
  FrequencyField F = frequency_field(G, 1.5, FreqRefine::argmax);
  for (int i = 3; i < p.K - 3; ++i)
    for (int j = 3; j < p.K - 3; ++j) {
      const Vec2& q = F.at(i, j);
      // canonical representative: q2 > 0, or q2 == 0 with q1 > 0
      CHECK((q[1] > 0.0 || (q[1] == 0.0 && q[0] > 0.0)));
    }
}

TEST_CASE("4D erosion equals brute force on a small field") {
  GaborParams p = GaborParams::create(16, 8, 8, 16, 0.6);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> A((size_t)p.K * p.K * p.M * p.M);
  for (double& v : A) v = u(rng);
  double t = 0.08, a = 1.0;
  auto fast = erode_modulus_2d(A, t, a, p);
  auto span = [](int d, int n) {
    int r = std::abs(d) % n;
    return std::min(r, n - r);
  };
  const double dpc = p.dp(), dqc = p.dq();
  for (int l1 = 0; l1 < p.K; ++l1)
    for (int l2 = 0; l2 < p.K; ++l2)
      for (int m1 = 0; m1 < p.M; ++m1)
        for (int m2 = 0; m2 < p.M; ++m2) {
          double best = 1e300;
          for (int s1 = 0; s1 < p.K; ++s1)
            for (int s2 = 0; s2 < p.K; ++s2)
              for (int n1 = 0; n1 < p.M; ++n1)
                for (int n2 = 0; n2 < p.M; ++n2) {
                  double dp1 = span(l1 - s1, p.K) * dpc, dp2 = span(l2 - s2, p.K) * dpc;
                  double dq1 = span(m1 - n1, p.M) * dqc, dq2 = span(m2 - n2, p.M) * dqc;
                  double kern = ((dp1 * dp1 + dp2 * dp2) / (a * a) +
                                 a * a * (dq1 * dq1 + dq2 * dq2)) /
                                (4.0 * t);
                  double v = A[(((size_t)s1 * p.K + s2) * p.M + n1) * p.M + n2] + kern;
                  best = std::min(best, v);
                }
          CHECK(std::abs(best - fast[(((size_t)l1 * p.K + l2) * p.M + m1) * p.M + m2]) <
                1e-12);
        }
}

TEST_CASE("2D reassignment keeps the phase and concentrates the modulus") {
  GaborParams p = GaborParams::create(32, 16, 16, 32, 1.0);  // L=2, a=1
  Window w = make_gaussian_window(p);
  // two localized oscillating patches
  std::vector<double> img((size_t)p.N * p.N);
  for (int y = 0; y < p.N; ++y)
    for (int x = 0; x < p.N; ++x) {
      double g1 = std::exp(-((x - 10.0) * (x - 10.0) + (y - 12.0) * (y - 12.0)) / 50.0);
      double g2 = std::exp(-((x - 22.0) * (x - 22.0) + (y - 20.0) * (y - 20.0)) / 40.0);
      img[(size_t)y * p.N + x] = g1 * std::cos(2 * pi * (6.0 * x + 2.0 * y) / p.N) +
                                 g2 * std::cos(2 * pi * (2.0 * x - 5.0 * y) / p.N);
    }
  PhaseField2 G = gabor2d_analysis(img, p.N, w, p);
  PhaseField2 out = reassign2d(G, 0.3, 1.0);
  for (size_t i = 0; i < G.data.size(); ++i) {
    if (std::abs(out.data[i]) > 1e-12 && std::abs(G.data[i]) > 1e-12)
      CHECK(std::abs(std::arg(out.data[i] / G.data[i])) < 1e-12);
  }
  auto count_above = [](const PhaseField2& F) {
    double mx = max_abs(F.data);
    long n = 0;
    for (const cplx& z : F.data)
      if (std::abs(z) > 0.5 * mx) ++n;
    return n;
  };
  long c0 = count_above(G);
  long prev = c0;
  for (double t : {0.5, 1.5, 4.0}) {
    long c = count_above(reassign2d(G, t, 1.0));
    CHECK(c < prev);
    prev = c;
  }
}

TEST_CASE("deformation gradient recovers affine motion exactly") {
  // Analytic frequency fields under an affine map: q_t = A^{-T} q_0.
  const int K = 8;
  Mat2 A{1.08, 0.12, -0.06, 0.95};
  double det = A[0] * A[3] - A[1] * A[2];
  Mat2 AinvT{A[3] / det, -A[2] / det, -A[1] / det, A[0] / det};
  std::vector<FrequencyField> prev(3), cur(3);
  std::array<Vec2, 3> q0{{{0.10, 0.02}, {0.03, 0.12}, {-0.08, 0.09}}};
  for (int d = 0; d < 3; ++d) {
    FrequencyField F;
    F.K = K;
    F.L = 4;
    F.size = 64;
    F.offset = 2;
    F.q.assign((size_t)K * K, q0[d]);
    F.valid.assign((size_t)K * K, 1);
    prev[d] = F;
    Vec2 qt{AinvT[0] * q0[d][0] + AinvT[1] * q0[d][1],
            AinvT[2] * q0[d][0] + AinvT[3] * q0[d][1]};
    F.q.assign((size_t)K * K, qt);
    cur[d] = F;
  }
  DeformationGradientField D = deformation_gradient(cur, prev);
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) {
      REQUIRE(D.valid[(size_t)i * K + j]);
      const Mat2& m = D.at(i, j);
      for (int k = 0; k < 4; ++k) CHECK(std::abs(m[k] - A[k]) < 1e-10);
    }
  // identity motion
  DeformationGradientField I2 = deformation_gradient(prev, prev);
  for (int i = 0; i < K * K; ++i) {
    CHECK(std::abs(I2.D[i][0] - 1.0) < 1e-12);
    CHECK(std::abs(I2.D[i][1]) < 1e-12);
    CHECK(std::abs(I2.D[i][2]) < 1e-12);
    CHECK(std::abs(I2.D[i][3] - 1.0) < 1e-12);
  }
}

TEST_CASE("two orthogonal directions match the closed-form solve") {
  const int K = 4;
  std::vector<FrequencyField> prev(2), cur(2);
  Vec2 e1{0.1, 0.0}, e2{0.0, 0.1};
  Mat2 A{1.1, 0.05, -0.02, 0.9};
  double det = A[0] * A[3] - A[1] * A[2];
  Mat2 AinvT{A[3] / det, -A[2] / det, -A[1] / det, A[0] / det};
  auto map = [&](const Vec2& q) {
    return Vec2{AinvT[0] * q[0] + AinvT[1] * q[1], AinvT[2] * q[0] + AinvT[3] * q[1]};
  };
  for (int d = 0; d < 2; ++d) {
    FrequencyField F;
    F.K = K;
    F.L = 1;
    F.size = 8;
    F.offset = 0;
    Vec2 q = d == 0 ? e1 : e2;
    F.q.assign((size_t)K * K, q);
    F.valid.assign((size_t)K * K, 1);
    prev[d] = F;
    F.q.assign((size_t)K * K, map(q));
    cur[d] = F;
  }
  DeformationGradientField D = deformation_gradient(cur, prev);
  // closed form: rows of Qt are the mapped frequencies; D = Qt^{-1} Qp
  Vec2 r1 = map(e1), r2 = map(e2);
  double dq = r1[0] * r2[1] - r1[1] * r2[0];
  Mat2 closed{(r2[1] * e1[0] - r1[1] * e2[0]) / dq, (r2[1] * e1[1] - r1[1] * e2[1]) / dq,
              (-r2[0] * e1[0] + r1[0] * e2[0]) / dq, (-r2[0] * e1[1] + r1[0] * e2[1]) / dq};
  for (int k = 0; k < 4; ++k) CHECK(std::abs(D.D[0][k] - closed[k]) < 1e-12);
}

TEST_CASE("deformation net: static and rigid-rotation oracles") {
  const int K = 16, size = 64, rings = 3, points = 12;
  // D = I everywhere, static seed: net identical across frames.
  DeformationGradientField I;
  I.K = K;
  I.L = 4;
  I.size = size;
  I.offset = 1;
  I.D.assign((size_t)K * K, Mat2{1, 0, 0, 1});
  I.condition.assign((size_t)K * K, 1.0);
  I.valid.assign((size_t)K * K, 1);
  std::vector<Vec2> grid0;
  for (int r = 0; r < rings; ++r)
    for (int j = 0; j < points; ++j) {
      double rho = 20.0 - 4.0 * r;
      double th = 2 * pi * j / points;
      grid0.push_back({32 + rho * std::cos(th), 32 + rho * std::sin(th)});
    }
  std::vector<Vec2> seed(4, grid0[0]);
  DeformationNet net = deformation_net({I, I, I}, seed, grid0, rings, points, size);
  for (int t = 1; t < 4; ++t)
    for (int r = 0; r < rings; ++r)
      for (int j = 0; j < points; ++j) {
        CHECK(std::abs(net.at(t, r, j)[0] - grid0[(size_t)r * points + j][0]) < 1e-9);
        CHECK(std::abs(net.at(t, r, j)[1] - grid0[(size_t)r * points + j][1]) < 1e-9);
      }

  // rigid rotation by a fixed angle per frame with the exact gradient
  double w = 0.07;
  Mat2 R{std::cos(w), -std::sin(w), std::sin(w), std::cos(w)};
  DeformationGradientField DR = I;
  DR.D.assign((size_t)K * K, R);
  auto rotate = [&](const Vec2& v, double ang) {
    double cx = v[0] - 32, cy = v[1] - 32;
    return Vec2{32 + std::cos(ang) * cx - std::sin(ang) * cy,
                32 + std::sin(ang) * cx + std::cos(ang) * cy};
  };
  std::vector<Vec2> seed2(4);
  for (int t = 0; t < 4; ++t) seed2[t] = rotate(grid0[0], w * t);
  DeformationNet net2 = deformation_net({DR, DR, DR}, seed2, grid0, rings, points, size);
  for (int t = 1; t < 4; ++t)
    for (int r = 0; r < rings; ++r)
      for (int j = 0; j < points; ++j) {
        Vec2 expect = rotate(grid0[(size_t)r * points + j], w * t);
        CHECK(std::abs(net2.at(t, r, j)[0] - expect[0]) < 1e-6);
        CHECK(std::abs(net2.at(t, r, j)[1] - expect[1]) < 1e-6);
      }
}

TEST_CASE("phantom: identity deformation gives static tags") {
  PhantomSpec spec;
  spec.size = 32;
  spec.frames = 3;
  spec.n_dirs = 2;
  spec.motion = PhantomMotion::identity;
  spec.fade_per_frame = 0.0;
  Phantom ph = make_phantom(spec);
  for (int t = 1; t < spec.frames; ++t)
    for (int d = 0; d < spec.n_dirs; ++d) {
      const auto& a = ph.stack.image(0, d);
      const auto& b = ph.stack.image(t, d);
      for (size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-12);
    }
  // truth is the initial grid at all frames
  for (int t = 0; t < spec.frames; ++t)
    for (size_t i = 0; i < ph.grid0.size(); ++i) {
      CHECK(ph.truth[t][i][0] == doctest::Approx(ph.grid0[i][0]));
      CHECK(ph.truth[t][i][1] == doctest::Approx(ph.grid0[i][1]));
    }
}

TEST_CASE("reassign2d commutes with a quarter turn about the window center") {
  GaborParams p = GaborParams::create(16, 8, 8, 16, 1.0);
  Window w = make_gaussian_window(p);
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> img((size_t)p.N * p.N);
  for (double& v : img) v = u(rng);
  // quarter turn about the window-center pixel c, periodic:
  // (x, y) -> (y, (2c - x) mod N); this maps the cell lattice to itself.
  const int c = (p.N - 1) / 2;
  std::vector<double> rot(img.size());
  for (int y = 0; y < p.N; ++y)
    for (int x = 0; x < p.N; ++x) {
      int xr = y, yr = mod_floor(2 * c - x, p.N);
      rot[(size_t)yr * p.N + xr] = img[(size_t)y * p.N + x];
    }
  double t = 0.25;
  auto ma = reassign2d(gabor2d_analysis(img, p.N, w, p), t, 1.0).modulus();
  auto mb = reassign2d(gabor2d_analysis(rot, p.N, w, p), t, 1.0).modulus();
  // |G_rot|(l2, -l1, m2, -m1) == |G|(l1, l2, m1, m2)
  double worst = 0.0;
  for (int l1 = 0; l1 < p.K; ++l1)
    for (int l2 = 0; l2 < p.K; ++l2)
      for (int m1 = 0; m1 < p.M; ++m1)
        for (int m2 = 0; m2 < p.M; ++m2) {
          size_t src = (((size_t)l1 * p.K + l2) * p.M + m1) * p.M + m2;
          size_t dst = (((size_t)l2 * p.K + mod_floor(-l1, p.K)) * p.M + m2) * p.M +
                       mod_floor(-m1, p.M);
          worst = std::max(worst, std::abs(mb[dst] - ma[src]));
        }
  CHECK(worst < 1e-10);
}
