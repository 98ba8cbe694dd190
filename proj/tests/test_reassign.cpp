#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gaborflow/chirp.hpp"
#include "gaborflow/erosion.hpp"
#include "gaborflow/errors.hpp"
#include "gaborflow/gabor.hpp"
#include "gaborflow/reassign.hpp"
#include "gaborflow/window.hpp"

using namespace gaborflow;

namespace {
std::vector<double> random_modulus(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> f(n);
  for (double& v : f) v = u(rng);
  return f;
}

// O(n^4) reference erosion with periodic wrapped displacements.
std::vector<double> brute_erode(const std::vector<double>& A, const GaborParams& p,
                                double t, double a, double eta) {
  auto span = [](int d, int n) {
    int r = std::abs(d) % n;
    return std::min(r, n - r);
  };
  std::vector<double> out((size_t)p.K * p.M);
  for (int l = 0; l < p.K; ++l)
    for (int m = 0; m < p.M; ++m) {
      double best = 1e300;
      for (int lp = 0; lp < p.K; ++lp)
        for (int mp = 0; mp < p.M; ++mp) {
          double dp = span(l - lp, p.K) * p.dp();
          double dq = span(m - mp, p.M) * p.dq();
          double rho2 = dp * dp / (a * a) + a * a * dq * dq;
          double kernel;
          if (eta == 1.0)
            kernel = rho2 / (4.0 * t);
          else if (eta == 0.5)
            kernel = rho2 < t * t ? 0.0 : 1e300;
          else
            kernel = (2.0 * eta - 1.0) / (2.0 * eta) *
                     std::pow(t, -1.0 / (2.0 * eta - 1.0)) *
                     std::pow(rho2, eta / (2.0 * eta - 1.0));
          best = std::min(best, A[(size_t)lp * p.M + mp] + kernel);
        }
      out[(size_t)l * p.M + m] = best;
    }
  return out;
}
}  // namespace

TEST_CASE("erosion equals the brute-force infimum") {
  GaborParams p = GaborParams::create(32, 16, 16, 32, 0.5);
  CHECK(p.K == 16);
  for (unsigned seed = 0; seed < 12; ++seed) {
    auto A = random_modulus(p.K * p.M, 900 + seed);
    for (double eta : {1.0, 0.5, 0.75}) {
      double t = eta == 0.5 ? 0.4 : 0.05;
      auto fast = erode_modulus(A, t, p.a, eta, p);
      auto ref = brute_erode(A, p, t, p.a, eta);
      for (size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(fast[i] - ref[i]) < 1e-12);
    }
  }
}

TEST_CASE("quadratic erosion at tiny time is the identity") {
  GaborParams p = GaborParams::create(32, 16, 16, 32, 0.5);
  auto A = random_modulus(p.K * p.M, 5);
  auto out = erode_modulus(A, 1e-6, p.a, 1.0, p);
  for (size_t i = 0; i < A.size(); ++i) CHECK(std::abs(out[i] - A[i]) < 1e-6);
}

TEST_CASE("flat erosion beyond the grid diameter is the global minimum") {
  GaborParams p = GaborParams::create(32, 16, 16, 32, 0.5);
  auto A = random_modulus(p.K * p.M, 6);
  double diameter = std::hypot(p.K * p.dp() / p.a, p.a * p.M * p.dq());
  auto out = erode_modulus(A, 2.0 * diameter, p.a, 0.5, p);
  double gmin = *std::min_element(A.begin(), A.end());
  for (double v : out) CHECK(v == doctest::Approx(gmin));
}

TEST_CASE("erosion never raises the modulus and keeps the peak location") {
  GaborParams p = GaborParams::create(64, 64, 64, 128, 0.125);
  Window w = make_cr_gaussian_window(p);
  PhaseField G = gabor_analysis(evaluation_chirp(p.N), w, p);
  auto mod = G.modulus();
  auto eroded = erode_modulus(mod, 0.05, p.a, 1.0, p);
  size_t arg0 = 0, arg1 = 0;
  for (size_t i = 0; i < mod.size(); ++i) {
    CHECK(eroded[i] <= mod[i] + 1e-14);
    if (mod[i] > mod[arg0]) arg0 = i;
    if (eroded[i] > eroded[arg1]) arg1 = i;
  }
  CHECK(arg0 == arg1);
}

TEST_CASE("erosion semigroup at grid resolution") {
  GaborParams p = GaborParams::create(64, 64, 64, 128, 0.125);
  Window w = make_cr_gaussian_window(p);
  PhaseField G = gabor_analysis(evaluation_chirp(p.N), w, p);
  auto mod = G.modulus();
  for (double eta : {1.0, 0.5}) {
    double t = 0.04, dt = 0.03;
    auto one = erode_modulus(mod, t + dt, p.a, eta, p);
    auto two = erode_modulus(erode_modulus(mod, t, p.a, eta, p), dt, p.a, eta, p);
    // One-cell argmin tolerance: bound by the local variation of the field.
    double grad = 0.0;
    for (int l = 0; l < p.K; ++l)
      for (int m = 0; m < p.M; ++m) {
        size_t i = (size_t)l * p.M + m;
        size_t ir = (size_t)l * p.M + (m + 1) % p.M;
        size_t id = (size_t)((l + 1) % p.K) * p.M + m;
        grad = std::max({grad, std::abs(mod[i] - mod[ir]), std::abs(mod[i] - mod[id])});
      }
    double tol = 4.0 * grad;
    for (size_t i = 0; i < one.size(); ++i) CHECK(std::abs(one[i] - two[i]) <= tol);
  }
}

TEST_CASE("erosion reassignment preserves the phase") {
  GaborParams p = GaborParams::create(64, 64, 64, 128, 0.125);
  Window w = make_cr_gaussian_window(p);
  PhaseField G = gabor_analysis(evaluation_chirp(p.N), w, p);
  ReassignParams rp;
  rp.method = ReassignMethod::erosion;
  rp.t_final = 0.05;
  rp.a = p.a;
  rp.eta = 1.0;
  PhaseField out = erosion_reassign(G, rp);
  for (size_t i = 0; i < G.data.size(); ++i) {
    if (std::abs(out.data[i]) > 1e-12 && std::abs(G.data[i]) > 1e-12) {
      cplx ratio = out.data[i] / G.data[i];
      CHECK(std::abs(std::arg(ratio)) < 1e-12);
    }
  }
}

TEST_CASE("upwind scheme trivial cases") {
  GaborParams p = GaborParams::create(32, 32, 32, 64, 0.2);
  // Constant-modulus field: velocities vanish, field unchanged.
  PhaseField G(p);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 2 * 3.14159);
  for (auto& v : G.data) v = std::polar(0.7, u(rng));
  ReassignParams rp;
  rp.t_final = 0.05;
  rp.dt = 1e-3;
  rp.a = p.a;
  PhaseField out = upwind_reassign(G, rp);
  CHECK(max_abs_diff(out.data, G.data) < 1e-12);

  // t_final = 0 is the identity.
  rp.t_final = 0.0;
  PhaseField same = upwind_reassign(G, rp);
  CHECK(max_abs_diff(same.data, G.data) == 0.0);
}

TEST_CASE("upwind scheme runs stably on the evaluation chirp") {
  GaborParams p = GaborParams::create(64, 64, 64, 128, 0.125);
  Window w = make_cr_gaussian_window(p);
  PhaseField G = gabor_analysis(evaluation_chirp(p.N), w, p);
  ReassignParams rp;
  rp.t_final = 0.1;
  rp.dt = 1e-3;
  rp.a = p.a;
  UpwindStats stats;
  PhaseField out = upwind_reassign(G, rp, &stats);
  CHECK(stats.steps == 100);
  auto back = energy_rescale(gabor_synthesis(out, w, p), evaluation_chirp(p.N));
  auto [e1, e2] = reconstruction_errors(evaluation_chirp(p.N), back);
  MESSAGE("upwind N=64 errors: ", e1, " ", e2);
  CHECK(e1 < 0.2);
  CHECK(e2 <= e1);
}

TEST_CASE("reassignment commutes with grid time-frequency shifts") {
  GaborParams p = GaborParams::create(64, 64, 64, 128, 0.125);
  Window w = make_cr_gaussian_window(p);
  PhaseField G = gabor_analysis(evaluation_chirp(p.N), w, p);
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> dl(0, p.K - 1), dm(0, p.M - 1), dk(0, p.Q - 1);
  ReassignParams up;
  up.t_final = 0.02;
  up.dt = 1e-3;
  up.a = p.a;
  ReassignParams er = up;
  er.method = ReassignMethod::erosion;
  er.eta = 1.0;
  for (int trial = 0; trial < 5; ++trial) {
    GroupElement g{dl(rng), dm(rng), dk(rng)};
    PhaseField shifted = left_translate(G, g);
    CHECK(max_abs_diff(upwind_reassign(shifted, up).data,
                       left_translate(upwind_reassign(G, up), g).data) < 1e-8);
    CHECK(max_abs_diff(erosion_reassign(shifted, er).data,
                       left_translate(erosion_reassign(G, er), g).data) < 1e-8);
  }
}

TEST_CASE("reconstruction error metrics") {
  std::vector<cplx> f{{1, 0}, {0, 2}, {-1, 1}};
  auto [z1, z2] = reconstruction_errors(f, f);
  CHECK(z1 == 0.0);
  CHECK(z2 == 0.0);
  std::vector<cplx> neg(f);
  for (auto& v : neg) v = -v;
  auto [n1, n2] = reconstruction_errors(f, neg);
  CHECK(n1 == doctest::Approx(2.0));
  CHECK(n2 == doctest::Approx(0.0));
  std::vector<cplx> zero(f.size(), cplx(0.0));
  auto [o1, o2] = reconstruction_errors(f, zero);
  CHECK(o1 == doctest::Approx(1.0));
  CHECK(o2 == doctest::Approx(1.0));
  CHECK_THROWS_AS(reconstruction_errors(zero, f), ValidationError);
}

TEST_CASE("energy rescale") {
  std::vector<cplx> f{{3, 0}, {0, 4}};
  std::vector<cplx> g{{1, 0}, {0, 0}};
  auto out = energy_rescale(g, f);
  double ef = 0.0, eo = 0.0;
  for (auto& v : f) ef += std::norm(v);
  for (auto& v : out) eo += std::norm(v);
  CHECK(eo == doctest::Approx(ef));
  auto same = energy_rescale(f, f);
  CHECK(max_abs_diff(same, f) < 1e-15);
  std::vector<cplx> zero(2, cplx(0.0));
  CHECK_THROWS_AS(energy_rescale(zero, f), ValidationError);
  auto z = energy_rescale(f, zero);
  CHECK(max_abs(z) == 0.0);
}
