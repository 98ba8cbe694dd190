#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gaborflow/chirp.hpp"
#include "gaborflow/gabor.hpp"
#include "gaborflow/invariant.hpp"
#include "gaborflow/window.hpp"

using namespace gaborflow;

namespace {
constexpr double pi = std::numbers::pi;

PhaseField random_field(const GaborParams& p, unsigned seed) {
  PhaseField G(p);
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss;
  for (auto& v : G.data) v = cplx(gauss(rng), gauss(rng));
  return G;
}

// Clean quotient grid: L and K/P even, so the half-angle section has no seam.
GaborParams clean_params() { return GaborParams::create(64, 16, 32, 32, 0.3); }
}  // namespace

TEST_CASE("constant field is annihilated by the frequency difference") {
  GaborParams p = GaborParams::create(32, 16, 16, 32, 0.3);
  PhaseField G(p);
  for (auto& v : G.data) v = cplx(0.7, -0.2);
  for (Dir d : {Dir::forward, Dir::backward}) {
    PhaseField out = diff_phase(G, Axis::frequency, d);
    for (auto& v : out.data) CHECK(std::abs(v) < 1e-14);
  }
}

TEST_CASE("phase axis difference is a scalar multiplication") {
  GaborParams p = GaborParams::create(32, 16, 16, 32, 0.3);
  PhaseField G = random_field(p, 5);
  cplx factor_f = double(p.Q) * (std::polar(1.0, -2.0 * pi / p.Q) - 1.0);
  cplx factor_b = double(p.Q) * (1.0 - std::polar(1.0, 2.0 * pi / p.Q));
  PhaseField df = diff_phase(G, Axis::phase, Dir::forward);
  PhaseField db = diff_phase(G, Axis::phase, Dir::backward);
  for (size_t i = 0; i < G.data.size(); ++i) {
    CHECK(std::abs(df.data[i] - factor_f * G.data[i]) < 1e-12);
    CHECK(std::abs(db.data[i] - factor_b * G.data[i]) < 1e-12);
  }
}

TEST_CASE("zero field maps to zero") {
  GaborParams p = clean_params();
  PhaseField G(p);
  GroupField W(p);
  for (Axis a : {Axis::spatial, Axis::frequency, Axis::phase})
    for (Dir d : {Dir::forward, Dir::backward}) {
      CHECK(max_abs(diff_phase(G, a, d).data) == 0.0);
      CHECK(max_abs(diff_group(W, a, d).data) == 0.0);
    }
}

TEST_CASE("section conjugation identity on a clean quotient grid") {
  GaborParams p = clean_params();
  PhaseField G = random_field(p, 11);
  GroupField W = apply_s_inverse(G);
  for (Axis a : {Axis::spatial, Axis::frequency, Axis::phase})
    for (Dir d : {Dir::forward, Dir::backward}) {
      PhaseField lhs = apply_s(diff_group(W, a, d));
      PhaseField rhs = diff_phase(G, a, d);
      double scale = std::max(1.0, max_abs(rhs.data));
      CHECK(max_abs_diff(lhs.data, rhs.data) < 1e-12 * scale);
    }
}

TEST_CASE("left invariance of the differences") {
  GaborParams p = GaborParams::create(32, 32, 32, 64, 0.2);  // L = 1 grid
  PhaseField G = random_field(p, 13);
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> dl(0, p.K - 1), dm(0, p.M - 1), dk(0, p.Q - 1);
  for (int trial = 0; trial < 6; ++trial) {
    GroupElement g{dl(rng), dm(rng), dk(rng)};
    for (Axis a : {Axis::spatial, Axis::frequency})
      for (Dir d : {Dir::forward, Dir::backward}) {
        PhaseField lhs = diff_phase(left_translate(G, g), a, d);
        PhaseField rhs = left_translate(diff_phase(G, a, d), g);
        double scale = std::max(1.0, max_abs(rhs.data));
        CHECK(max_abs_diff(lhs.data, rhs.data) < 1e-12 * scale);
      }
  }
  // Group-side invariance with exact group arithmetic.
  GaborParams pc = clean_params();
  PhaseField Gc = random_field(pc, 14);
  GroupField W = apply_s_inverse(Gc);
  GroupElement g{3, 5, 7};
  for (Axis a : {Axis::spatial, Axis::frequency}) {
    GroupField lhs = diff_group(left_translate(W, g), a, Dir::forward);
    GroupField rhs = left_translate(diff_group(W, a, Dir::forward), g);
    double scale = std::max(1.0, max_abs(rhs.data));
    CHECK(max_abs_diff(lhs.data, rhs.data) < 1e-12 * scale);
  }
}

TEST_CASE("forward and backward differences are adjoint up to sign") {
  GaborParams p = clean_params();
  PhaseField F = random_field(p, 19), G = random_field(p, 23);
  for (Axis a : {Axis::spatial, Axis::frequency}) {
    PhaseField DF = diff_phase(F, a, Dir::forward);
    PhaseField DG = diff_phase(G, a, Dir::backward);
    cplx lhs = 0.0, rhs = 0.0;
    for (size_t i = 0; i < F.data.size(); ++i) {
      lhs += std::conj(DF.data[i]) * G.data[i];
      rhs += std::conj(F.data[i]) * DG.data[i];
    }
    CHECK(std::abs(lhs + rhs) < 1e-9 * std::max(std::abs(lhs), 1.0));
  }
}

namespace {
// Exact left-invariant spatial derivative of the scaled chirp transform,
// aligned with the discrete grid conventions of chirp_grid_reference.
cplx aligned_continuous_a1(const ChirpParams& c, const GaborParams& p, int n0, int l,
                           int m) {
  ChirpGaborForm unit = chirp_gabor_exact({c.b / p.a, c.r * p.a * p.a});
  double pt = double(l) / p.K - double(n0) / p.N;
  pt -= std::round(pt);
  int mh = m < (p.M + 1) / 2 ? m : m - p.M;
  double qt = double(mh) * p.K / p.P;
  double xs = pt / p.a, ys = p.a * qt;
  cplx g1 = unit.prefactor * std::exp(unit.B.quad(xs, ys));
  // d/dp [a g1(p/a, a q)] = (d1 g1)(p/a, a q)
  cplx dg = g1 * 2.0 * (unit.B.a11 * xs + unit.B.a12 * ys);
  cplx a1g = dg - cplx(0.0, 2.0 * pi * qt) * p.a * g1;
  double phase = 2.0 * pi * (double(l) * mh / (2.0 * p.P) +
                             (double(mh) / p.M) * (0.25 * p.N - n0));
  return std::polar(1.0, phase) * std::polar(1.0, -pi * pt * qt) * a1g;
}
}  // namespace

TEST_CASE("spatial difference of the chirp field approaches the continuous one") {
  ChirpParams c{0.5, 1.0};
  auto err = [&](int N) {
    GaborParams p = GaborParams::create(N, N, N, 2 * N, 1.0 / 8.0);
    Window w = make_cr_gaussian_window(p);
    PhaseField G = gabor_analysis(chirp_signal(c, N, N / 2), w, p);
    PhaseField D = diff_phase(G, Axis::spatial, Dir::forward);
    double worst = 0.0;
    for (int l = 0; l < p.K; ++l) {
      double pt = double(l) / p.K - 0.5;
      pt -= std::round(pt);
      if (std::abs(pt) > 0.25) continue;
      for (int m = 0; m < p.M; ++m)
        worst = std::max(worst, std::abs(D.at(l, m) - aligned_continuous_a1(c, p, N / 2, l, m)));
    }
    return worst;
  };
  double e64 = err(64), e128 = err(128);
  MESSAGE("A1 consistency: N=64 ", e64, "  N=128 ", e128);
  CHECK(e128 < e64);
  CHECK(e128 < 0.6 * e64);  // first-order truncation
}

TEST_CASE("commutator of the horizontal differences approaches the vertical one") {
  ChirpParams c{0.5, 1.0};
  auto err = [&](int N) {
    GaborParams p = GaborParams::create(N, N, N, 2 * N, 1.0 / 8.0);
    Window w = make_cr_gaussian_window(p);
    PhaseField G = gabor_analysis(chirp_signal(c, N, N / 2), w, p);
    PhaseField ab = diff_phase(diff_phase(G, Axis::frequency, Dir::forward), Axis::spatial,
                               Dir::forward);
    PhaseField ba = diff_phase(diff_phase(G, Axis::spatial, Dir::forward), Axis::frequency,
                               Dir::forward);
    // [A1, A2] should approach -A3 = +2 pi i on the phase-space section.
    double worst = 0.0;
    for (int l = 0; l < p.K; ++l) {
      double pt = double(l) / p.K - 0.5;
      pt -= std::round(pt);
      if (std::abs(pt) > 0.25) continue;
      for (int m = 0; m < p.M; ++m) {
        cplx comm = ab.at(l, m) - ba.at(l, m);
        worst = std::max(worst, std::abs(comm - cplx(0.0, 2.0 * pi) * G.at(l, m)));
      }
    }
    return worst;
  };
  double e64 = err(64), e128 = err(128);
  MESSAGE("commutator consistency: N=64 ", e64, "  N=128 ", e128);
  CHECK(e128 < e64);
}

TEST_CASE("CR residual of the sampled gaussian decreases with N") {
  ChirpParams c{0.5, 1.0};
  auto residual = [&](int N) {
    GaborParams p = GaborParams::create(N, N, N, 2 * N, 1.0 / 8.0);
    Window w = make_cr_gaussian_window(p);
    PhaseField G = gabor_analysis(chirp_signal(c, N, N / 2), w, p);
    return cr_residual(G, p.a);
  };
  double r64 = residual(64), r128 = residual(128);
  MESSAGE("gaussian CR residual: N=64 ", r64, "  N=128 ", r128);
  CHECK(r128 < r64);
  CHECK(r64 > 1e-10);  // small but genuinely nonzero

  GaborParams p = GaborParams::create(32, 32, 32, 64, 0.2);
  PhaseField zero(p);
  CHECK(cr_residual(zero, p.a) == 0.0);
}

TEST_CASE("default metric balance makes the grid square") {
  GaborParams p = GaborParams::create(64, 16, 32, 64, 0.3);
  double bsq = default_beta_sq(p);
  CHECK(bsq * p.dp() == doctest::Approx(p.dq()));
}
