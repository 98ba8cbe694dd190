#include "gaborflow/chirp.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>

#include "gaborflow/errors.hpp"

namespace gaborflow {

namespace {
constexpr double pi = std::numbers::pi;
}

std::vector<cplx> chirp_signal(const ChirpParams& c, int N, int n0) {
  if (!(c.b > 0.0)) throw ValidationError("chirp: b must be positive");
  std::vector<cplx> f(N);
  for (int n = 0; n < N; ++n) {
    double xi = double(n - n0) / N;
    f[n] = std::exp(-xi * xi / (2.0 * c.b * c.b)) * std::polar(1.0, pi * c.r * xi * xi);
  }
  return f;
}

cplx ChirpGaborForm::eval(double p, double q, double s) const {
  return prefactor * std::polar(1.0, -2.0 * pi * (s + 0.5 * p * q)) *
         std::exp(B.quad(p, q));
}

double ChirpGaborForm::re(int i, int j) const {
  if (i == 0 && j == 0) return B.a11.real();
  if (i == 1 && j == 1) return B.a22.real();
  return B.a12.real();
}

ChirpGaborForm chirp_gabor_exact(const ChirpParams& c) {
  if (!(c.b > 0.0)) throw ValidationError("chirp: b must be positive");
  const double b2 = c.b * c.b, b4 = b2 * b2, r = c.r;
  const double d = r * r * b4 + (0.5 / pi + b2) * (0.5 / pi + b2);

  ChirpGaborForm form;
  form.c = c;
  // Gaussian integral of e^{w xi^2 + u xi + t0} with
  // w = i pi r - 1/(2 b^2) - pi: prefactor sqrt(pi / -w).
  const cplx w(-0.5 / b2 - pi, pi * r);
  form.prefactor = std::sqrt(pi / (-w));

  Mat2c B;
  B.a11 = cplx(-0.5 * (b2 + 0.5 / pi) - pi * r * r * b4, pi * r * b4) / d;
  B.a12 = cplx(pi * r * b4, 0.25 / pi + 0.5 * b2 + pi * r * r * b4) / d;
  B.a22 = cplx(-pi * b2 * (b2 + 0.5 / pi), -pi * r * b4) / d;
  form.B = B;
  return form;
}

cplx chirp_gabor_scaled(const ChirpParams& c, double a, double p, double q, double s) {
  if (!(a > 0.0)) throw ValidationError("chirp: a must be positive");
  ChirpGaborForm unit = chirp_gabor_exact({c.b / a, c.r * a * a});
  return a * unit.eval(p / a, a * q, s);
}

EigenFrame eigenframe(const ChirpGaborForm& form) {
  const double a11 = form.re(0, 0), a12 = form.re(0, 1), a22 = form.re(1, 1);
  const double mean = 0.5 * (a11 + a22);
  const double disc = std::sqrt(0.25 * (a11 - a22) * (a11 - a22) + a12 * a12);
  double lam_a = mean + disc, lam_b = mean - disc;
  if (std::abs(lam_a - lam_b) < 1e-12 * std::max(std::abs(lam_a), std::abs(lam_b)))
    throw ComputationError("degenerate-spectrum");

  auto unit_eigenvector = [&](double lam) -> std::array<double, 2> {
    // The row of (A - lam I) with the larger norm gives the stabler solve.
    double r1x = a11 - lam, r1y = a12;
    double r2x = a12, r2y = a22 - lam;
    double n1 = r1x * r1x + r1y * r1y, n2 = r2x * r2x + r2y * r2y;
    double vx, vy;
    if (n1 >= n2) {
      vx = -r1y;
      vy = r1x;
    } else {
      vx = -r2y;
      vy = r2x;
    }
    double n = std::hypot(vx, vy);
    vx /= n;
    vy /= n;
    double lead = std::abs(vx) > 1e-14 ? vx : vy;
    if (lead < 0) {
      vx = -vx;
      vy = -vy;
    }
    return {vx, vy};
  };

  EigenFrame fr;
  if (std::abs(lam_a) <= std::abs(lam_b)) {
    fr.lambda1 = lam_a;
    fr.lambda2 = lam_b;
  } else {
    fr.lambda1 = lam_b;
    fr.lambda2 = lam_a;
  }
  fr.k1 = unit_eigenvector(fr.lambda1);
  fr.k2 = unit_eigenvector(fr.lambda2);
  return fr;
}

double quartic_eval(const EigenFrame& fr, double p, double q, double t, double lambda) {
  const double u = fr.lambda1, v = fr.lambda2;
  const double c1 = fr.lambda1 * fr.alpha1(p, q), c2 = fr.lambda2 * fr.alpha2(p, q);
  const double lu = lambda - u, lv = lambda - v;
  return t * t * lu * lu * lv * lv - c1 * c1 * lv * lv - c2 * c2 * lu * lu;
}

double quartic_scale(const EigenFrame& fr, double p, double q, double t) {
  const double c1 = fr.lambda1 * fr.alpha1(p, q), c2 = fr.lambda2 * fr.alpha2(p, q);
  const double lam = std::max(std::abs(fr.lambda1), std::abs(fr.lambda2));
  double s = t * t * lam * lam * lam * lam;
  s = std::max(s, (c1 * c1 + c2 * c2) * lam * lam);
  return std::max(s, std::numeric_limits<double>::min());
}

namespace {

// Real roots of P_t via the companion matrix, polished by Newton.
std::vector<double> quartic_real_roots(const EigenFrame& fr, double p, double q,
                                       double t) {
  const double u = fr.lambda1, v = fr.lambda2;
  const double c1sq = std::pow(fr.lambda1 * fr.alpha1(p, q), 2);
  const double c2sq = std::pow(fr.lambda2 * fr.alpha2(p, q), 2);
  const double t2 = t * t;
  double a4 = t2;
  double a3 = -2.0 * t2 * (u + v);
  double a2 = t2 * ((u + v) * (u + v) + 2.0 * u * v) - c1sq - c2sq;
  double a1 = -2.0 * t2 * u * v * (u + v) + 2.0 * c1sq * v + 2.0 * c2sq * u;
  double a0 = t2 * u * u * v * v - c1sq * v * v - c2sq * u * u;

  Eigen::Matrix4d comp = Eigen::Matrix4d::Zero();
  comp(1, 0) = comp(2, 1) = comp(3, 2) = 1.0;
  comp(0, 3) = -a0 / a4;
  comp(1, 3) = -a1 / a4;
  comp(2, 3) = -a2 / a4;
  comp(3, 3) = -a3 / a4;
  Eigen::EigenSolver<Eigen::Matrix4d> es(comp);

  std::vector<double> roots;
  const double scale = std::max({std::abs(u), std::abs(v), 1e-300});
  for (int i = 0; i < 4; ++i) {
    std::complex<double> z = es.eigenvalues()(i);
    if (std::abs(z.imag()) > 1e-7 * std::max(std::abs(z.real()), scale)) continue;
    double x = z.real();
    for (int it = 0; it < 6; ++it) {
      double f = quartic_eval(fr, p, q, t, x);
      double h = 1e-7 * std::max(1.0, std::abs(x));
      double df = (quartic_eval(fr, p, q, t, x + h) - quartic_eval(fr, p, q, t, x - h)) /
                  (2.0 * h);
      if (df == 0.0) break;
      double step = f / df;
      x -= step;
      if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    roots.push_back(x);
  }
  return roots;
}

}  // namespace

LagrangeRoot lagrange_multiplier(const EigenFrame& fr, double p, double q, double t) {
  if (!(t > 0.0)) throw ValidationError("lagrange: t must be positive");
  const double a1 = fr.alpha1(p, q), a2 = fr.alpha2(p, q);
  const double scale = std::max(std::hypot(p, q), 1e-300);
  if (std::abs(a1) <= 1e-12 * scale)
    return {(1.0 + std::abs(a2) / t) * fr.lambda2, LagrangeRoot::axis1};
  if (std::abs(a2) <= 1e-12 * scale) {
    if (t > t_max(fr, a1)) throw ComputationError("beyond-collapse");
    return {(1.0 + std::abs(a1) / t) * fr.lambda1, LagrangeRoot::axis2};
  }

  std::vector<double> roots = quartic_real_roots(fr, p, q, t);
  double best = 0.0, best_val = std::numeric_limits<double>::infinity();
  bool found = false;
  for (double lam : roots) {
    double d1 = fr.lambda1 - lam, d2 = fr.lambda2 - lam;
    if (d1 == 0.0 || d2 == 0.0) continue;
    double b1 = -lam * a1 / d1, b2 = -lam * a2 / d2;
    double val = fr.lambda1 * b1 * b1 + fr.lambda2 * b2 * b2;
    if (val < best_val) {
      best_val = val;
      best = lam;
      found = true;
    }
  }
  if (!found) throw ComputationError("no-admissible-root");
  return {best, LagrangeRoot::generic};
}

double eroded_exponent(const EigenFrame& fr, double p, double q, double t) {
  if (t == 0.0) {
    double a1 = fr.alpha1(p, q), a2 = fr.alpha2(p, q);
    return fr.lambda1 * a1 * a1 + fr.lambda2 * a2 * a2;
  }
  LagrangeRoot root = lagrange_multiplier(fr, p, q, t);
  const double a1 = fr.alpha1(p, q), a2 = fr.alpha2(p, q);
  switch (root.branch) {
    case LagrangeRoot::axis1: {
      double s = std::abs(a2) + t;
      return fr.lambda2 * s * s;
    }
    case LagrangeRoot::axis2: {
      double s = std::abs(a1) + t;
      return fr.lambda1 * s * s;
    }
    case LagrangeRoot::generic:
    default: {
      double d1 = fr.lambda1 - root.lambda, d2 = fr.lambda2 - root.lambda;
      double b1 = -root.lambda * a1 / d1, b2 = -root.lambda * a2 / d2;
      return fr.lambda1 * b1 * b1 + fr.lambda2 * b2 * b2;
    }
  }
}

namespace {

// Curvature of the isoline of x -> x^T Re(B) x at the point alpha* k1,
// evaluated from the quadratic form itself.
double isoline_curvature_on_axis(const EigenFrame& fr, double alpha_star) {
  const double px = fr.k1[0] * alpha_star, py = fr.k1[1] * alpha_star;
  auto u = [&](double x, double y) {
    double a1 = fr.alpha1(x, y), a2 = fr.alpha2(x, y);
    return fr.lambda1 * a1 * a1 + fr.lambda2 * a2 * a2;
  };
  const double h = 1e-5 * std::max(1.0, std::abs(alpha_star));
  double up = (u(px + h, py) - u(px - h, py)) / (2 * h);
  double uq = (u(px, py + h) - u(px, py - h)) / (2 * h);
  double upp = (u(px + h, py) - 2 * u(px, py) + u(px - h, py)) / (h * h);
  double uqq = (u(px, py + h) - 2 * u(px, py) + u(px, py - h)) / (h * h);
  double upq = (u(px + h, py + h) - u(px + h, py - h) - u(px - h, py + h) +
                u(px - h, py - h)) /
               (4 * h * h);
  double grad = std::pow(up * up + uq * uq, 1.5);
  if (grad == 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(uq * uq * upp - 2.0 * up * uq * upq + up * up * uqq) / grad;
}

}  // namespace

double t_max(const EigenFrame& fr, double p) {
  const double alpha = std::abs(p);
  if (alpha == 0.0) return 0.0;
  // Tangency along the axis: t * kappa(alpha + t) = 1, monotone in t.
  auto g = [&](double t) { return t * isoline_curvature_on_axis(fr, alpha + t) - 1.0; };
  double lo = 0.0;
  double hi = alpha;
  int guard = 0;
  while (g(hi) < 0.0) {
    hi *= 2.0;
    if (++guard > 200) throw ComputationError("t-max: bracketing failed");
  }
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
    if (hi - lo < 1e-14 * std::max(1.0, hi)) break;
  }
  return 0.5 * (lo + hi);
}

double collapse_anisotropy(const EigenFrame& fr, double t, double c) {
  if (!(c > 0.0)) throw ValidationError("anisotropy: level c must be positive");
  const double r1 = std::sqrt(c / std::abs(fr.lambda1));
  const double r2 = std::sqrt(c / std::abs(fr.lambda2));
  if (!(t >= 0.0 && t < r2)) throw ValidationError("anisotropy: t must lie in [0, t_fin)");
  return (r1 - t) / (r2 - t);
}

double lagrange_approximation(const EigenFrame& fr, double p, double q, double t,
                              double c_knob) {
  const double a1 = std::abs(fr.alpha1(p, q)), a2 = std::abs(fr.alpha2(p, q));
  const double l1 = std::abs(fr.lambda1), l2 = std::abs(fr.lambda2);
  const double tm = t_max(fr, a1);
  if (t > tm) {
    double inner = a2 * a2 + a1 * a1 * std::pow((a1 * a1 + a2 * a2) / (t * t), 1.5);
    return fr.lambda2 * (1.0 + std::sqrt(inner) / t);
  }
  double inner = a1 * a1 + c_knob * c_knob * (l2 * l2) / (l1 * l1) * a2 * a2;
  return fr.lambda1 * (1.0 + std::sqrt(inner) / t);
}

cplx eroded_chirp_exact(const ChirpParams& c, double a, double eta, double t, double p,
                        double q, double s) {
  if (!(t >= 0.0)) throw ValidationError("eroded-chirp: t must be nonnegative");
  if (t > 0.0 && eta != 0.5)
    throw ValidationError("eroded-chirp: closed form requires eta = 1/2");
  if (t == 0.0) return chirp_gabor_scaled(c, a, p, q, s);
  ChirpParams unit{c.b / a, c.r * a * a};
  ChirpGaborForm form = chirp_gabor_exact(unit);
  EigenFrame fr = eigenframe(form);
  const double ps = p / a, qs = a * q;
  const double expo = eroded_exponent(fr, ps, qs, t);
  const double im = form.B.a11.imag() * ps * ps + 2.0 * form.B.a12.imag() * ps * qs +
                    form.B.a22.imag() * qs * qs;
  return a * form.prefactor * std::polar(1.0, -2.0 * pi * (s + 0.5 * ps * qs)) *
         std::polar(std::exp(expo), im);
}

PhaseField chirp_grid_reference(const ChirpParams& c, const GaborParams& p, int n0) {
  PhaseField G(p);
  ChirpGaborForm unit = chirp_gabor_exact({c.b / p.a, c.r * p.a * p.a});
  for (int l = 0; l < p.K; ++l) {
    double pt = double(l) / p.K - double(n0) / p.N;
    pt -= std::round(pt);  // dominant periodic image
    for (int m = 0; m < p.M; ++m) {
      int mh = m < (p.M + 1) / 2 ? m : m - p.M;
      double qt = double(mh) * p.K / p.P;
      // Alignment between the index-space transform (CR-Gaussian window,
      // signal centered at n0) and the continuous section.
      double phase = 2.0 * pi * (double(l) * mh / (2.0 * p.P) +
                                 (double(mh) / p.M) * (0.25 * p.N - n0));
      cplx w = p.a * unit.eval(pt / p.a, p.a * qt, 0.0);
      G.at(l, m) = std::polar(1.0, phase) * w;
    }
  }
  return G;
}

std::vector<cplx> evaluation_chirp(int N) {
  // Linear chirp under a modulated Gaussian envelope: carrier N/4 cycles per
  // unit, sweep rate N/2, envelope std 1/16.
  std::vector<cplx> f(N);
  const double b = 1.0 / 16.0;
  const double q0 = N / 4.0;
  const double rate = N / 2.0;
  for (int n = 0; n < N; ++n) {
    double xi = double(n) / N - 0.5;
    f[n] = std::exp(-xi * xi / (2.0 * b * b)) *
           std::polar(1.0, 2.0 * pi * q0 * xi + pi * rate * xi * xi);
  }
  return f;
}

}  // namespace gaborflow
