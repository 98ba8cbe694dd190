#include "gaborflow/erosion.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "gaborflow/errors.hpp"

namespace gaborflow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 1D lower envelope (distance transform) with quadratic weight w: for each i,
// min_j f[j] + w (s (i-j))^2. Felzenszwalb-Huttenlocher parabola envelope.
void envelope_1d(const double* f, double* out, int n, double w, double s) {
  if (w <= 0.0) {
    double m = *std::min_element(f, f + n);
    std::fill(out, out + n, m);
    return;
  }
  const double c = w * s * s;  // cost per squared index step
  std::vector<int> v(n);
  std::vector<double> z(n + 1);
  int k = 0;
  v[0] = 0;
  z[0] = -kInf;
  z[1] = kInf;
  for (int q = 1; q < n; ++q) {
    if (f[q] == kInf) continue;
    while (true) {
      int p = v[k];
      if (f[p] == kInf) {
        // drop unreachable parabola
        if (k == 0) {
          v[0] = q;
          z[0] = -kInf;
          z[1] = kInf;
          break;
        }
        --k;
        continue;
      }
      double sx = ((f[q] + c * q * q) - (f[p] + c * p * p)) / (2.0 * c * (q - p));
      if (sx <= z[k]) {
        --k;
        if (k < 0) {
          k = 0;
          v[0] = q;
          z[0] = -kInf;
          z[1] = kInf;
          break;
        }
        continue;
      }
      ++k;
      v[k] = q;
      z[k] = sx;
      z[k + 1] = kInf;
      break;
    }
  }
  int kk = 0;
  for (int q = 0; q < n; ++q) {
    while (z[kk + 1] < q) ++kk;
    int p = v[kk];
    out[q] = (f[p] == kInf) ? kInf : f[p] + c * double(q - p) * double(q - p);
  }
}

// Quadratic envelope along one axis with periodic handling via tripling.
void erode_axis_quadratic(std::vector<double>& field, int n_lines, int line_len,
                          int stride, int line_stride, double w, double s,
                          Boundary boundary) {
  if (boundary == Boundary::periodic) {
    std::vector<double> in(3 * line_len), out(3 * line_len);
    for (int li = 0; li < n_lines; ++li) {
      double* base = field.data() + (size_t)li * line_stride;
      for (int r = 0; r < 3; ++r)
        for (int i = 0; i < line_len; ++i) in[r * line_len + i] = base[(size_t)i * stride];
      envelope_1d(in.data(), out.data(), 3 * line_len, w, s);
      for (int i = 0; i < line_len; ++i) base[(size_t)i * stride] = out[line_len + i];
    }
  } else {
    std::vector<double> in(line_len), out(line_len);
    for (int li = 0; li < n_lines; ++li) {
      double* base = field.data() + (size_t)li * line_stride;
      for (int i = 0; i < line_len; ++i) in[i] = base[(size_t)i * stride];
      envelope_1d(in.data(), out.data(), line_len, w, s);
      for (int i = 0; i < line_len; ++i) base[(size_t)i * stride] = out[i];
    }
  }
}

// Sliding minimum of width [-w, w] per line (clamped or periodic).
void sliding_min_axis(std::vector<double>& field, int n_lines, int line_len, int stride,
                      int line_stride, int w, Boundary boundary) {
  if (w <= 0) return;
  std::vector<double> in, out(line_len);
  for (int li = 0; li < n_lines; ++li) {
    double* base = field.data() + (size_t)li * line_stride;
    if (boundary == Boundary::periodic) {
      in.resize(3 * line_len);
      for (int r = 0; r < 3; ++r)
        for (int i = 0; i < line_len; ++i) in[r * line_len + i] = base[(size_t)i * stride];
      std::deque<int> dq;
      int ww = std::min(w, line_len);  // window never needs to exceed a period
      for (int i = line_len - ww; i < 2 * line_len + ww; ++i) {
        while (!dq.empty() && in[dq.back()] >= in[i]) dq.pop_back();
        dq.push_back(i);
        int target = i - ww;  // output index whose window just completed
        if (target >= line_len && target < 2 * line_len) {
          while (dq.front() < target - ww) dq.pop_front();
          out[target - line_len] = in[dq.front()];
        }
      }
    } else {
      in.resize(line_len);
      for (int i = 0; i < line_len; ++i) in[i] = base[(size_t)i * stride];
      std::deque<int> dq;
      for (int i = 0; i < line_len + w; ++i) {
        if (i < line_len) {
          while (!dq.empty() && in[dq.back()] >= in[i]) dq.pop_back();
          dq.push_back(i);
        }
        int target = i - w;
        if (target >= 0 && target < line_len) {
          while (dq.front() < target - w) dq.pop_front();
          out[target] = in[dq.front()];
        }
      }
    }
    for (int i = 0; i < line_len; ++i) base[(size_t)i * stride] = out[i];
  }
}

int wrapped_span(int d, int n) {
  int r = std::abs(d) % n;
  return std::min(r, n - r);
}

}  // namespace

std::vector<double> erode_quadratic(const std::vector<double>& f, const ErodeGrid& g,
                                    double wx, double wy) {
  if ((int)f.size() != g.nx * g.ny) throw ValidationError("erode: field shape mismatch");
  std::vector<double> out = f;
  // columns (y) first, then rows: separable exact.
  erode_axis_quadratic(out, g.nx, g.ny, 1, g.ny, wy, g.sy, g.boundary);
  // rows: lines are columns, stride ny.
  {
    std::vector<double> tmp(out.size());
    // transpose-free: process along x with stride ny per column line.
    for (int j = 0; j < g.ny; ++j) {
      // gather column j
      std::vector<double> col(g.nx);
      for (int i = 0; i < g.nx; ++i) col[i] = out[(size_t)i * g.ny + j];
      std::vector<double> res(g.nx);
      if (g.boundary == Boundary::periodic) {
        std::vector<double> in(3 * g.nx), o3(3 * g.nx);
        for (int r = 0; r < 3; ++r)
          for (int i = 0; i < g.nx; ++i) in[r * g.nx + i] = col[i];
        envelope_1d(in.data(), o3.data(), 3 * g.nx, wx, g.sx);
        for (int i = 0; i < g.nx; ++i) res[i] = o3[g.nx + i];
      } else {
        envelope_1d(col.data(), res.data(), g.nx, wx, g.sx);
      }
      for (int i = 0; i < g.nx; ++i) tmp[(size_t)i * g.ny + j] = res[i];
    }
    out.swap(tmp);
  }
  return out;
}

std::vector<double> erode_flat(const std::vector<double>& f, const ErodeGrid& g,
                               double wx, double wy) {
  if ((int)f.size() != g.nx * g.ny) throw ValidationError("erode: field shape mismatch");
  // Row offsets dx with wx (sx dx)^2 < 1.
  int max_dx = wx > 0 ? (int)std::floor(std::sqrt(1.0 / wx) / g.sx * (1 - 1e-14))
                      : g.nx;
  if (g.boundary == Boundary::periodic) max_dx = std::min(max_dx, g.nx / 2);
  else max_dx = std::min(max_dx, g.nx - 1);

  // Per-row sliding minima in y for each needed half-width, then combine
  // across row offsets.
  std::vector<double> out((size_t)g.nx * g.ny, kInf);
  std::vector<double> rowmin((size_t)g.nx * g.ny);
  int prev_w = -1;
  // iterate |dx| descending so each width is computed once
  std::vector<int> order;
  for (int dx = 0; dx <= max_dx; ++dx) order.push_back(dx);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    auto width = [&](int dx) {
      double rem = 1.0 - wx * (g.sx * dx) * (g.sx * dx);
      if (rem <= 0.0) return -1;
      return wy > 0 ? (int)std::floor(std::sqrt(rem / wy) / g.sy * (1 - 1e-14))
                    : g.ny;
    };
    return width(a) < width(b);
  });
  for (int dx : order) {
    double rem = 1.0 - wx * (g.sx * dx) * (g.sx * dx);
    if (rem <= 0.0) continue;
    int w = wy > 0 ? (int)std::floor(std::sqrt(rem / wy) / g.sy * (1 - 1e-14)) : g.ny;
    if (g.boundary == Boundary::periodic) w = std::min(w, g.ny / 2);
    else w = std::min(w, g.ny - 1);
    if (w != prev_w) {
      rowmin = f;
      sliding_min_axis(rowmin, g.nx, g.ny, 1, g.ny, w, g.boundary);
      prev_w = w;
    }
    for (int i = 0; i < g.nx; ++i) {
      for (int sgn = (dx == 0 ? 1 : -1); sgn <= 1; sgn += 2) {
        int src = i + sgn * dx;
        if (g.boundary == Boundary::periodic)
          src = (src % g.nx + g.nx) % g.nx;
        else if (src < 0 || src >= g.nx)
          continue;
        const double* srow = rowmin.data() + (size_t)src * g.ny;
        double* orow = out.data() + (size_t)i * g.ny;
        for (int j = 0; j < g.ny; ++j) orow[j] = std::min(orow[j], srow[j]);
        if (dx == 0) break;
      }
    }
  }
  return out;
}

std::vector<double> erode_power(const std::vector<double>& f, const ErodeGrid& g,
                                double wx, double wy, double coeff, double expo) {
  if ((int)f.size() != g.nx * g.ny) throw ValidationError("erode: field shape mismatch");
  double fmin = kInf, fmax = -kInf;
  for (double v : f) {
    fmin = std::min(fmin, v);
    fmax = std::max(fmax, v);
  }
  // Kernel values above the data range cannot improve any minimum.
  const double range = fmax - fmin;
  auto kernel = [&](double rho2) { return coeff * std::pow(rho2, expo); };
  std::vector<double> out = f;
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      double best = f[(size_t)i * g.ny + j];
      for (int di = -(g.nx - 1); di < g.nx; ++di) {
        int span_i = g.boundary == Boundary::periodic ? wrapped_span(di, g.nx)
                                                      : std::abs(di);
        double kx = wx * (g.sx * span_i) * (g.sx * span_i);
        if (kernel(kx) > range) continue;
        int si = i + di;
        if (g.boundary == Boundary::periodic)
          si = (si % g.nx + g.nx) % g.nx;
        else if (si < 0 || si >= g.nx)
          continue;
        for (int dj = -(g.ny - 1); dj < g.ny; ++dj) {
          int span_j = g.boundary == Boundary::periodic ? wrapped_span(dj, g.ny)
                                                        : std::abs(dj);
          double rho2 = kx + wy * (g.sy * span_j) * (g.sy * span_j);
          double kv = kernel(rho2);
          if (kv > range) continue;
          int sj = j + dj;
          if (g.boundary == Boundary::periodic)
            sj = (sj % g.ny + g.ny) % g.ny;
          else if (sj < 0 || sj >= g.ny)
            continue;
          best = std::min(best, f[(size_t)si * g.ny + sj] + kv);
        }
      }
      out[(size_t)i * g.ny + j] = best;
    }
  return out;
}

std::vector<double> erode_modulus(const std::vector<double>& A, double t, double a,
                                  double eta, const GaborParams& p) {
  if ((int)A.size() != p.K * p.M) throw ValidationError("erode: field shape mismatch");
  if (!(t > 0.0)) throw ValidationError("erode: t must be positive");
  if (!(a > 0.0)) throw ValidationError("erode: a must be positive");
  if (!(eta >= 0.5)) throw ValidationError("eta-out-of-range");
  for (double v : A)
    if (v < 0.0) throw ValidationError("erode: modulus field must be nonnegative");
  ErodeGrid g{p.K, p.M, p.dp(), p.dq(), Boundary::periodic};
  const double ia2 = 1.0 / (a * a), a2 = a * a;
  if (eta == 1.0) return erode_quadratic(A, g, ia2 / (4.0 * t), a2 / (4.0 * t));
  if (eta == 0.5) return erode_flat(A, g, ia2 / (t * t), a2 / (t * t));
  if (eta > 1.0) throw ValidationError("eta-out-of-range");
  const double s = eta / (2.0 * eta - 1.0);
  const double coeff =
      (2.0 * eta - 1.0) / (2.0 * eta) * std::pow(t, -1.0 / (2.0 * eta - 1.0));
  return erode_power(A, g, ia2, a2, coeff, s);
}

std::vector<double> erode_modulus_2d(const std::vector<double>& A, double t, double a,
                                     const GaborParams& p) {
  const size_t n = (size_t)p.K * p.K * p.M * p.M;
  if (A.size() != n) throw ValidationError("erode2d: field shape mismatch");
  if (!(t > 0.0)) throw ValidationError("erode2d: t must be positive");
  std::vector<double> out = A;
  const double wp = 1.0 / (a * a * 4.0 * t), wq = a * a / (4.0 * t);
  const int K = p.K, M = p.M;
  // Axes in layout order [l1][l2][m1][m2]; erode each with the tripling trick.
  auto erode_axis = [&](int axis_len, size_t stride, double w, double s) {
    const size_t total = n / axis_len;
    std::vector<double> in(3 * axis_len), res(3 * axis_len);
    for (size_t line = 0; line < total; ++line) {
      // base index: distribute 'line' over the remaining axes
      size_t outer = line / stride;      // slower-than-axis block
      size_t inner = line % stride;      // faster-than-axis offset
      size_t base = outer * stride * axis_len + inner;
      for (int r = 0; r < 3; ++r)
        for (int i = 0; i < axis_len; ++i)
          in[r * axis_len + i] = out[base + (size_t)i * stride];
      envelope_1d(in.data(), res.data(), 3 * axis_len, w, s);
      for (int i = 0; i < axis_len; ++i) out[base + (size_t)i * stride] = res[axis_len + i];
    }
  };
  erode_axis(M, 1, wq, p.dq());
  erode_axis(M, M, wq, p.dq());
  erode_axis(K, (size_t)M * M, wp, p.dp());
  erode_axis(K, (size_t)K * M * M, wp, p.dp());
  return out;
}

}  // namespace gaborflow
