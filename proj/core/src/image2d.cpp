#include "gaborflow/image2d.hpp"

#include <algorithm>
#include <cmath>

#include "gaborflow/erosion.hpp"
#include "gaborflow/errors.hpp"
#include "gaborflow/gabor.hpp"
#include "gaborflow/parallel.hpp"

namespace gaborflow {

PhaseField2 gabor2d_analysis(const std::vector<double>& img, int size, const Window& w,
                             const GaborParams& p) {
  if (size != p.N) throw ValidationError("gabor2d: image size must be N");
  if ((int)img.size() != size * size) throw ValidationError("gabor2d: image shape");
  // First axis: 1D transform of every row; intermediate[y][l1][m1].
  std::vector<cplx> row(p.N);
  std::vector<cplx> inter((size_t)p.N * p.K * p.M);
  for (int y = 0; y < p.N; ++y) {
    for (int x = 0; x < p.N; ++x) row[x] = img[(size_t)y * size + x];
    PhaseField g = gabor_analysis(row, w, p);
    std::copy(g.data.begin(), g.data.end(), inter.begin() + (size_t)y * p.K * p.M);
  }
  // Second axis: transform over y for each (l1, m1).
  PhaseField2 G(p);
  parallel_for(p.K, [&](int l0, int l1end) {
    std::vector<cplx> col(p.N);
    for (int l1 = l0; l1 < l1end; ++l1)
      for (int m1 = 0; m1 < p.M; ++m1) {
        for (int y = 0; y < p.N; ++y)
          col[y] = inter[(size_t)y * p.K * p.M + (size_t)l1 * p.M + m1];
        PhaseField g = gabor_analysis(col, w, p);
        for (int l2 = 0; l2 < p.K; ++l2)
          for (int m2 = 0; m2 < p.M; ++m2) G.at(l1, l2, m1, m2) = g.at(l2, m2);
      }
  });
  return G;
}

PhaseField2 reassign2d(const PhaseField2& G, double t, double a) {
  const GaborParams& p = G.params;
  std::vector<double> mod = G.modulus();
  // peak-normalized erosion, as in the 1D reassignment
  double peak = 0.0;
  for (double v : mod) peak = std::max(peak, v);
  if (peak == 0.0) return G;
  std::vector<double> unit(mod);
  for (double& v : unit) v /= peak;
  std::vector<double> eroded = erode_modulus_2d(unit, t, a, p);
  PhaseField2 out(p);
  for (size_t i = 0; i < out.data.size(); ++i) {
    double m = mod[i];
    out.data[i] = m > 0.0 ? G.data[i] * (peak * eroded[i] / m) : cplx(peak * eroded[i]);
  }
  return out;
}

namespace {

int alias(int m, int M) { return m < (M + 1) / 2 ? m : m - M; }

bool canonical_half_plane(double q1, double q2) {
  return q2 > 0.0 || (q2 == 0.0 && q1 > 0.0);
}

}  // namespace

FrequencyField frequency_field(const PhaseField2& G, double dc_mask_radius_bins,
                               FreqRefine refine) {
  const GaborParams& p = G.params;
  FrequencyField F;
  F.K = p.K;
  F.L = p.L;
  F.size = p.N;
  F.offset = (p.N - 1) / 2;  // window peak of the sampled gaussian
  F.q.assign((size_t)p.K * p.K, Vec2{0.0, 0.0});
  F.valid.assign((size_t)p.K * p.K, 0);
  const double bin = double(p.K) / p.P / p.N;  // cycles per pixel per bin

  for (int l1 = 0; l1 < p.K; ++l1)
    for (int l2 = 0; l2 < p.K; ++l2) {
      double best = -1.0;
      int bm1 = 0, bm2 = 0;
      for (int m1 = 0; m1 < p.M; ++m1)
        for (int m2 = 0; m2 < p.M; ++m2) {
          int a1 = alias(m1, p.M), a2 = alias(m2, p.M);
          if (std::hypot(double(a1), double(a2)) < dc_mask_radius_bins) continue;
          // canonical representative: x-frequency is q1 = a1, y-frequency a2;
          // pick the upper half plane in (q1, q2) with q2 the y component.
          if (!canonical_half_plane(a1, a2)) continue;
          double v = std::abs(G.at(l1, l2, m1, m2));
          if (v > best) {
            best = v;
            bm1 = a1;
            bm2 = a2;
          }
        }
      size_t idx = (size_t)l1 * p.K + l2;
      if (best < 0.0) throw ComputationError("empty-after-mask");
      if (best == 0.0) {
        F.valid[idx] = 0;
        continue;
      }
      double q1 = bm1, q2 = bm2;
      if (refine == FreqRefine::center_of_mass) {
        // energy-weighted center of mass over a window, re-centered once
        int c1 = bm1, c2 = bm2;
        for (int pass = 0; pass < 2; ++pass) {
          double sw = 0.0, s1 = 0.0, s2 = 0.0;
          for (int d1 = -3; d1 <= 3; ++d1)
            for (int d2 = -3; d2 <= 3; ++d2) {
              int a1 = c1 + d1, a2 = c2 + d2;
              int m1 = mod_floor(a1, p.M), m2 = mod_floor(a2, p.M);
              double v = std::norm(G.at(l1, l2, m1, m2));
              sw += v;
              s1 += v * a1;
              s2 += v * a2;
            }
          if (sw <= 0.0) break;
          q1 = s1 / sw;
          q2 = s2 / sw;
          c1 = (int)std::lround(q1);
          c2 = (int)std::lround(q2);
        }
      }
      if (!canonical_half_plane(q1, q2)) {
        q1 = -q1;
        q2 = -q2;
      }
      F.q[idx] = {q1 * bin, q2 * bin};
      F.valid[idx] = 1;
    }
  return F;
}

DeformationGradientField deformation_gradient(const std::vector<FrequencyField>& cur,
                                              const std::vector<FrequencyField>& prev,
                                              double cond_threshold) {
  if (cur.size() != prev.size() || cur.size() < 2)
    throw ValidationError("deformation: need at least 2 tag directions");
  const int K = cur[0].K;
  const int nd = (int)cur.size();
  DeformationGradientField out;
  out.K = K;
  out.L = cur[0].L;
  out.size = cur[0].size;
  out.offset = cur[0].offset;
  out.D.assign((size_t)K * K, Mat2{1, 0, 0, 1});
  out.condition.assign((size_t)K * K, 0.0);
  out.valid.assign((size_t)K * K, 0);

  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) {
      size_t idx = (size_t)i * K + j;
      bool ok = true;
      // rows of Q_t and Q_{t-1}, with per-row sign alignment
      std::vector<Vec2> qt(nd), qp(nd);
      for (int d = 0; d < nd; ++d) {
        if (!cur[d].valid[idx] || !prev[d].valid[idx]) {
          ok = false;
          break;
        }
        qt[d] = cur[d].q[idx];
        qp[d] = prev[d].q[idx];
        double dot = qt[d][0] * qp[d][0] + qt[d][1] * qp[d][1];
        if (dot < 0.0) {
          qt[d][0] = -qt[d][0];
          qt[d][1] = -qt[d][1];
        }
      }
      if (!ok) continue;
      // normal equations: (Qt^T Qt) D = Qt^T Qp
      double a = 0, b = 0, c = 0;  // [[a,b],[b,c]]
      double r11 = 0, r12 = 0, r21 = 0, r22 = 0;
      for (int d = 0; d < nd; ++d) {
        a += qt[d][0] * qt[d][0];
        b += qt[d][0] * qt[d][1];
        c += qt[d][1] * qt[d][1];
        r11 += qt[d][0] * qp[d][0];
        r12 += qt[d][0] * qp[d][1];
        r21 += qt[d][1] * qp[d][0];
        r22 += qt[d][1] * qp[d][1];
      }
      double det = a * c - b * b;
      double mean = 0.5 * (a + c);
      double disc = std::sqrt(std::max(0.0, mean * mean - det));
      double lmax = mean + disc, lmin = mean - disc;
      double cond = lmin > 0.0 ? lmax / lmin : std::numeric_limits<double>::infinity();
      out.condition[idx] = cond;
      if (!(det > 0.0) || cond > cond_threshold) continue;  // rank-deficient mask
      double i11 = c / det, i12 = -b / det, i22 = a / det;
      out.D[idx] = {i11 * r11 + i12 * r21, i11 * r12 + i12 * r22,
                    i12 * r11 + i22 * r21, i12 * r12 + i22 * r22};
      out.valid[idx] = 1;
    }
  return out;
}

Mat2 sample_deformation(const DeformationGradientField& D, const Vec2& x) {
  // cells sit at pixels offset + l*L (mod size); invert the affine map and
  // clamp to the valid cell range
  auto to_cell = [&](double px) {
    double c = (px - D.offset) / D.L;
    return c;
  };
  double cx = to_cell(x[0]), cy = to_cell(x[1]);
  int i0 = (int)std::floor(cx), j0 = (int)std::floor(cy);
  double fx = cx - i0, fy = cy - j0;
  auto clamp = [&](int v) { return std::clamp(v, 0, D.K - 1); };
  Mat2 out{0, 0, 0, 0};
  for (int di = 0; di < 2; ++di)
    for (int dj = 0; dj < 2; ++dj) {
      double wgt = (di ? fx : 1 - fx) * (dj ? fy : 1 - fy);
      const Mat2& m = D.at(clamp(i0 + di), clamp(j0 + dj));
      for (int k = 0; k < 4; ++k) out[k] += wgt * m[k];
    }
  return out;
}

DeformationNet deformation_net(const std::vector<DeformationGradientField>& D_frames,
                               const std::vector<Vec2>& seed_path,
                               const std::vector<Vec2>& grid0, int rings, int points,
                               int image_size) {
  const int T = (int)seed_path.size();
  if ((int)grid0.size() != rings * points)
    throw ValidationError("net: frame-0 grid shape mismatch");
  if ((int)D_frames.size() < T - 1)
    throw ValidationError("net: need a deformation field per step");
  DeformationNet net;
  net.frames = T;
  net.rings = rings;
  net.points = points;
  net.x.assign((size_t)T * rings * points, Vec2{0, 0});
  net.inside.assign(net.x.size(), 1);

  for (int r = 0; r < rings; ++r)
    for (int j = 0; j < points; ++j) net.at(0, r, j) = grid0[(size_t)r * points + j];

  auto in_domain = [&](const Vec2& v) {
    return v[0] >= 0 && v[0] <= image_size - 1 && v[1] >= 0 && v[1] <= image_size - 1;
  };

  for (int t = 1; t < T; ++t) {
    const DeformationGradientField& D = D_frames[t - 1];
    net.at(t, 0, 0) = seed_path[t];
    // circumferential pass on the outer ring
    for (int j = 0; j + 1 < points; ++j) {
      Vec2 xt = net.at(t, 0, j);
      Mat2 m = sample_deformation(D, xt);
      Vec2 dp{net.at(t - 1, 0, j + 1)[0] - net.at(t - 1, 0, j)[0],
              net.at(t - 1, 0, j + 1)[1] - net.at(t - 1, 0, j)[1]};
      net.at(t, 0, j + 1) = {xt[0] + m[0] * dp[0] + m[1] * dp[1],
                             xt[1] + m[2] * dp[0] + m[3] * dp[1]};
      if (!in_domain(net.at(t, 0, j + 1)))
        net.inside[((size_t)t * rings + 0) * points + j + 1] = 0;
    }
    // radial pass, reusing the already-updated frame-t ring
    for (int r = 0; r + 1 < rings; ++r)
      for (int j = 0; j < points; ++j) {
        Vec2 xt = net.at(t, r, j);
        Mat2 m = sample_deformation(D, xt);
        Vec2 dp{net.at(t - 1, r + 1, j)[0] - net.at(t - 1, r, j)[0],
                net.at(t - 1, r + 1, j)[1] - net.at(t - 1, r, j)[1]};
        net.at(t, r + 1, j) = {xt[0] + m[0] * dp[0] + m[1] * dp[1],
                               xt[1] + m[2] * dp[0] + m[3] * dp[1]};
        if (!in_domain(net.at(t, r + 1, j)))
          net.inside[((size_t)t * rings + r + 1) * points + j] = 0;
      }
  }
  return net;
}

}  // namespace gaborflow
