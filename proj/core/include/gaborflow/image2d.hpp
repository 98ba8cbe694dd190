#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gaborflow/fields.hpp"
#include "gaborflow/window.hpp"

namespace gaborflow {

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<double, 4>;  // row major 2x2

// Per-direction, per-frame tagged images, all size x size.
struct TagStack {
  int size = 0;
  int frames = 0;
  std::vector<double> directions;            // tag angles theta_i
  std::vector<std::vector<double>> images;   // [frame * n_dirs + dir], size*size each

  const std::vector<double>& image(int frame, int dir) const {
    return images[(size_t)frame * directions.size() + dir];
  }
};

// Separable 2D Gabor transform with identical per-axis parameters and an
// isotropic product window; output layout [l1][l2][m1][m2].
PhaseField2 gabor2d_analysis(const std::vector<double>& img, int size, const Window& w,
                             const GaborParams& p);

// Quadratic-kernel erosion of the 4D modulus with the phase restored.
PhaseField2 reassign2d(const PhaseField2& G, double t, double a);

// Local frequency covector field on the Gabor position cells, in cycles per
// pixel, sign-canonicalized to the closed upper half plane.
struct FrequencyField {
  int K = 0;            // cells per axis
  int L = 0;            // pixel stride between cells
  int size = 0;         // image size in pixels
  int offset = 0;       // pixel position of cell 0 (window center)
  std::vector<Vec2> q;  // [K*K]
  std::vector<std::uint8_t> valid;

  double cell_x(int l) const { return double((offset + (long long)l * L) % size); }
  const Vec2& at(int l1, int l2) const { return q[(size_t)l1 * K + l2]; }
};

enum class FreqRefine { argmax, center_of_mass };

FrequencyField frequency_field(const PhaseField2& G, double dc_mask_radius_bins,
                               FreqRefine refine);

// Least-squares deformation gradient per position cell from stacked
// frequency fields (one per tag direction) at two consecutive frames.
struct DeformationGradientField {
  int K = 0;
  std::vector<Mat2> D;          // [K*K]
  std::vector<double> condition;
  std::vector<std::uint8_t> valid;
  int L = 1, size = 0, offset = 0;

  const Mat2& at(int l1, int l2) const { return D[(size_t)l1 * K + l2]; }
};

DeformationGradientField deformation_gradient(const std::vector<FrequencyField>& cur,
                                              const std::vector<FrequencyField>& prev,
                                              double cond_threshold = 1e6);

// Bilinear sample of a deformation field at pixel coordinates, clamped to
// the cell grid.
Mat2 sample_deformation(const DeformationGradientField& D, const Vec2& x);

// Material net: x[t][r][j], R rings x J points per ring, propagated from the
// seed path and the frame-0 polar grid by the two-stage recursion
// (circumferential on ring 1, then radially inward). Points leaving the
// domain are masked; propagation continues with the last valid gradient.
struct DeformationNet {
  int frames = 0, rings = 0, points = 0;
  std::vector<Vec2> x;                 // [t][r][j]
  std::vector<std::uint8_t> inside;

  Vec2& at(int t, int r, int j) {
    return x[((size_t)t * rings + r) * points + j];
  }
  const Vec2& at(int t, int r, int j) const {
    return x[((size_t)t * rings + r) * points + j];
  }
};

DeformationNet deformation_net(const std::vector<DeformationGradientField>& D_frames,
                               const std::vector<Vec2>& seed_path,
                               const std::vector<Vec2>& grid0, int rings, int points,
                               int image_size);

}  // namespace gaborflow
