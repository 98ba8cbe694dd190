#pragma once

#include "gaborflow/image2d.hpp"

namespace gaborflow {

enum class PhantomMotion { identity, rotate, scale_rotate };

struct PhantomSpec {
  int size = 64;
  int frames = 10;
  int n_dirs = 4;
  double tag_freq = 0.125;      // cycles per pixel
  double fade_per_frame = 0.05; // multiplicative intensity loss per frame
  PhantomMotion motion = PhantomMotion::scale_rotate;
  double rot_per_frame = 0.02;    // radians at the center, tapered outward
  double scale_per_frame = 0.006; // radial stretch per frame, modulated in rho
  int rings = 8;
  int points = 50;
  double ring0 = 8.0;   // innermost ring radius, pixels
  double ring1 = 24.0;  // outermost ring radius, pixels
};

struct Phantom {
  TagStack stack;
  std::vector<Vec2> grid0;       // frame-0 polar grid [r * points + j], ring 0 = outer
  std::vector<Vec2> seed_path;   // material point x[t][1][1]
  std::vector<std::vector<Vec2>> truth;  // per frame, material grid positions
};

// Renders cos(2 pi q0 u_theta . Phi_t^{-1}(x)) under a smooth radial
// scale/rotation map with multiplicative fading, and the exact material net.
Phantom make_phantom(const PhantomSpec& spec);

// Forward motion map of the phantom (exposed for oracle tests).
Vec2 phantom_forward(const PhantomSpec& spec, int frame, const Vec2& material);

}  // namespace gaborflow
