#include "gaborflow/phantom.hpp"

#include <cmath>
#include <numbers>

#include "gaborflow/errors.hpp"

namespace gaborflow {

namespace {
constexpr double pi = std::numbers::pi;

struct RadialMap {
  // rho_new = s(rho) * rho with s depending smoothly on rho; angle adds
  // omega(rho).
  double scale_amp = 0.0;
  double rot_amp = 0.0;
  double rmax = 1.0;

  double stretch(double rho) const {
    return 1.0 + scale_amp * (1.0 + 0.4 * std::sin(pi * rho / rmax));
  }
  double angle(double rho) const { return rot_amp * (1.0 - 0.35 * rho / rmax); }

  Vec2 forward(const Vec2& v) const {
    double rho = std::hypot(v[0], v[1]);
    double s = stretch(rho), w = angle(rho);
    double cw = std::cos(w), sw = std::sin(w);
    return {s * (cw * v[0] - sw * v[1]), s * (sw * v[0] + cw * v[1])};
  }

  Vec2 inverse(const Vec2& v) const {
    double target = std::hypot(v[0], v[1]);
    // solve stretch(rho) * rho = target by bisection (monotone for small amp)
    double lo = 0.0, hi = std::max(target, 1e-9) * 2.0 + 1.0;
    for (int it = 0; it < 80; ++it) {
      double mid = 0.5 * (lo + hi);
      (stretch(mid) * mid < target ? lo : hi) = mid;
    }
    double rho = 0.5 * (lo + hi);
    double w = angle(rho);
    double cw = std::cos(-w), sw = std::sin(-w);
    double s = rho > 0 ? rho / target : 1.0;
    Vec2 unrot{cw * v[0] - sw * v[1], sw * v[0] + cw * v[1]};
    return {s * unrot[0], s * unrot[1]};
  }
};

RadialMap map_for_frame(const PhantomSpec& spec, int frame) {
  RadialMap m;
  m.rmax = spec.size / 2.0;
  switch (spec.motion) {
    case PhantomMotion::identity:
      break;
    case PhantomMotion::rotate:
      m.rot_amp = spec.rot_per_frame * frame;
      break;
    case PhantomMotion::scale_rotate:
      m.rot_amp = spec.rot_per_frame * frame;
      m.scale_amp = spec.scale_per_frame * frame;
      break;
  }
  return m;
}

}  // namespace

Vec2 phantom_forward(const PhantomSpec& spec, int frame, const Vec2& material) {
  const double c = (spec.size - 1) / 2.0;
  RadialMap m = map_for_frame(spec, frame);
  Vec2 rel{material[0] - c, material[1] - c};
  Vec2 moved = m.forward(rel);
  return {moved[0] + c, moved[1] + c};
}

Phantom make_phantom(const PhantomSpec& spec) {
  if (spec.n_dirs < 2) throw ValidationError("phantom: need at least 2 tag directions");
  Phantom out;
  out.stack.size = spec.size;
  out.stack.frames = spec.frames;
  for (int d = 0; d < spec.n_dirs; ++d)
    out.stack.directions.push_back(pi * d / spec.n_dirs);
  const double c = (spec.size - 1) / 2.0;

  for (int t = 0; t < spec.frames; ++t) {
    RadialMap m = map_for_frame(spec, t);
    double fade = std::pow(1.0 - spec.fade_per_frame, t);
    for (int d = 0; d < spec.n_dirs; ++d) {
      double ux = std::cos(out.stack.directions[d]);
      double uy = std::sin(out.stack.directions[d]);
      std::vector<double> img((size_t)spec.size * spec.size);
      for (int y = 0; y < spec.size; ++y)
        for (int x = 0; x < spec.size; ++x) {
          Vec2 mat = m.inverse({x - c, y - c});
          double phase = 2.0 * pi * spec.tag_freq * (ux * (mat[0] + c) + uy * (mat[1] + c));
          img[(size_t)y * spec.size + x] = fade * (1.0 + std::cos(phase));
        }
      out.stack.images.push_back(std::move(img));
    }
  }

  // material polar grid, outer ring first (net recursion runs inward)
  out.grid0.resize((size_t)spec.rings * spec.points);
  for (int r = 0; r < spec.rings; ++r) {
    double rho = spec.ring1 - (spec.ring1 - spec.ring0) * r / std::max(1, spec.rings - 1);
    for (int j = 0; j < spec.points; ++j) {
      double th = 2.0 * pi * j / spec.points;
      out.grid0[(size_t)r * spec.points + j] = {c + rho * std::cos(th),
                                                c + rho * std::sin(th)};
    }
  }
  out.truth.resize(spec.frames);
  for (int t = 0; t < spec.frames; ++t) {
    out.truth[t].resize(out.grid0.size());
    for (size_t i = 0; i < out.grid0.size(); ++i)
      out.truth[t][i] = phantom_forward(spec, t, out.grid0[i]);
  }
  out.seed_path.resize(spec.frames);
  for (int t = 0; t < spec.frames; ++t) out.seed_path[t] = out.truth[t][0];
  return out;
}

}  // namespace gaborflow
