#include "gaborflow/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "gaborflow/errors.hpp"

namespace gaborflow {

namespace {

void hsv_to_rgb(double h, double s, double v, std::uint8_t* out) {
  h = h - std::floor(h);
  double r, g, b;
  int i = (int)(h * 6.0);
  double f = h * 6.0 - i;
  double p = v * (1 - s), q = v * (1 - f * s), t = v * (1 - (1 - f) * s);
  switch (i % 6) {
    case 0: r = v; g = t; b = p; break;
    case 1: r = q; g = v; b = p; break;
    case 2: r = p; g = v; b = t; break;
    case 3: r = p; g = q; b = v; break;
    case 4: r = t; g = p; b = v; break;
    default: r = v; g = p; b = q; break;
  }
  out[0] = (std::uint8_t)std::lround(255.0 * r);
  out[1] = (std::uint8_t)std::lround(255.0 * g);
  out[2] = (std::uint8_t)std::lround(255.0 * b);
}

void draw_point(Pixmap& pix, double x, double y, std::uint8_t r, std::uint8_t g,
                std::uint8_t b) {
  int xi = (int)std::lround(x), yi = (int)std::lround(y);
  if (xi < 0 || xi >= pix.width || yi < 0 || yi >= pix.height) return;
  size_t o = 3 * ((size_t)yi * pix.width + xi);
  pix.rgb[o] = r;
  pix.rgb[o + 1] = g;
  pix.rgb[o + 2] = b;
}

void draw_line(Pixmap& pix, Vec2 a, Vec2 b, std::uint8_t r, std::uint8_t g,
               std::uint8_t bl) {
  int steps = (int)std::ceil(std::max(std::abs(b[0] - a[0]), std::abs(b[1] - a[1]))) + 1;
  for (int i = 0; i <= steps; ++i) {
    double t = double(i) / steps;
    draw_point(pix, a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]), r, g, bl);
  }
}

Pixmap gray_background(const std::vector<double>& img, int size) {
  Pixmap pix;
  pix.width = size;
  pix.height = size;
  pix.rgb.assign((size_t)3 * size * size, 0);
  double lo = img.empty() ? 0.0 : img[0], hi = lo;
  for (double v : img) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  double span = hi > lo ? hi - lo : 1.0;
  for (size_t i = 0; i < img.size(); ++i) {
    std::uint8_t g = (std::uint8_t)std::lround(255.0 * (img[i] - lo) / span);
    pix.rgb[3 * i] = pix.rgb[3 * i + 1] = pix.rgb[3 * i + 2] = g;
  }
  return pix;
}

}  // namespace

Pixmap render_field(const PhaseField& G, RenderStyle style) {
  const GaborParams& p = G.params;
  Pixmap pix;
  pix.width = p.M;
  pix.height = p.K;
  pix.rgb.assign((size_t)3 * p.K * p.M, 0);
  double vmax = 0.0;
  for (const cplx& z : G.data) vmax = std::max(vmax, std::abs(z));
  if (vmax == 0.0) return pix;  // all black
  for (int l = 0; l < p.K; ++l)
    for (int m = 0; m < p.M; ++m) {
      const cplx z = G.at(l, m);
      double mod = std::abs(z) / vmax;
      double hue = std::arg(z) / (2.0 * std::numbers::pi);
      std::uint8_t* out = &pix.rgb[3 * ((size_t)l * p.M + m)];
      switch (style) {
        case RenderStyle::phase_hue:
          hsv_to_rgb(hue, 1.0, mod, out);
          break;
        case RenderStyle::modulus_gray: {
          std::uint8_t g = (std::uint8_t)std::lround(255.0 * mod);
          out[0] = out[1] = out[2] = g;
          break;
        }
        case RenderStyle::overlay:
          hsv_to_rgb(hue, mod, std::sqrt(mod), out);
          break;
      }
    }
  return pix;
}

void write_ppm(const std::string& path, const Pixmap& pix) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("io: cannot write " + path);
  out << "P6\n" << pix.width << " " << pix.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(pix.rgb.data()), (std::streamsize)pix.rgb.size());
}

Pixmap render_net(const std::vector<double>& background, int size,
                  const DeformationNet& net, int frame) {
  Pixmap pix = gray_background(background, size);
  for (int r = 0; r < net.rings; ++r)
    for (int j = 0; j < net.points; ++j) {
      Vec2 a = net.at(frame, r, j);
      Vec2 b = net.at(frame, r, (j + 1) % net.points);
      draw_line(pix, a, b, 255, 40, 40);
      if (r + 1 < net.rings) draw_line(pix, a, net.at(frame, r + 1, j), 255, 40, 40);
    }
  return pix;
}

Pixmap render_frequency(const std::vector<double>& background, int size,
                        const FrequencyField& F) {
  Pixmap pix = gray_background(background, size);
  double qmax = 1e-12;
  for (const Vec2& q : F.q) qmax = std::max(qmax, std::hypot(q[0], q[1]));
  double len = std::max(2.0, double(F.L));
  for (int i = 0; i < F.K; ++i)
    for (int j = 0; j < F.K; ++j) {
      if (!F.valid[(size_t)i * F.K + j]) continue;
      const Vec2& q = F.at(i, j);
      Vec2 a{F.cell_x(i), F.cell_x(j)};
      Vec2 b{a[0] + len * q[0] / qmax, a[1] + len * q[1] / qmax};
      draw_line(pix, a, b, 60, 220, 60);
    }
  return pix;
}

}  // namespace gaborflow
