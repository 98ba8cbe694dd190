#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "gaborflow/errors.hpp"
#include "gaborflow/io.hpp"
#include "gaborflow/render.hpp"

using namespace gaborflow;

namespace {
std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}
}  // namespace

TEST_CASE("signal round trips through csv and raw") {
  std::mt19937 rng(1);
  std::normal_distribution<double> gauss;
  std::vector<cplx> f(37);
  for (auto& z : f) z = cplx(gauss(rng), gauss(rng));

  std::string csv = tmp_path("gf_sig.csv");
  write_signal(csv, f);
  auto back = read_signal(csv);
  REQUIRE(back.size() == f.size());
  for (size_t i = 0; i < f.size(); ++i) CHECK(std::abs(back[i] - f[i]) < 1e-14);

  std::string raw = tmp_path("gf_sig.bin");
  write_signal(raw, f);
  auto back2 = read_signal(raw);
  REQUIRE(back2.size() == f.size());
  for (size_t i = 0; i < f.size(); ++i) CHECK(back2[i] == f[i]);

  CHECK_THROWS_AS(read_signal(tmp_path("gf_does_not_exist.csv")), ValidationError);
}

TEST_CASE("phase field round trips with its sidecar") {
  GaborParams p = GaborParams::create(16, 8, 8, 16, 0.4);
  PhaseField G(p);
  std::mt19937 rng(2);
  std::normal_distribution<double> gauss;
  for (auto& z : G.data) z = cplx(gauss(rng), gauss(rng));
  std::string path = tmp_path("gf_field.gabor");
  write_phase_field(path, G);
  PhaseField back = read_phase_field(path);
  CHECK(back.params == p);
  CHECK(max_abs_diff(back.data, G.data) == 0.0);
}

TEST_CASE("pgm round trip") {
  int w = 9, h = 7;
  std::vector<double> img((size_t)w * h);
  for (size_t i = 0; i < img.size(); ++i) img[i] = double(i) / img.size();
  std::string path = tmp_path("gf_img.pgm");
  write_pgm(path, img, w, h);
  int rw = 0, rh = 0;
  auto back = read_pgm(path, rw, rh);
  CHECK(rw == w);
  CHECK(rh == h);
  for (size_t i = 0; i < img.size(); ++i) CHECK(std::abs(back[i] - img[i]) < 1.0 / 250.0);
}

TEST_CASE("raster round trip") {
  int w = 5, h = 6;
  std::vector<double> img((size_t)w * h, 0.25);
  img[7] = -3.5;
  std::string path = tmp_path("gf_img.f64");
  write_raster(path, img, w, h);
  int rw = 0, rh = 0;
  auto back = read_raster(path, rw, rh);
  CHECK(rw == w);
  CHECK(rh == h);
  for (size_t i = 0; i < img.size(); ++i) CHECK(back[i] == img[i]);
}

TEST_CASE("rendering is deterministic and handles edge fields") {
  GaborParams p = GaborParams::create(8, 4, 4, 8, 0.5);
  PhaseField zero(p);
  Pixmap black = render_field(zero, RenderStyle::phase_hue);
  for (auto b : black.rgb) CHECK(b == 0);

  PhaseField pos(p);
  for (auto& z : pos.data) z = 0.5;
  Pixmap single = render_field(pos, RenderStyle::phase_hue);
  // real positive field: a single hue everywhere
  for (size_t i = 3; i < single.rgb.size(); i += 3) {
    CHECK(single.rgb[i] == single.rgb[0]);
    CHECK(single.rgb[i + 1] == single.rgb[1]);
    CHECK(single.rgb[i + 2] == single.rgb[2]);
  }

  PhaseField mix(p);
  std::mt19937 rng(3);
  std::normal_distribution<double> gauss;
  for (auto& z : mix.data) z = cplx(gauss(rng), gauss(rng));
  Pixmap a = render_field(mix, RenderStyle::overlay);
  Pixmap b = render_field(mix, RenderStyle::overlay);
  CHECK(a.rgb == b.rgb);

  // conjugating the field flips the hue symmetrically: red channel of the
  // hue wheel is even under conjugation at zero phase; check gray style too
  Pixmap g1 = render_field(mix, RenderStyle::modulus_gray);
  PhaseField conj(p);
  for (size_t i = 0; i < mix.data.size(); ++i) conj.data[i] = std::conj(mix.data[i]);
  Pixmap g2 = render_field(conj, RenderStyle::modulus_gray);
  CHECK(g1.rgb == g2.rgb);
}
