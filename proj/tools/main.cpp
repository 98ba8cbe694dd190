// Command line front end: discrete Gabor transforms on the finite Heisenberg
// quotient and the left-invariant evolutions acting on them.

#include <CLI11.hpp>
#include <chrono>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>

#include "gaborflow/chirp.hpp"
#include "gaborflow/diffusion.hpp"
#include "gaborflow/errors.hpp"
#include "gaborflow/gabor.hpp"
#include "gaborflow/image2d.hpp"
#include "gaborflow/io.hpp"
#include "gaborflow/params.hpp"
#include "gaborflow/phantom.hpp"
#include "gaborflow/reassign.hpp"
#include "gaborflow/render.hpp"
#include "gaborflow/window.hpp"

using namespace gaborflow;
using nlohmann::json;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     start)
        .count();
  }
};

void emit_report(const std::string& path, json& report, double wall_ms) {
  if (path.empty()) return;
  report["wall_ms"] = wall_ms;
  // round-trip through the schema before writing
  json echo = json::parse(report.dump());
  std::ofstream out(path);
  if (!out) throw ValidationError("report: cannot write " + path);
  out << echo.dump(2) << "\n";
}

GaborParams params_from_options(const std::string& preset, const std::string& params_path,
                                int N, int K, int M, int Q, double a) {
  if (!params_path.empty()) {
    std::ifstream in(params_path);
    if (!in) throw ValidationError("params: cannot open " + params_path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return GaborParams::from_json(text);
  }
  if (preset == "paper128") return GaborParams::paper128(a > 0 ? a : 0.125);
  if (!preset.empty()) throw ValidationError("params: unknown preset " + preset);
  if (N <= 0) throw ValidationError("params: give --preset, --params or the grid");
  return GaborParams::create(N, K > 0 ? K : N, M > 0 ? M : N,
                             Q > 0 ? Q : 2 * (M > 0 ? M : N), a > 0 ? a : 0.125);
}

Window window_from_name(const std::string& name, const GaborParams& p) {
  if (name == "gaussian") return make_cr_gaussian_window(p);
  if (name == "gaussian-shifted") return make_gaussian_window(p);
  if (name == "cr") return make_discrete_cr_window(p);
  throw ValidationError("window: unknown kind " + name);
}

void warn_params(const GaborParams& p) {
  for (const std::string& w : param_warnings(p))
    std::fprintf(stderr, "warning: %s\n", w.c_str());
}

int cmd_gabor(const std::string& in, const std::string& out, bool inverse,
              const std::string& preset, const std::string& params_path, int N, int K,
              int M, int Q, double a, const std::string& window,
              const std::string& report_path) {
  Timer timer;
  json report;
  report["command"] = "gabor";
  if (inverse) {
    PhaseField G = read_phase_field(in);
    warn_params(G.params);
    Window w = window_from_name(window, G.params);
    std::vector<cplx> f = gabor_synthesis(G, w, G.params);
    write_signal(out, f);
    report["parameters"] = json::parse(G.params.to_json());
  } else {
    GaborParams p = params_from_options(preset, params_path, N, K, M, Q, a);
    warn_params(p);
    std::vector<cplx> f = read_signal(in);
    if ((int)f.size() != p.N)
      throw ValidationError("gabor: signal length does not match N");
    Window w = window_from_name(window, p);
    PhaseField G = gabor_analysis(f, w, p);
    write_phase_field(out, G);
    report["parameters"] = json::parse(p.to_json());
  }
  report["window"] = window;
  emit_report(report_path, report, timer.ms());
  return 0;
}

int cmd_reassign(const std::string& in, const std::string& out, const std::string& method,
                 const std::string& window, double a, double t, double dt, double eta,
                 const std::string& reference, const std::string& report_path,
                 const std::string& render_path) {
  Timer timer;
  PhaseField G = read_phase_field(in);
  warn_params(G.params);
  ReassignParams rp;
  rp.t_final = t;
  rp.dt = dt;
  rp.a = a > 0 ? a : G.params.a;
  rp.eta = eta;
  UpwindStats stats;
  PhaseField result(G.params);
  if (method == "upwind") {
    rp.method = ReassignMethod::upwind;
    result = upwind_reassign(G, rp, &stats);
  } else if (method == "erosion") {
    rp.method = ReassignMethod::erosion;
    result = erosion_reassign(G, rp);
  } else {
    throw ValidationError("reassign: unknown method " + method);
  }
  write_phase_field(out, result);
  if (!render_path.empty())
    write_ppm(render_path, render_field(result, RenderStyle::phase_hue));

  json report;
  report["command"] = "reassign";
  report["method"] = method;
  report["window"] = window;
  report["a"] = rp.a;
  report["t"] = rp.t_final;
  report["dt"] = rp.dt;
  report["eta"] = rp.eta;
  report["frozen_cells"] = stats.frozen_cells;
  if (!reference.empty()) {
    std::vector<cplx> f = read_signal(reference);
    Window w = window_from_name(window, G.params);
    std::vector<cplx> back = energy_rescale(gabor_synthesis(result, w, G.params), f);
    auto [e1, e2] = reconstruction_errors(f, back);
    report["eps1"] = e1;
    report["eps2"] = e2;
    std::printf("eps1 = %.6e  eps2 = %.6e\n", e1, e2);
  }
  double ms = timer.ms();
  report["runtime_ms"] = ms;
  emit_report(report_path, report, ms);
  return 0;
}

int cmd_diffuse(const std::string& in, const std::string& out, const std::string& mode,
                double beta, double eps, double c, double sigma, double dt, double t,
                const std::string& adapt, bool readapt, double d11, double d22,
                double truncation, const std::string& report_path) {
  Timer timer;
  PhaseField G = read_phase_field(in);
  warn_params(G.params);
  PhaseField result(G.params);
  json report;
  report["command"] = "diffuse";
  report["mode"] = mode;
  if (mode == "ced") {
    DiffusionParams dp;
    dp.beta = beta;
    dp.eps = eps;
    dp.c = c;
    dp.sigma = sigma;
    dp.dt = dt;
    dp.t_final = t;
    dp.readapt = readapt;
    if (adapt == "hessian")
      dp.adaptivity = Adaptivity::hessian;
    else if (adapt == "structure")
      dp.adaptivity = Adaptivity::structure_tensor;
    else
      throw ValidationError("diffuse: unknown adaptivity " + adapt);
    result = ced_evolve(G, dp);
    report["eps"] = eps;
    report["c"] = c;
    report["sigma"] = sigma;
    report["beta_sq"] = resolve_beta_sq(dp, G.params);
  } else if (mode == "linear") {
    SmoothingParams sp;
    sp.d11 = d11;
    sp.d22 = d22;
    sp.t = t;
    sp.truncation = truncation;
    result = linear_smooth(G, sp);
    report["d11"] = d11;
    report["d22"] = d22;
  } else {
    throw ValidationError("diffuse: unknown mode " + mode);
  }
  report["t"] = t;
  write_phase_field(out, result);
  emit_report(report_path, report, timer.ms());
  return 0;
}

int cmd_chirp_oracle(double b, double r, double a, double t, double eta, int K, int M,
                     const std::string& out, const std::string& json_path) {
  Timer timer;
  if (K != M) throw ValidationError("chirp-oracle: grid must be square (K = M)");
  GaborParams p = GaborParams::create(K, K, M, 4 * M, a);
  PhaseField field(p);
  ChirpParams cp{b, r};
  for (int l = 0; l < p.K; ++l) {
    double pt = double(l) / p.K - 0.5;
    for (int m = 0; m < p.M; ++m) {
      int mh = m < (p.M + 1) / 2 ? m : m - p.M;
      double qt = double(mh) * p.K / p.P;
      field.at(l, m) = t > 0.0 ? eroded_chirp_exact(cp, a, eta, t, pt, qt, 0.0)
                               : chirp_gabor_scaled(cp, a, pt, qt, 0.0);
    }
  }
  if (!out.empty()) write_phase_field(out, field);
  ChirpGaborForm form = chirp_gabor_exact({b / a, r * a * a});
  EigenFrame fr = eigenframe(form);
  json info;
  info["lambda1"] = fr.lambda1;
  info["lambda2"] = fr.lambda2;
  info["k1"] = {fr.k1[0], fr.k1[1]};
  info["k2"] = {fr.k2[0], fr.k2[1]};
  // collapse time of the unit log-level contour
  info["t_fin"] = std::sqrt(1.0 / std::abs(fr.lambda2));
  info["wall_ms"] = timer.ms();
  if (!json_path.empty()) {
    std::ofstream o(json_path);
    o << info.dump(2) << "\n";
  } else {
    std::printf("%s\n", info.dump(2).c_str());
  }
  return 0;
}

int cmd_phantom(const std::string& out_dir, int size, int frames, int dirs,
                double tag_freq, double fade, const std::string& motion, int rings,
                int points, const std::string& report_path) {
  Timer timer;
  PhantomSpec spec;
  spec.size = size;
  spec.frames = frames;
  spec.n_dirs = dirs;
  spec.tag_freq = tag_freq;
  spec.fade_per_frame = fade;
  spec.rings = rings;
  spec.points = points;
  if (motion == "identity")
    spec.motion = PhantomMotion::identity;
  else if (motion == "rotate")
    spec.motion = PhantomMotion::rotate;
  else if (motion == "scale-rotate")
    spec.motion = PhantomMotion::scale_rotate;
  else
    throw ValidationError("phantom: unknown motion " + motion);

  std::filesystem::create_directories(out_dir);
  Phantom ph = make_phantom(spec);
  for (int t = 0; t < frames; ++t)
    for (int d = 0; d < dirs; ++d) {
      char name[64];
      std::snprintf(name, sizeof(name), "frame%03d_dir%d", t, d);
      write_raster(out_dir + "/" + std::string(name) + ".f64", ph.stack.image(t, d),
                   size, size);
      std::vector<double> preview = ph.stack.image(t, d);
      for (double& v : preview) v *= 0.5;
      write_pgm(out_dir + "/" + std::string(name) + ".pgm", preview, size, size);
    }
  DeformationNet truth;
  truth.frames = frames;
  truth.rings = rings;
  truth.points = points;
  truth.x.resize((size_t)frames * rings * points);
  truth.inside.assign(truth.x.size(), 1);
  for (int t = 0; t < frames; ++t)
    for (int r = 0; r < rings; ++r)
      for (int j = 0; j < points; ++j)
        truth.at(t, r, j) = ph.truth[t][(size_t)r * points + j];
  write_net_csv(out_dir + "/truth_net.csv", truth);
  json meta;
  meta["size"] = size;
  meta["frames"] = frames;
  meta["dirs"] = dirs;
  meta["tag_freq"] = tag_freq;
  meta["fade"] = fade;
  meta["motion"] = motion;
  meta["rings"] = rings;
  meta["points"] = points;
  std::ofstream o(out_dir + "/phantom.json");
  o << meta.dump(2) << "\n";
  emit_report(report_path, meta, timer.ms());
  return 0;
}

struct FreqOptions {
  int K = 32;
  double window_a = 0.25;
  double dc_radius = 2.0;
  std::string refine = "com";
};

FrequencyField freqfield_of_image(const std::vector<double>& img, int size,
                                  const FreqOptions& fo) {
  if (size % fo.K != 0)
    throw ValidationError("freqfield: grid cells must divide the image size");
  int M = fo.K;
  int L = size / fo.K;
  if (M % L != 0)
    throw ValidationError("freqfield: cells incompatible with the stride (P = M/L)");
  GaborParams p = GaborParams::create(size, fo.K, M, 4 * M, fo.window_a);
  Window w = make_gaussian_window(p);
  PhaseField2 G = gabor2d_analysis(img, size, w, p);
  return frequency_field(G, fo.dc_radius,
                         fo.refine == "argmax" ? FreqRefine::argmax
                                               : FreqRefine::center_of_mass);
}

int cmd_freqfield(const std::string& image, const FreqOptions& fo, const std::string& out,
                  const std::string& render_path, const std::string& report_path) {
  Timer timer;
  int wpx = 0, hpx = 0;
  std::vector<double> img;
  if (image.size() > 4 && image.substr(image.size() - 4) == ".pgm")
    img = read_pgm(image, wpx, hpx);
  else
    img = read_raster(image, wpx, hpx);
  if (wpx != hpx) throw ValidationError("freqfield: image must be square");
  FrequencyField F = freqfield_of_image(img, wpx, fo);
  write_frequency_csv(out, F);
  if (!render_path.empty()) write_ppm(render_path, render_frequency(img, wpx, F));
  json report;
  report["command"] = "freqfield";
  report["cells"] = fo.K;
  report["window_a"] = fo.window_a;
  emit_report(report_path, report, timer.ms());
  return 0;
}

int cmd_defnet(const std::string& dir, const FreqOptions& fo, double cond_threshold,
               const std::string& out, const std::string& render_path,
               const std::string& report_path) {
  Timer timer;
  std::ifstream meta_in(dir + "/phantom.json");
  if (!meta_in) throw ValidationError("defnet: missing " + dir + "/phantom.json");
  json meta = json::parse(meta_in);
  int size = meta.at("size"), frames = meta.at("frames"), dirs = meta.at("dirs");
  int rings = meta.at("rings"), points = meta.at("points");

  std::vector<std::vector<FrequencyField>> fields(frames);
  for (int t = 0; t < frames; ++t) {
    fields[t].resize(dirs);
    for (int d = 0; d < dirs; ++d) {
      char name[64];
      std::snprintf(name, sizeof(name), "frame%03d_dir%d.f64", t, d);
      int w = 0, h = 0;
      auto img = read_raster(dir + "/" + std::string(name), w, h);
      fields[t][d] = freqfield_of_image(img, size, fo);
    }
  }
  std::vector<DeformationGradientField> D;
  for (int t = 1; t < frames; ++t)
    D.push_back(deformation_gradient(fields[t], fields[t - 1], cond_threshold));

  std::ifstream net_in(dir + "/truth_net.csv");
  if (!net_in) throw ValidationError("defnet: missing " + dir + "/truth_net.csv");
  std::string line;
  std::getline(net_in, line);  // header
  std::vector<Vec2> truth((size_t)frames * rings * points);
  while (std::getline(net_in, line)) {
    int t, r, j;
    double x, y;
    if (std::sscanf(line.c_str(), "%d,%d,%d,%lf,%lf", &t, &r, &j, &x, &y) == 5)
      truth[((size_t)t * rings + r) * points + j] = {x, y};
  }
  std::vector<Vec2> grid0(truth.begin(), truth.begin() + (size_t)rings * points);
  std::vector<Vec2> seed(frames);
  for (int t = 0; t < frames; ++t) seed[t] = truth[(size_t)t * rings * points];

  DeformationNet net = deformation_net(D, seed, grid0, rings, points, size);
  write_net_csv(out, net);
  double err = 0.0;
  for (int r = 0; r < rings; ++r)
    for (int j = 0; j < points; ++j) {
      const Vec2& a = net.at(frames - 1, r, j);
      const Vec2& b = truth[((size_t)(frames - 1) * rings + r) * points + j];
      err += std::hypot(a[0] - b[0], a[1] - b[1]);
    }
  err /= double(rings) * points;
  std::printf("mean final-frame net error: %.4f px\n", err);
  if (!render_path.empty()) {
    int w = 0, h = 0;
    char name[64];
    std::snprintf(name, sizeof(name), "frame%03d_dir%d.f64", frames - 1, 0);
    auto img = read_raster(dir + "/" + std::string(name), w, h);
    write_ppm(render_path, render_net(img, size, net, frames - 1));
  }
  json report;
  report["command"] = "defnet";
  report["mean_final_error_px"] = err;
  emit_report(report_path, report, timer.ms());
  return 0;
}

int cmd_render(const std::string& in, const std::string& out, const std::string& style) {
  PhaseField G = read_phase_field(in);
  RenderStyle st;
  if (style == "phase-hue")
    st = RenderStyle::phase_hue;
  else if (style == "modulus-gray")
    st = RenderStyle::modulus_gray;
  else if (style == "overlay")
    st = RenderStyle::overlay;
  else
    throw ValidationError("render: unknown style " + style);
  write_ppm(out, render_field(G, st));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gabor transforms on the finite Heisenberg quotient and their evolutions"};
  app.require_subcommand(1);

  std::string in, out, preset, params_path, window = "gaussian", report_path;
  bool inverse = false;
  int N = 0, K = 0, M = 0, Q = 0;
  double a = 0.0;
  auto* gab = app.add_subcommand("gabor", "analysis / synthesis of 1D signals");
  gab->add_flag("--inverse", inverse, "synthesize a signal from a field");
  gab->add_option("--preset", preset, "parameter preset (paper128)");
  gab->add_option("--params", params_path, "grid parameters JSON file");
  gab->add_option("--N", N);
  gab->add_option("--K", K);
  gab->add_option("--M", M);
  gab->add_option("--Q", Q);
  gab->add_option("--a", a, "window scale");
  gab->add_option("--window", window, "gaussian | gaussian-shifted | cr");
  gab->add_option("--report", report_path, "run report JSON");
  gab->add_option("input", in)->required();
  gab->add_option("output", out)->required();

  std::string r_method = "upwind", r_window = "gaussian", r_ref, r_report, r_render;
  double r_a = 0.0, r_t = 0.1, r_dt = 1e-3, r_eta = 1.0;
  std::string r_in, r_out;
  auto* rea = app.add_subcommand("reassign", "differential reassignment of a field");
  rea->add_option("--method", r_method, "upwind | erosion");
  rea->add_option("--window", r_window, "gaussian | cr (for the reconstruction report)");
  rea->add_option("--a", r_a, "kernel scale (defaults to the field's)");
  rea->add_option("--t", r_t, "evolution time");
  rea->add_option("--dt", r_dt, "upwind step");
  rea->add_option("--eta", r_eta, "erosion kernel exponent");
  rea->add_option("--reference", r_ref, "reference signal for eps1/eps2");
  rea->add_option("--report", r_report);
  rea->add_option("--render-ppm", r_render);
  rea->add_option("input", r_in)->required();
  rea->add_option("output", r_out)->required();

  std::string d_mode = "ced", d_adapt = "hessian", d_report;
  double d_beta = 0.0, d_eps = 0.2, d_c = 1.0, d_sigma = 2.0, d_dt = 0.0, d_t = 1.0;
  double d_d11 = 1.0, d_d22 = 1.0, d_trunc = 1e-8;
  bool d_readapt = false;
  std::string d_in, d_out;
  auto* dif = app.add_subcommand("diffuse", "left-invariant diffusion of a field");
  dif->add_option("--mode", d_mode, "ced | linear");
  dif->add_option("--beta", d_beta, "metric balance (0 = grid default)");
  dif->add_option("--eps", d_eps);
  dif->add_option("--c", d_c);
  dif->add_option("--sigma", d_sigma);
  dif->add_option("--dt", d_dt, "step (0 = half the stability bound)");
  dif->add_option("--t", d_t);
  dif->add_option("--adapt", d_adapt, "hessian | structure");
  dif->add_flag("--readapt", d_readapt, "re-adapt to the evolving modulus");
  dif->add_option("--d11", d_d11);
  dif->add_option("--d22", d_d22);
  dif->add_option("--truncation", d_trunc);
  dif->add_option("--report", d_report);
  dif->add_option("input", d_in)->required();
  dif->add_option("output", d_out)->required();

  double c_b = 0.5, c_r = 1.0, c_a = 1.0, c_t = 0.0, c_eta = 0.5;
  int c_K = 128, c_M = 128;
  std::string c_out, c_json;
  auto* cho = app.add_subcommand("chirp-oracle", "exact (eroded) chirp transform");
  cho->add_option("--b", c_b);
  cho->add_option("--r", c_r);
  cho->add_option("--a", c_a);
  cho->add_option("--t", c_t);
  cho->add_option("--eta", c_eta);
  cho->add_option(
         "--grid",
         [&c_K, &c_M](const std::vector<std::string>& v) {
           if (v.size() != 2) return false;
           c_K = std::stoi(v[0]);
           c_M = std::stoi(v[1]);
           return true;
         },
         "K M")
      ->expected(2);
  cho->add_option("--out", c_out, "field output (.gabor)");
  cho->add_option("--json", c_json, "eigenframe JSON output");

  std::string p_dir, p_motion = "scale-rotate", p_report;
  int p_size = 64, p_frames = 10, p_dirs = 4, p_rings = 8, p_points = 50;
  double p_tag = 0.125, p_fade = 0.05;
  auto* pha = app.add_subcommand("phantom", "synthetic tagged image stack");
  pha->add_option("--out-dir", p_dir)->required();
  pha->add_option("--size", p_size);
  pha->add_option("--frames", p_frames);
  pha->add_option("--dirs", p_dirs);
  pha->add_option("--tag-freq", p_tag, "cycles per pixel");
  pha->add_option("--fade", p_fade, "intensity loss per frame");
  pha->add_option("--motion", p_motion, "identity | rotate | scale-rotate");
  pha->add_option("--rings", p_rings);
  pha->add_option("--points", p_points);
  pha->add_option("--report", p_report);

  std::string f_image, f_out, f_render, f_report;
  FreqOptions fo;
  auto* fre = app.add_subcommand("freqfield", "local frequency covector field of an image");
  fre->add_option("--image", f_image)->required();
  fre->add_option("--cells", fo.K, "position cells per axis");
  fre->add_option("--window-a", fo.window_a, "window scale");
  fre->add_option("--dc-radius", fo.dc_radius, "DC mask radius in bins");
  fre->add_option("--refine", fo.refine, "argmax | com");
  fre->add_option("--out", f_out)->required();
  fre->add_option("--render-ppm", f_render);
  fre->add_option("--report", f_report);

  std::string n_dir, n_out, n_render, n_report;
  FreqOptions nfo;
  double n_cond = 1e6;
  auto* net = app.add_subcommand("defnet", "deformation net from a phantom directory");
  net->add_option("--dir", n_dir)->required();
  net->add_option("--cells", nfo.K);
  net->add_option("--window-a", nfo.window_a);
  net->add_option("--dc-radius", nfo.dc_radius);
  net->add_option("--refine", nfo.refine);
  net->add_option("--cond-threshold", n_cond);
  net->add_option("--out", n_out)->required();
  net->add_option("--render-ppm", n_render);
  net->add_option("--report", n_report);

  std::string v_in, v_out, v_style = "phase-hue";
  auto* ren = app.add_subcommand("render", "render a field to PPM");
  ren->add_option("--style", v_style, "phase-hue | modulus-gray | overlay");
  ren->add_option("input", v_in)->required();
  ren->add_option("output", v_out)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gab->parsed())
      return cmd_gabor(in, out, inverse, preset, params_path, N, K, M, Q, a, window,
                       report_path);
    if (rea->parsed())
      return cmd_reassign(r_in, r_out, r_method, r_window, r_a, r_t, r_dt, r_eta, r_ref,
                          r_report, r_render);
    if (dif->parsed())
      return cmd_diffuse(d_in, d_out, d_mode, d_beta, d_eps, d_c, d_sigma, d_dt, d_t,
                         d_adapt, d_readapt, d_d11, d_d22, d_trunc, d_report);
    if (cho->parsed())
      return cmd_chirp_oracle(c_b, c_r, c_a, c_t, c_eta, c_K, c_M, c_out, c_json);
    if (pha->parsed())
      return cmd_phantom(p_dir, p_size, p_frames, p_dirs, p_tag, p_fade, p_motion,
                         p_rings, p_points, p_report);
    if (fre->parsed()) return cmd_freqfield(f_image, fo, f_out, f_render, f_report);
    if (net->parsed()) return cmd_defnet(n_dir, nfo, n_cond, n_out, n_render, n_report);
    if (ren->parsed()) return cmd_render(v_in, v_out, v_style);
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
