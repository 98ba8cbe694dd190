#include "gaborflow/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "gaborflow/errors.hpp"

namespace gaborflow {

namespace {

bool has_suffix(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("io: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_all(const std::string& path, const void* data, size_t bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("io: cannot write " + path);
  out.write(reinterpret_cast<const char*>(data), (std::streamsize)bytes);
  if (!out) throw ComputationError("io: short write to " + path);
}

std::vector<double> read_doubles(const std::string& path, size_t count) {
  std::string bytes = slurp(path);
  if (bytes.size() != count * sizeof(double))
    throw ValidationError("io: size mismatch in " + path);
  std::vector<double> v(count);
  std::memcpy(v.data(), bytes.data(), bytes.size());
  return v;
}

}  // namespace

std::vector<cplx> read_signal(const std::string& path) {
  if (has_suffix(path, ".csv")) {
    std::ifstream in(path);
    if (!in) throw ValidationError("io: cannot open " + path);
    std::vector<cplx> f;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      double re = 0.0, im = 0.0;
      if (std::sscanf(line.c_str(), "%lf,%lf", &re, &im) < 1)
        throw ValidationError("io: bad csv line in " + path);
      f.emplace_back(re, im);
    }
    return f;
  }
  nlohmann::json meta = nlohmann::json::parse(slurp(path + ".json"));
  if (meta.value("dtype", "") != "c128")
    throw ValidationError("io: signal sidecar must declare dtype c128");
  size_t n = meta.at("n").get<size_t>();
  std::vector<double> raw = read_doubles(path, 2 * n);
  std::vector<cplx> f(n);
  for (size_t i = 0; i < n; ++i) f[i] = cplx(raw[2 * i], raw[2 * i + 1]);
  return f;
}

void write_signal(const std::string& path, const std::vector<cplx>& f) {
  if (has_suffix(path, ".csv")) {
    std::ofstream out(path);
    if (!out) throw ValidationError("io: cannot write " + path);
    out.precision(17);
    for (const cplx& z : f) out << z.real() << "," << z.imag() << "\n";
    return;
  }
  std::vector<double> raw(2 * f.size());
  for (size_t i = 0; i < f.size(); ++i) {
    raw[2 * i] = f[i].real();
    raw[2 * i + 1] = f[i].imag();
  }
  write_all(path, raw.data(), raw.size() * sizeof(double));
  nlohmann::json meta;
  meta["n"] = f.size();
  meta["dtype"] = "c128";
  std::ofstream side(path + ".json");
  side << meta.dump(2) << "\n";
}

PhaseField read_phase_field(const std::string& path) {
  GaborParams p = GaborParams::from_json(slurp(path + ".json"));
  std::vector<double> raw = read_doubles(path, 2 * (size_t)p.K * p.M);
  PhaseField G(p);
  for (size_t i = 0; i < G.data.size(); ++i) G.data[i] = cplx(raw[2 * i], raw[2 * i + 1]);
  return G;
}

void write_phase_field(const std::string& path, const PhaseField& G) {
  std::vector<double> raw(2 * G.data.size());
  for (size_t i = 0; i < G.data.size(); ++i) {
    raw[2 * i] = G.data[i].real();
    raw[2 * i + 1] = G.data[i].imag();
  }
  write_all(path, raw.data(), raw.size() * sizeof(double));
  std::ofstream side(path + ".json");
  side << G.params.to_json() << "\n";
}

std::vector<double> read_pgm(const std::string& path, int& width, int& height) {
  std::string bytes = slurp(path);
  std::istringstream in(bytes);
  std::string magic;
  in >> magic;
  if (magic != "P5") throw ValidationError("io: not a binary PGM: " + path);
  auto next_token = [&]() {
    std::string tok;
    while (in >> tok) {
      if (tok[0] == '#') {
        std::string rest;
        std::getline(in, rest);
        continue;
      }
      return tok;
    }
    throw ValidationError("io: truncated PGM header: " + path);
  };
  width = std::stoi(next_token());
  height = std::stoi(next_token());
  int maxval = std::stoi(next_token());
  in.get();  // single whitespace after header
  size_t pos = (size_t)in.tellg();
  std::vector<double> img((size_t)width * height);
  if (maxval < 256) {
    if (bytes.size() < pos + img.size()) throw ValidationError("io: truncated PGM data");
    for (size_t i = 0; i < img.size(); ++i)
      img[i] = (unsigned char)bytes[pos + i] / double(maxval);
  } else {
    if (bytes.size() < pos + 2 * img.size())
      throw ValidationError("io: truncated PGM data");
    for (size_t i = 0; i < img.size(); ++i) {
      unsigned hi = (unsigned char)bytes[pos + 2 * i];
      unsigned lo = (unsigned char)bytes[pos + 2 * i + 1];
      img[i] = double((hi << 8) | lo) / maxval;
    }
  }
  return img;
}

void write_pgm(const std::string& path, const std::vector<double>& img, int width,
               int height) {
  if ((int)img.size() != width * height) throw ValidationError("io: image shape");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("io: cannot write " + path);
  out << "P5\n" << width << " " << height << "\n255\n";
  for (double v : img) {
    double c = std::min(1.0, std::max(0.0, v));
    out.put((char)(unsigned char)std::lround(255.0 * c));
  }
}

std::vector<double> read_raster(const std::string& path, int& width, int& height) {
  nlohmann::json meta = nlohmann::json::parse(slurp(path + ".json"));
  width = meta.at("width").get<int>();
  height = meta.at("height").get<int>();
  return read_doubles(path, (size_t)width * height);
}

void write_raster(const std::string& path, const std::vector<double>& img, int width,
                  int height) {
  if ((int)img.size() != width * height) throw ValidationError("io: image shape");
  write_all(path, img.data(), img.size() * sizeof(double));
  nlohmann::json meta;
  meta["width"] = width;
  meta["height"] = height;
  std::ofstream side(path + ".json");
  side << meta.dump(2) << "\n";
}

void write_net_csv(const std::string& path, const DeformationNet& net) {
  std::ofstream out(path);
  if (!out) throw ValidationError("io: cannot write " + path);
  out.precision(12);
  out << "t,r,j,x,y\n";
  for (int t = 0; t < net.frames; ++t)
    for (int r = 0; r < net.rings; ++r)
      for (int j = 0; j < net.points; ++j) {
        const Vec2& v = net.at(t, r, j);
        out << t << "," << r << "," << j << "," << v[0] << "," << v[1] << "\n";
      }
}

void write_frequency_csv(const std::string& path, const FrequencyField& F) {
  std::ofstream out(path);
  if (!out) throw ValidationError("io: cannot write " + path);
  out.precision(12);
  out << "x,y,q1,q2,valid\n";
  for (int i = 0; i < F.K; ++i)
    for (int j = 0; j < F.K; ++j) {
      const Vec2& q = F.at(i, j);
      out << F.cell_x(i) << "," << F.cell_x(j) << "," << q[0] << "," << q[1] << ","
          << int(F.valid[(size_t)i * F.K + j]) << "\n";
    }
}

}  // namespace gaborflow
