#pragma once

#include <string>
#include <vector>

#include "gaborflow/fields.hpp"
#include "gaborflow/image2d.hpp"

namespace gaborflow {

// Signals: "re,im" CSV, or raw little-endian float64 interleaved complex with
// a JSON sidecar {"n": N, "dtype": "c128"} at path + ".json". Chosen by the
// .csv extension.
std::vector<cplx> read_signal(const std::string& path);
void write_signal(const std::string& path, const std::vector<cplx>& f);

// PhaseField: raw interleaved complex, row major [l][m], JSON sidecar with
// the grid parameters.
PhaseField read_phase_field(const std::string& path);
void write_phase_field(const std::string& path, const PhaseField& G);

// 8- or 16-bit binary PGM (P5), rescaled to [0, 1].
std::vector<double> read_pgm(const std::string& path, int& width, int& height);
void write_pgm(const std::string& path, const std::vector<double>& img, int width,
               int height);

// Real raster as raw float64 with a JSON sidecar {"width","height"}.
std::vector<double> read_raster(const std::string& path, int& width, int& height);
void write_raster(const std::string& path, const std::vector<double>& img, int width,
                  int height);

void write_net_csv(const std::string& path, const DeformationNet& net);
void write_frequency_csv(const std::string& path, const FrequencyField& F);

}  // namespace gaborflow
