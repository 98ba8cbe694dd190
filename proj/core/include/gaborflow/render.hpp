#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gaborflow/fields.hpp"
#include "gaborflow/image2d.hpp"

namespace gaborflow {

enum class RenderStyle { phase_hue, modulus_gray, overlay };

// Deterministic rendering: hue = arg/2pi, value = modulus rescaled by the
// field maximum. Rows are l, columns m; 3 bytes per pixel.
struct Pixmap {
  int width = 0, height = 0;
  std::vector<std::uint8_t> rgb;
};

Pixmap render_field(const PhaseField& G, RenderStyle style);
void write_ppm(const std::string& path, const Pixmap& pix);

// Net overlay on a grayscale background image.
Pixmap render_net(const std::vector<double>& background, int size,
                  const DeformationNet& net, int frame);

// Arrow plot of a frequency field (arrows scaled to the largest magnitude).
Pixmap render_frequency(const std::vector<double>& background, int size,
                        const FrequencyField& F);

}  // namespace gaborflow
