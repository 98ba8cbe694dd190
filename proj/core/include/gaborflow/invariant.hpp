#pragma once

#include "gaborflow/fields.hpp"

namespace gaborflow {

enum class Axis { spatial = 1, frequency = 2, phase = 3 };
enum class Dir { forward, backward };

// Metric balance between position and frequency; beta^{-1} has dimension
// length.
struct MetricParams {
  double beta = 1.0;
};

// Default: one spatial and one frequency grid step get equal metric length,
// beta^2 = dq/dp.
double default_beta_sq(const GaborParams& p);

// Left-invariant forward/backward differences on phase space, periodic in l
// and m. Forward spatial: K (e^{-2 pi i L m / M} G[l+1,m] - G[l,m]); forward
// frequency: (M/N)(G[l,m+1] - G[l,m]); the phase axis is the multiplication
// Q (e^{∓2 pi i / Q} - 1) G.
PhaseField diff_phase(const PhaseField& G, Axis axis, Dir dir);

// Group-shift differences (U(g e_i^{±1}) ∓ U(g)) / step with exact group
// arithmetic; steps dp = 1/K, dq = N/M, ds = 1/Q.
GroupField diff_group(const GroupField& W, Axis axis, Dir dir);

// Relative l2 norm of the centered Cauchy-Riemann operator
// (1/a)(A2+ + A2-) + i a (A1+ + A1-) applied to G, normalized by the sizes of
// its two halves.
double cr_residual(const PhaseField& G, double a);

}  // namespace gaborflow
