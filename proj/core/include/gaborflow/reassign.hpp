#pragma once

#include <utility>
#include <vector>

#include "gaborflow/erosion.hpp"
#include "gaborflow/fields.hpp"

namespace gaborflow {

enum class ReassignMethod { upwind, erosion };
enum class Mobility { unit, modulus };

struct ReassignParams {
  double t_final = 0.1;
  double dt = 1e-3;             // upwind only
  double a = 0.125;             // window scale entering kernels and velocities
  double eta = 1.0;             // erosion kernel exponent
  ReassignMethod method = ReassignMethod::upwind;
  Mobility mobility = Mobility::unit;
};

struct UpwindStats {
  long frozen_cells = 0;
  int steps = 0;
};

// Explicit upwind convection along the Cauchy-Riemann velocity field
//   v_p = -a^2 d_p log|G0|,  v_q = -a^-2 d_q log|G0|
// (centered differences of the initial modulus, frozen), stepped with the
// left-invariant differences and upwind switching z+/z-. Cells whose modulus
// is below 1e-300 get velocity zero and are counted in stats.
PhaseField upwind_reassign(const PhaseField& G, const ReassignParams& rp,
                           UpwindStats* stats = nullptr);

// Erosion of the modulus with the phase stored and restored untouched.
PhaseField erosion_reassign(const PhaseField& G, const ReassignParams& rp);

// eps1 = ||f - g|| / ||f||, eps2 = || |f| - |g| || / ||f||.
std::pair<double, double> reconstruction_errors(const std::vector<cplx>& f,
                                                const std::vector<cplx>& g);

// g scaled so its energy equals the energy of f.
std::vector<cplx> energy_rescale(const std::vector<cplx>& g, const std::vector<cplx>& f);

}  // namespace gaborflow
