// models.hpp — Builders for the three reset configurations
//
// All couplings and rates are dimensionless ratios; the primary coupling (g, or the
// qubit–cavity coupling for the transmon model) is fixed to 1 and sets the time unit.
// Level convention per subsystem: 0=g, 1=e, 2=f, 3=h...
#pragma once

#include "qreset/lindblad.hpp"

#include <optional>

namespace qreset::models {

using lindblad::ModelSpec;

// Main qubit exchanged-coupled to a dissipative auxiliary qubit. dims [2,2].
ModelSpec build_two_qubit(double gamma);

// Main qubit -> auxiliary qubit -> dissipative cavity chain. dims [2,2,n_cavity+1].
ModelSpec build_two_qubit_cavity(double lambda, double kappa, int n_cavity);

// Driven multilevel transmon coupled to a dissipative cavity, in the rotating frame
// of the drive. The anharmonic term is implemented exactly as (alpha/2) b'b'bb with
// the signed alpha given here; the two-photon f0-g1 resonance of that Hamiltonian
// sits at delta_c = 2*delta_q + alpha before drive-induced Stark shifts.
struct IbmParams {
    double omega = 0.6 * 3.14159265358979323846;  // drive amplitude in units of gtilde
    double kappa = 0.1;                           // cavity decay in units of gtilde
    double alpha = 20.0;                          // anharmonicity (signed, as-written)
    double delta_q = 20.0;                        // qubit-drive detuning
    std::optional<double> delta_c{};              // cavity-drive detuning; defaults to the
                                                  // Stark-corrected f0-g1 resonance
    int n_transmon = 4;
    int n_cavity = 5;
};

ModelSpec build_ibm(const IbmParams& p);

// The delta_c putting |f,0> and |g,1> on resonance in the *driven* Hamiltonian,
// found by minimizing the avoided-crossing gap over delta_c. The constant drive
// Stark-shifts both levels, so this differs from the bare 2*delta_q + alpha by
// O(omega^2/detunings); with the bare value the transfer is detuned dead.
double f0g1_resonant_delta_c(const IbmParams& p);

// trace(ground_projector * rho): ground population of the main subsystem only.
double ground_population(const hilbert::DensityMatrix& rho, const ModelSpec& model);

} // namespace qreset::models
