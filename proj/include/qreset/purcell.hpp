// purcell.hpp — Closed-form idle-time Purcell feasibility formulas
//
// All quantities are angular rates in a consistent unit system (the CLI converts
// plain frequencies with an explicit 2π at the boundary). These formulas describe
// the far-detuned idle configuration and are not validated against the resonant
// simulation engine.
#pragma once

namespace qreset::purcell {

struct PurcellQuery {
    double detuning;      // Δ between main and auxiliary systems
    double coupling;      // g
    double induced_rate;  // γ (or Γ_eff) of the element coupled to the main qubit
};

// T_Purcell = (Δ/g)² / γ
double purcell_time(const PurcellQuery& q);

// Γ_eff = λ²/κ: effective decay of an ancilla resonantly coupled to a lossy mode.
double effective_decay(double lambda, double kappa);

// Δ = g·sqrt(T_target·γ): exact inverse of purcell_time.
double required_detuning(double t_target, double coupling, double induced_rate);

} // namespace qreset::purcell
