#pragma once

#include "mechent/params.hpp"

namespace mechent {

/// Bose-Einstein occupancy of a mechanical bath, [exp(hbar W / kB T) - 1]^-1.
/// Returns exactly 0 at T = 0.
double thermal_occupancy(double mechanical_frequency, double temperature);

struct ReservoirMoments {
  double n = 0.0;       // sinh^2 r
  Complex m{0.0, 0.0};  // e^{i phi} cosh r sinh r
};

ReservoirMoments reservoir_moments(double squeeze_r, double squeeze_phase);

/// Single-photon coupling (nu / L) sqrt(hbar / (2 m Omega)).
double single_photon_coupling(double cavity_frequency, double length, double mass,
                              double mechanical_frequency);

/// Steady cavity amplitudes (before the laser-phase rotation) for drive
/// amplitudes E_j at effective detunings Delta_j.
ComplexPair steady_cavity_amplitudes(const ModePair& drive, const ModePair& kappa,
                                     const ModePair& detuning, double gain);

/// Full operating-point derivation from laboratory parameters. The effective
/// detunings are taken as given (no self-consistent iteration); the residual
/// is reported in OperatingPoint::detuning_residual.
OperatingPoint derive_operating_point(const PhysicalParams& p);

ReducedParams reduce(const PhysicalParams& p);

ModelInputs model_inputs(const ReducedParams& p);
ModelInputs model_inputs(const OperatingPoint& op);

}  // namespace mechent
