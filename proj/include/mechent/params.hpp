#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace mechent {

using ModePair = std::array<double, 2>;
using Complex = std::complex<double>;
using ComplexPair = std::array<Complex, 2>;

/// Laboratory-unit description of the two cavity/mirror pairs.
///
/// All frequencies and rates are angular (rad/s). Index 0 is cavity/mirror 1,
/// index 1 is cavity/mirror 2.
struct PhysicalParams {
  ModePair laser_frequency{};       // omega_j, rad/s
  ModePair cavity_frequency{};      // nu_j, rad/s
  ModePair mechanical_frequency{};  // Omega_j, rad/s
  ModePair mass{};                  // kg
  ModePair length{};                // m
  ModePair kappa{};                 // cavity decay, rad/s
  ModePair gamma{};                 // mechanical damping, rad/s
  ModePair power{};                 // drive power, W
  double gain = 0.0;                // NDOPA gain Lambda, rad/s
  double pump_phase = 0.0;          // theta, rad
  double squeeze_r = 0.0;           // reservoir squeezing strength
  double squeeze_phase = 0.0;       // phi, rad
  ModePair temperature{};           // K
  ModePair detuning{};              // effective detuning Delta_j, rad/s

  /// Throws DomainError on non-finite or out-of-range fields.
  void validate() const;

  /// Lambda < sqrt(kappa_1 kappa_2) / 2; violations are flagged, not rejected.
  bool below_gain_threshold() const;

  /// Symmetric experimental set: 1064 nm, Omega/2pi = 947 kHz, 145 ng,
  /// 25 mm, kappa/2pi = 215 kHz, gamma/2pi = 140 Hz, 0.3 mW, T = 42 uK,
  /// red-detuned (Delta = Omega), r = 1, Lambda = 0.
  static PhysicalParams experimental();
};

/// Dimensionless (symmetric-cavity) parameterization used by the figures.
struct ReducedParams {
  double kappa = 0.0;                 // rad/s
  double gamma = 0.0;                 // rad/s
  double cooperativity = 0.0;         // C = 4 G^2 / (gamma kappa)
  double gain_over_kappa = 0.0;       // Lambda / kappa
  double pump_phase = 0.0;            // theta, rad
  double squeeze_r = 0.0;
  double squeeze_phase = 0.0;         // phi, rad
  ModePair occupancy{};               // n_1, n_2
  double mechanical_frequency = 0.0;  // rad/s, only needed for temperature axes

  void validate() const;

  double coupling() const;  // G = sqrt(C gamma kappa) / 2

  /// kappa/2pi = 215 kHz, gamma/2pi = 140 Hz, C = 62.5, r = 1, n = 0.5,
  /// Omega/2pi = 947 kHz, Lambda = 0, theta = phi = 0.
  static ReducedParams figure_baseline();
};

/// Everything the linearized dynamics needs, per mode. Both parameterizations
/// funnel into this.
struct ModelInputs {
  ModePair kappa{};
  ModePair gamma{};
  ModePair coupling{};  // G_j, rad/s
  double gain = 0.0;    // Lambda, rad/s
  double pump_phase = 0.0;
  ModePair occupancy{};
  double reservoir_n = 0.0;        // N = sinh^2 r
  Complex reservoir_m{0.0, 0.0};   // M = e^{i phi} cosh r sinh r
  double squeeze_phase = 0.0;      // carried for precondition checks

  double mean_kappa() const;  // sqrt(kappa_1 kappa_2)
  bool symmetric(double rel_tol = 1e-12) const;
};

/// Steady state of the driven cavities and mirrors around which the
/// fluctuations are linearized.
struct OperatingPoint {
  ModePair single_photon_coupling{};  // g_j, rad/s
  ModePair drive_amplitude{};         // E_j, rad/s sqrt(photon)
  ComplexPair cavity_amplitude{};     // c_j^s, rotated real-positive
  ModePair laser_phase{};             // phi_j that makes c_j^s real
  ComplexPair mirror_displacement{};  // d_j^s
  ModePair coupling{};                // G_j = g_j |c_j^s|
  double cooperativity = 0.0;
  ModePair occupancy{};
  double reservoir_n = 0.0;
  Complex reservoir_m{0.0, 0.0};
  ModePair detuning_residual{};  // Delta'_j - Delta_j - g_j (d + d*), rad/s
  ModePair quality_factor{};     // Omega_j / gamma_j
  bool above_gain_threshold = false;
  std::vector<std::string> warnings;

  ModelInputs inputs;  // kappa, gamma, gain, phases carried through
};

/// Wraps an angle into [0, 2 pi).
double normalize_phase(double angle);

}  // namespace mechent
