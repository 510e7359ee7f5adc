#include "mechent/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mechent/constants.hpp"
#include "mechent/errors.hpp"

namespace mechent {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

void require_positive(const ModePair& v, const char* what) {
  for (double x : v) {
    require_finite(x, what);
    if (!(x > 0.0)) throw DomainError(std::string(what) + " must be > 0");
  }
}

void require_non_negative(const ModePair& v, const char* what) {
  for (double x : v) {
    require_finite(x, what);
    if (x < 0.0) throw DomainError(std::string(what) + " must be >= 0");
  }
}

void require_non_negative(double x, const char* what) {
  require_finite(x, what);
  if (x < 0.0) throw DomainError(std::string(what) + " must be >= 0");
}

}  // namespace

double normalize_phase(double angle) {
  double wrapped = std::fmod(angle, kTwoPi);
  if (wrapped < 0.0) wrapped += kTwoPi;
  if (wrapped >= kTwoPi) wrapped = 0.0;
  return wrapped;
}

void PhysicalParams::validate() const {
  require_positive(laser_frequency, "laser_frequency");
  require_positive(cavity_frequency, "cavity_frequency");
  require_positive(mechanical_frequency, "mechanical_frequency");
  require_positive(mass, "mass");
  require_positive(length, "length");
  require_positive(kappa, "kappa");
  require_positive(gamma, "gamma");
  require_non_negative(power, "power");
  require_non_negative(temperature, "temperature");
  require_non_negative(detuning, "detuning");
  require_non_negative(gain, "gain");
  require_non_negative(squeeze_r, "squeeze_r");
  require_finite(pump_phase, "pump_phase");
  require_finite(squeeze_phase, "squeeze_phase");
}

bool PhysicalParams::below_gain_threshold() const {
  return gain < 0.5 * std::sqrt(kappa[0] * kappa[1]);
}

PhysicalParams PhysicalParams::experimental() {
  PhysicalParams p;
  const double omega_laser = kTwoPi * kSpeedOfLight / 1064e-9;
  const double omega_m = kTwoPi * 947e3;
  p.laser_frequency = {omega_laser, omega_laser};
  p.mechanical_frequency = {omega_m, omega_m};
  p.detuning = {omega_m, omega_m};
  p.cavity_frequency = {omega_laser + omega_m, omega_laser + omega_m};
  p.mass = {145e-12, 145e-12};
  p.length = {25e-3, 25e-3};
  p.kappa = {kTwoPi * 215e3, kTwoPi * 215e3};
  p.gamma = {kTwoPi * 140.0, kTwoPi * 140.0};
  p.power = {0.3e-3, 0.3e-3};
  p.gain = 0.0;
  p.pump_phase = 0.0;
  p.squeeze_r = 1.0;
  p.squeeze_phase = 0.0;
  p.temperature = {42e-6, 42e-6};
  return p;
}

void ReducedParams::validate() const {
  require_finite(kappa, "kappa");
  require_finite(gamma, "gamma");
  if (!(kappa > 0.0)) throw DomainError("kappa must be > 0");
  if (!(gamma > 0.0)) throw DomainError("gamma must be > 0");
  require_non_negative(cooperativity, "cooperativity");
  require_non_negative(gain_over_kappa, "gain_over_kappa");
  require_non_negative(squeeze_r, "squeeze_r");
  require_finite(pump_phase, "pump_phase");
  require_finite(squeeze_phase, "squeeze_phase");
  require_non_negative(occupancy, "occupancy");
  require_non_negative(mechanical_frequency, "mechanical_frequency");
}

double ReducedParams::coupling() const { return 0.5 * std::sqrt(cooperativity * gamma * kappa); }

ReducedParams ReducedParams::figure_baseline() {
  ReducedParams p;
  p.kappa = kTwoPi * 215e3;
  p.gamma = kTwoPi * 140.0;
  p.cooperativity = 62.5;
  p.gain_over_kappa = 0.0;
  p.pump_phase = 0.0;
  p.squeeze_r = 1.0;
  p.squeeze_phase = 0.0;
  p.occupancy = {0.5, 0.5};
  p.mechanical_frequency = kTwoPi * 947e3;
  return p;
}

double ModelInputs::mean_kappa() const { return std::sqrt(kappa[0] * kappa[1]); }

bool ModelInputs::symmetric(double rel_tol) const {
  auto close = [rel_tol](double a, double b) {
    return std::abs(a - b) <= rel_tol * std::max({std::abs(a), std::abs(b), 1e-300});
  };
  return close(kappa[0], kappa[1]) && close(gamma[0], gamma[1]) &&
         close(coupling[0], coupling[1]);
}

double thermal_occupancy(double mechanical_frequency, double temperature) {
  require_finite(mechanical_frequency, "mechanical_frequency");
  require_finite(temperature, "temperature");
  if (!(mechanical_frequency > 0.0)) throw DomainError("mechanical_frequency must be > 0");
  if (temperature < 0.0) throw DomainError("temperature must be >= 0");
  if (temperature == 0.0) return 0.0;
  const double x = kHbar * mechanical_frequency / (kBoltzmann * temperature);
  return 1.0 / std::expm1(x);
}

ReservoirMoments reservoir_moments(double squeeze_r, double squeeze_phase) {
  require_non_negative(squeeze_r, "squeeze_r");
  require_finite(squeeze_phase, "squeeze_phase");
  const double s = std::sinh(squeeze_r);
  const double c = std::cosh(squeeze_r);
  return {s * s, std::polar(c * s, squeeze_phase)};
}

double single_photon_coupling(double cavity_frequency, double length, double mass,
                              double mechanical_frequency) {
  return (cavity_frequency / length) * std::sqrt(kHbar / (2.0 * mass * mechanical_frequency));
}

ComplexPair steady_cavity_amplitudes(const ModePair& drive, const ModePair& kappa,
                                     const ModePair& detuning, double gain) {
  using namespace std::complex_literals;
  const Complex k1p = kappa[0] + 2.0i * detuning[0];
  const Complex k1m = kappa[0] - 2.0i * detuning[0];
  const Complex k2p = kappa[1] + 2.0i * detuning[1];
  const Complex k2m = kappa[1] - 2.0i * detuning[1];
  const double parametric = 4.0 * gain * gain;
  const Complex den1 = k1p * k2m - parametric;
  const Complex den2 = k2p * k1m - parametric;
  const double scale = std::max(std::norm(k1p), std::norm(k2p));
  if (std::abs(den1) <= 1e-14 * scale || std::abs(den2) <= 1e-14 * scale) {
    throw SingularError("steady-state denominator vanishes: 4 Lambda^2 matches the detuned cavity response");
  }
  return {2.0 * drive[0] * k2m / den1, 2.0 * drive[1] * k1m / den2};
}

OperatingPoint derive_operating_point(const PhysicalParams& p) {
  p.validate();
  OperatingPoint op;
  ModePair drive{};
  for (int j = 0; j < 2; ++j) {
    op.single_photon_coupling[j] = single_photon_coupling(
        p.cavity_frequency[j], p.length[j], p.mass[j], p.mechanical_frequency[j]);
    drive[j] = std::sqrt(p.kappa[j] * p.power[j] / (kHbar * p.laser_frequency[j]));
  }
  op.drive_amplitude = drive;

  const ComplexPair raw = steady_cavity_amplitudes(drive, p.kappa, p.detuning, p.gain);
  using namespace std::complex_literals;
  for (int j = 0; j < 2; ++j) {
    const double g = op.single_photon_coupling[j];
    const double amplitude = std::abs(raw[j]);
    // Laser phase chosen so c_j^s lies on the positive real axis.
    op.laser_phase[j] = amplitude > 0.0 ? normalize_phase(-std::arg(raw[j])) : 0.0;
    op.cavity_amplitude[j] = Complex(amplitude, 0.0);
    op.mirror_displacement[j] =
        2.0i * g * amplitude * amplitude / (p.gamma[j] + 2.0i * p.mechanical_frequency[j]);
    op.coupling[j] = g * amplitude;
    const double bare_detuning = p.cavity_frequency[j] - p.laser_frequency[j];
    op.detuning_residual[j] =
        bare_detuning - p.detuning[j] - 2.0 * g * op.mirror_displacement[j].real();
    op.quality_factor[j] = p.mechanical_frequency[j] / p.gamma[j];
    op.occupancy[j] = thermal_occupancy(p.mechanical_frequency[j], p.temperature[j]);
  }
  op.cooperativity = 4.0 * op.coupling[0] * op.coupling[1] /
                     (std::sqrt(p.gamma[0] * p.gamma[1]) * std::sqrt(p.kappa[0] * p.kappa[1]));

  const ReservoirMoments moments = reservoir_moments(p.squeeze_r, p.squeeze_phase);
  op.reservoir_n = moments.n;
  op.reservoir_m = moments.m;

  op.above_gain_threshold = !p.below_gain_threshold();
  if (op.above_gain_threshold) {
    op.warnings.emplace_back("gain at or above sqrt(kappa1 kappa2)/2: expect instability");
  }

  ModelInputs& in = op.inputs;
  in.kappa = p.kappa;
  in.gamma = p.gamma;
  in.coupling = op.coupling;
  in.gain = p.gain;
  in.pump_phase = normalize_phase(p.pump_phase);
  in.squeeze_phase = normalize_phase(p.squeeze_phase);
  in.occupancy = op.occupancy;
  in.reservoir_n = op.reservoir_n;
  in.reservoir_m = op.reservoir_m;
  return op;
}

ReducedParams reduce(const PhysicalParams& p) {
  const OperatingPoint op = derive_operating_point(p);
  ReducedParams r;
  r.kappa = std::sqrt(p.kappa[0] * p.kappa[1]);
  r.gamma = std::sqrt(p.gamma[0] * p.gamma[1]);
  r.cooperativity = op.cooperativity;
  r.gain_over_kappa = p.gain / r.kappa;
  r.pump_phase = normalize_phase(p.pump_phase);
  r.squeeze_r = p.squeeze_r;
  r.squeeze_phase = normalize_phase(p.squeeze_phase);
  r.occupancy = op.occupancy;
  r.mechanical_frequency = std::sqrt(p.mechanical_frequency[0] * p.mechanical_frequency[1]);
  return r;
}

ModelInputs model_inputs(const ReducedParams& p) {
  p.validate();
  ModelInputs in;
  const double g = p.coupling();
  in.kappa = {p.kappa, p.kappa};
  in.gamma = {p.gamma, p.gamma};
  in.coupling = {g, g};
  in.gain = p.gain_over_kappa * p.kappa;
  in.pump_phase = normalize_phase(p.pump_phase);
  in.squeeze_phase = normalize_phase(p.squeeze_phase);
  in.occupancy = p.occupancy;
  const ReservoirMoments moments = reservoir_moments(p.squeeze_r, p.squeeze_phase);
  in.reservoir_n = moments.n;
  in.reservoir_m = moments.m;
  return in;
}

ModelInputs model_inputs(const OperatingPoint& op) { return op.inputs; }

}  // namespace mechent
