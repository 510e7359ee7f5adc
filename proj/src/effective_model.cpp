#include "mechent/effective_model.hpp"

#include <algorithm>
#include <cmath>

#include "mechent/core_model.hpp"
#include "mechent/errors.hpp"

namespace mechent {

EffectiveModel build_effective_model(const ModelInputs& in) {
  using namespace std::complex_literals;
  EffectiveModel m;
  m.inputs = in;
  const double k1 = in.kappa[0];
  const double k2 = in.kappa[1];
  const double g1 = in.coupling[0];
  const double g2 = in.coupling[1];
  const double lambda = in.gain;

  const double k = 0.25 * k1 * k2 - lambda * lambda;
  if (std::abs(k) <= 1e-14 * 0.25 * k1 * k2) {
    throw SingularError("cavity elimination is singular: Lambda = sqrt(kappa1 kappa2)/2");
  }
  m.denominator = k;
  m.beyond_threshold = k < 0.0;

  m.optical_damping = {g1 * g1 * k2 / k, g2 * g2 * k1 / k};
  m.damping = {in.gamma[0] + m.optical_damping[0], in.gamma[1] + m.optical_damping[1]};

  const Complex pump = std::polar(1.0, in.pump_phase);
  m.coupling = (g1 * g2 / k) * lambda * pump;
  m.a = {1.0i * g1 * k2 / (2.0 * k), 1.0i * g2 * k1 / (2.0 * k)};
  m.b = {1.0i * g1 * lambda * pump / k, 1.0i * g2 * lambda * pump / k};
  return m;
}

EffectiveModel build_effective_model(const ReducedParams& p) {
  return build_effective_model(model_inputs(p));
}

EffectiveModel build_effective_model(const OperatingPoint& op) {
  return build_effective_model(model_inputs(op));
}

Mat4 build_drift(const EffectiveModel& m) {
  // Re/Im of chi equal |chi| cos(theta), |chi| sin(theta) whenever K > 0.
  const double c = m.coupling.real();
  const double s = m.coupling.imag();
  const double u1 = -0.5 * m.damping[0];
  const double u2 = -0.5 * m.damping[1];
  Mat4 drift;
  // clang-format off
  drift << u1,  0.0, c,   s,
           0.0, u1,  s,  -c,
           c,   s,   u2,  0.0,
           s,  -c,   0.0, u2;
  // clang-format on
  return drift;
}

DiffusionEntries diffusion_entries(const EffectiveModel& m) {
  const ModelInputs& in = m.inputs;
  const double k1 = in.kappa[0];
  const double k2 = in.kappa[1];
  const double root = std::sqrt(k1 * k2);
  const double thermal_photon = 2.0 * in.reservoir_n + 1.0;
  const Complex mm = in.reservoir_m;
  const Complex mc = std::conj(mm);
  const Complex a1 = m.a[0], a2 = m.a[1], b1 = m.b[0], b2 = m.b[1];
  const Complex a1c = std::conj(a1), a2c = std::conj(a2);
  const Complex b1c = std::conj(b1), b2c = std::conj(b2);

  DiffusionEntries f;
  f.f11 = 0.5 * ((std::norm(a1) * k1 + std::norm(b1) * k2) * thermal_photon +
                 2.0 * (b1c * a1 * mm + a1c * b1 * mc).real() * root +
                 in.gamma[0] * (2.0 * in.occupancy[0] + 1.0));
  f.f33 = 0.5 * ((std::norm(a2) * k2 + std::norm(b2) * k1) * thermal_photon +
                 2.0 * (b2c * a2 * mm + a2c * b2 * mc).real() * root +
                 in.gamma[1] * (2.0 * in.occupancy[1] + 1.0));

  const Complex f13 = 0.25 * (((b2c * a1c + b2 * a1) * k1 + (b1c * a2c + b1 * a2) * k2) * thermal_photon +
                              2.0 * ((b1c * b2c + a1 * a2) * mm + (b1 * b2 + a1c * a2c) * mc) * root);
  // The squeezed-reservoir terms follow from expanding the symmetrized
  // correlator <S1 S4 + S4 S1>/2 term by term: the b-b products enter with
  // the opposite sign to the a-a products.
  const Complex f14 =
      Complex(0.0, 0.25) * (((b2c * a1c - b2 * a1) * k1 + (b1c * a2c - b1 * a2) * k2) * thermal_photon -
                            2.0 * ((a1 * a2 - b1c * b2c) * mm - (a1c * a2c - b1 * b2) * mc) * root);
  f.f13 = f13.real();
  f.f14 = f14.real();
  return f;
}

Mat4 build_diffusion(const EffectiveModel& m) {
  const DiffusionEntries f = diffusion_entries(m);
  Mat4 d;
  // clang-format off
  d << f.f11, 0.0,    f.f13,  f.f14,
       0.0,   f.f11,  f.f14, -f.f13,
       f.f13, f.f14,  f.f33,  0.0,
       f.f14, -f.f13, 0.0,    f.f33;
  // clang-format on
  const Eigen::SelfAdjointEigenSolver<Mat4> eig(d, Eigen::EigenvaluesOnly);
  const double scale = d.cwiseAbs().maxCoeff();
  if (eig.eigenvalues().minCoeff() < -1e-12 * std::max(scale, 1e-300)) {
    throw PhysicalityError("diffusion matrix is not positive semidefinite");
  }
  return d;
}

StateMatrices build_state_matrices(const EffectiveModel& m) {
  return {build_drift(m), build_diffusion(m)};
}

}  // namespace mechent
