#pragma once

#include "envent/units.hpp"

#include <Eigen/Dense>

namespace envent {

struct SpectralDensityModel {
  BathDimension dimension = BathDimension::One;
  double gamma = 0.0;
  double cutoff = 1.0;

  void validate() const;
};

using NoiseMatrix = Eigen::MatrixXd;

SpectralDensityModel bath_model(const DimensionlessConfig& cfg);

// J(w) for w >= 0 at reduced distance rho
double spectral_density(const SpectralDensityModel& m, double rho, double omega);

// static renormalization (counter-term) Omega~(rho)
double renormalization(const SpectralDensityModel& m, double rho);
Eigen::MatrixXd renormalization_matrix(const SpectralDensityModel& m, const Eigen::MatrixXd& rho);

// retarded susceptibility chi(t)/hbar in the time domain, 1D and 3D only.
// The kernel is the sine transform -(2/pi) int_0^inf J(w) sin(w t) dw, so it vanishes for t < 0.
double susceptibility_time(const SpectralDensityModel& m, double rho, double t);

// J(|w|) coth(|w| / 2T) entrywise, with the analytic w -> 0 and T -> 0 limits
NoiseMatrix noise_matrix(const SpectralDensityModel& m, const Eigen::MatrixXd& rho, double omega, double theta);

}  // namespace envent
