#include "envent/bath.hpp"

#include "envent/errors.hpp"

#include <cmath>

namespace envent {

namespace {

constexpr double kPi = constants::pi;
// below this rho the 3D forms switch to their rho -> 0 limits
constexpr double kSmallRho3D = 1e-5;

double coth_factor(double omega_abs, double temperature) {
  if (temperature <= 0.0) return 1.0;
  const double x = omega_abs / (2.0 * temperature);
  if (x > 40.0) return 1.0;
  return 1.0 / std::tanh(x);
}

}  // namespace

void SpectralDensityModel::validate() const {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ConfigError("coupling must be nonnegative");
  if (!(cutoff > 0.0) || !std::isfinite(cutoff)) throw ConfigError("cutoff must be positive");
}

SpectralDensityModel bath_model(const DimensionlessConfig& cfg) {
  SpectralDensityModel m{cfg.dimension, cfg.gamma, cfg.cutoff};
  m.validate();
  return m;
}

double spectral_density(const SpectralDensityModel& m, double rho, double omega) {
  if (omega < 0.0) throw DomainError("spectral density takes w >= 0");
  rho = std::abs(rho);
  const double wc = m.cutoff;
  const double x = omega / wc;
  const double env = std::exp(-x);
  switch (m.dimension) {
    case BathDimension::One: return kPi * m.gamma * omega * env * std::cos(rho * x);
    case BathDimension::Two: return 2.0 * kPi * kPi * m.gamma * omega * x * env * std::cyl_bessel_j(0.0, rho * x);
    case BathDimension::Three:
      if (rho < kSmallRho3D) return 4.0 * kPi * kPi * m.gamma * wc * x * x * x * env;
      return 4.0 * kPi * kPi * m.gamma * (wc / rho) * x * x * env * std::sin(rho * x);
  }
  return 0.0;
}

double renormalization(const SpectralDensityModel& m, double rho) {
  if (rho < 0.0) throw DomainError("renormalization takes rho >= 0");
  const double q = 1.0 + rho * rho;
  switch (m.dimension) {
    case BathDimension::One: return m.gamma * m.cutoff / q;
    case BathDimension::Two: return 2.0 * kPi * m.gamma * m.cutoff / std::pow(q, 1.5);
    case BathDimension::Three: return 8.0 * kPi * m.gamma * m.cutoff / (q * q);
  }
  return 0.0;
}

Eigen::MatrixXd renormalization_matrix(const SpectralDensityModel& m, const Eigen::MatrixXd& rho) {
  Eigen::MatrixXd out(rho.rows(), rho.cols());
  for (Eigen::Index i = 0; i < rho.rows(); ++i)
    for (Eigen::Index j = 0; j < rho.cols(); ++j) out(i, j) = renormalization(m, rho(i, j));
  return out;
}

double susceptibility_time(const SpectralDensityModel& m, double rho, double t) {
  if (t <= 0.0) return 0.0;
  rho = std::abs(rho);
  const double wc = m.cutoff;
  const double tau = wc * t;
  switch (m.dimension) {
    case BathDimension::One: {
      auto h = [](double u) {
        const double q = 1.0 + u * u;
        return u / (q * q);
      };
      return -2.0 * m.gamma * wc * wc * (h(tau + rho) + h(tau - rho));
    }
    case BathDimension::Three: {
      if (rho < kSmallRho3D) {
        const double q = 1.0 + tau * tau;
        return -192.0 * kPi * m.gamma * wc * wc * tau * (1.0 - tau * tau) / (q * q * q * q);
      }
      auto f = [](double u) {
        const double q = 1.0 + u * u;
        return (1.0 - 3.0 * u * u) / (q * q * q);
      };
      return 8.0 * kPi * m.gamma * wc * wc / rho * (f(tau + rho) - f(tau - rho));
    }
    case BathDimension::Two:
      throw ConfigError("the 2D bath supports only spectral densities and renormalizations");
  }
  return 0.0;
}

NoiseMatrix noise_matrix(const SpectralDensityModel& m, const Eigen::MatrixXd& rho, double omega, double theta) {
  if (theta < 0.0) throw DomainError("temperature must be nonnegative");
  const Eigen::Index n = rho.rows();
  NoiseMatrix g(n, n);
  const double w = std::abs(omega);
  const double temp = theta * m.cutoff;
  if (w == 0.0) {
    double v = 0.0;
    if (m.dimension == BathDimension::One && temp > 0.0) v = 2.0 * kPi * m.gamma * temp;
    g.setConstant(v);
    return g;
  }
  const double c = coth_factor(w, temp);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = spectral_density(m, rho(i, j), w) * c;
      g(i, j) = v;
      g(j, i) = v;
    }
  return g;
}

}  // namespace envent
