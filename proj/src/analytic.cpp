#include "envent/analytic.hpp"

#include "envent/errors.hpp"

#include <cmath>

namespace envent {

namespace {

// distance factor (1 + rho^2) for 1D, (1 + rho^2)^2 for 3D
double distance_factor(BathDimension dim, double rho) {
  const double q = 1.0 + rho * rho;
  switch (dim) {
    case BathDimension::One: return q;
    case BathDimension::Three: return q * q;
    case BathDimension::Two: break;
  }
  throw ConfigError("analytic pair results exist for 1D and 3D baths only");
}

}  // namespace

double analytic_coupling(BathDimension dim, double gamma, double cutoff) {
  switch (dim) {
    case BathDimension::One: return 2.0 * gamma * cutoff;
    case BathDimension::Three: return 16.0 * constants::pi * gamma * cutoff;
    case BathDimension::Two: break;
  }
  throw ConfigError("analytic pair results exist for 1D and 3D baths only");
}

std::pair<double, double> normal_frequencies(BathDimension dim, double omega, double gamma, double cutoff, double rho) {
  if (!(omega > 0.0)) throw ConfigError("oscillator frequency must be positive");
  if (!(gamma >= 0.0) || !(cutoff > 0.0) || !(rho >= 0.0)) throw ConfigError("invalid analytic parameters");
  const double a = analytic_coupling(dim, gamma, cutoff) / (omega * omega);
  const double b = a / distance_factor(dim, rho);
  const double rp = 1.0 + a + b;
  const double rm = 1.0 + a - b;
  if (!(rm > 0.0) || !(rp > 0.0)) throw ValidityError("normal-mode radicand is not positive");
  return {omega * std::sqrt(rp), omega * std::sqrt(rm)};
}

double thermal_occupation(double omega_mode, double theta, double cutoff) {
  if (!(omega_mode > 0.0)) throw DomainError("mode frequency must be positive");
  if (theta <= 0.0) return 0.0;
  const double x = omega_mode / (theta * cutoff);
  return 1.0 / std::expm1(x);
}

AnalyticPairResult entanglement_condition(BathDimension dim, double omega, double gamma, double cutoff, double rho,
                                          double theta) {
  if (!(gamma * cutoff < omega * omega))
    throw ValidityError("weak-dissipation expansion needs gamma * w_c < Omega^2");
  if (!(theta >= 0.0)) throw ConfigError("temperature must be nonnegative");
  AnalyticPairResult r;
  const auto [wp, wm] = normal_frequencies(dim, omega, gamma, cutoff, rho);
  r.omega_plus = wp;
  r.omega_minus = wm;
  r.n_plus = thermal_occupation(wp, theta, cutoff);
  r.n_minus = thermal_occupation(wm, theta, cutoff);
  const double shift = analytic_coupling(dim, gamma, cutoff) / (omega * omega * distance_factor(dim, rho));
  r.lhs = (2.0 * r.n_plus + 1.0) * (2.0 * r.n_minus + 1.0) * (1.0 - shift);
  r.entangled_prediction = r.lhs < 1.0;
  return r;
}

AnalyticPairResult entanglement_condition(const DimensionlessConfig& cfg) {
  cfg.validate();
  if (cfg.size() != 2) throw ConfigError("the analytic condition needs exactly two oscillators");
  if (cfg.frequencies(0) != cfg.frequencies(1)) throw ConfigError("the analytic condition needs identical frequencies");
  return entanglement_condition(cfg.dimension, cfg.frequencies(0), cfg.gamma, cfg.cutoff, cfg.rho(0, 1), cfg.theta);
}

}  // namespace envent
