#pragma once

#include "envent/units.hpp"

#include <utility>

namespace envent {

// Weak-dissipation results for two identical oscillators of frequency Omega~.
struct AnalyticPairResult {
  double omega_plus = 0.0;
  double omega_minus = 0.0;
  double n_plus = 0.0;
  double n_minus = 0.0;
  double lhs = 0.0;
  bool entangled_prediction = false;
};

// coupling strength entering the shifted frequencies: 2 gamma w_c (1D) or 16 pi gamma w_c (3D)
double analytic_coupling(BathDimension dim, double gamma, double cutoff);

std::pair<double, double> normal_frequencies(BathDimension dim, double omega, double gamma, double cutoff, double rho);

// Bose-Einstein occupation at temperature theta * w_c
double thermal_occupation(double omega_mode, double theta, double cutoff);

AnalyticPairResult entanglement_condition(BathDimension dim, double omega, double gamma, double cutoff, double rho,
                                          double theta);

// reads the two-oscillator case off a full configuration
AnalyticPairResult entanglement_condition(const DimensionlessConfig& cfg);

}  // namespace envent
