#pragma once

#include "envent/units.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

namespace envent {

struct QuadratureSpec {
  double rtol = 1e-8;
  double atol = 1e-12;
  std::optional<double> omega_max;  // default: tail rule below
  bool resonance_seeds = true;      // seed w_l, normal-mode frequencies and w_c
  std::vector<double> extra_seeds;
  std::size_t max_subdivisions = 2000;

  void validate() const;
};

// smallest w with exp(-w/w_c) < 1e-14, and at least 20 max(w_l, w_c)
double default_omega_max(const DimensionlessConfig& cfg);
std::vector<double> seed_points(const DimensionlessConfig& cfg, const QuadratureSpec& spec);

struct CovarianceMatrix {
  std::size_t n = 0;
  Eigen::MatrixXd cxx, cxp, cpp;
  // largest estimated absolute quadrature error per block
  double error_xx = 0.0, error_xp = 0.0, error_pp = 0.0;
  std::size_t evaluations = 0;
  std::size_t intervals = 0;
  // nodes where Gamma(w) had a negative eigenvalue beyond rounding
  std::size_t noise_psd_violations = 0;
  double worst_noise_eigenvalue = 0.0;

  Eigen::MatrixXd G() const;
  double max_error() const;
};

// Covariance blocks in hbar = m = Omega = 1 units:
// C_XX = (1/pi) int_0^inf Re K, C_XP = -(1/pi) int_0^inf w Im K, C_PP = (1/pi) int_0^inf w^2 Re K
CovarianceMatrix covariance_blocks(const DimensionlessConfig& cfg, const QuadratureSpec& spec = {});

// G = [[C_XX, C_XP], [C_XP^T, C_PP]], ordering x_1..x_N, p_1..p_N
Eigen::MatrixXd assemble(const CovarianceMatrix& blocks);

void write_covariance_csv(std::ostream& os, const Eigen::MatrixXd& G);

}  // namespace envent
