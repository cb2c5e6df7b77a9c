#pragma once

#include "envent/bath.hpp"
#include "envent/specfun.hpp"
#include "envent/units.hpp"

#include <Eigen/Dense>

#include <vector>

namespace envent {

struct ResponseMatrix {
  double omega = 0.0;
  Eigen::MatrixXcd alpha;

  // Green's function alpha^{-1}; throws SingularityError when alpha is singular
  Eigen::MatrixXcd inverse() const;
};

struct SpectralKernel {
  double omega = 0.0;
  Eigen::MatrixXcd K;
};

struct NormalModeMap {
  Eigen::MatrixXd O;          // rows are normal-mode directions, Q = O X
  Eigen::VectorXd phi_diag;   // ascending eigenvalues of phi
  Eigen::MatrixXd phi;

  Eigen::VectorXd frequencies() const;  // sqrt(phi_diag)
};

// bath part of alpha at reduced distance rho (everything except (w_l^2 - w^2) delta)
Complex environment_term(const SpectralDensityModel& m, double rho, double omega);

ResponseMatrix alpha_matrix(const DimensionlessConfig& cfg, double omega);

SpectralKernel kernel(const DimensionlessConfig& cfg, double omega);

// phi = diag(w^2) + 2 Omega~
Eigen::MatrixXd potential_matrix(const DimensionlessConfig& cfg);
NormalModeMap normal_modes(const DimensionlessConfig& cfg);

// Reusable evaluator for the hot quadrature loop; caches the distinct reduced distances.
class KernelEvaluator {
public:
  explicit KernelEvaluator(const DimensionlessConfig& cfg);

  std::size_t size() const { return n_; }
  void alpha(double omega, Eigen::MatrixXcd& out) const;
  void noise(double omega, Eigen::MatrixXd& out) const;
  // K = alpha^{-1} Gamma conj(alpha^{-1})
  void kernel(double omega, Eigen::MatrixXcd& out) const;
  // smallest eigenvalue of Gamma(omega) relative to its largest magnitude entry
  double noise_min_eigenvalue(double omega) const;

private:
  DimensionlessConfig cfg_;
  SpectralDensityModel model_;
  std::size_t n_;
  std::vector<double> distinct_rho_;
  std::vector<std::size_t> rho_index_;  // n*n, index into distinct_rho_
};

}  // namespace envent
