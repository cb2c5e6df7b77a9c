#include "envent/response.hpp"

#include "envent/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cmath>
#include <sstream>

namespace envent {

namespace {

constexpr double kPi = constants::pi;
constexpr double kSmallRho3D = 1e-5;

void require_response_dimension(BathDimension d) {
  if (d == BathDimension::Two)
    throw ConfigError("the 2D bath supports only spectral densities and renormalizations");
}

Eigen::MatrixXcd invert(const Eigen::MatrixXcd& a, double omega) {
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(a);
  lu.setThreshold(1e-14);
  if (!lu.isInvertible()) {
    std::ostringstream os;
    os << "response matrix is singular at w = " << omega;
    throw SingularityError(os.str(), omega);
  }
  return lu.inverse();
}

}  // namespace

Complex environment_term(const SpectralDensityModel& m, double rho, double omega) {
  require_response_dimension(m.dimension);
  if (omega == 0.0) return 0.0;
  rho = std::abs(rho);
  const double g = m.gamma;
  const double wc = m.cutoff;
  const double x = omega / wc;
  const double damp = std::exp(-std::abs(x));
  if (m.dimension == BathDimension::One) {
    const Complex qp = pv_laplace(omega, rho, wc);
    const Complex qm = pv_laplace(-omega, rho, wc);
    const double re = -g * omega * (qp - qm).real();
    const double im = -kPi * g * omega * std::cos(rho * x) * damp;
    return {re, im};
  }
  if (rho < kSmallRho3D) {
    const Complex qp = pv_laplace(omega, 0.0, wc);
    const Complex qm = pv_laplace(-omega, 0.0, wc);
    const double re = -(4.0 * kPi * g * omega * omega / (wc * wc)) * (2.0 * wc + omega * (qp - qm).real());
    const double im = -4.0 * kPi * kPi * g * wc * x * x * x * damp;
    return {re, im};
  }
  const Complex qp = pv_laplace(omega, rho, wc);
  const Complex qm = pv_laplace(-omega, rho, wc);
  const double re = -(4.0 * kPi * g * omega * omega / (rho * wc)) * (qp + qm).imag();
  const double im = -4.0 * kPi * kPi * g * (wc / rho) * x * x * std::sin(rho * x) * damp;
  return {re, im};
}

Eigen::MatrixXcd ResponseMatrix::inverse() const { return invert(alpha, omega); }

KernelEvaluator::KernelEvaluator(const DimensionlessConfig& cfg)
    : cfg_(cfg), model_(bath_model(cfg)), n_(cfg.size()) {
  cfg_.validate();
  require_response_dimension(cfg.dimension);
  rho_index_.resize(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      const double r = cfg.rho(i, j);
      std::size_t k = 0;
      while (k < distinct_rho_.size() && distinct_rho_[k] != r) ++k;
      if (k == distinct_rho_.size()) distinct_rho_.push_back(r);
      rho_index_[i * n_ + j] = k;
    }
}

void KernelEvaluator::alpha(double omega, Eigen::MatrixXcd& out) const {
  std::vector<Complex> env(distinct_rho_.size());
  for (std::size_t k = 0; k < distinct_rho_.size(); ++k) env[k] = environment_term(model_, distinct_rho_[k], omega);
  out.resize(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out(i, j) = env[rho_index_[i * n_ + j]];
  for (std::size_t i = 0; i < n_; ++i) out(i, i) += cfg_.frequencies(i) * cfg_.frequencies(i) - omega * omega;
}

void KernelEvaluator::noise(double omega, Eigen::MatrixXd& out) const {
  out = noise_matrix(model_, cfg_.rho, omega, cfg_.theta);
}

void KernelEvaluator::kernel(double omega, Eigen::MatrixXcd& out) const {
  Eigen::MatrixXcd a;
  alpha(omega, a);
  Eigen::MatrixXd g;
  noise(omega, g);
  const Eigen::MatrixXcd ai = invert(a, omega);
  out = ai * g.cast<Complex>() * ai.conjugate();
}

double KernelEvaluator::noise_min_eigenvalue(double omega) const {
  Eigen::MatrixXd g;
  noise(omega, g);
  const double scale = g.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0) / scale;
}

ResponseMatrix alpha_matrix(const DimensionlessConfig& cfg, double omega) {
  KernelEvaluator ev(cfg);
  ResponseMatrix r;
  r.omega = omega;
  ev.alpha(omega, r.alpha);
  return r;
}

SpectralKernel kernel(const DimensionlessConfig& cfg, double omega) {
  KernelEvaluator ev(cfg);
  SpectralKernel k;
  k.omega = omega;
  ev.kernel(omega, k.K);
  return k;
}

Eigen::MatrixXd potential_matrix(const DimensionlessConfig& cfg) {
  cfg.validate();
  const SpectralDensityModel m = bath_model(cfg);
  Eigen::MatrixXd phi = 2.0 * renormalization_matrix(m, cfg.rho);
  for (Eigen::Index i = 0; i < phi.rows(); ++i) phi(i, i) += cfg.frequencies(i) * cfg.frequencies(i);
  return phi;
}

Eigen::VectorXd NormalModeMap::frequencies() const { return phi_diag.cwiseMax(0.0).cwiseSqrt(); }

NormalModeMap normal_modes(const DimensionlessConfig& cfg) {
  NormalModeMap nm;
  nm.phi = potential_matrix(cfg);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(nm.phi);
  nm.phi_diag = es.eigenvalues();
  nm.O = es.eigenvectors().transpose();
  return nm;
}

}  // namespace envent
