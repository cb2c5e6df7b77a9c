#include "envent/covariance.hpp"

#include "envent/errors.hpp"
#include "envent/gaussian_cv.hpp"
#include "envent/quadrature.hpp"
#include "envent/response.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace envent {

namespace {

constexpr double kPi = constants::pi;
constexpr double kTailExponent = 32.2362;  // -ln(1e-14)

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rtol > 0.0) || !(atol > 0.0)) throw ConfigError("quadrature tolerances must be positive");
  if (max_subdivisions < 1) throw ConfigError("max_subdivisions must be positive");
  if (omega_max && !(*omega_max > 0.0)) throw ConfigError("omega_max must be positive");
}

double default_omega_max(const DimensionlessConfig& cfg) {
  const double wmax_osc = cfg.frequencies.maxCoeff();
  return std::max(kTailExponent * cfg.cutoff, 20.0 * std::max(wmax_osc, cfg.cutoff));
}

std::vector<double> seed_points(const DimensionlessConfig& cfg, const QuadratureSpec& spec) {
  const double top = spec.omega_max ? *spec.omega_max : default_omega_max(cfg);
  std::vector<double> pts = {0.0, top};
  if (spec.resonance_seeds) {
    for (Eigen::Index i = 0; i < cfg.frequencies.size(); ++i) pts.push_back(cfg.frequencies(i));
    const NormalModeMap nm = normal_modes(cfg);
    const Eigen::VectorXd f = nm.frequencies();
    for (Eigen::Index i = 0; i < f.size(); ++i) pts.push_back(f(i));
    pts.push_back(cfg.cutoff);
  }
  for (double s : spec.extra_seeds) pts.push_back(s);
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  for (double p : pts) {
    if (!(p >= 0.0) || p > top) continue;
    if (!out.empty() && p - out.back() <= 1e-12 * top) continue;
    out.push_back(p);
  }
  if (out.back() != top) out.back() = top;
  return out;
}

Eigen::MatrixXd CovarianceMatrix::G() const { return assemble(*this); }

double CovarianceMatrix::max_error() const { return std::max({error_xx, error_xp, error_pp}); }

CovarianceMatrix covariance_blocks(const DimensionlessConfig& cfg, const QuadratureSpec& spec) {
  cfg.validate();
  spec.validate();
  if (!(cfg.gamma > 0.0))
    throw ConfigError("a stationary state independent of initial conditions needs a positive coupling");
  const KernelEvaluator ev(cfg);
  const std::size_t n = cfg.size();
  const std::size_t nn = n * n;

  CovarianceMatrix out;
  out.n = n;
  Eigen::MatrixXcd K(n, n);

  auto integrand = [&](double w, Eigen::Ref<Eigen::VectorXd> v) {
    ev.kernel(w, K);
    const double mev = ev.noise_min_eigenvalue(w);
    if (mev < -1e-12) {
      ++out.noise_psd_violations;
      out.worst_noise_eigenvalue = std::min(out.worst_noise_eigenvalue, mev);
    }
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = j * n + i;
        const Complex z = K(i, j);
        v(k) = z.real() / kPi;
        v(nn + k) = -w * z.imag() / kPi;
        v(2 * nn + k) = w * w * z.real() / kPi;
      }
  };

  const std::vector<ComponentBlock> blocks = {{0, nn}, {nn, nn}, {2 * nn, nn}};
  auto tolerance = [&](const Eigen::VectorXd& val) {
    const double sxx = val.segment(0, nn).cwiseAbs().maxCoeff();
    const double spp = val.segment(2 * nn, nn).cwiseAbs().maxCoeff();
    Eigen::VectorXd t(3);
    t(0) = std::max(spec.atol, spec.rtol * sxx);
    t(1) = std::max(spec.atol, spec.rtol * std::sqrt(sxx * spp));
    t(2) = std::max(spec.atol, spec.rtol * spp);
    return t;
  };

  AdaptiveOptions opts;
  opts.max_intervals = spec.max_subdivisions;
  const AdaptiveResult r = integrate_adaptive(integrand, 3 * nn, seed_points(cfg, spec), blocks, tolerance, opts);
  if (!r.converged) {
    std::ostringstream os;
    os << "covariance quadrature did not converge within " << spec.max_subdivisions
       << " subdivisions; worst subinterval [" << r.worst_lower << ", " << r.worst_upper << "]";
    throw QuadratureError(os.str(), r.worst_lower, r.worst_upper);
  }

  auto block = [&](std::size_t b) {
    Eigen::MatrixXd m(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) m(i, j) = r.value(b * nn + j * n + i);
    return m;
  };
  out.cxx = block(0);
  out.cxp = block(1);
  out.cpp = block(2);
  out.error_xx = r.error.segment(0, nn).maxCoeff();
  out.error_xp = r.error.segment(nn, nn).maxCoeff();
  out.error_pp = r.error.segment(2 * nn, nn).maxCoeff();
  out.evaluations = r.evaluations;
  out.intervals = r.intervals;

  // Re K is symmetric; remove rounding asymmetry before the invariant checks
  out.cxx = 0.5 * (out.cxx + out.cxx.transpose()).eval();
  out.cpp = 0.5 * (out.cpp + out.cpp.transpose()).eval();

  const double scale = std::sqrt(out.cxx.norm() * out.cpp.norm());
  const double sym_xp = (0.5 * (out.cxp + out.cxp.transpose())).norm();
  if (sym_xp > 1e-8 * scale + 10.0 * out.error_xp) {
    std::ostringstream os;
    os << "symmetric part of C_XP is " << sym_xp << ", stationarity requires it to vanish";
    throw PhysicsError(os.str());
  }

  Eigen::LLT<Eigen::MatrixXd> lxx(out.cxx), lpp(out.cpp);
  if (lxx.info() != Eigen::Success || lpp.info() != Eigen::Success)
    throw PhysicsError("position or momentum covariance is not positive definite");
  const Eigen::VectorXd nu = symplectic_eigenvalues(out.G());
  if (nu(0) < 0.5 - 1e-9) {
    std::ostringstream os;
    os << std::setprecision(12) << "uncertainty relation violated: smallest symplectic eigenvalue " << nu(0);
    if (out.noise_psd_violations > 0)
      os << "; noise matrix indefinite at " << out.noise_psd_violations << " nodes (worst relative eigenvalue "
         << out.worst_noise_eigenvalue << "), check that the distances are realizable";
    throw PhysicsError(os.str());
  }
  return out;
}

Eigen::MatrixXd assemble(const CovarianceMatrix& b) {
  const auto n = static_cast<Eigen::Index>(b.n);
  if (b.cxx.rows() != n || b.cxp.rows() != n || b.cpp.rows() != n) throw DomainError("covariance blocks have the wrong shape");
  Eigen::MatrixXd g(2 * n, 2 * n);
  g.topLeftCorner(n, n) = b.cxx;
  g.topRightCorner(n, n) = b.cxp;
  g.bottomLeftCorner(n, n) = b.cxp.transpose();
  g.bottomRightCorner(n, n) = b.cpp;
  const double asym = (g - g.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-9 * std::max(1.0, g.cwiseAbs().maxCoeff())) throw Error("assembled covariance is not symmetric");
  return g;
}

void write_covariance_csv(std::ostream& os, const Eigen::MatrixXd& G) {
  const Eigen::Index n = G.rows() / 2;
  for (Eigen::Index i = 0; i < n; ++i) os << (i ? "," : "") << "x" << i + 1;
  for (Eigen::Index i = 0; i < n; ++i) os << ",p" << i + 1;
  os << "\n";
  os << std::setprecision(17);
  for (Eigen::Index i = 0; i < G.rows(); ++i) {
    for (Eigen::Index j = 0; j < G.cols(); ++j) os << (j ? "," : "") << G(i, j);
    os << "\n";
  }
}

}  // namespace envent
