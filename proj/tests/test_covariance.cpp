#include "doctest.h"

#include "envent/covariance.hpp"
#include "envent/errors.hpp"
#include "envent/gaussian_cv.hpp"
#include "envent/response.hpp"

#include <cmath>
#include <sstream>

using namespace envent;

namespace {

DimensionlessConfig pair_config(BathDimension dim, double rho, double theta) {
  DimensionlessConfig c;
  c.frequencies.resize(2);
  c.frequencies << 7.2, 13.2;
  c.gamma = 5.0;
  c.cutoff = 100.0;
  c.theta = theta;
  c.rho = Eigen::MatrixXd::Zero(2, 2);
  c.rho(0, 1) = c.rho(1, 0) = rho;
  c.dimension = dim;
  return c;
}

DimensionlessConfig single(double omega, double gamma, double cutoff, double theta) {
  DimensionlessConfig c;
  c.frequencies = Eigen::VectorXd::Constant(1, omega);
  c.gamma = gamma;
  c.cutoff = cutoff;
  c.theta = theta;
  c.rho = Eigen::MatrixXd::Zero(1, 1);
  return c;
}

// oscillators at reduced positions 0, 1, 2 ... along a line
DimensionlessConfig chain(const std::vector<double>& pos, BathDimension dim, double theta) {
  const auto n = static_cast<Eigen::Index>(pos.size());
  DimensionlessConfig c;
  c.frequencies.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) c.frequencies(i) = 7.2 + 3.0 * static_cast<double>(i);
  c.gamma = 5.0;
  c.cutoff = 100.0;
  c.theta = theta;
  c.dimension = dim;
  c.rho.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) c.rho(i, j) = std::abs(pos[i] - pos[j]);
  return c;
}

// Thermal state of the oscillators plus a discretized 1D bath, reduced to the oscillators.
// Bath modes at w_k couple through c_k cos(x_k p_i) and c_k sin(x_k p_i), x_k = w_k / w_c,
// with c_k^2 = 2 gamma w_k^2 exp(-x_k) dw; the bath potential is written in shifted form.
Eigen::MatrixXd discretized_gibbs(const DimensionlessConfig& c, const std::vector<double>& pos, double dw, double wmax) {
  const int n = static_cast<int>(c.size());
  const int nb = static_cast<int>(wmax / dw);
  const int m = n + 2 * nb;
  Eigen::MatrixXd V = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < n; ++i) V(i, i) = c.frequencies(i) * c.frequencies(i);
  for (int k = 0; k < nb; ++k) {
    const double w = (k + 0.5) * dw, x = w / c.cutoff;
    const double ck = std::sqrt(2.0 * c.gamma * w * w * std::exp(-x) * dw);
    for (int f = 0; f < 2; ++f) {
      const int b = n + 2 * k + f;
      V(b, b) = w * w;
      Eigen::VectorXd ci(n);
      for (int i = 0; i < n; ++i) ci(i) = ck * (f == 0 ? std::cos(x * pos[i]) : std::sin(x * pos[i]));
      for (int i = 0; i < n; ++i) V(b, i) = V(i, b) = -ci(i);
      V.topLeftCorner(n, n) += ci * ci.transpose() / (w * w);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(V);
  const Eigen::VectorXd om = es.eigenvalues().cwiseSqrt();
  const double T = c.temperature();
  Eigen::VectorXd cx(m), cp(m);
  for (int a = 0; a < m; ++a) {
    const double ct = T > 0.0 ? 1.0 / std::tanh(om(a) / (2.0 * T)) : 1.0;
    cx(a) = 0.5 * ct / om(a);
    cp(a) = 0.5 * ct * om(a);
  }
  const Eigen::MatrixXd U = es.eigenvectors().topRows(n);
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  G.topLeftCorner(n, n) = U * cx.asDiagonal() * U.transpose();
  G.bottomRightCorner(n, n) = U * cp.asDiagonal() * U.transpose();
  return G;
}

}  // namespace

TEST_CASE("weak coupling approaches the Gibbs state") {
  for (double T : {0.0, 0.5, 2.0}) {
    CAPTURE(T);
    const CovarianceMatrix c = covariance_blocks(single(1.0, 1e-3, 1.0, T));
    const double ct = T > 0.0 ? 1.0 / std::tanh(1.0 / (2.0 * T)) : 1.0;
    CHECK(c.cxx(0, 0) == doctest::Approx(0.5 * ct).epsilon(5e-3));
    CHECK(c.cpp(0, 0) == doctest::Approx(0.5 * ct).epsilon(5e-3));
    CHECK(std::abs(c.cxp(0, 0)) < 1e-10);
  }
}

TEST_CASE("agreement with a discretized bath") {
  for (double theta : {0.0, 0.026}) {
    for (double rho : {0.0, 1.5}) {
      CAPTURE(theta);
      CAPTURE(rho);
      const DimensionlessConfig c = pair_config(BathDimension::One, rho, theta);
      const Eigen::MatrixXd G = covariance_blocks(c).G();
      const Eigen::MatrixXd Gb = discretized_gibbs(c, {0.0, rho}, 4.0, 1000.0);
      CHECK((G - Gb).cwiseAbs().maxCoeff() < 5e-4 * G.cwiseAbs().maxCoeff());
    }
  }
}

TEST_CASE("physical covariance for the reference configurations") {
  for (auto dim : {BathDimension::One, BathDimension::Three}) {
    for (double theta : {0.0, 0.026}) {
      const DimensionlessConfig c = chain({0.0, 0.3, 0.6}, dim, theta);
      const CovarianceMatrix cov = covariance_blocks(c);
      const Eigen::MatrixXd G = cov.G();
      CHECK((G - G.transpose()).cwiseAbs().maxCoeff() == 0.0);
      CHECK(cov.cxp.diagonal().cwiseAbs().maxCoeff() < 1e-8);
      CHECK(cov.cxp.cwiseAbs().maxCoeff() < 1e-8 * G.cwiseAbs().maxCoeff());
      CHECK(symplectic_eigenvalues(G).minCoeff() >= 0.5 - 1e-9);
      CHECK(cov.noise_psd_violations == 0);
      CHECK(cov.max_error() < 1e-6);
    }
  }
}

TEST_CASE("vacuum limit") {
  const CovarianceMatrix c = covariance_blocks(single(1.0, 1e-5, 1.0, 0.0));
  CHECK(c.cxx(0, 0) == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(c.cpp(0, 0) == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("tolerance halving stays within the error estimate") {
  const DimensionlessConfig c = pair_config(BathDimension::Three, 0.5, 0.026);
  QuadratureSpec a, b;
  b.rtol = a.rtol / 2;
  const CovarianceMatrix ca = covariance_blocks(c, a), cb = covariance_blocks(c, b);
  CHECK((ca.cxx - cb.cxx).cwiseAbs().maxCoeff() <= ca.error_xx + cb.error_xx);
  CHECK((ca.cpp - cb.cpp).cwiseAbs().maxCoeff() <= ca.error_pp + cb.error_pp);
  CHECK((ca.cxp - cb.cxp).cwiseAbs().maxCoeff() <= ca.error_xp + cb.error_xp + 1e-14);
}

TEST_CASE("doubling the upper limit changes nothing") {
  for (auto dim : {BathDimension::One, BathDimension::Three}) {
    const DimensionlessConfig c = pair_config(dim, 0.5, 0.0);
    QuadratureSpec a;
    a.rtol = 1e-12;
    a.atol = 1e-15;
    QuadratureSpec b = a;
    b.omega_max = 2.0 * default_omega_max(c);
    const Eigen::MatrixXd ga = covariance_blocks(c, a).G(), gb = covariance_blocks(c, b).G();
    CHECK((ga - gb).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("resonance seeds") {
  for (double gamma : {0.05, 5.0}) {
    CAPTURE(gamma);
    DimensionlessConfig c = pair_config(BathDimension::One, 0.5, 0.0);
    c.gamma = gamma;
    const auto seeds = seed_points(c, {});
    for (double w : {0.0, 7.2, 13.2, 100.0}) {
      bool found = false;
      for (double s : seeds) found = found || std::abs(s - w) < 1e-12;
      CHECK(found);
    }
    QuadratureSpec unseeded;
    unseeded.resonance_seeds = false;
    QuadratureSpec fine;
    fine.rtol = 1e-11;
    const CovarianceMatrix cs = covariance_blocks(c), cu = covariance_blocks(c, unseeded);
    const CovarianceMatrix ref = covariance_blocks(c, fine);
    CHECK((cs.cxx - ref.cxx).cwiseAbs().maxCoeff() <= cs.error_xx + ref.error_xx);
    CHECK((cs.cpp - ref.cpp).cwiseAbs().maxCoeff() <= cs.error_pp + ref.error_pp);
    CHECK((cu.cxx - ref.cxx).cwiseAbs().maxCoeff() <= 1e-7 * ref.cxx.cwiseAbs().maxCoeff());
    CHECK(cs.evaluations <= cu.evaluations);
  }
}

TEST_CASE("identical pair at zero separation") {
  DimensionlessConfig c = pair_config(BathDimension::One, 0.0, 0.026);
  c.frequencies << 7.2, 7.2;
  const DimensionlessConfig com = [&] {
    DimensionlessConfig s = single(7.2, 2.0 * c.gamma, c.cutoff, c.theta);
    return s;
  }();
  Eigen::Matrix2d O;
  O << 1.0, 1.0, 1.0, -1.0;
  O /= std::sqrt(2.0);
  for (double w : {0.3, 3.0, 7.0, 7.5, 20.0, 150.0}) {
    CAPTURE(w);
    const Eigen::MatrixXcd Kr = O * kernel(c, w).K * O.transpose();
    const std::complex<double> k1 = kernel(com, w).K(0, 0);
    CHECK(std::abs(Kr(0, 0) - k1) < 1e-10 * std::abs(k1));
    CHECK(std::abs(Kr(1, 1)) < 1e-10 * std::abs(k1));
    CHECK(std::abs(Kr(0, 1)) < 1e-10 * std::abs(k1));
  }
  // the relative coordinate never relaxes, so there is no stationary state to report
  CHECK_THROWS_AS(covariance_blocks(c), Error);
}

TEST_CASE("inconsistent distances are flagged in the noise diagnostics") {
  DimensionlessConfig c = chain({0.0, 0.0, 0.0}, BathDimension::One, 0.0);
  c.rho(0, 2) = c.rho(2, 0) = 2.0;
  bool thrown = false;
  try {
    covariance_blocks(c);
  } catch (const PhysicsError& e) {
    thrown = true;
    CHECK(std::string(e.what()).find("noise matrix indefinite") != std::string::npos);
  }
  CHECK(thrown);
}

TEST_CASE("input errors") {
  CHECK_THROWS_AS(covariance_blocks(single(1.0, 0.0, 1.0, 0.0)), ConfigError);
  QuadratureSpec bad;
  bad.rtol = -1.0;
  CHECK_THROWS_AS(covariance_blocks(single(1.0, 0.1, 1.0, 0.0), bad), ConfigError);
  QuadratureSpec tiny;
  tiny.max_subdivisions = 3;
  tiny.rtol = 1e-13;
  CHECK_THROWS_AS(covariance_blocks(pair_config(BathDimension::One, 0.5, 0.0), tiny), QuadratureError);
}

TEST_CASE("covariance CSV") {
  const Eigen::MatrixXd G = covariance_blocks(pair_config(BathDimension::One, 0.5, 0.0)).G();
  std::ostringstream os;
  write_covariance_csv(os, G);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "x1,x2,p1,p2");
  for (int r = 0; r < 4; ++r) {
    std::getline(is, line);
    std::stringstream ls(line);
    std::string cell;
    for (int col = 0; col < 4; ++col) {
      std::getline(ls, cell, ',');
      CHECK(std::stod(cell) == G(r, col));
    }
  }
}
