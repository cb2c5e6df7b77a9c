// Acceptance run: one PASS/FAIL line per criterion.
// Usage: acceptance [--cutoff W] [N ...]   (no criterion runs all)
// W is w_c / Omega for the reference parameter sets, default 100 (Omega = 1e9 rad/s, hbar w_c = 6.58e-2 meV).

#include "envent/bath.hpp"
#include "envent/covariance.hpp"
#include "envent/errors.hpp"
#include "envent/gaussian_cv.hpp"
#include "envent/response.hpp"
#include "envent/sweep.hpp"
#include "envent/units.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace envent;

namespace {

const double kPi = constants::pi;

// w_c / Omega for the reference parameter sets
double g_cutoff = 100.0;
// reading Omega = 1 GHz as an ordinary frequency, Omega = 2 pi 1e9 rad/s
const double kCyclicCutoff = 100.0 / (2.0 * constants::pi);

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<Outcome()> run;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

DimensionlessConfig make_config(std::vector<double> freqs, BathDimension dim, double gamma, double cutoff, double theta,
                                Eigen::MatrixXd rho) {
  DimensionlessConfig c;
  c.frequencies = Eigen::Map<Eigen::VectorXd>(freqs.data(), static_cast<Eigen::Index>(freqs.size()));
  c.dimension = dim;
  c.gamma = gamma;
  c.cutoff = cutoff;
  c.theta = theta;
  c.rho = std::move(rho);
  return c;
}

Eigen::MatrixXd pair_rho(double rho) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 1) = m(1, 0) = rho;
  return m;
}

// A at 0, C at R, B at R/2 + r, all in units of c / w_c
Eigen::MatrixXd linear_rho(double R, double r) {
  Eigen::MatrixXd m(3, 3);
  const double ab = R / 2 + r, bc = R / 2 - r;
  m << 0, ab, R, ab, 0, bc, R, bc, 0;
  return m;
}

// B displaced by r perpendicular to the A-C segment
Eigen::MatrixXd triangle_rho(double R, double r) {
  Eigen::MatrixXd m(3, 3);
  const double s = std::hypot(R / 2, r);
  m << 0, s, R, s, 0, s, R, s, 0;
  return m;
}

const std::vector<double> kThree = {7.2, 10.1, 13.2};
const std::vector<double> kPairAC = {7.2, 13.2};

// physical settings behind the reduced numbers: w_c = 1e11 rad/s, c = 3000 m/s, Omega = w_c / g_cutoff
PhysicalConfig physical_pair(BathDimension dim) {
  const double omega = 1e11 / g_cutoff;
  PhysicalConfig p;
  p.base_frequency = omega;
  p.oscillator_frequencies = {7.2 * omega, 13.2 * omega};
  p.bath_dimension = dim;
  p.coupling = 5.0 * omega;
  p.cutoff = 1e11;
  p.sound_speed = 3000.0;
  p.temperature = Temperature::ratio(0.0);
  p.geometry = Geometry::pair(1e-9);
  return p;
}
// reduced distance 1 is 30 nm with the settings above
constexpr double kNmPerRho = 30.0;

Outcome uncertainty_relation() {
  std::mt19937 rng(20240601);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 1e300;
  int failures = 0;
  std::string first_error;
  for (int k = 0; k < 50; ++k) {
    const int n = 1 + k % 3;
    const auto dim = (k / 3) % 2 ? BathDimension::Three : BathDimension::One;
    std::vector<double> freqs;
    for (int i = 0; i < n; ++i) freqs.push_back(1.0 + 14.0 * u(rng));
    // realizable distances up to 3: points on a line or in a cube of side sqrt(3)
    std::vector<Eigen::Vector3d> pos;
    for (int i = 0; i < n; ++i) {
      Eigen::Vector3d p = Eigen::Vector3d::Zero();
      if (dim == BathDimension::One)
        p(0) = 3.0 * u(rng);
      else
        for (int a = 0; a < 3; ++a) p(a) = std::sqrt(3.0) * u(rng);
      pos.push_back(p);
    }
    Eigen::MatrixXd rho(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) rho(i, j) = (pos[i] - pos[j]).norm();
    const double gamma = 0.5 + 9.5 * u(rng);
    const double theta = 0.5 * u(rng);
    const DimensionlessConfig c = make_config(freqs, dim, gamma, g_cutoff, theta, rho);
    try {
      worst = std::min(worst, symplectic_eigenvalues(covariance_blocks(c).G()).minCoeff());
    } catch (const std::exception& e) {
      ++failures;
      if (first_error.empty()) first_error = e.what();
    }
  }
  Outcome o;
  o.pass = failures == 0 && worst >= 0.5 - 1e-9;
  o.detail = "50 configs, min symplectic eigenvalue " + num(worst) + ", failures " + std::to_string(failures);
  if (!first_error.empty()) o.detail += " (" + first_error + ")";
  return o;
}

Outcome gibbs_limit() {
  // w_c = w_1 = 1: the coupling gamma w_c = 0.01 is then small against w_1^2
  Outcome o{true, ""};
  for (double T : {0.0, 0.5, 2.0}) {
    const CovarianceMatrix c =
        covariance_blocks(make_config({1.0}, BathDimension::One, 0.01, 1.0, T, Eigen::MatrixXd::Zero(1, 1)));
    const double target = T > 0 ? 0.5 / std::tanh(1.0 / (2.0 * T)) : 0.5;
    const double ex = std::abs(c.cxx(0, 0) / target - 1.0), ep = std::abs(c.cpp(0, 0) / target - 1.0);
    o.pass = o.pass && ex < 0.01 && ep < 0.01;
    o.detail += "T=" + num(T) + ": dx " + num(ex) + " dp " + num(ep) + "; ";
  }
  return o;
}

// Im chi(w) from the trapezoid sine transform of chi(t) on [0, 200/w_c], 2^20 samples
double sine_transform(const SpectralDensityModel& m, double rho, double w) {
  const int samples = 1 << 20;
  const double tmax = 200.0 / m.cutoff;
  const double h = tmax / samples;
  double s = 0.5 * susceptibility_time(m, rho, tmax) * std::sin(w * tmax);
  for (int i = 1; i < samples; ++i) {
    const double t = i * h;
    s += susceptibility_time(m, rho, t) * std::sin(w * t);
  }
  return s * h;
}

Outcome fdt_oracle() {
  double worst = 0.0;
  for (auto d : {BathDimension::One, BathDimension::Three}) {
    const SpectralDensityModel m{d, 5.0, g_cutoff};
    for (double rho : {0.0, 0.5, 2.0})
      for (double x : {0.05, 0.1, 0.5, 2.0}) {
        const double w = x * m.cutoff;
        const double j = spectral_density(m, rho, w);
        worst = std::max(worst, std::abs(sine_transform(m, rho, w) + j) / std::abs(j));
      }
  }
  return {worst <= 1e-4, "24 points, worst relative deviation " + num(worst)};
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

// 2 Omega~ + (2/pi) PV int_0^inf Im env(nu) nu / (nu^2 - w^2) dnu, pole subtracted on [0, 2w]
double kk_real_part(const SpectralDensityModel& m, double rho, double w) {
  const int n = 20000;
  auto g = [&](double nu) { return nu == 0.0 ? 0.0 : environment_term(m, rho, nu).imag() * nu / (nu + w); };
  const double gw = g(w);
  auto near = [&](double nu) {
    const double d = nu - w;
    if (std::abs(d) < 1e-9 * w) {
      const double h = 1e-4 * w;
      return (g(w + h) - g(w - h)) / (2 * h);
    }
    return (g(nu) - gw) / d;
  };
  const double a = simpson(near, 0.0, 2.0 * w, n);
  const double b = simpson([&](double nu) { return g(nu) / (nu - w); }, 2.0 * w, 60.0 * m.cutoff, 4 * n);
  return 2.0 * renormalization(m, rho) + (2.0 / kPi) * (a + b);
}

Outcome kk_oracle() {
  double worst = 0.0;
  int points = 0;
  for (auto d : {BathDimension::One, BathDimension::Three}) {
    const SpectralDensityModel m{d, 5.0, g_cutoff};
    for (double rho : {0.0, 0.5, 2.0})
      for (double x : {0.05, 0.3, 1.0, 3.0}) {
        const double w = x * m.cutoff;
        const double closed = environment_term(m, rho, w).real();
        worst = std::max(worst, std::abs(closed - kk_real_part(m, rho, w)) / std::abs(closed));
        ++points;
      }
  }
  return {worst <= 1e-4, std::to_string(points) + " points, worst relative deviation " + num(worst)};
}

Eigen::MatrixXd tms(double r) {
  const double c = std::cosh(2 * r), s = std::sinh(2 * r);
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(4, 4);
  G.topLeftCorner(2, 2) << c, s, s, c;
  G.bottomRightCorner(2, 2) << c, -s, -s, c;
  return 0.5 * G;
}

Outcome toolbox_oracles() {
  double worst_en = 0.0;
  for (double r : {0.1, 0.6, 1.2}) worst_en = std::max(worst_en, std::abs(log_negativity(tms(r), 0, 1) - 2 * r));
  const Eigen::MatrixXd vac = 0.5 * Eigen::MatrixXd::Identity(6, 6);
  Eigen::MatrixXd th = Eigen::MatrixXd::Zero(6, 6);
  const double nus[3] = {0.8, 1.5, 3.0};
  for (int i = 0; i < 3; ++i) th(i, i) = th(3 + i, 3 + i) = nus[i];
  bool products = true;
  for (const Eigen::MatrixXd* G : {&vac, static_cast<const Eigen::MatrixXd*>(&th)}) {
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j) products = products && log_negativity(*G, i, j) == 0.0;
    products = products && classify_tripartite(*G) == TripartiteClass::C5;
  }
  Eigen::VectorXd a(3), b(3);
  a << 0.5, 1.3, 2.2;
  b << 0.9, 0.5, 4.0;
  double fid = std::abs(fidelity_from_spectra(a, a) - 1.0);
  fid = std::max(fid, std::abs(fidelity_from_spectra(a, b) - fidelity_from_spectra(b, a)));
  fid = std::max(fid, std::abs(fidelity_from_spectra(Eigen::VectorXd::Constant(1, 0.5), Eigen::VectorXd::Constant(1, 1.5)) - 0.5));
  const DimensionlessConfig cold = make_config(kThree, BathDimension::One, 5.0, 100.0, 0.0, linear_rho(0.9, 0.0));
  fid = std::max(fid, std::abs(fidelity_thermal(vac, cold) - 1.0));
  Outcome o;
  o.pass = worst_en <= 1e-8 && products && fid <= 1e-10;
  o.detail = "E_N - 2r " + num(worst_en) + ", products " + (products ? "E_N 0 and C5" : "WRONG") +
             ", fidelity identities " + num(fid);
  return o;
}

Outcome distance_temperature_map() {
  SweepOptions so;
  so.record_timing = false;
  // 1D entanglement reaches further in distance, so its panel spans a wider range
  struct Panel {
    BathDimension dim;
    double rho_max;
    SweepResult res;
  };
  std::vector<Panel> panels = {{BathDimension::One, 3.0, {}}, {BathDimension::Three, 0.5, {}}};
  const SweepAxis t_axis = SweepAxis::parse("temperature_ratio=0:0.06:20");
  for (auto& p : panels) {
    const SweepAxis r_axis{"R_nm", 0.0, p.rho_max * kNmPerRho, 20, false};
    p.res = run_sweep(physical_pair(p.dim), {r_axis, t_axis}, so);
  }
  Outcome o{true, ""};
  // rows are R-major: index = iR * 20 + iT
  auto en = [](const SweepResult& r, int iR, int iT) { return r.rows[static_cast<std::size_t>(iR * 20 + iT)].en_ab.value_or(-1.0); };
  for (const auto& p : panels) {
    const std::string tag = p.dim == BathDimension::One ? "1D" : "3D";
    if (p.res.failed() > 0) {
      o.pass = false;
      o.detail += tag + " failed points " + std::to_string(p.res.failed()) + "; ";
      continue;
    }
    const bool corner = en(p.res, 0, 0) > 0.0;
    // smallest R index beyond which every T has E_N = 0
    int r0 = 20;
    for (int iR = 19; iR >= 0; --iR) {
      bool zero = true;
      for (int iT = 0; iT < 20; ++iT) zero = zero && en(p.res, iR, iT) == 0.0;
      if (!zero) break;
      r0 = iR;
    }
    bool mono = true;
    for (int iT = 1; iT < 20; ++iT) mono = mono && en(p.res, 0, iT) <= en(p.res, 0, iT - 1) + 1e-6;
    o.pass = o.pass && corner && r0 < 20 && mono;
    o.detail += tag + ": corner E_N " + num(en(p.res, 0, 0)) + ", R0 ~ " +
                (r0 < 20 ? num(p.res.rows[static_cast<std::size_t>(r0 * 20)].swept[0]) + " nm" : std::string("none")) +
                ", monotone in T " + (mono ? "yes" : "no") + "; ";
  }
  // both panels share the R = 0 column
  int robust = -1;
  if (panels[0].res.failed() == 0 && panels[1].res.failed() == 0)
    for (int iT = 0; iT < 20 && robust < 0; ++iT)
      if (en(panels[0].res, 0, iT) == 0.0 && en(panels[1].res, 0, iT) > 0.0) robust = iT;
  o.pass = o.pass && robust >= 0;
  o.detail += robust >= 0 ? "3D entangled where 1D is not at theta " + num(t_axis.values()[static_cast<std::size_t>(robust)])
                          : std::string("no theta where 3D outlasts 1D");
  return o;
}

// triangle geometry in a 3D bath: R = 0.167 c / w_c, theta = 0.026
const double kTriR = 0.167;
const double kTheta = 0.026;

struct PairValue {
  double en, nu, err;
};

PairValue triangle_ac(double r, double wc) {
  const CovarianceMatrix c =
      covariance_blocks(make_config(kThree, BathDimension::Three, 5.0, wc, kTheta, triangle_rho(kTriR, r)));
  const Eigen::MatrixXd G = c.G();
  return {log_negativity(G, 0, 2), pair_nu_minus(G, 0, 2), c.max_error()};
}

PairValue pair_only_ac(double wc) {
  const CovarianceMatrix c =
      covariance_blocks(make_config(kPairAC, BathDimension::Three, 5.0, wc, kTheta, pair_rho(kTriR)));
  const Eigen::MatrixXd G = c.G();
  return {log_negativity(G, 0, 1), pair_nu_minus(G, 0, 1), c.max_error()};
}

Outcome triangle_asymptote(double wc) {
  // r up to 20 R_AC
  const PairValue far = triangle_ac(20.0 * kTriR, wc);
  const PairValue pair = pair_only_ac(wc);
  Outcome o;
  o.pass = std::abs(far.en - pair.en) <= 0.05 * std::abs(pair.en);
  o.detail = "E_N.AC at r = 20 R: " + num(far.en) + ", pair only: " + num(pair.en) + " (nu_minus " + num(far.nu) +
             " vs " + num(pair.nu) + ")";
  if (pair.en == 0.0 && far.en == 0.0) o.detail += "; both separable, agreement is trivial";
  return o;
}

Outcome third_oscillator_detriment(double wc) {
  const PairValue pair = pair_only_ac(wc);
  const PairValue near = triangle_ac(0.0, wc);
  Outcome o;
  o.pass = near.en < pair.en - (near.err + pair.err);
  o.detail = "E_N.AC with B at r = 0: " + num(near.en) + ", pair only: " + num(pair.en) + ", quad error " +
             num(near.err + pair.err) + " (nu_minus " + num(near.nu) + " vs " + num(pair.nu) + ")";
  if (pair.en == 0.0) o.detail += "; A and C are separable even without B";
  return o;
}

Outcome linear_minimum(double wc) {
  const double R = 0.933;
  std::vector<double> rs, ens, nus;
  for (int k = 0; k <= 40; ++k) {
    const double r = -0.45 * R + 0.9 * R * k / 40.0;
    const Eigen::MatrixXd G =
        covariance_blocks(make_config(kThree, BathDimension::One, 5.0, wc, kTheta, linear_rho(R, r))).G();
    rs.push_back(r);
    ens.push_back(log_negativity(G, 0, 2));
    nus.push_back(pair_nu_minus(G, 0, 2));
  }
  const auto imin = static_cast<std::size_t>(std::min_element(ens.begin(), ens.end()) - ens.begin());
  const auto imax_nu = static_cast<std::size_t>(std::max_element(nus.begin(), nus.end()) - nus.begin());
  const bool flat = *std::max_element(ens.begin(), ens.end()) == ens[imin];
  Outcome o;
  o.pass = !flat && std::abs(rs[imin]) <= 0.25 * (R / 2);
  o.detail = flat ? "E_N.AC is constant (" + num(ens[imin]) + ") over the sweep, argmin undefined"
                  : "argmin r / (R/2) = " + num(rs[imin] / (R / 2));
  o.detail += "; nu_minus.AC peaks at r / (R/2) = " + num(rs[imax_nu] / (R / 2)) + " (" + num(nus[imax_nu]) + ")";
  return o;
}

Outcome fidelity_curves() {
  Outcome o{true, ""};
  for (double R : {0.066, 2.367}) {
    Eigen::MatrixXd rho = Eigen::MatrixXd::Constant(3, 3, R);
    rho.diagonal().setZero();
    std::vector<double> f;
    for (int k = 0; k <= 28; ++k) {
      const double theta = 0.1 + 0.05 * k;  // 0.1 .. 1.5
      const DimensionlessConfig c = make_config(kThree, BathDimension::Three, 5.0, g_cutoff, theta, rho);
      f.push_back(fidelity_thermal(covariance_blocks(c).G(), c));
    }
    bool mono = true;
    for (std::size_t k = 1; k < f.size(); ++k) mono = mono && f[k] > f[k - 1];
    o.pass = o.pass && mono && f.back() >= 0.99;
    o.detail += "R=" + num(R) + ": F(0.1) " + num(f.front()) + ", F(1.5) " + num(f.back()) + ", increasing " +
                (mono ? "yes" : "no") + "; ";
  }
  return o;
}

Outcome class_sequence() {
  const double R = 0.933;
  std::vector<TripartiteClass> seq;
  std::vector<double> thetas;
  for (int k = 0; k <= 40; ++k) {
    const double theta = 0.2 * k / 40.0;
    const Eigen::MatrixXd G =
        covariance_blocks(make_config(kThree, BathDimension::One, 5.0, g_cutoff, theta, linear_rho(R, 0.0))).G();
    seq.push_back(classify_tripartite(G));
    thetas.push_back(theta);
  }
  bool mono = true;
  for (std::size_t k = 1; k < seq.size(); ++k) mono = mono && separability_rank(seq[k]) >= separability_rank(seq[k - 1]);
  Outcome o;
  o.pass = seq.front() == TripartiteClass::C1 && mono && separability_rank(seq.back()) == 3;
  std::ostringstream os;
  os << "theta 0..0.2:";
  for (std::size_t k = 0; k < seq.size(); ++k)
    if (k == 0 || seq[k] != seq[k - 1]) os << " " << to_string(seq[k]) << "@" << num(thetas[k]);
  o.detail = os.str();
  return o;
}

// verdict at g_cutoff; the other reading of Omega is reported alongside, without affecting the verdict
std::function<Outcome()> with_reading(Outcome (*f)(double)) {
  return [f] {
    Outcome o = f(g_cutoff);
    const double other = g_cutoff == 100.0 ? kCyclicCutoff : 100.0;
    try {
      const Outcome alt = f(other);
      o.detail += " | at w_c/Omega = " + num(other) + ": " + (alt.pass ? "holds" : "does not hold") + ", " + alt.detail;
    } catch (const std::exception& e) {
      o.detail += " | at w_c/Omega = " + num(other) + ": error " + e.what();
    }
    return o;
  };
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> c = {
      {1, "uncertainty relation on random configurations", 60, uncertainty_relation},
      {2, "weak-coupling Gibbs limit", 5, gibbs_limit},
      {3, "fluctuation-dissipation sine-transform oracle", 30, fdt_oracle},
      {4, "Kramers-Kronig oracle", 60, kk_oracle},
      {5, "Gaussian toolbox oracles", 5, toolbox_oracles},
      {6, "pair entanglement over distance and temperature", 600, distance_temperature_map},
      {7, "triangle: far third oscillator recovers the pair value", 180, with_reading(triangle_asymptote)},
      {8, "triangle: nearby third oscillator lowers E_N.AC", 120, with_reading(third_oscillator_detriment)},
      {9, "linear chain: E_N.AC minimal with B near the middle", 180, with_reading(linear_minimum)},
      {10, "fidelity to the thermal state", 180, fidelity_curves},
      {11, "tripartite class weakens with temperature", 600, class_sequence},
  };
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--cutoff" && i + 1 < argc)
      g_cutoff = std::atof(argv[++i]);
    else
      ids.push_back(std::atoi(argv[i]));
  }
  if (!(g_cutoff > 0.0)) {
    std::cerr << "--cutoff needs a positive value\n";
    return 2;
  }
  if (ids.empty())
    for (const auto& c : criteria()) ids.push_back(c.id);

  int failed = 0;
  for (int id : ids) {
    const auto it = std::find_if(criteria().begin(), criteria().end(), [&](const Criterion& c) { return c.id == id; });
    if (it == criteria().end()) {
      std::cout << "criterion " << id << ": unknown\n";
      ++failed;
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = it->run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = s < it->budget_s;
    const bool pass = o.pass && in_time;
    std::cout << "criterion " << id << " [" << it->title << "]: " << (pass ? "PASS" : "FAIL") << " (" << num(s)
              << " s of " << num(it->budget_s) << " s) " << o.detail << (in_time ? "" : " [over time budget]") << "\n";
    if (!pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
