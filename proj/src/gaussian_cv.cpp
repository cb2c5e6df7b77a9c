#include "envent/gaussian_cv.hpp"

#include "envent/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace envent {

namespace {

std::size_t modes_of(const Eigen::MatrixXd& G) {
  if (G.rows() != G.cols() || G.rows() % 2 != 0 || G.rows() == 0)
    throw DomainError("covariance matrix must be square with even dimension");
  return static_cast<std::size_t>(G.rows() / 2);
}

// Parlett-Reinsch diagonal balancing, radix 2
void balance(Eigen::MatrixXd& a) {
  const double radix = 2.0;
  const Eigen::Index n = a.rows();
  bool done = false;
  for (int sweep = 0; !done && sweep < 100; ++sweep) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      double g = r / radix;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

double lambda_min(const Eigen::MatrixXcd& h, Eigen::VectorXcd& v) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  v = es.eigenvectors().col(0);
  return es.eigenvalues()(0);
}

}  // namespace

Eigen::MatrixXd symplectic_form(std::size_t modes) {
  const auto n = static_cast<Eigen::Index>(modes);
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  s.topRightCorner(n, n).setIdentity();
  s.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  return s;
}

std::string mode_label(std::size_t i) {
  if (i < 26) return std::string(1, static_cast<char>('A' + i));
  return "M" + std::to_string(i + 1);
}

std::string pair_label(std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  return mode_label(i) + mode_label(j);
}

std::vector<std::size_t> Bipartition::subset_b() const {
  std::vector<std::size_t> b;
  for (std::size_t i = 0; i < modes; ++i)
    if (std::find(subset_a.begin(), subset_a.end(), i) == subset_a.end()) b.push_back(i);
  return b;
}

std::string Bipartition::label() const {
  std::vector<std::size_t> a = subset_a;
  std::sort(a.begin(), a.end());
  std::string s;
  for (auto i : a) s += mode_label(i);
  s += "|";
  for (auto i : subset_b()) s += mode_label(i);
  return s;
}

void Bipartition::validate() const {
  if (subset_a.empty() || subset_a.size() >= modes) throw DomainError("bipartition needs a nonempty proper subset");
  for (auto i : subset_a)
    if (i >= modes) throw DomainError("bipartition mode index out of range");
}

Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& G) {
  const std::size_t m = modes_of(G);
  const double scale = G.cwiseAbs().maxCoeff();
  if (!std::isfinite(scale)) throw DomainError("covariance matrix has non-finite entries");
  if ((G - G.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) throw DomainError("covariance matrix is not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(G);
  if (llt.info() != Eigen::Success) throw DomainError("covariance matrix is not positive definite");

  // i sigma G has real eigenvalues +-nu; equivalently sigma G has +-i nu
  Eigen::MatrixXd a = symplectic_form(m) * G;
  balance(a);
  Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
  if (es.info() != Eigen::Success) throw DomainError("symplectic eigen-solve failed");
  const Eigen::VectorXcd ev = es.eigenvalues();
  const double top = ev.cwiseAbs().maxCoeff();
  std::vector<double> mags;
  mags.reserve(ev.size());
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (std::abs(ev(k).real()) > 1e-8 * top) throw DomainError("symplectic spectrum has a non-negligible imaginary residue");
    mags.push_back(std::abs(ev(k).imag()));
  }
  std::sort(mags.begin(), mags.end());
  Eigen::VectorXd nu(m);
  for (std::size_t k = 0; k < m; ++k) nu(k) = 0.5 * (mags[2 * k] + mags[2 * k + 1]);
  return nu;
}

Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& G, const Bipartition& part) {
  const std::size_t m = modes_of(G);
  if (part.modes != m) throw DomainError("bipartition does not match the covariance size");
  part.validate();
  Eigen::MatrixXd out = G;
  for (auto b : part.subset_b()) {
    const auto p = static_cast<Eigen::Index>(m + b);
    out.row(p) *= -1.0;
    out.col(p) *= -1.0;
  }
  return out;
}

Eigen::MatrixXd reduce(const Eigen::MatrixXd& G, const std::vector<std::size_t>& modes) {
  const std::size_t m = modes_of(G);
  const auto k = static_cast<Eigen::Index>(modes.size());
  std::vector<Eigen::Index> idx;
  for (auto i : modes) {
    if (i >= m) throw DomainError("mode index out of range");
    idx.push_back(static_cast<Eigen::Index>(i));
  }
  for (auto i : modes) idx.push_back(static_cast<Eigen::Index>(m + i));
  Eigen::MatrixXd out(2 * k, 2 * k);
  for (Eigen::Index r = 0; r < 2 * k; ++r)
    for (Eigen::Index c = 0; c < 2 * k; ++c) out(r, c) = G(idx[r], idx[c]);
  return out;
}

double pair_nu_minus(const Eigen::MatrixXd& G, std::size_t i, std::size_t j) {
  if (i == j) throw DomainError("log-negativity needs two distinct modes");
  const Eigen::MatrixXd g = reduce(G, {i, j});
  return symplectic_eigenvalues(partial_transpose(g, Bipartition{{0}, 2}))(0);
}

double log_negativity(const Eigen::MatrixXd& G, std::size_t i, std::size_t j) {
  return std::max(0.0, -std::log(2.0 * pair_nu_minus(G, i, j)));
}

double log_negativity_transpose_first(const Eigen::MatrixXd& G, std::size_t i, std::size_t j) {
  if (i == j) throw DomainError("log-negativity needs two distinct modes");
  const std::size_t m = modes_of(G);
  std::vector<std::size_t> a;
  for (std::size_t k = 0; k < m; ++k)
    if (k != j) a.push_back(k);
  const Eigen::MatrixXd pt = partial_transpose(G, Bipartition{a, m});
  const double nu = symplectic_eigenvalues(reduce(pt, {i, j}))(0);
  return std::max(0.0, -std::log(2.0 * nu));
}

double min_pt_symplectic_eigenvalue(const Eigen::MatrixXd& G, const Bipartition& part) {
  return symplectic_eigenvalues(partial_transpose(G, part))(0);
}

bool ppt_separable(const Eigen::MatrixXd& G, const Bipartition& part, double tol) {
  return min_pt_symplectic_eigenvalue(G, part) >= 0.5 - tol;
}

std::string to_string(SeparabilityVerdict v) {
  switch (v) {
    case SeparabilityVerdict::Yes: return "yes";
    case SeparabilityVerdict::No: return "no";
    case SeparabilityVerdict::Undecided: return "undecided";
  }
  return "?";
}

SeparabilityResult full_separability(const Eigen::MatrixXd& G, const SeparabilityOptions& opts) {
  if (modes_of(G) != 3) throw DomainError("full separability test needs three modes");
  using Complex = std::complex<double>;
  const Complex I(0.0, 1.0);
  const double r2 = std::sqrt(2.0);

  // modes: A = 0, B = 1, C = 2; indices x_k = k, p_k = 3 + k
  Eigen::MatrixXcd s_bc = Eigen::MatrixXcd::Zero(6, 6);
  for (int k = 1; k <= 2; ++k) {
    s_bc(k, 3 + k) = 0.5 * I;
    s_bc(3 + k, k) = -0.5 * I;
  }
  Eigen::MatrixXd g_pt = G;
  g_pt.row(5) *= -1.0;
  g_pt.col(5) *= -1.0;
  const Eigen::MatrixXcd h2_0 = G.cast<Complex>() + s_bc;
  const Eigen::MatrixXcd h3_0 = g_pt.cast<Complex>() + s_bc;
  Eigen::Matrix2cd s_a;
  s_a << 0.0, 0.5 * I, -0.5 * I, 0.0;

  auto gamma_a = [&](const Eigen::Vector3d& p) {
    Eigen::Matrix2d g;
    g << p(0), p(1) / r2, p(1) / r2, p(2);
    return g;
  };

  // margin f(p) = min of the three smallest eigenvalues; g is a supergradient
  auto evaluate = [&](const Eigen::Vector3d& p, Eigen::Vector3d& grad) {
    const Eigen::Matrix2d ga = gamma_a(p);
    Eigen::VectorXcd v;
    const Eigen::MatrixXcd h1 = ga.cast<Complex>() + s_a;
    double best = lambda_min(h1, v);
    grad << std::norm(v(0)), r2 * (std::conj(v(0)) * v(1)).real(), std::norm(v(1));
    for (const Eigen::MatrixXcd* h0 : {&h2_0, &h3_0}) {
      Eigen::MatrixXcd h = *h0;
      h(0, 0) -= ga(0, 0);
      h(0, 3) -= ga(0, 1);
      h(3, 0) -= ga(1, 0);
      h(3, 3) -= ga(1, 1);
      const double l = lambda_min(h, v);
      if (l < best) {
        best = l;
        grad << -std::norm(v(0)), -r2 * (std::conj(v(0)) * v(3)).real(), -std::norm(v(3));
      }
    }
    return best;
  };

  SeparabilityResult res;
  const Eigen::Matrix2d a = reduce(G, {0});
  const Eigen::Vector3d p_full(a(0, 0), r2 * a(0, 1), a(1, 1));
  Eigen::Vector3d grad;

  double best = evaluate(p_full, grad);
  res.iterations = 1;
  res.best_margin = best;
  res.upper_bound = std::numeric_limits<double>::infinity();
  if (best >= -opts.tol) {
    res.verdict = SeparabilityVerdict::Yes;
    return res;
  }
  Eigen::Vector3d x = 0.5 * p_full;
  best = std::max(best, evaluate(x, grad));
  // every gamma_A with margin >= best lies in best*I <= gamma_A <= A - best*I
  const double lam = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(a).eigenvalues()(1);
  const double radius = 1.01 * r2 * (0.5 * lam + std::abs(std::min(best, 0.0))) + 1e-12;
  Eigen::Matrix3d P = radius * radius * Eigen::Matrix3d::Identity();
  const double n = 3.0;

  for (std::size_t it = 1; it < opts.max_iter; ++it) {
    const double f = evaluate(x, grad);
    res.iterations = it + 1;
    best = std::max(best, f);
    res.best_margin = best;
    if (best >= -opts.tol) {
      res.verdict = SeparabilityVerdict::Yes;
      return res;
    }
    const Eigen::Vector3d pg = P * grad;
    const double gpg = grad.dot(pg);
    if (!(gpg > 0.0)) {
      res.upper_bound = f;
      res.verdict = f >= -opts.tol ? SeparabilityVerdict::Yes : SeparabilityVerdict::No;
      return res;
    }
    const double root = std::sqrt(gpg);
    res.upper_bound = std::min(res.upper_bound, f + root);
    if (res.upper_bound < -opts.tol) {
      res.verdict = SeparabilityVerdict::No;
      return res;
    }
    x += pg / (root * (n + 1.0));
    P = (n * n / (n * n - 1.0)) * (P - (2.0 / (n + 1.0)) * (pg * pg.transpose()) / gpg);
    P = 0.5 * (P + P.transpose()).eval();
  }
  res.verdict = SeparabilityVerdict::Undecided;
  return res;
}

SeparabilityVerdict is_fully_separable(const Eigen::MatrixXd& G, double tol, std::size_t max_iter) {
  return full_separability(G, SeparabilityOptions{tol, max_iter}).verdict;
}

std::string to_string(TripartiteClass c) {
  switch (c) {
    case TripartiteClass::C1: return "C1";
    case TripartiteClass::C2: return "C2";
    case TripartiteClass::C3: return "C3";
    case TripartiteClass::C4: return "C4";
    case TripartiteClass::C5: return "C5";
    case TripartiteClass::C4or5Undecided: return "C4or5";
  }
  return "?";
}

int separability_rank(TripartiteClass c) {
  switch (c) {
    case TripartiteClass::C1: return 1;
    case TripartiteClass::C2:
    case TripartiteClass::C3: return 2;
    default: return 3;
  }
}

std::vector<Bipartition> tripartite_bipartitions() { return {{{0}, 3}, {{0, 1}, 3}, {{0, 2}, 3}}; }

TripartiteClass classify_tripartite(const Eigen::MatrixXd& G, const ClassifyOptions& opts) {
  if (modes_of(G) != 3) throw DomainError("tripartite classification needs three modes");
  int s = 0;
  for (const auto& b : tripartite_bipartitions())
    if (ppt_separable(G, b, opts.ppt_tol)) ++s;
  switch (s) {
    case 0: return TripartiteClass::C1;
    case 1: return TripartiteClass::C2;
    case 2: return TripartiteClass::C3;
    default: break;
  }
  switch (full_separability(G, opts.separability).verdict) {
    case SeparabilityVerdict::Yes: return TripartiteClass::C5;
    case SeparabilityVerdict::No: return TripartiteClass::C4;
    case SeparabilityVerdict::Undecided: return TripartiteClass::C4or5Undecided;
  }
  return TripartiteClass::C4or5Undecided;
}

Eigen::VectorXd thermal_symplectic_spectrum(const DimensionlessConfig& cfg) {
  const double t = cfg.temperature();
  Eigen::VectorXd nu(cfg.frequencies.size());
  for (Eigen::Index i = 0; i < nu.size(); ++i) {
    const double x = t > 0.0 ? cfg.frequencies(i) / (2.0 * t) : INFINITY;
    nu(i) = x > 40.0 ? 0.5 : 0.5 / std::tanh(x);
  }
  return nu;
}

double fidelity_from_spectra(Eigen::VectorXd nu, Eigen::VectorXd nu_c) {
  if (nu.size() != nu_c.size()) throw DomainError("fidelity needs spectra of equal length");
  std::sort(nu.data(), nu.data() + nu.size());
  std::sort(nu_c.data(), nu_c.data() + nu_c.size());
  double f = 1.0;
  for (Eigen::Index i = 0; i < nu.size(); ++i) {
    const double a = nu(i), b = nu_c(i);
    const double root = std::sqrt(std::max(0.0, (a * a - 0.25) * (b * b - 0.25)));
    f *= 2.0 / ((a + b) * (a + b)) * (a * b + 0.25 + root);
  }
  return f;
}

double fidelity_thermal(const Eigen::MatrixXd& G, const DimensionlessConfig& cfg) {
  if (modes_of(G) != cfg.size()) throw DomainError("covariance size does not match the configuration");
  return fidelity_from_spectra(symplectic_eigenvalues(G), thermal_symplectic_spectrum(cfg));
}

EntanglementReport make_report(const Eigen::MatrixXd& G, const DimensionlessConfig& cfg, const ClassifyOptions& opts) {
  EntanglementReport r;
  r.n = modes_of(G);
  const auto n = static_cast<Eigen::Index>(r.n);
  r.log_negativity = Eigen::MatrixXd::Zero(n, n);
  r.nu_minus = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double nu = pair_nu_minus(G, i, j);
      r.nu_minus(i, j) = r.nu_minus(j, i) = nu;
      r.log_negativity(i, j) = r.log_negativity(j, i) = std::max(0.0, -std::log(2.0 * nu));
    }
  if (r.n == 3) {
    for (const auto& b : tripartite_bipartitions()) {
      const double nu = min_pt_symplectic_eigenvalue(G, b);
      r.ppt.push_back({b.label(), nu >= 0.5 - opts.ppt_tol, nu});
    }
    r.tripartite = classify_tripartite(G, opts);
  }
  r.fidelity = fidelity_thermal(G, cfg);
  return r;
}

std::string format_report(const EntanglementReport& r) {
  std::ostringstream os;
  os << std::setprecision(10);
  const auto n = static_cast<std::size_t>(r.n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) os << "E_N." << pair_label(i, j) << " = " << r.log_negativity(i, j) << "\n";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) os << "nu_minus." << pair_label(i, j) << " = " << r.nu_minus(i, j) << "\n";
  for (const auto& p : r.ppt)
    os << "ppt." << p.label << " = " << (p.separable ? "separable" : "entangled") << " (nu_min " << p.nu_min << ")\n";
  if (r.tripartite) os << "class = " << to_string(*r.tripartite) << "\n";
  os << "fidelity = " << r.fidelity << "\n";
  return os.str();
}

}  // namespace envent
