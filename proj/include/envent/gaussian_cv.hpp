#pragma once

#include "envent/units.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace envent {

// Covariance matrices use the ordering (x_1..x_M, p_1..p_M) and the vacuum has G = I/2.

// sigma = [[0, I], [-I, 0]]
Eigen::MatrixXd symplectic_form(std::size_t modes);

struct Bipartition {
  std::vector<std::size_t> subset_a;  // modes in A; the rest form B
  std::size_t modes = 0;

  std::vector<std::size_t> subset_b() const;
  std::string label() const;  // e.g. "A|BC", "AB|C"
  void validate() const;
};

std::string mode_label(std::size_t i);
std::string pair_label(std::size_t i, std::size_t j);

// sorted ascending; from the +-nu paired spectrum of i sigma G
Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& G);

// Lambda G Lambda with the momenta of B sign-flipped
Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& G, const Bipartition& part);

// sub-covariance of the listed modes, same (x..., p...) ordering
Eigen::MatrixXd reduce(const Eigen::MatrixXd& G, const std::vector<std::size_t>& modes);

// smallest symplectic eigenvalue of the partial transpose of the (i, j) pair
double pair_nu_minus(const Eigen::MatrixXd& G, std::size_t i, std::size_t j);
double log_negativity(const Eigen::MatrixXd& G, std::size_t i, std::size_t j);
// transpose mode j in the full matrix first, then trace out the rest
double log_negativity_transpose_first(const Eigen::MatrixXd& G, std::size_t i, std::size_t j);

double min_pt_symplectic_eigenvalue(const Eigen::MatrixXd& G, const Bipartition& part);
bool ppt_separable(const Eigen::MatrixXd& G, const Bipartition& part, double tol = 1e-10);

enum class SeparabilityVerdict { Yes, No, Undecided };
std::string to_string(SeparabilityVerdict v);

struct SeparabilityOptions {
  double tol = 1e-9;
  std::size_t max_iter = 200;
};

struct SeparabilityResult {
  SeparabilityVerdict verdict = SeparabilityVerdict::Undecided;
  std::size_t iterations = 0;
  double best_margin = 0.0;   // best feasibility margin found (>= -tol means a witness)
  double upper_bound = 0.0;   // certified bound on the optimal margin
};

// Three-mode full separability: is there a single-mode covariance gamma_A (gamma_A + i sigma/2 >= 0)
// such that G - gamma_A (+) 0 is a physical and PPT two-mode covariance of BC?
SeparabilityResult full_separability(const Eigen::MatrixXd& G, const SeparabilityOptions& opts = {});
SeparabilityVerdict is_fully_separable(const Eigen::MatrixXd& G, double tol = 1e-9, std::size_t max_iter = 200);

enum class TripartiteClass { C1, C2, C3, C4, C5, C4or5Undecided };
std::string to_string(TripartiteClass c);
// 1 for C1, 2 for C2/C3, 3 for C4/C5/undecided
int separability_rank(TripartiteClass c);

struct ClassifyOptions {
  double ppt_tol = 1e-10;
  SeparabilityOptions separability;
};

// A|BC, AB|C, AC|B
std::vector<Bipartition> tripartite_bipartitions();
TripartiteClass classify_tripartite(const Eigen::MatrixXd& G, const ClassifyOptions& opts = {});

// nu^C_l = coth(w_l / 2T) / 2 of the bare oscillators
Eigen::VectorXd thermal_symplectic_spectrum(const DimensionlessConfig& cfg);
double fidelity_from_spectra(Eigen::VectorXd nu, Eigen::VectorXd nu_c);
double fidelity_thermal(const Eigen::MatrixXd& G, const DimensionlessConfig& cfg);

struct PptVerdict {
  std::string label;
  bool separable = true;
  double nu_min = 0.0;
};

struct EntanglementReport {
  std::size_t n = 0;
  Eigen::MatrixXd log_negativity;  // symmetric, zero diagonal
  Eigen::MatrixXd nu_minus;        // per pair; diagonal unused (set to 0)
  std::vector<PptVerdict> ppt;     // the three 1|2 bipartitions when n = 3
  std::optional<TripartiteClass> tripartite;
  double fidelity = 1.0;
};

EntanglementReport make_report(const Eigen::MatrixXd& G, const DimensionlessConfig& cfg,
                               const ClassifyOptions& opts = {});

// key = value lines: E_N.AB, nu_minus.AB, ppt.A|BC, class, fidelity
std::string format_report(const EntanglementReport& r);

}  // namespace envent
