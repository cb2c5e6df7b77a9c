#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <vector>

namespace envent {

// Globally adaptive Gauss-Kronrod 7/15 quadrature of a vector-valued integrand.
// Components are grouped into blocks; each block gets its own tolerance derived from the running
// integral, and the interval with the largest tolerance-weighted error is bisected next.

struct ComponentBlock {
  std::size_t offset = 0;
  std::size_t length = 0;
};

struct AdaptiveOptions {
  std::size_t max_intervals = 2000;
};

struct AdaptiveResult {
  Eigen::VectorXd value;
  Eigen::VectorXd error;
  std::size_t evaluations = 0;
  std::size_t intervals = 0;
  bool converged = false;
  double worst_lower = 0.0;  // interval holding the largest weighted error at exit
  double worst_upper = 0.0;
};

using VectorIntegrand = std::function<void(double x, Eigen::Ref<Eigen::VectorXd> out)>;
// per-block tolerance from the current integral estimate
using BlockTolerance = std::function<Eigen::VectorXd(const Eigen::VectorXd& value)>;

AdaptiveResult integrate_adaptive(const VectorIntegrand& f, std::size_t dim, const std::vector<double>& breakpoints,
                                  const std::vector<ComponentBlock>& blocks, const BlockTolerance& tolerance,
                                  const AdaptiveOptions& opts = {});

}  // namespace envent
