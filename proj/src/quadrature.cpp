#include "envent/quadrature.hpp"

#include "envent/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace envent {

namespace {

// Kronrod abscissae on [0,1]; odd indices are the Gauss points
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  Eigen::VectorXd value, error;
};

Panel evaluate_panel(const VectorIntegrand& f, std::size_t dim, double a, double b, Eigen::VectorXd& buf1,
                     Eigen::VectorXd& buf2) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  Eigen::VectorXd kron = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd gauss = Eigen::VectorXd::Zero(dim);
  f(c, buf1);
  kron += kWgk[7] * buf1;
  gauss += kWg[3] * buf1;
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    f(c - dx, buf1);
    f(c + dx, buf2);
    kron += kWgk[j] * (buf1 + buf2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (buf1 + buf2);
  }
  Panel p{a, b, kron * h, ((kron - gauss) * h).cwiseAbs()};
  return p;
}

}  // namespace

AdaptiveResult integrate_adaptive(const VectorIntegrand& f, std::size_t dim, const std::vector<double>& breakpoints,
                                  const std::vector<ComponentBlock>& blocks, const BlockTolerance& tolerance,
                                  const AdaptiveOptions& opts) {
  if (breakpoints.size() < 2) throw DomainError("quadrature needs at least two breakpoints");
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    if (!(breakpoints[i] > breakpoints[i - 1])) throw DomainError("quadrature breakpoints must increase");

  Eigen::VectorXd buf1(dim), buf2(dim);
  std::vector<Panel> panels;
  panels.reserve(opts.max_intervals + breakpoints.size());
  AdaptiveResult res;
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    panels.push_back(evaluate_panel(f, dim, breakpoints[i - 1], breakpoints[i], buf1, buf2));
    res.evaluations += 15;
  }


  auto weighted = [&](const Panel& p, const Eigen::VectorXd& tol) {
    double w = 0.0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const double eb = p.error.segment(blocks[b].offset, blocks[b].length).maxCoeff();
      w = std::max(w, eb / tol(b));
    }
    return w;
  };

  Eigen::VectorXd value = Eigen::VectorXd::Zero(dim), error = Eigen::VectorXd::Zero(dim);
  for (const auto& p : panels) {
    value += p.value;
    error += p.error;
  }
  while (true) {
    const Eigen::VectorXd tol = tolerance(value);
    bool ok = true;
    for (std::size_t b = 0; b < blocks.size(); ++b)
      if (error.segment(blocks[b].offset, blocks[b].length).maxCoeff() > tol(b)) ok = false;

    std::size_t worst = 0;
    double worst_w = -1.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      const double w = weighted(panels[i], tol);
      if (w > worst_w) {
        worst_w = w;
        worst = i;
      }
    }
    res.worst_lower = panels[worst].a;
    res.worst_upper = panels[worst].b;
    if (ok || panels.size() >= opts.max_intervals) {
      res.converged = ok;
      break;
    }
    const Panel p = panels[worst];
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b)) {
      res.converged = false;
      break;
    }
    panels[worst] = evaluate_panel(f, dim, p.a, mid, buf1, buf2);
    panels.push_back(evaluate_panel(f, dim, mid, p.b, buf1, buf2));
    res.evaluations += 30;
    value += panels[worst].value + panels.back().value - p.value;
    error += panels[worst].error + panels.back().error - p.error;
    error = error.cwiseMax(0.0);
  }
  // exact resummation so the reported numbers carry no update drift
  value.setZero();
  error.setZero();
  for (const auto& p : panels) {
    value += p.value;
    error += p.error;
  }
  res.value = value;
  res.error = error;
  res.intervals = panels.size();
  return res;
}

}  // namespace envent
