#include "envent/units.hpp"

#include "envent/errors.hpp"

#include <cmath>

namespace envent {

int to_int(BathDimension d) { return static_cast<int>(d); }

BathDimension bath_dimension_from_int(int d) {
  switch (d) {
    case 1: return BathDimension::One;
    case 2: return BathDimension::Two;
    case 3: return BathDimension::Three;
    default: throw ConfigError("bath_dimension must be 1, 2 or 3, got " + std::to_string(d));
  }
}

Geometry Geometry::single() {
  Geometry g;
  g.kind = Kind::Single;
  return g;
}

Geometry Geometry::pair(double R) {
  Geometry g;
  g.kind = Kind::Pair;
  g.R = R;
  return g;
}

Geometry Geometry::linear(double R, double r) {
  Geometry g;
  g.kind = Kind::Linear;
  g.R = R;
  g.r = r;
  return g;
}

Geometry Geometry::isosceles_perp(double R, double r) {
  Geometry g;
  g.kind = Kind::IsoscelesPerp;
  g.R = R;
  g.r = r;
  return g;
}

Geometry Geometry::equilateral(double R) {
  Geometry g;
  g.kind = Kind::Equilateral;
  g.R = R;
  return g;
}

Geometry Geometry::custom(std::vector<std::vector<double>> positions) {
  Geometry g;
  g.kind = Kind::Custom;
  g.positions = std::move(positions);
  return g;
}

std::size_t Geometry::size() const {
  switch (kind) {
    case Kind::Single: return 1;
    case Kind::Pair: return 2;
    case Kind::Linear:
    case Kind::IsoscelesPerp:
    case Kind::Equilateral: return 3;
    case Kind::Custom: return positions.size();
  }
  return 0;
}

bool Geometry::collinear() const {
  switch (kind) {
    case Kind::Single:
    case Kind::Pair:
    case Kind::Linear: return true;
    case Kind::IsoscelesPerp: return r == 0.0;
    case Kind::Equilateral: return R == 0.0;
    case Kind::Custom: {
      if (positions.size() < 3) return true;
      const std::size_t d = positions[0].size();
      Eigen::MatrixXd m(positions.size() - 1, d);
      for (std::size_t i = 1; i < positions.size(); ++i)
        for (std::size_t k = 0; k < d; ++k) m(i - 1, k) = positions[i][k] - positions[0][k];
      if (m.norm() == 0.0) return true;
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
      const auto s = svd.singularValues();
      return s.size() < 2 || s(1) <= 1e-12 * s(0);
    }
  }
  return false;
}

void Geometry::validate() const {
  if (!std::isfinite(R) || !std::isfinite(r)) throw GeometryError("geometry distances must be finite");
  if (R < 0.0) throw GeometryError("geometry R must be nonnegative");
  if (kind == Kind::Linear && !(std::abs(r) < R / 2.0))
    throw GeometryError("linear geometry needs |r| < R/2");
  if (kind == Kind::Custom) {
    if (positions.empty()) throw GeometryError("custom geometry needs at least one position");
    const std::size_t d = positions[0].size();
    if (d == 0) throw GeometryError("custom positions must have at least one coordinate");
    for (const auto& p : positions) {
      if (p.size() != d) throw GeometryError("custom positions must all have the same dimension");
      for (double v : p)
        if (!std::isfinite(v)) throw GeometryError("custom positions must be finite");
    }
  }
}

std::string to_string(Geometry::Kind k) {
  switch (k) {
    case Geometry::Kind::Single: return "single";
    case Geometry::Kind::Pair: return "pair";
    case Geometry::Kind::Linear: return "linear";
    case Geometry::Kind::IsoscelesPerp: return "isosceles_perp";
    case Geometry::Kind::Equilateral: return "equilateral";
    case Geometry::Kind::Custom: return "custom";
  }
  return "?";
}

Geometry::Kind geometry_kind_from_string(const std::string& s) {
  if (s == "single") return Geometry::Kind::Single;
  if (s == "pair") return Geometry::Kind::Pair;
  if (s == "linear") return Geometry::Kind::Linear;
  if (s == "isosceles_perp") return Geometry::Kind::IsoscelesPerp;
  if (s == "equilateral") return Geometry::Kind::Equilateral;
  if (s == "custom") return Geometry::Kind::Custom;
  throw GeometryError("unknown geometry kind '" + s + "'");
}

Eigen::MatrixXd pair_distances(const Geometry& g) {
  g.validate();
  const auto n = static_cast<Eigen::Index>(g.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  auto set = [&d](int i, int j, double v) {
    d(i, j) = v;
    d(j, i) = v;
  };
  switch (g.kind) {
    case Geometry::Kind::Single: break;
    case Geometry::Kind::Pair: set(0, 1, g.R); break;
    case Geometry::Kind::Linear:
      set(0, 1, g.R / 2.0 + g.r);
      set(1, 2, g.R / 2.0 - g.r);
      set(0, 2, g.R);
      break;
    case Geometry::Kind::IsoscelesPerp: {
      const double leg = std::hypot(g.r, g.R / 2.0);
      set(0, 1, leg);
      set(1, 2, leg);
      set(0, 2, g.R);
      break;
    }
    case Geometry::Kind::Equilateral:
      set(0, 1, g.R);
      set(1, 2, g.R);
      set(0, 2, g.R);
      break;
    case Geometry::Kind::Custom:
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) {
          double s = 0.0;
          for (std::size_t k = 0; k < g.positions[i].size(); ++k) {
            const double dx = g.positions[i][k] - g.positions[j][k];
            s += dx * dx;
          }
          set(int(i), int(j), std::sqrt(s));
        }
      break;
  }
  return d;
}

void PhysicalConfig::validate() const {
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string(what) + " must be positive");
  };
  positive(mass_kg, "mass");
  positive(base_frequency, "base frequency");
  positive(cutoff, "cutoff");
  positive(sound_speed, "sound speed");
  if (oscillator_frequencies.empty()) throw ConfigError("at least one oscillator frequency is required");
  for (double w : oscillator_frequencies) positive(w, "oscillator frequency");
  if (!(coupling >= 0.0) || !std::isfinite(coupling)) throw ConfigError("coupling must be nonnegative");
  if (!(temperature.value >= 0.0) || !std::isfinite(temperature.value))
    throw ConfigError("temperature must be nonnegative");
  geometry.validate();
  if (geometry.size() != oscillator_frequencies.size())
    throw GeometryError("geometry '" + to_string(geometry.kind) + "' holds " +
                        std::to_string(geometry.size()) + " oscillators but " +
                        std::to_string(oscillator_frequencies.size()) + " frequencies were given");
  if (bath_dimension == BathDimension::One && !geometry.collinear())
    throw GeometryError("a 1D bath requires collinear oscillators");
  if (geometry.kind == Geometry::Kind::Custom &&
      geometry.positions[0].size() != static_cast<std::size_t>(to_int(bath_dimension)))
    throw GeometryError("custom positions must have the bath's spatial dimension");
}

void DimensionlessConfig::validate() const {
  const auto n = frequencies.size();
  if (n < 1) throw ConfigError("at least one oscillator is required");
  for (Eigen::Index i = 0; i < n; ++i)
    if (!(frequencies(i) > 0.0) || !std::isfinite(frequencies(i)))
      throw ConfigError("dimensionless frequencies must be positive");
  if (!(cutoff > 0.0) || !std::isfinite(cutoff)) throw ConfigError("cutoff must be positive");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ConfigError("coupling must be nonnegative");
  if (!(theta >= 0.0) || !std::isfinite(theta)) throw ConfigError("temperature must be nonnegative");
  if (rho.rows() != n || rho.cols() != n) throw ConfigError("distance matrix has the wrong shape");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (rho(i, i) != 0.0) throw ConfigError("distance matrix needs a zero diagonal");
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!(rho(i, j) >= 0.0) || !std::isfinite(rho(i, j)))
        throw ConfigError("reduced distances must be nonnegative");
      if (rho(i, j) != rho(j, i)) throw ConfigError("distance matrix must be symmetric");
    }
  }
}

double cutoff_from_mev(double mev) { return mev * 1e-3 / constants::hbar_eVs; }

DimensionlessConfig to_dimensionless(const PhysicalConfig& cfg) {
  cfg.validate();
  DimensionlessConfig d;
  const auto n = static_cast<Eigen::Index>(cfg.size());
  d.frequencies.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) d.frequencies(i) = cfg.oscillator_frequencies[i] / cfg.base_frequency;
  d.gamma = cfg.coupling / cfg.base_frequency;
  d.cutoff = cfg.cutoff / cfg.base_frequency;
  if (cfg.temperature.kind == Temperature::Kind::Ratio)
    d.theta = cfg.temperature.value;
  else
    d.theta = constants::kB_eV_per_K * cfg.temperature.value / (constants::hbar_eVs * cfg.cutoff);
  d.rho = pair_distances(cfg.geometry) * (cfg.cutoff / cfg.sound_speed);
  d.dimension = cfg.bath_dimension;
  d.validate();
  return d;
}

}  // namespace envent
