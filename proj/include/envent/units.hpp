#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

namespace envent {

namespace constants {
inline constexpr double hbar_eVs = 6.582119569e-16;
inline constexpr double kB_eV_per_K = 8.617333262e-5;
inline constexpr double ghz = 1e9;  // GHz inputs are read as 1e9 rad/s
inline constexpr double nm = 1e-9;
inline constexpr double pi = 3.14159265358979323846;
}  // namespace constants

enum class BathDimension { One = 1, Two = 2, Three = 3 };

int to_int(BathDimension d);
BathDimension bath_dimension_from_int(int d);

struct Geometry {
  enum class Kind { Single, Pair, Linear, IsoscelesPerp, Equilateral, Custom };

  Kind kind = Kind::Pair;
  double R = 0.0;  // meters
  double r = 0.0;  // meters
  std::vector<std::vector<double>> positions;  // meters, Custom only

  static Geometry single();
  static Geometry pair(double R);
  static Geometry linear(double R, double r);
  static Geometry isosceles_perp(double R, double r);
  static Geometry equilateral(double R);
  static Geometry custom(std::vector<std::vector<double>> positions);

  std::size_t size() const;
  // all oscillators on one line
  bool collinear() const;
  void validate() const;
};

std::string to_string(Geometry::Kind k);
Geometry::Kind geometry_kind_from_string(const std::string& s);

// symmetric N x N, zero diagonal, meters
Eigen::MatrixXd pair_distances(const Geometry& g);

struct Temperature {
  enum class Kind { Kelvin, Ratio };
  Kind kind = Kind::Ratio;
  double value = 0.0;  // K, or k_B T / hbar w_c

  static Temperature kelvin(double t) { return {Kind::Kelvin, t}; }
  static Temperature ratio(double t) { return {Kind::Ratio, t}; }
};

struct PhysicalConfig {
  double mass_kg = 1e-16;
  double base_frequency = 1e9;               // rad/s
  std::vector<double> oscillator_frequencies;  // rad/s
  BathDimension bath_dimension = BathDimension::One;
  double coupling = 0.0;     // rad/s
  double cutoff = 1e11;      // rad/s
  double sound_speed = 3e3;  // m/s
  Temperature temperature;
  Geometry geometry;

  std::size_t size() const { return oscillator_frequencies.size(); }
  void validate() const;
};

// hbar = m = Omega = 1
struct DimensionlessConfig {
  Eigen::VectorXd frequencies;
  double gamma = 0.0;
  double cutoff = 1.0;
  double theta = 0.0;  // k_B T / hbar w_c
  Eigen::MatrixXd rho;
  BathDimension dimension = BathDimension::One;

  std::size_t size() const { return static_cast<std::size_t>(frequencies.size()); }
  // temperature in units of hbar Omega / k_B
  double temperature() const { return theta * cutoff; }
  void validate() const;
};

double cutoff_from_mev(double mev);
DimensionlessConfig to_dimensionless(const PhysicalConfig& cfg);

}  // namespace envent
