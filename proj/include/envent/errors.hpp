#pragma once

#include <exception>
#include <stdexcept>
#include <string>

namespace envent {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// bad user input: unknown keys, out-of-range values
class ConfigError : public Error {
public:
  using Error::Error;
};

class GeometryError : public ConfigError {
public:
  using ConfigError::ConfigError;
};

// argument outside the domain of a numerical routine
class DomainError : public Error {
public:
  using Error::Error;
};

class OverflowError : public DomainError {
public:
  using DomainError::DomainError;
};

class SingularityError : public Error {
public:
  SingularityError(const std::string& what, double omega) : Error(what), omega_(omega) {}
  double omega() const { return omega_; }

private:
  double omega_;
};

class QuadratureError : public Error {
public:
  QuadratureError(const std::string& what, double a, double b) : Error(what), a_(a), b_(b) {}
  double worst_lower() const { return a_; }
  double worst_upper() const { return b_; }

private:
  double a_, b_;
};

// a computed state violates a physical invariant
class PhysicsError : public Error {
public:
  using Error::Error;
};

// closed-form expansion used outside its regime
class ValidityError : public Error {
public:
  using Error::Error;
};

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitNumerical = 3, kExitPhysics = 4 };

inline int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kExitConfig;
  if (dynamic_cast<const PhysicsError*>(&e)) return kExitPhysics;
  if (dynamic_cast<const ValidityError*>(&e)) return kExitConfig;
  return kExitNumerical;
}

}  // namespace envent
