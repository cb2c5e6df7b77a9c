#include "envent/specfun.hpp"

#include "envent/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace envent {

namespace {

using LComplex = std::complex<long double>;

constexpr long double kEulerGamma = 0.577215664901532860606512090082402431L;
constexpr double kPi = 3.14159265358979323846;

// below this |z| the series is always used
constexpr double kSeriesRadius = 4.0;
// series also used when |z| + Re z (the cancellation exponent for Re z < 0) is small
constexpr double kSeriesLossBudget = 14.0;
constexpr int kCfMaxIter = 20000;

// sum_{k>=1} s^k / (k k!) in extended precision
LComplex power_sum(LComplex s) {
  const long double eps = std::numeric_limits<long double>::epsilon();
  const long double mag = std::abs(s);
  LComplex term = 1.0L;
  LComplex sum = 0.0L;
  for (int k = 1; k < 100000; ++k) {
    term *= s / static_cast<long double>(k);
    const LComplex c = term / static_cast<long double>(k);
    sum += c;
    if (k > mag && std::abs(c) <= eps * std::abs(sum)) break;
  }
  return sum;
}

void check_finite(Complex v, const char* where) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw DomainError(std::string(where) + ": non-finite result");
}

bool use_series(Complex z) {
  const double a = std::abs(z);
  return a < kSeriesRadius || (z.real() < 0.0 && a + z.real() <= kSeriesLossBudget);
}

Complex scaled_cf_or_throw(Complex z) {
  bool ok = false;
  Complex s = detail::scaled_e1_continued_fraction(z, kCfMaxIter, ok);
  if (!ok) throw DomainError("E1 continued fraction did not converge");
  return s;
}

}  // namespace

namespace detail {

Complex e1_series(Complex z) {
  const LComplex lz(z.real(), z.imag());
  const LComplex v = -kEulerGamma - std::log(lz) - power_sum(-lz);
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

Complex ei_series(Complex w) {
  const LComplex lw(w.real(), w.imag());
  const LComplex v = kEulerGamma + std::log(lw) + power_sum(lw);
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

Complex scaled_e1_continued_fraction(Complex z, int max_iter, bool& converged) {
  // modified Lentz on e^z E1(z) = 1/(z+1- 1/(z+3- 4/(z+5- ...)))
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-16;
  Complex b = z + 1.0;
  Complex c = 1.0 / tiny;
  Complex d = 1.0 / b;
  Complex h = d;
  converged = false;
  for (int i = 1; i <= max_iter; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const Complex del = c * d;
    h *= del;
    if (std::abs(del - 1.0) <= eps) {
      converged = true;
      break;
    }
  }
  return h;
}

}  // namespace detail

Complex scaled_incomplete_gamma_0(Complex z) {
  if (z == Complex(0.0, 0.0)) throw DomainError("Gamma(0, z) diverges at z = 0");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("Gamma(0, z): non-finite argument");
  Complex s;
  if (use_series(z)) {
    const LComplex lz(z.real(), z.imag());
    const LComplex e1 = -kEulerGamma - std::log(lz) - power_sum(-lz);
    const LComplex v = std::exp(lz) * e1;
    s = {static_cast<double>(v.real()), static_cast<double>(v.imag())};
  } else {
    s = scaled_cf_or_throw(z);
  }
  check_finite(s, "scaled Gamma(0, z)");
  return s;
}

Complex incomplete_gamma_0(Complex z) {
  if (z == Complex(0.0, 0.0)) throw DomainError("Gamma(0, z) diverges at z = 0");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("Gamma(0, z): non-finite argument");
  if (z.real() < -700.0) throw OverflowError("Gamma(0, z) overflows for Re z < -700");
  Complex v;
  if (use_series(z))
    v = detail::e1_series(z);
  else
    v = std::exp(-z) * scaled_cf_or_throw(z);
  check_finite(v, "Gamma(0, z)");
  return v;
}

Complex g_function(double omega, double rho, double cutoff) {
  if (omega == 0.0) throw DomainError("g(w) is singular at w = 0");
  const double x = omega / cutoff;
  // built componentwise so that rho = 0 keeps Im z = +0
  return scaled_incomplete_gamma_0(Complex(-x, rho * x));
}

Complex pv_laplace(double omega, double rho, double cutoff) {
  if (omega == 0.0) throw DomainError("principal-value Laplace integral diverges at w = 0");
  const double x = omega / cutoff;
  if (x < 0.0) return scaled_incomplete_gamma_0(Complex(-x, rho * x));
  // w > 0: Q = e^{z}[E1(z) + i pi] with z = -(1 - i rho) x, which equals -e^{-w} Ei(w) for w = -z
  const Complex w(x, -rho * x);
  const double aw = std::abs(w);
  Complex q;
  if (aw < kSeriesRadius || aw - w.real() <= kSeriesLossBudget) {
    const LComplex lw(w.real(), w.imag());
    const LComplex v = -std::exp(-lw) * (kEulerGamma + std::log(lw) + power_sum(lw));
    q = {static_cast<double>(v.real()), static_cast<double>(v.imag())};
  } else {
    const Complex z = -w;
    q = scaled_cf_or_throw(z) + Complex(0.0, kPi) * std::exp(z);
  }
  check_finite(q, "principal-value Laplace integral");
  return q;
}

}  // namespace envent
