#pragma once

#include <complex>

namespace envent {

using Complex = std::complex<double>;

// Upper incomplete gamma Gamma(0, z) = E1(z), principal branch.
// On the negative real axis the side is picked by the sign of Im z (+0 gives -Ei(x) - i pi).
Complex incomplete_gamma_0(Complex z);

// e^z E1(z), free of the exponential over/underflow of E1 itself
Complex scaled_incomplete_gamma_0(Complex z);

// g(w) = e^z Gamma(0, z) with z = -(1 - i rho) w / w_c
Complex g_function(double omega, double rho, double cutoff);

// Q(w) = PV int_0^inf exp(-(1 - i rho) nu / w_c) / (nu - w) dnu.
// The bath parts of the response matrix are linear combinations of Q(w) and Q(-w).
Complex pv_laplace(double omega, double rho, double cutoff);

namespace detail {

Complex e1_series(Complex z);
// e^z E1(z) by continued fraction; converged is set false when max_iter is hit
Complex scaled_e1_continued_fraction(Complex z, int max_iter, bool& converged);
// Ei(w) = gamma + Log w + sum w^k/(k k!), principal Log
Complex ei_series(Complex w);

}  // namespace detail

}  // namespace envent
