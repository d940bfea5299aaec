#pragma once

#include <complex>

namespace vacbir::special {

using Complex = std::complex<double>;

/// Error function of complex argument.
///
/// Requires finite z with |Re z|, |Im z| <= 30; outside that box the value
/// overflows or is better handled by `exp_times_erfc`. Odd and
/// conjugation-symmetric by construction: both symmetries are applied
/// exactly after evaluating in the first quadrant.
Complex erf_complex(Complex z);

/// Scaled complementary error function exp(x^2) erfc(x).
///
/// Returns +inf once the value exceeds the double range (x below about
/// -26.6).
double erfcx_real(double x);

/// exp(a) * erfc(z), assembled without forming exp(a) or erfc(z) separately.
///
/// For Re z >= 0 this is exp(a - z^2) w(iz); for Re z < 0 the reflection
/// erfc(z) = 2 - erfc(-z) keeps the Faddeeva argument in the upper half
/// plane. Throws OverflowError when the result is not representable.
Complex exp_times_erfc(Complex a, Complex z);

namespace detail {

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz) for Im z >= 0.
///
/// Two regimes, split at |Re z| < 6.5 and Im z < 1.5:
///
/// *   inside: Maclaurin series of erf(-iz). For these arguments the series
///     terms carry a phase that keeps the cancellation loss below
///     exp(2 Im(z)^2), i.e. under two digits.
/// *   outside: Laplace continued fraction, evaluated by modified Lentz.
///     Truncation is invisible on the real axis here because the dropped
///     Re w = exp(-x^2) is below 1e-18 relative.
Complex faddeeva_w(Complex z);

}  // namespace detail

}  // namespace vacbir::special
