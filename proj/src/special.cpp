#include "vacbir/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vacbir/errors.hpp"

namespace vacbir::special {
namespace {

constexpr double kInvSqrtPi = 0.56418958354775628695;   // 1/sqrt(pi)
constexpr double kTwoInvSqrtPi = 1.1283791670955125739;  // 2/sqrt(pi)
constexpr double kLn2 = 0.69314718055994530942;
const double kLogMax = std::log(std::numeric_limits<double>::max());

// Region split for the Faddeeva evaluation.
constexpr double kSeriesMaxRe = 6.5;
constexpr double kSeriesMaxIm = 1.5;
constexpr int kMaxSeriesTerms = 600;
constexpr int kMaxFractionDepth = 4000;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_finite(Complex z, const char* who) {
  if (!finite(z)) throw DomainError(std::string(who) + ": non-finite argument");
}

// Maclaurin series (2/sqrt(pi)) sum_n (-1)^n z^(2n+1) / (n! (2n+1)).
Complex erf_series(Complex z) {
  const Complex z2 = z * z;
  Complex term = z;
  Complex sum = z;
  for (int n = 1; n < kMaxSeriesTerms; ++n) {
    term *= -z2 / static_cast<double>(n);
    const Complex t = term / static_cast<double>(2 * n + 1);
    sum += t;
    if (n > 3 && std::abs(t) <= 1e-17 * std::abs(sum)) break;
  }
  return kTwoInvSqrtPi * sum;
}

// Laplace continued fraction
//   w(z) = (i/sqrt(pi)) / (z - (1/2)/(z - 1/(z - (3/2)/(z - ...)))),
// modified Lentz forward evaluation.
Complex faddeeva_fraction(Complex z) {
  constexpr double tiny = 1e-300;
  Complex f = z;
  Complex c = f;
  Complex d = 0.0;
  for (int n = 1; n < kMaxFractionDepth; ++n) {
    const double a = -0.5 * n;
    d = z + a * d;
    if (d == Complex(0.0)) d = tiny;
    d = 1.0 / d;
    c = z + a / c;
    if (c == Complex(0.0)) c = tiny;
    const Complex delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return Complex(0.0, kInvSqrtPi) / f;
}

// exp(m) * inner without overflowing when exp(m) alone would.
Complex scaled_exp(double m, Complex inner, const char* who) {
  if (m < 700.0) return std::exp(m) * inner;
  const double mag = std::abs(inner);
  if (mag == 0.0) return 0.0;
  const double log_mag = m + std::log(mag);
  if (log_mag > kLogMax) {
    throw OverflowError(std::string(who) + ": result overflows (log magnitude " +
                            std::to_string(log_mag) + ")",
                        log_mag);
  }
  return std::polar(std::exp(log_mag), std::arg(inner));
}

double log_abs(Complex v) { return std::log(std::abs(v)); }

}  // namespace

namespace detail {

Complex faddeeva_w(Complex z) {
  if (z.imag() < 0.0) throw DomainError("faddeeva_w: requires Im z >= 0");
  if (std::abs(z.real()) < kSeriesMaxRe && z.imag() < kSeriesMaxIm) {
    const Complex zeta(z.imag(), -z.real());  // -i z
    return std::exp(-z * z) * (1.0 - erf_series(zeta));
  }
  return faddeeva_fraction(z);
}

}  // namespace detail

Complex erf_complex(Complex z) {
  require_finite(z, "erf_complex");
  if (std::abs(z.real()) > 30.0 || std::abs(z.imag()) > 30.0) {
    throw DomainError("erf_complex: |Re z| and |Im z| must not exceed 30");
  }
  const double x = std::abs(z.real());
  const double y = std::abs(z.imag());
  const Complex q(x, y);
  const double r2 = x * x + y * y;

  Complex r;
  if (r2 < 1.0 || (x < 1.5 && r2 < 49.0)) {
    r = erf_series(q);
  } else {
    // erf(q) = 1 - exp(-q^2) w(iq); Im(iq) = x >= 0.
    const Complex w = detail::faddeeva_w(Complex(-y, x));
    const Complex e = -q * q;
    r = 1.0 - scaled_exp(e.real(), std::polar(1.0, e.imag()) * w, "erf_complex");
  }
  if (std::signbit(z.imag())) r = std::conj(r);
  if (std::signbit(z.real())) r = -std::conj(r);
  return r;
}

double erfcx_real(double x) {
  if (!std::isfinite(x)) throw DomainError("erfcx_real: non-finite argument");
  if (x >= 0.0) return detail::faddeeva_w(Complex(0.0, x)).real();
  const double x2 = x * x;
  if (x2 + kLn2 > kLogMax) return std::numeric_limits<double>::infinity();
  return 2.0 * std::exp(x2) - detail::faddeeva_w(Complex(0.0, -x)).real();
}

Complex exp_times_erfc(Complex a, Complex z) {
  require_finite(a, "exp_times_erfc");
  require_finite(z, "exp_times_erfc");
  const Complex e = a - z * z;
  if (z.real() >= 0.0) {
    // erfc(z) = exp(-z^2) w(iz)
    const Complex w = detail::faddeeva_w(Complex(-z.imag(), z.real()));
    return scaled_exp(e.real(), std::polar(1.0, e.imag()) * w, "exp_times_erfc");
  }
  // erfc(z) = 2 - exp(-z^2) w(-iz), Im(-iz) = -Re z > 0
  const Complex w = detail::faddeeva_w(Complex(z.imag(), -z.real()));
  const double m1 = kLn2 + a.real();
  const double m2 = e.real() + log_abs(w);
  const double m = std::max(m1, m2);
  const Complex inner = 2.0 * std::exp(a - m) - std::exp(e - m) * w;
  return scaled_exp(m, inner, "exp_times_erfc");
}

}  // namespace vacbir::special
