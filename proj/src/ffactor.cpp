#include "vacbir/ffactor.hpp"

#include <cmath>
#include <complex>

#include "vacbir/errors.hpp"
#include "vacbir/quadrature.hpp"
#include "vacbir/special.hpp"

namespace vacbir::ffactor {
namespace {

using special::Complex;

constexpr double kPi = 3.14159265358979323846;

void check_args(const FArgs& a) {
  if (!std::isfinite(a.chi) || a.chi < 0.0) throw DomainError("F: chi must be finite and >= 0");
  if (!std::isfinite(a.chi0)) throw DomainError("F: chi0 must be finite");
  if (!std::isfinite(a.rho) || a.rho <= 0.0) throw DomainError("F: rho must be finite and > 0");
}

double prefactor(const FArgs& a) {
  return std::sqrt((1.0 + 2.0 * a.rho * a.rho) / 3.0) * a.chi * a.chi;
}

// |sum_l exp(chi^2 - chi0^2 + 2l(rho k - i chi0)chi) erfc(l(rho k - i chi0) + chi)|^2
double amplitude_squared(const FArgs& a, double kappa) {
  const Complex shift(a.rho * kappa, -a.chi0);
  const double common = a.chi * a.chi - a.chi0 * a.chi0;
  Complex sum = 0.0;
  for (const double l : {1.0, -1.0}) {
    const Complex arg = l * shift;
    sum += special::exp_times_erfc(common + 2.0 * arg * a.chi, arg + a.chi);
  }
  return std::norm(sum);
}

}  // namespace

double integrand(const FArgs& args, double kappa) {
  return std::exp(-kappa * kappa) * amplitude_squared(args, kappa);
}

Evaluation evaluate(const FArgs& args, const Options& options) {
  check_args(args);
  if (!(options.tol > 0.0 && options.tol <= 1e-4)) {
    throw DomainError("F: tolerance must lie in (0, 1e-4]");
  }
  if (args.chi == 0.0) return {0.0, 0.0};

  const double cutoff = std::sqrt(std::log(1.0 / options.tol)) + 6.0;
  // The l = +-1 terms switch between erfc decay and the exp(-2 rho k chi)
  // tail at rho k = -+chi, over a width of order 1/rho in k.
  const double r = args.rho;
  const double c = args.chi;
  const auto edges = quadrature::panel_edges(
      -cutoff, cutoff, static_cast<int>(2.0 * cutoff),
      {0.0, c / r, -c / r, (c + 3.0) / r, -(c + 3.0) / r, (c - 3.0) / r, -(c - 3.0) / r, 3.0 / r,
       -3.0 / r});
  const auto est = quadrature::integrate([&](double k) { return integrand(args, k); }, edges,
                                         0.25 * options.tol, options.max_depth);
  const double pre = prefactor(args);
  const Evaluation out{pre * est.value, pre * est.error};
  quadrature::require_converged({out.value, out.error}, options.tol, "F");
  return out;
}

double f(const FArgs& args, double tol) { return evaluate(args, Options{tol}).value; }

double f_gauss_hermite(const FArgs& args, int nodes) {
  check_args(args);
  if (args.chi == 0.0) return 0.0;
  const auto rule = quadrature::gauss_hermite(nodes);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * amplitude_squared(args, rule.nodes[i]);
  }
  return prefactor(args) * sum;
}

double f_limit_large_T(double rayleigh_range, double tau) {
  if (!(rayleigh_range >= 0.0) || !(tau > 0.0)) {
    throw DomainError("f_limit_large_T: zR >= 0 and tau > 0 required");
  }
  const double u = 8.0 * rayleigh_range / tau;
  return std::sqrt(2.0 * kPi / 3.0) * u * u * special::erfcx_real(u);
}

double f_limit_large_zR() { return 4.0 / std::sqrt(3.0 * kPi); }

double f_limit_equal_durations_small_zR(double rayleigh_range, double tau) {
  if (!(rayleigh_range >= 0.0) || !(tau > 0.0)) {
    throw DomainError("f_limit_equal_durations_small_zR: zR >= 0 and tau > 0 required");
  }
  const double ratio = rayleigh_range / tau;
  return 128.0 / 3.0 * std::sqrt(kPi) * ratio * ratio;
}

}  // namespace vacbir::ffactor
