#pragma once

namespace vacbir::ffactor {

/// Dimensionless arguments of the pulse/focus overlap factor F.
struct FArgs {
  double chi = 0.0;   ///< scaled Rayleigh range, >= 0
  double chi0 = 0.0;  ///< scaled longitudinal offset
  double rho = 0.0;   ///< duration ratio T/tau, > 0
};

struct Options {
  double tol = 1e-8;  ///< relative, in (0, 1e-4]
  unsigned max_depth = 18;
};

struct Evaluation {
  double value = 0.0;
  double error = 0.0;
};

/// Overlap factor
///
///   F = sqrt((1+2 rho^2)/3) chi^2 exp(2(chi^2 - chi0^2))
///       * Int dk exp(-k^2) |sum_{l=+-1} exp(2l(rho k - i chi0) chi)
///                          [1 - erf(l(rho k - i chi0) + chi)]|^2
///
/// integrated adaptively over |k| <= sqrt(ln(1/tol)) + 6. The
/// exp(chi^2 - chi0^2) half of the prefactor is folded into each l-term
/// before exponentiation, so large chi cannot overflow. Throws
/// AccuracyError (carrying the best estimate) if the budget runs out.
Evaluation evaluate(const FArgs& args, const Options& options = {});

double f(const FArgs& args, double tol = 1e-8);

/// The same factor from an n-node Gauss-Hermite rule. Cross-check path;
/// only reliable while rho * chi is moderate.
double f_gauss_hermite(const FArgs& args, int nodes);

/// The kappa integrand including exp(-k^2) and exp(2(chi^2 - chi0^2)),
/// without the sqrt((1+2 rho^2)/3) chi^2 prefactor.
double integrand(const FArgs& args, double kappa);

/// T -> infinity: F ~ (tau/T) * coefficient. Returns the coefficient
/// sqrt(2 pi/3) u^2 erfcx(u), u = 8 zR/tau.
double f_limit_large_T(double rayleigh_range, double tau);

/// zR -> infinity: 4/sqrt(3 pi).
double f_limit_large_zR();

/// T = tau, zR/tau << 1: (128/3) sqrt(pi) (zR/tau)^2.
double f_limit_equal_durations_small_zR(double rayleigh_range, double tau);

}  // namespace vacbir::ffactor
