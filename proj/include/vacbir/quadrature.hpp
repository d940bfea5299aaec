#pragma once

#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace vacbir::quadrature {

struct Estimate {
  double value = 0.0;
  double error = 0.0;  // a posteriori |Kronrod - Gauss| sum
};

using Integrand = std::function<double(double)>;

/// Adaptive 7/15-point Gauss-Kronrod over consecutive panels
/// [edges[0], edges[1]], [edges[1], edges[2]], ...
///
/// Globally adaptive: the piece with the largest error estimate is bisected
/// until the summed error meets `rel_tol` relative to the summed value.
/// `max_depth` bounds the bisection depth of any piece. Never throws for
/// accuracy; callers decide with `require_converged`.
Estimate integrate(const Integrand& f, std::span<const double> edges, double rel_tol,
                   unsigned max_depth = 18);

Estimate integrate(const Integrand& f, double a, double b, double rel_tol,
                   unsigned max_depth = 18);

/// Throws AccuracyError naming `what` when the estimate misses `rel_tol`.
/// `abs_floor` accepts results whose absolute error is below it regardless
/// of the relative target (used for integrals that legitimately vanish).
void require_converged(const Estimate& e, double rel_tol, const char* what,
                       double abs_floor = 0.0);

/// Sorted, de-duplicated panel edges covering [a, b]: the given interior
/// points that fall strictly inside, plus a uniform grid of `panels` cells.
std::vector<double> panel_edges(double a, double b, int panels,
                                std::initializer_list<double> interior = {});

/// n-point Gauss-Hermite rule for the weight exp(-x^2).
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussHermiteRule gauss_hermite(int n);

}  // namespace vacbir::quadrature
