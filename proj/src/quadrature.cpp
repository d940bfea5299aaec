#include "vacbir/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "vacbir/errors.hpp"

namespace vacbir::quadrature {

using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;

namespace {

struct Piece {
  double a, b, value, error;
  unsigned depth;
};

// One 15-point rule on [a, b]. Boost's adaptive driver compares the error of
// the rescaled [-1, 1] integral against a tolerance in the original variable,
// which over-refines and over-reports on short intervals, so only the
// non-adaptive rule is used and the rescaling is done here.
Piece apply_rule(const Integrand& f, double a, double b, unsigned depth) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double err = 0.0;
  const double v = Rule::integrate([&](double x) { return f(mid + half * x); }, -1.0, 1.0, 0, 0.0,
                                   &err);
  return {a, b, half * v, half * err, depth};
}

}  // namespace

Estimate integrate(const Integrand& f, std::span<const double> edges, double rel_tol,
                   unsigned max_depth) {
  Estimate total;
  if (edges.size() < 2) return total;

  // Global adaptive bisection: always split the piece with the largest error.
  const auto worse = [](const Piece& x, const Piece& y) { return x.error < y.error; };
  std::vector<Piece> heap;
  std::vector<Piece> done;
  double value = 0.0, error = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (edges[i + 1] <= edges[i]) continue;
    heap.push_back(apply_rule(f, edges[i], edges[i + 1], 0));
    value += heap.back().value;
    error += heap.back().error;
  }
  std::make_heap(heap.begin(), heap.end(), worse);

  // Bounds the work when the target is out of reach (roundoff, cancellation).
  constexpr int kMaxSplits = 20000;
  for (int splits = 0; !heap.empty() && error > rel_tol * std::abs(value) && splits < kMaxSplits;
       ++splits) {
    std::pop_heap(heap.begin(), heap.end(), worse);
    const Piece p = heap.back();
    heap.pop_back();
    if (p.depth >= max_depth) {
      done.push_back(p);
      continue;
    }
    const double mid = 0.5 * (p.a + p.b);
    const Piece l = apply_rule(f, p.a, mid, p.depth + 1);
    const Piece r = apply_rule(f, mid, p.b, p.depth + 1);
    value += l.value + r.value - p.value;
    error += l.error + r.error - p.error;
    for (const Piece& c : {l, r}) {
      heap.push_back(c);
      std::push_heap(heap.begin(), heap.end(), worse);
    }
  }

  // Re-sum in position order so the result does not carry update drift.
  done.insert(done.end(), heap.begin(), heap.end());
  std::sort(done.begin(), done.end(), [](const Piece& x, const Piece& y) { return x.a < y.a; });
  for (const Piece& p : done) {
    total.value += p.value;
    total.error += p.error;
  }
  return total;
}

Estimate integrate(const Integrand& f, double a, double b, double rel_tol, unsigned max_depth) {
  const double edges[2] = {a, b};
  return integrate(f, std::span<const double>(edges), rel_tol, max_depth);
}

void require_converged(const Estimate& e, double rel_tol, const char* what, double abs_floor) {
  if (!std::isfinite(e.value) || !std::isfinite(e.error)) {
    throw AccuracyError(std::string(what) + ": non-finite quadrature result", e.value, e.error);
  }
  if (e.error <= rel_tol * std::abs(e.value) || e.error <= abs_floor) return;
  throw AccuracyError(std::string(what) + ": quadrature did not converge (estimate " +
                          std::to_string(e.value) + ", error " + std::to_string(e.error) + ")",
                      e.value, e.error);
}

std::vector<double> panel_edges(double a, double b, int panels,
                                std::initializer_list<double> interior) {
  std::vector<double> edges;
  panels = std::max(panels, 1);
  edges.reserve(static_cast<std::size_t>(panels) + 1 + interior.size());
  for (int i = 0; i <= panels; ++i) {
    edges.push_back(a + (b - a) * static_cast<double>(i) / panels);
  }
  for (double p : interior) {
    if (p > a && p < b) edges.push_back(p);
  }
  std::sort(edges.begin(), edges.end());
  // Drop slivers created by interior points landing next to grid points.
  const double min_width = 1e-12 * (b - a);
  std::vector<double> out;
  for (double x : edges) {
    if (out.empty() || x - out.back() > min_width) out.push_back(x);
  }
  out.back() = b;
  return out;
}

GaussHermiteRule gauss_hermite(int n) {
  if (n < 1) throw DomainError("gauss_hermite: n must be positive");
  // Golub-Welsch: symmetric Jacobi matrix of the Hermite recurrence.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double beta = std::sqrt(0.5 * k);
    jacobi(k, k - 1) = beta;
    jacobi(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  GaussHermiteRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const double sqrt_pi = std::sqrt(3.14159265358979323846);
  for (int i = 0; i < n; ++i) {
    rule.nodes[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights[static_cast<std::size_t>(i)] = sqrt_pi * v0 * v0;
  }
  return rule;
}

}  // namespace vacbir::quadrature
