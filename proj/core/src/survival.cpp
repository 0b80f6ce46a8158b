#include "rfl/survival.hpp"

#include <cmath>
#include <stdexcept>

namespace rfl {

namespace {

void check_args(double p, int k) {
  if (k < 3) throw std::domain_error("survival: k must be >= 3");
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("survival: p must lie in [0,1]");
}

// Bisection on [lo, hi] with f(lo) < 0 < f(hi) (orientation handled by
// caller via negation). Drives the bracket to ~1 ulp.
template <typename F>
double bisect(F f, double lo, double hi) {
  for (int iter = 0; iter < 200 && hi - lo > 1e-16 * (1.0 + hi); ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double solve_pr(double p, int k, Variant variant) {
  check_args(p, k);
  if (variant == Variant::linear) {
    if (p == 0.0) return 0.0;
    if (p == 1.0) return 1.0;
    const auto g = [p, k](double x) {
      return 1.0 - p * x / (p + (1.0 - p) * x) - std::pow(1.0 - x, 1.0 / (k - 1));
    };
    // g(0) = 0 with g'(0) < 0, g(1) = 1-p > 0, and g is strictly convex, so
    // the positive root is bracketed by [eps, 1].
    return bisect(g, 1e-12, 1.0);
  }
  // Non-linear: below the threshold no R survives.
  if (p <= 1.0 / k) return 0.0;
  if (p == 1.0) return 1.0;
  const auto gt = [p, k](double x) {
    return (1.0 - x) * std::pow(1.0 + p / (1.0 - p) * x, k - 1) - 1.0;
  };
  // gt(eps) > 0 for p > 1/k and gt(1) = -1; negate for the bisection.
  return bisect([&](double x) { return -gt(x); }, 1e-12, 1.0);
}

double rho_of(double p, int k, Variant variant) {
  check_args(p, k);
  const double pr = solve_pr(p, k, variant);
  if (variant == Variant::linear) {
    if (p == 0.0) return 1.0;
    return 1.0 - p * pr / (p + (1.0 - p) * pr);
  }
  return std::pow(1.0 - pr, 1.0 / (k - 1));
}

SurvivalParams survival_params(double p, int k, Variant variant) {
  return SurvivalParams{p, k, variant, solve_pr(p, k, variant), rho_of(p, k, variant)};
}

std::vector<double> block_distribution(double rho, int k) {
  if (k < 3) throw std::domain_error("block_distribution: k must be >= 3");
  if (!(rho >= 0.0 && rho <= 1.0))
    throw std::domain_error("block_distribution: rho must lie in [0,1]");
  std::vector<double> probs(static_cast<std::size_t>(k - 1));
  double z = 0.0, pw = 1.0;
  for (int j = 0; j <= k - 2; ++j) {
    probs[static_cast<std::size_t>(j)] = pw;
    z += pw;
    pw *= rho;
  }
  for (double& q : probs) q /= z;
  return probs;
}

double sign_flip_sigma(double p, int k) {
  check_args(p, k);
  if (p == 0.0) return 0.0;  // no R's, hence no deletions
  const double pr = solve_pr(p, k, Variant::linear);
  return p * (1.0 - pr) / (p + (1.0 - p) * pr + p * (1.0 - pr));
}

double excursion_mass(double p, double p_r) {
  if (!(p >= 0.0 && p <= 1.0) || !(p_r >= 0.0 && p_r <= 1.0))
    throw std::domain_error("excursion_mass: arguments must lie in [0,1]");
  if (p == 0.0) return 0.0;
  return p * (1.0 - p_r) / ((1.0 - p) * p_r + p);
}

}  // namespace rfl
