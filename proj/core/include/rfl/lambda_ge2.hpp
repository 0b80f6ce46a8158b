#pragma once

#include <string_view>
#include <utility>

namespace rfl {

// Largest fixed point of f_L(q) = lambda - 1/q, i.e. the top root of
// x^2 - lambda x + 1. Requires lambda >= 2; equals 1 at lambda = 2.
double fixed_point_B(double lambda);

// Quotient-chain parameters for a multiplier lambda >= 2. The invariant
// measure gives the word cell I_W mass p^{#R} (1-p)^{#L}; every cell lives
// inside [B, lambda + 1/B].
struct MuMeasure {
  double p = 0.0;
  double lambda = 2.0;
  double B = 1.0;

  static MuMeasure make(double p, double lambda);
};

// I_W: iterate f_R(q) = lambda + 1/q / f_L(q) = lambda - 1/q over the word
// (leftmost letter applied first) starting from [B, +infinity].
std::pair<double, double> interval_of_word(std::string_view word, double lambda);

double mu_mass(std::string_view word, double p);

struct QuadratureResult {
  double value = 0.0;
  double error_bound = 0.0;  // rigorous; the estimate is within this of the integral
  long long leaves = 0;
};

// integral of log x d(mu_{p,lambda}), by adaptive refinement of the word
// tree: a leaf is split while its mass * log-width exceeds its share of tol.
// Long L-runs at lambda = 2 shrink only harmonically, so refinement is
// driven by the worst leaf, not by depth.
QuadratureResult integrate_log_mu(double p, double lambda, double tol);

}  // namespace rfl
