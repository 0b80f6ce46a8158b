#pragma once

#include <vector>

#include "rfl/params.hpp"

namespace rfl {

// Survival probability of an appended R under the rewriting, and the
// derived block-law parameter rho. Always satisfies rho^{k-1} = 1 - p_r.
struct SurvivalParams {
  double p = 0.0;
  int k = 0;
  Variant variant = Variant::linear;
  double p_r = 0.0;
  double rho = 1.0;
};

// Unique positive root of
//   linear:     g(x) = 1 - p x/(p + (1-p)x) - (1-x)^{1/(k-1)}
//   non-linear: gt(x) = (1-x) (1 + x p/(1-p))^{k-1} - 1
// by bisection; boundary conventions: p_r = 1 at p = 1, p_r = 0 at p = 0
// (linear) and for p <= 1/k (non-linear).
double solve_pr(double p, int k, Variant variant);

double rho_of(double p, int k, Variant variant);

SurvivalParams survival_params(double p, int k, Variant variant);

// Block law over j in {0, ..., k-2}: P(j) = rho^j / sum_m rho^m.
std::vector<double> block_distribution(double rho, int k);

// Asymptotic frequency of sign changes F_n F_{n+1} < 0 (linear regime):
// sigma = p (1-p_r) / (p + (1-p) p_r + p (1-p_r)).
double sign_flip_sigma(double p, int k);

// Total probability that a fresh R starts a word whose reduction is empty:
// p (1-p_r) / ((1-p) p_r + p).
double excursion_mass(double p, double p_r);

}  // namespace rfl
