#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "rfl/lambda_ge2.hpp"
#include "rfl/params.hpp"

namespace rfl {

enum class GammaMethod { quadrature, montecarlo };

// Growth rate in nats per step; the per-step growth factor is exp(gamma).
// `error` is a rigorous bound for quadrature results and a sample standard
// error for Monte Carlo results.
struct GammaResult {
  double gamma = 0.0;
  GammaMethod method = GammaMethod::quadrature;
  double error = 0.0;
  ModelParams params;
  double rho = std::numeric_limits<double>::quiet_NaN();
  double p_r = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t seed = 0;
  long long leaves = 0;                // quadrature only
  std::vector<double> trial_gammas;    // Monte Carlo only
};

// integral of log x over the rank-refined subdivision measure with
// parameter rho. Interior cells refine until their summed mass * log-width
// error is within tol; the two unbounded chains are cut once their explicit
// shell-series remainders (computed from the exact alternating-digit chain
// masses) fit in the remaining budget. rho = 0 degenerates to a point mass
// at the fixed point of f_0 and is returned in closed form.
QuadratureResult integrate_log_nu(int k, double rho, double tol);

// Growth rate by quadrature, dispatching on the regime:
// discrete multiplier -> survival root, block parameter, subdivision
// integral; lambda >= 2 -> word-tree integral. Throws regime_error outside
// the admissible probability range (linear: p > 0; non-linear: p > 1/k).
GammaResult gamma(const ModelParams& params, double tol);

// Growth rate from `trials` independent renormalized trajectories of
// `steps` steps each (after a 1000-step burn-in that is excluded from the
// divisor). Deterministic for a given seed; trial i's stream depends only
// on (seed, i).
GammaResult mc_gamma(const ModelParams& params, long long steps, int trials,
                     std::uint64_t seed, double f1 = 1.0, double f2 = 1.0);

struct PStarResult {
  double p_star = 0.0;
  // Set when the crossing gamma = log(lambda) degenerates to the boundary
  // (log lambda <= 0, so gamma exceeds it for every positive p).
  bool boundary = false;
};

// Threshold probability where gamma crosses log(lambda), by bisection in p
// (gamma is nondecreasing in p). tol_p is the p-resolution.
PStarResult pstar(const ModelParams& regime, double tol_p);

// Growth factor of the rescaled recurrence x_{n+1} = x_n +- beta x_{n-1}
// at p = 1/2: exp(gamma_{1/2,lambda} - log lambda) with lambda = 1/sqrt(beta).
// Only multipliers of the form 2cos(pi/k) or >= 2 are computable.
double embree_trefethen_sigma(double beta);

// Sign statistics of a simulated linear trajectory together with the
// deletion count of the parallel rewriting; the two agree except during an
// initial transient. block_frequencies holds 16 equal-span frequencies for
// standard-error estimation.
struct SignFlipStats {
  long long steps = 0;
  long long flips = 0;
  long long deletions = 0;
  double frequency = 0.0;
  std::vector<double> block_frequencies;
};

SignFlipStats signflip_empirical(int k, double p, long long steps, std::uint64_t seed);

struct ScanRow {
  bool hecke = true;
  double param = 0.0;  // k or lambda
  double p = 0.0;
  Variant variant = Variant::linear;
  double gamma = 0.0;
  double error = 0.0;
};

// gamma over a parameter grid, both variants where defined. Rows are
// ordered by (regime, param, variant, p).
std::vector<ScanRow> scan(const std::vector<int>& ks,
                          const std::vector<double>& lambdas,
                          const std::vector<double>& p_grid, double tol);

}  // namespace rfl
