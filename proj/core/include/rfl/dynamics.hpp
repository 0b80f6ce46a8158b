#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rfl/field.hpp"

namespace rfl {

// Radius of the circle through the two rotation-coupled points with
// abscissae (prev, curr) and angular offset pi/k: solves
// R cos t = prev, R cos(t + pi/k) = curr with cos t > 0.
double circle_radius(double prev, double curr, int k);

// Deterministic map F_{n+1} = |lambda_k F_n - F_{n-1}|, floating point.
// Trajectories never exceed the radius of the initial circle, and the
// radius is non-increasing along the trajectory.
struct P0NumericResult {
  std::vector<double> values;  // F_0, F_1, ..., F_{steps+1}
  std::vector<double> radii;   // radii[i] belongs to the pair (F_i, F_{i+1})
  std::vector<long long> zero_flags;  // indices with |F_n| < 1e-12 * radii[0]
  bool hit_zero = false;
  long long first_zero = -1;
};

P0NumericResult run_p0_numeric(int k, double f0, double f1, long long steps);

// Same map in exact arithmetic. `multiplier` is the lambda of the map as an
// element of `field`; passing a field of larger degree lets the seeds be
// irrational over Q(lambda_k). Zero detection is exact.
struct P0ExactResult {
  std::vector<FieldElem> values;
  bool hit_zero = false;
  long long first_zero = -1;
};

P0ExactResult run_p0_exact(const NumberField& field, const FieldElem& multiplier,
                           const FieldElem& f0, const FieldElem& f1,
                           long long steps, bool stop_at_zero = false);

enum class PeriodicityStatus { periodic, undecided };

// `periodic` is reported only on an exact zero, in which case the ensuing
// period divides k and is verified against the exact trajectory; exhausting
// the horizon yields `undecided`, never a false claim either way.
struct PeriodicityResult {
  PeriodicityStatus status = PeriodicityStatus::undecided;
  long long first_zero = -1;
  long long period = 0;
};

PeriodicityResult detect_periodicity(const NumberField& field,
                                     const FieldElem& multiplier, int k,
                                     const FieldElem& f0, const FieldElem& f1,
                                     long long horizon);

// Convenience form over Q(lambda_k) with seeds in the exact input grammar
// (rational-coefficient polynomials in l, e.g. "1+2*l-3/2*l^2").
PeriodicityResult detect_periodicity(int k, const std::string& f0,
                                     const std::string& f1, long long horizon);

// Random non-linear trajectory at p <= 1/k, collecting the values at the
// times an L joins the leading L-run of the rewriting stack. The collected
// subsequence obeys the p = 0 map, stays below the initial circle radius,
// and has empirical density tending to 1 - k p.
struct SubseqReport {
  std::vector<long long> indices;  // trajectory indices n_j (seeds are 1, 2)
  std::vector<double> values;
  double max_value = 0.0;
  double density = 0.0;  // count / last index
  double initial_radius = 0.0;
};

SubseqReport bounded_subsequence(int k, double p, long long steps,
                                 std::uint64_t seed, double f1 = 1.0,
                                 double f2 = 1.0);

}  // namespace rfl
