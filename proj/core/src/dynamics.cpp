#include "rfl/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rfl/errors.hpp"
#include "rfl/params.hpp"
#include "rfl/reduction.hpp"
#include "rfl/rng.hpp"
#include "rfl/scaled_pair.hpp"

namespace rfl {

double circle_radius(double prev, double curr, int k) {
  if (k < 3) throw std::domain_error("circle_radius: k must be >= 3");
  if (!(prev >= 0.0 && curr >= 0.0))
    throw std::domain_error("circle_radius: coordinates must be nonnegative");
  if (prev == 0.0 && curr == 0.0)
    throw std::domain_error("circle_radius: both coordinates are zero");
  const double theta = std::numbers::pi / k;
  // R sin t = (prev cos theta - curr)/sin theta, R cos t = prev.
  const double y = (prev * std::cos(theta) - curr) / std::sin(theta);
  return std::hypot(prev, y);
}

P0NumericResult run_p0_numeric(int k, double f0, double f1, long long steps) {
  if (k < 3) throw std::domain_error("run_p0_numeric: k must be >= 3");
  if (!(f0 >= 0.0 && f1 >= 0.0))
    throw std::domain_error("run_p0_numeric: seeds must be nonnegative");
  if (f0 == 0.0 && f1 == 0.0)
    throw std::domain_error("run_p0_numeric: seeds must not both be zero");
  if (steps < 0) throw std::domain_error("run_p0_numeric: steps must be >= 0");

  const double lambda = lambda_of_k(k);
  P0NumericResult res;
  res.values.reserve(static_cast<std::size_t>(steps) + 2);
  res.values.push_back(f0);
  res.values.push_back(f1);
  res.radii.push_back(circle_radius(f0, f1, k));
  const double zero_eps = 1e-12 * res.radii[0];

  for (long long n = 0; n < steps; ++n) {
    const double prev = res.values[res.values.size() - 2];
    const double curr = res.values.back();
    const double next = std::fabs(lambda * curr - prev);
    res.values.push_back(next);
    res.radii.push_back(circle_radius(curr, next, k));
  }
  for (std::size_t i = 0; i < res.values.size(); ++i) {
    if (std::fabs(res.values[i]) < zero_eps) {
      res.zero_flags.push_back(static_cast<long long>(i));
      if (!res.hit_zero) {
        res.hit_zero = true;
        res.first_zero = static_cast<long long>(i);
      }
    }
  }
  return res;
}

P0ExactResult run_p0_exact(const NumberField& field, const FieldElem& multiplier,
                           const FieldElem& f0, const FieldElem& f1,
                           long long steps, bool stop_at_zero) {
  if (field.sign(f0) < 0 || field.sign(f1) < 0)
    throw std::domain_error("run_p0_exact: seeds must be nonnegative");
  if (f0.is_zero() && f1.is_zero())
    throw std::domain_error("run_p0_exact: seeds must not both be zero");
  if (steps < 0) throw std::domain_error("run_p0_exact: steps must be >= 0");

  P0ExactResult res;
  res.values.reserve(static_cast<std::size_t>(steps) + 2);
  res.values.push_back(f0);
  res.values.push_back(f1);
  if (f0.is_zero()) {
    res.hit_zero = true;
    res.first_zero = 0;
  } else if (f1.is_zero()) {
    res.hit_zero = true;
    res.first_zero = 1;
  }
  for (long long n = 0; n < steps; ++n) {
    if (stop_at_zero && res.hit_zero) break;
    const FieldElem& prev = res.values[res.values.size() - 2];
    const FieldElem& curr = res.values.back();
    FieldElem t = multiplier * curr - prev;
    res.values.push_back(t.is_zero() ? field.zero() : t.abs());
    if (!res.hit_zero && res.values.back().is_zero()) {
      res.hit_zero = true;
      res.first_zero = static_cast<long long>(res.values.size()) - 1;
    }
  }
  return res;
}

PeriodicityResult detect_periodicity(const NumberField& field,
                                     const FieldElem& multiplier, int k,
                                     const FieldElem& f0, const FieldElem& f1,
                                     long long horizon) {
  if (k < 3) throw std::domain_error("detect_periodicity: k must be >= 3");
  if (horizon < 1) throw std::domain_error("detect_periodicity: horizon must be >= 1");

  const P0ExactResult probe =
      run_p0_exact(field, multiplier, f0, f1, horizon, /*stop_at_zero=*/true);
  if (!probe.hit_zero)
    return PeriodicityResult{PeriodicityStatus::undecided, -1, 0};
  const long long z = probe.first_zero;

  // From a zero onward the trajectory cycles with period dividing k; verify
  // against a window regenerated past the zero and pick the smallest period.
  const P0ExactResult run = run_p0_exact(field, multiplier, f0, f1, z + 2 * k + 2);
  const auto at = [&](long long i) -> const FieldElem& {
    return run.values[static_cast<std::size_t>(i)];
  };
  long long period = k;
  for (int d = 1; d <= k; ++d) {
    if (k % d != 0) continue;
    bool ok = true;
    for (long long m = z; m <= z + k; ++m) {
      if (!(at(m) == at(m + d))) {
        ok = false;
        break;
      }
    }
    if (ok) {
      period = d;
      break;
    }
  }
  return PeriodicityResult{PeriodicityStatus::periodic, z, period};
}

PeriodicityResult detect_periodicity(int k, const std::string& f0,
                                     const std::string& f1, long long horizon) {
  NumberField field(k);
  return detect_periodicity(field, field.generator(), k, field.from_string(f0),
                            field.from_string(f1), horizon);
}

SubseqReport bounded_subsequence(int k, double p, long long steps,
                                 std::uint64_t seed, double f1, double f2) {
  if (k < 3) throw std::domain_error("bounded_subsequence: k must be >= 3");
  if (!(p >= 0.0)) throw std::domain_error("bounded_subsequence: p must be >= 0");
  if (p > 1.0 / k)
    throw regime_error(
        "bounded_subsequence: requires p <= 1/k (above the threshold the "
        "non-linear sequence grows; use the growth-rate interface)");
  if (steps < 1) throw std::domain_error("bounded_subsequence: steps must be >= 1");
  if (!(f1 > 0.0 && f2 > 0.0))
    throw std::domain_error("bounded_subsequence: seeds must be positive");

  const double lambda = lambda_of_k(k);
  SplitMix64 rng(derive_stream(seed, 0));
  ScaledPair s = ScaledPair::start(f1, f2);
  Reducer red(k, false);

  SubseqReport rep;
  rep.initial_radius = circle_radius(f1, f2, k);
  for (long long n = 3; n < steps + 3; ++n) {
    const bool plus = rng.bernoulli(p);
    s = scaled_step(s, plus ? Sign::plus : Sign::minus, lambda, Variant::nonlinear);
    const Reducer::Step st = red.push(plus ? 'R' : 'L');
    // An L landing on a pure-L stack joins the leading run for good; its
    // value is the next term of the embedded p = 0 subsequence.
    if (st.appended == 'L' && !st.deleted && red.all_l()) {
      rep.indices.push_back(n);
      rep.values.push_back(std::exp(s.log_scale) * s.v);
    }
  }
  for (double v : rep.values) rep.max_value = std::max(rep.max_value, v);
  rep.density = rep.indices.empty()
                    ? 0.0
                    : static_cast<double>(rep.indices.size()) /
                          static_cast<double>(rep.indices.back());
  return rep;
}

}  // namespace rfl
