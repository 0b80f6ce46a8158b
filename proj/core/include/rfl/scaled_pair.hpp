#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include "rfl/params.hpp"

namespace rfl {

enum class Sign { plus, minus };

// Consecutive-term pair (F_{n-1}, F_n) kept as a unit-scale mantissa plus an
// accumulated natural-log magnitude, so trajectories of millions of steps
// never overflow. Invariant: max(|u|, |v|) in [1/2, 2] between steps; the
// represented pair is e^{log_scale} * (u, v). Rescaling uses powers of two,
// so it introduces no rounding of its own.
struct ScaledPair {
  double u = 1.0;
  double v = 1.0;
  double log_scale = 0.0;
  long long step_count = 0;

  static ScaledPair start(double f1, double f2) {
    ScaledPair s;
    s.u = f1;
    s.v = f2;
    s.renormalize();
    return s;
  }

  // log max(|F_{n-1}|, |F_n|)
  double log_magnitude() const {
    return log_scale + std::log(std::max(std::fabs(u), std::fabs(v)));
  }

  void renormalize() {
    const double m = std::max(std::fabs(u), std::fabs(v));
    if (m == 0.0)
      throw std::domain_error("ScaledPair: degenerate state, both components zero");
    if (m >= 2.0 || m < 0.5) {
      int e;
      std::frexp(m, &e);  // m = f * 2^e with f in [1/2, 1)
      const double sc = std::ldexp(1.0, 1 - e);
      u *= sc;
      v *= sc;
      log_scale += (e - 1) * std::numbers::ln2;
    }
  }
};

inline ScaledPair scaled_step(ScaledPair s, Sign sign, double lambda, Variant variant) {
  double w = lambda * s.v + (sign == Sign::plus ? s.u : -s.u);
  if (variant == Variant::nonlinear) w = std::fabs(w);
  s.u = s.v;
  s.v = w;
  ++s.step_count;
  s.renormalize();
  return s;
}

inline ScaledPair scaled_step(const ScaledPair& s, Sign sign, const ModelParams& mp) {
  return scaled_step(s, sign, mp.lambda, mp.variant);
}

}  // namespace rfl
