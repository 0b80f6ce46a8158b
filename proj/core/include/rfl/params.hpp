#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rfl {

enum class Variant { linear, nonlinear };

inline const char* to_string(Variant v) {
  return v == Variant::linear ? "linear" : "nonlinear";
}

// lambda_k = 2 cos(pi/k), the discrete multiplier family in [1, 2).
inline double lambda_of_k(int k) {
  if (k < 3) throw std::domain_error("lambda_of_k: k must be an integer >= 3");
  return 2.0 * std::cos(std::numbers::pi / k);
}

// The recurrence F_{n+2} = lambda*F_{n+1} +/- F_n (linear) or its
// absolute-value variant; '+' occurs with probability p.
//
// Two regimes are representable: the discrete family lambda = 2cos(pi/k)
// (k >= 3) and general lambda >= 2. Multipliers in (1,2) outside the
// discrete family are deliberately not constructible.
struct ModelParams {
  int k = 0;            // >= 3 in the discrete regime, 0 otherwise
  double lambda = 0.0;  // derived from k, or given directly (>= 2)
  double p = 0.0;
  Variant variant = Variant::linear;

  bool is_hecke() const { return k >= 3; }

  static ModelParams hecke(int k, double p, Variant v = Variant::linear) {
    if (k < 3) throw std::domain_error("ModelParams: k must be >= 3");
    check_p(p);
    return ModelParams{k, lambda_of_k(k), p, v};
  }

  static ModelParams general(double lambda, double p, Variant v = Variant::linear) {
    if (!(lambda >= 2.0))
      throw std::domain_error("ModelParams: general regime requires lambda >= 2");
    check_p(p);
    return ModelParams{0, lambda, p, v};
  }

 private:
  static void check_p(double p) {
    if (!(p >= 0.0 && p <= 1.0))
      throw std::domain_error("ModelParams: p must lie in [0, 1]");
  }
};

}  // namespace rfl
