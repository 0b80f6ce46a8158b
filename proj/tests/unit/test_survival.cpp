#include <doctest.h>

#include <cmath>

#include "rfl/survival.hpp"

using namespace rfl;

namespace {
// closed form at k = 3, p = 1/2: both survival equations reduce to
// x^2 + x - 1 = 0.
const double kGolden = 0.5 * (std::sqrt(5.0) - 1.0);
}  // namespace

TEST_CASE("survival root closed forms") {
  CHECK(solve_pr(0.5, 3, Variant::linear) == doctest::Approx(kGolden).epsilon(1e-12));
  CHECK(solve_pr(0.5, 3, Variant::nonlinear) == doctest::Approx(kGolden).epsilon(1e-12));

  for (int k : {3, 4, 5, 10}) {
    CHECK(solve_pr(1.0, k, Variant::linear) == 1.0);
    CHECK(solve_pr(1.0, k, Variant::nonlinear) == 1.0);
    CHECK(solve_pr(1.0 / k, k, Variant::nonlinear) == 0.0);
    CHECK(solve_pr(0.5 / k, k, Variant::nonlinear) == 0.0);
    CHECK(solve_pr(0.0, k, Variant::linear) == 0.0);
  }
}

TEST_CASE("root residuals and monotonicity on a grid") {
  // Near p = 1 the root approaches 1 closer than an ulp and the defining
  // functions' slopes blow up, so the absolute residual criterion only
  // makes sense away from that corner; everywhere else the bracket is
  // machine-tight, which the sign change below certifies.
  for (int k : {3, 4, 5, 10}) {
    for (Variant v : {Variant::linear, Variant::nonlinear}) {
      double prev = -1.0;
      for (int i = 0; i <= 100; ++i) {
        const double p = i / 100.0;
        const double x = solve_pr(p, k, v);
        CHECK(x >= prev - 1e-14);  // nondecreasing in p
        prev = x;
        const bool inner = v == Variant::linear ? (p > 0.0 && p < 1.0)
                                                : (p > 1.0 / k && p < 1.0);
        if (!inner) continue;
        const auto eval = [&](double y) {
          return v == Variant::linear
                     ? 1.0 - p * y / (p + (1.0 - p) * y) -
                           std::pow(1.0 - y, 1.0 / (k - 1))
                     : -((1.0 - y) * std::pow(1.0 + p / (1.0 - p) * y, k - 1) -
                         1.0);
        };
        if (1.0 - x > 1e-5) {
          // residual relative to the equation's own term size (the
          // non-linear form has terms of size (1 + x p/(1-p))^{k-1})
          const double scale =
              v == Variant::linear
                  ? 1.0
                  : std::max(1.0, std::pow(1.0 + p / (1.0 - p) * x, k - 1));
          CHECK(std::fabs(eval(x)) < 1e-12 * scale);
        }
        // bracket tightness: the sign changes within 2e-14 of the root
        const double lo = std::max(x - 2e-14, 1e-15);
        const double hi = std::min(x + 2e-14, 1.0);
        CHECK(eval(lo) <= 0.0);
        CHECK(eval(hi) >= 0.0);
      }
    }
  }
}

TEST_CASE("rho consistency rho^{k-1} = 1 - p_r") {
  for (int k : {3, 4, 5, 10}) {
    for (Variant v : {Variant::linear, Variant::nonlinear}) {
      for (int i = 0; i <= 100; ++i) {
        const double p = i / 100.0;
        const SurvivalParams sp = survival_params(p, k, v);
        CHECK(std::fabs(std::pow(sp.rho, k - 1) - (1.0 - sp.p_r)) < 1e-12);
      }
    }
  }
}

TEST_CASE("rho endpoints and coincidences") {
  CHECK(rho_of(1.0, 5, Variant::linear) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(rho_of(1.0, 5, Variant::nonlinear) == doctest::Approx(0.0).epsilon(1e-14));
  // p -> 0 pushes rho to 1
  CHECK(rho_of(1e-4, 4, Variant::linear) > 0.999);
  // k = 3, p = 1/2: both parameterizations give 1/golden-ratio
  CHECK(rho_of(0.5, 3, Variant::linear) == doctest::Approx(kGolden).epsilon(1e-9));
  CHECK(rho_of(0.5, 3, Variant::nonlinear) == doctest::Approx(kGolden).epsilon(1e-9));
}

TEST_CASE("block distribution") {
  const double rho = 0.7;
  const auto probs = block_distribution(rho, 4);
  REQUIRE(probs.size() == 3);
  const double z = 1.0 + rho + rho * rho;
  CHECK(probs[0] == doctest::Approx(1.0 / z).epsilon(1e-14));
  CHECK(probs[1] == doctest::Approx(rho / z).epsilon(1e-14));
  CHECK(probs[2] == doctest::Approx(rho * rho / z).epsilon(1e-14));

  const auto point = block_distribution(0.0, 5);
  CHECK(point[0] == 1.0);
  for (std::size_t j = 1; j < point.size(); ++j) CHECK(point[j] == 0.0);

  const auto uniform = block_distribution(1.0, 5);
  for (double q : uniform) CHECK(q == doctest::Approx(0.25).epsilon(1e-14));

  for (double rho2 : {0.1, 0.5, 0.9}) {
    double sum = 0.0;
    for (double q : block_distribution(rho2, 7)) sum += q;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("sign flip frequency formula") {
  CHECK(sign_flip_sigma(1.0, 4) == 0.0);
  // k = 3, p = 1/2: sigma = (1 - golden)/2, denominator exactly 1
  CHECK(sign_flip_sigma(0.5, 3) == doctest::Approx(0.1909830056).epsilon(1e-9));
  // large-k asymptotics: sigma ~ p (1-p)^{k-1}
  const double ratio = sign_flip_sigma(0.5, 10) / (0.5 * std::pow(0.5, 9));
  CHECK(ratio > 0.75);
  CHECK(ratio < 1.25);
}

TEST_CASE("excursion mass formula") {
  CHECK(excursion_mass(1.0, 1.0) == 0.0);
  const double pr = solve_pr(0.5, 3, Variant::linear);
  CHECK(excursion_mass(0.5, pr) == doctest::Approx(0.2360679775).epsilon(1e-9));
  for (double p : {0.1, 0.4, 0.8}) {
    const double m = excursion_mass(p, solve_pr(p, 3, Variant::linear));
    CHECK(m > 0.0);
    CHECK(m < 1.0);
  }
}
