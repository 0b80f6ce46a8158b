#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rfl/errors.hpp"
#include "rfl/mat2.hpp"
#include "rfl/minpoly.hpp"
#include "rfl/params.hpp"
#include "rfl/rng.hpp"
#include "rfl/scaled_pair.hpp"
#include "rfl/word.hpp"

using namespace rfl;

namespace {

Mat2 mat_of_word(std::string_view w, double lambda) {
  Mat2 m = Mat2::identity();
  for (char c : w) m = m * letter_matrix(c == 'R' ? Letter::R : Letter::L, lambda);
  return m;
}

Mat2 mat_pow(const Mat2& m, int n) {
  Mat2 r = Mat2::identity();
  for (int i = 0; i < n; ++i) r = r * m;
  return r;
}

double max_abs_diff(const Mat2& a, const Mat2& b) {
  return std::max(std::max(std::fabs(a.a11 - b.a11), std::fabs(a.a12 - b.a12)),
                  std::max(std::fabs(a.a21 - b.a21), std::fabs(a.a22 - b.a22)));
}

int euler_phi(int n) {
  int r = n;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      r -= r / p;
    }
  if (n > 1) r -= r / n;
  return r;
}

}  // namespace

TEST_CASE("lambda_of_k known values") {
  CHECK(lambda_of_k(3) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(lambda_of_k(4) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(lambda_of_k(6) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  for (int k = 3; k <= 200; ++k) {
    CHECK(lambda_of_k(k) >= 1.0);
    CHECK(lambda_of_k(k) < 2.0);
  }
  CHECK_THROWS_AS(lambda_of_k(2), std::domain_error);
}

TEST_CASE("ModelParams validation") {
  CHECK_THROWS_AS(ModelParams::hecke(2, 0.5), std::domain_error);
  CHECK_THROWS_AS(ModelParams::hecke(3, -0.1), std::domain_error);
  CHECK_THROWS_AS(ModelParams::hecke(3, 1.1), std::domain_error);
  CHECK_THROWS_AS(ModelParams::general(1.9, 0.5), std::domain_error);
  CHECK(ModelParams::hecke(4, 0.5).lambda == doctest::Approx(std::sqrt(2.0)));
  CHECK(ModelParams::general(2.5, 0.5).is_hecke() == false);
}

TEST_CASE("letter matrices") {
  const Mat2 r = letter_matrix(Letter::R, 1.0);
  CHECK(r.a11 == 0.0);
  CHECK(r.a12 == 1.0);
  CHECK(r.a21 == 1.0);
  CHECK(r.a22 == 1.0);

  for (int k = 3; k <= 12; ++k) {
    const double lambda = lambda_of_k(k);
    const Mat2 l = letter_matrix(Letter::L, lambda);
    CHECK(l.det() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(letter_matrix(Letter::R, lambda).det() == doctest::Approx(-1.0).epsilon(1e-12));

    // L^k = -Id
    const Mat2 lk = mat_pow(l, k);
    CHECK(max_abs_diff(lk, -Mat2::identity()) < 1e-12);

    // R L^{k-2} L' = Id
    const Mat2 m = letter_matrix(Letter::R, lambda) * mat_pow(l, k - 2) *
                   letter_matrix(Letter::Lprime, lambda);
    CHECK(max_abs_diff(m, Mat2::identity()) < 1e-12);
  }
}

TEST_CASE("rl_power matches explicit products") {
  for (int k = 3; k <= 9; ++k) {
    const double lambda = lambda_of_k(k);
    const Mat2 r = letter_matrix(Letter::R, lambda);
    const Mat2 l = letter_matrix(Letter::L, lambda);
    Mat2 prod = r;
    for (int j = 0; j <= k - 1; ++j) {
      CHECK(max_abs_diff(rl_power(j, k), prod) < 1e-12);
      if (j <= k - 2) {
        const Mat2 m = rl_power(j, k);
        CHECK(m.a11 >= -1e-12);
        CHECK(m.a12 >= -1e-12);
        CHECK(m.a21 >= -1e-12);
        CHECK(m.a22 >= -1e-12);
      }
      prod = prod * l;
    }
  }
}

TEST_CASE("rl_power corner values") {
  for (int k : {3, 4, 5, 8}) {
    const double lambda = lambda_of_k(k);
    CHECK(max_abs_diff(rl_power(0, k), letter_matrix(Letter::R, lambda)) < 1e-12);
    // R L^{k-1} = diag(1, -1)
    CHECK(max_abs_diff(rl_power(k - 1, k), Mat2{1, 0, 0, -1}) < 1e-12);
    // R L^{k-2} = [[lambda, 1], [1, 0]]
    CHECK(max_abs_diff(rl_power(k - 2, k), Mat2{lambda, 1, 1, 0}) < 1e-12);
    CHECK_THROWS_AS(rl_power(-1, k), std::domain_error);
    CHECK_THROWS_AS(rl_power(k, k), std::domain_error);
  }
}

TEST_CASE("scaled_step basics") {
  // (1,1) --plus--> (1,2) at lambda = 1, linear
  ScaledPair s = ScaledPair::start(1.0, 1.0);
  s = scaled_step(s, Sign::plus, 1.0, Variant::linear);
  CHECK(std::exp(s.log_scale) * s.u == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::exp(s.log_scale) * s.v == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(s.step_count == 1);

  // (1,1) --minus--> (1,0) at lambda = 1, non-linear
  ScaledPair t = ScaledPair::start(1.0, 1.0);
  t = scaled_step(t, Sign::minus, 1.0, Variant::nonlinear);
  CHECK(std::exp(t.log_scale) * t.u == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::exp(t.log_scale) * t.v == 0.0);

  CHECK_THROWS_AS(ScaledPair::start(0.0, 0.0), std::domain_error);
}

TEST_CASE("scaled pair matches direct recurrence over short words") {
  SplitMix64 rng(20240901);
  for (int k : {3, 4, 5}) {
    const double lambda = lambda_of_k(k);
    for (int rep = 0; rep < 200; ++rep) {
      const int len = 1 + static_cast<int>(rng.next() % 60);
      const std::string w = random_word(len, 0.5, rng);
      long double a = 1.0L, b = 1.0L;
      ScaledPair s = ScaledPair::start(1.0, 1.0);
      for (char c : w) {
        const long double next = lambda * b + (c == 'R' ? a : -a);
        a = b;
        b = next;
        s = scaled_step(s, c == 'R' ? Sign::plus : Sign::minus, lambda, Variant::linear);
      }
      const long double mag = std::max(std::fabs(static_cast<double>(a)),
                                       std::fabs(static_cast<double>(b)));
      if (mag > 0) {
        CHECK(s.log_magnitude() ==
              doctest::Approx(std::log(static_cast<double>(mag))).epsilon(1e-9));
        // componentwise round trip
        CHECK(std::exp(s.log_scale) * s.v ==
              doctest::Approx(static_cast<double>(b)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("a million growth steps stay finite") {
  ScaledPair s = ScaledPair::start(1.0, 1.0);
  for (int i = 0; i < 1000000; ++i) s = scaled_step(s, Sign::plus, 1.0, Variant::linear);
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  CHECK(std::isfinite(s.log_scale));
  CHECK(s.log_magnitude() / 1e6 == doctest::Approx(std::log(phi)).epsilon(1e-5));
}

TEST_CASE("minimal polynomials") {
  using V = std::vector<long long>;
  CHECK(minimal_polynomial(3) == V{-1, 1});         // x - 1
  CHECK(minimal_polynomial(4) == V{-2, 0, 1});      // x^2 - 2
  CHECK(minimal_polynomial(5) == V{-1, -1, 1});     // x^2 - x - 1
  CHECK(minimal_polynomial(6) == V{-3, 0, 1});      // x^2 - 3
  CHECK(minimal_polynomial(7) == V{1, -2, -1, 1});  // x^3 - x^2 - 2x + 1

  for (int k = 3; k <= 50; ++k) {
    const auto psi = minimal_polynomial(k);
    CHECK(static_cast<int>(psi.size()) - 1 == euler_phi(2 * k) / 2);
    CHECK(psi.back() == 1);
    // the intended root really is a root
    long double acc = 0.0L;
    const long double lam = 2.0L * std::cos(std::numbers::pi_v<long double> / k);
    for (std::size_t i = psi.size(); i-- > 0;) acc = acc * lam + psi[i];
    CHECK(std::fabs(static_cast<double>(acc)) < 1e-9);
  }
}
