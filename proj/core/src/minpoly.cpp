#include "rfl/minpoly.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "rfl/errors.hpp"

namespace rfl {

namespace {

int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

}  // namespace

int minimal_polynomial_degree(int k) {
  if (k < 3) throw std::domain_error("minimal_polynomial_degree: k must be >= 3");
  return euler_phi(2 * k) / 2;
}

std::vector<long long> minimal_polynomial(int k) {
  if (k < 3) throw std::domain_error("minimal_polynomial: k must be >= 3");

  // Conjugates of 2cos(pi/k) are 2cos(j pi/k), gcd(j, 2k) = 1, 1 <= j < k.
  std::vector<long double> poly{1.0L};
  for (int j = 1; j < k; ++j) {
    if (std::gcd(j, 2 * k) != 1) continue;
    const long double root =
        2.0L * std::cos(static_cast<long double>(j) * std::numbers::pi_v<long double> / k);
    std::vector<long double> next(poly.size() + 1, 0.0L);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= root * poly[i];
    }
    poly = std::move(next);
  }

  const int degree = minimal_polynomial_degree(k);
  if (static_cast<int>(poly.size()) != degree + 1)
    throw precision_error("minimal_polynomial: degree mismatch");

  std::vector<long long> coeffs(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const long double r = std::round(poly[i]);
    if (std::fabs(poly[i] - r) >= 1e-6L)
      throw precision_error("minimal_polynomial: coefficient too far from an integer");
    coeffs[i] = static_cast<long long>(r);
  }
  return coeffs;
}

}  // namespace rfl
