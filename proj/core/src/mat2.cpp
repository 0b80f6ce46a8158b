#include "rfl/mat2.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rfl {

Mat2 letter_matrix(Letter letter, double lambda) {
  if (!(lambda > 0.0))
    throw std::domain_error("letter_matrix: lambda must be positive");
  switch (letter) {
    case Letter::R:
      return Mat2{0.0, 1.0, 1.0, lambda};
    case Letter::L:
      return Mat2{0.0, -1.0, 1.0, lambda};
    case Letter::Lprime:
      return Mat2{0.0, 1.0, 1.0, -lambda};
  }
  throw std::domain_error("letter_matrix: unknown letter");
}

Mat2 rl_power(int j, int k) {
  if (k < 3) throw std::domain_error("rl_power: k must be >= 3");
  if (j < 0 || j > k - 1)
    throw std::domain_error("rl_power: j must lie in [0, k-1]");
  const double theta = std::numbers::pi / k;
  const double s = std::sin(theta);
  return Mat2{std::sin(j * theta) / s, std::sin((j + 1) * theta) / s,
              std::sin((j + 1) * theta) / s, std::sin((j + 2) * theta) / s};
}

}  // namespace rfl
