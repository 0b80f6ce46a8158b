#pragma once

namespace rfl {

// Plain 2x2 real matrix, row-major. Letters act on row vectors from the
// right: (a, b) * M.
struct Mat2 {
  double a11 = 1.0, a12 = 0.0;
  double a21 = 0.0, a22 = 1.0;

  static Mat2 identity() { return Mat2{}; }

  Mat2 operator*(const Mat2& o) const {
    return Mat2{a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
  }

  Mat2 operator-() const { return Mat2{-a11, -a12, -a21, -a22}; }

  double det() const { return a11 * a22 - a12 * a21; }
};

enum class Letter { R, L, Lprime };

// L = [[0,-1],[1,lambda]], R = [[0,1],[1,lambda]], L' = [[0,1],[1,-lambda]].
Mat2 letter_matrix(Letter letter, double lambda);

// R * L^j for lambda = 2cos(pi/k), from the closed form
// entries = sin(m*pi/k) / sin(pi/k). Valid for 0 <= j <= k-1; the entries
// are nonnegative for j <= k-2, and RL^{k-1} = diag(1, -1).
Mat2 rl_power(int j, int k);

}  // namespace rfl
