#pragma once

#include <vector>

namespace rfl {

// Monic integer minimal polynomial Psi_k of 2cos(pi/k), degree phi(2k)/2.
// Returned as coefficients c[0..d] with c[d] = 1, i.e.
// Psi_k(x) = sum c[i] x^i. Built by expanding prod (x - 2cos(j pi/k)) over
// 1 <= j < k with gcd(j, 2k) = 1 in extended precision and rounding;
// throws precision_error if any coefficient is farther than 1e-6 from an
// integer.
std::vector<long long> minimal_polynomial(int k);

// Degree of Psi_k without building it: phi(2k)/2.
int minimal_polynomial_degree(int k);

}  // namespace rfl
