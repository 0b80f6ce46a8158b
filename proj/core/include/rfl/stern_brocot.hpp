#pragma once

#include <span>
#include <utility>
#include <vector>

#include "rfl/mat2.hpp"
#include "rfl/rng.hpp"

namespace rfl {

// Fractional-linear map attached to a matrix [[a,b],[c,d]] acting on
// quotients of a right-multiplied row pair: q -> (b + d q)/(a + c q).
// Composition corresponds to matrix product taken right-to-left.
struct MoebiusMap {
  Mat2 m;
  // Total on the extended nonnegative reals; q may be +infinity.
  double operator()(double q) const;
};

// f_j = f^j o f_0 with f_0(q) = lambda + 1/q, f(q) = lambda - 1/q; realized
// as the Moebius action of R L^j at lambda = 2cos(pi/k). Valid j in [0, k-1].
MoebiusMap f_map(int j, int k);
double apply_f(int j, double q, int k);

// Level-1 subdivision endpoints b_0 = inf, b_1 = lambda, ..., b_{k-1} = 0,
// via b_{j+1} = lambda - 1/b_j. Strictly decreasing.
std::vector<double> endpoints_b(int k);

// Image of [0, inf] under the map of a nonnegative matrix, as column
// ratios (lo, hi). Column entries that are zero up to rounding (below
// 1e-12 of the largest entry; genuine small entries sit many orders above
// that) are snapped, so endpoints that are exactly 0 or infinity survive
// long products.
std::pair<double, double> interval_of_matrix(const Mat2& m);

// The interval f_{j_1} o ... o f_{j_l}([0, inf]), as (lo, hi); hi may be
// +infinity, lo may be 0. Digits lie in {0, ..., k-2}. Computed from the
// path's matrix (entry products are nonnegative, so no cancellation).
std::pair<double, double> interval_of_path(std::span<const int> digits, int k);

// Product measure on subdivision cells: cell (j_1,...,j_l) has mass
// rho^{j_1+...+j_l} / z^l with z = 1 + rho + ... + rho^{k-2}.
struct NuMeasure {
  int k = 0;
  double rho = 0.0;
  double z = 1.0;
  std::vector<double> block_probs;  // rho^j / z

  static NuMeasure make(int k, double rho);
};

double nu_mass(std::span<const int> digits, const NuMeasure& nu);

// All rank-l cells, sorted ascending. cuts has one more entry than cells;
// cuts.front() == 0 and cuts.back() == +infinity. digit_sums[i] determines
// the mass of cell i for any rho.
struct SBTable {
  int k = 0;
  int rank = 0;
  std::vector<double> cuts;
  std::vector<int> digit_sums;

  std::vector<double> masses(double rho) const;
};

// rank is capped so the (k-1)^rank enumeration stays bounded.
SBTable build_sb_table(int k, int rank);

// Delta_t = nu([t, inf)) - nu([0, 1/t]) for t an endpoint of the rank-l
// subdivision (t and 1/t are then both endpoints). Throws std::domain_error
// when t is not an endpoint at this rank.
double delta_t(double t, const NuMeasure& nu, int rank);

// (endpoint, Delta) for every endpoint of the rank-l subdivision.
std::vector<std::pair<double, double>> delta_spectrum(const NuMeasure& nu, int rank);

// Finite continued fraction a_0 lambda + 1/(a_1 lambda + 1/(...)) with
// integer terms; endpoint encodings use only +-1 terms with alternation
// runs of length at most k-1.
struct RosenCF {
  std::vector<int> terms;  // terms[0] = a_0
  int k = 0;
};

// Evaluates projectively; the result may be +-infinity.
double evaluate_rosen(const RosenCF& cf);

// Encoding of the level-1 endpoint b_j, 0 <= j <= k-1 (b_0 = inf).
RosenCF endpoint_rosen_cf(int j, int k);
// Encodings of both endpoints of the cell of `digits`: first the image of 0,
// then the image of +infinity under the path's map.
std::pair<RosenCF, RosenCF> interval_rosen_cfs(std::span<const int> digits, int k);

// Draws `depth` i.i.d. digits from the block law and returns the midpoint
// of the resulting cell; the sampling error is bounded by the cell width.
double sample_nu(const NuMeasure& nu, int depth, SplitMix64& rng);

}  // namespace rfl
