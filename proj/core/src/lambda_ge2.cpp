#include "rfl/lambda_ge2.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "rfl/errors.hpp"
#include "rfl/mat2.hpp"
#include "rfl/word.hpp"

namespace rfl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double apply_letter(char c, double q, double lambda) {
  if (std::isinf(q)) return lambda;
  return c == 'R' ? lambda + 1.0 / q : lambda - 1.0 / q;
}

// Moebius image under the matrix convention q -> (a12 + a22 q)/(a11 + a21 q).
double moebius(const Mat2& m, double q) {
  if (std::isinf(q)) return m.a21 == 0.0 ? kInf : m.a22 / m.a21;
  const double den = m.a11 + m.a21 * q;
  return den == 0.0 ? kInf : (m.a12 + m.a22 * q) / den;
}

}  // namespace

double fixed_point_B(double lambda) {
  if (!(lambda >= 2.0)) throw std::domain_error("fixed_point_B: lambda must be >= 2");
  return 0.5 * (lambda + std::sqrt(lambda * lambda - 4.0));
}

MuMeasure MuMeasure::make(double p, double lambda) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("MuMeasure: p must lie in [0,1]");
  return MuMeasure{p, lambda, fixed_point_B(lambda)};
}

std::pair<double, double> interval_of_word(std::string_view word, double lambda) {
  require_word(word);
  const double B = fixed_point_B(lambda);
  double a = B, b = kInf;
  for (char c : word) {
    const double ia = apply_letter(c, a, lambda);
    const double ib = apply_letter(c, b, lambda);
    a = std::min(ia, ib);
    b = std::max(ia, ib);
  }
  return {a, b};
}

double mu_mass(std::string_view word, double p) {
  require_word(word);
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("mu_mass: p must lie in [0,1]");
  double mass = 1.0;
  for (char c : word) mass *= (c == 'R') ? p : 1.0 - p;
  return mass;
}

QuadratureResult integrate_log_mu(double p, double lambda, double tol) {
  if (!(p > 0.0 && p <= 1.0))
    throw std::domain_error("integrate_log_mu: p must lie in (0, 1]");
  if (!(lambda >= 2.0))
    throw std::domain_error("integrate_log_mu: lambda must be >= 2");
  if (!(tol > 0.0)) throw std::domain_error("integrate_log_mu: tol must be positive");

  const double B = fixed_point_B(lambda);
  const double top = lambda + 1.0 / B;

  // Tree of word cells refined by prepending letters; a node keeps the
  // matrix of its composed map and the image of the measure's support
  // [B, top] (tighter than the image of [B, inf], and what the mass
  // actually occupies).
  struct Node {
    Mat2 m;
    double mass, lo, hi, err, contrib;
    std::uint64_t id;
  };
  struct ByErr {
    bool operator()(const Node& a, const Node& b) const {
      return a.err != b.err ? a.err < b.err : a.id < b.id;
    }
  };

  std::uint64_t next_id = 0;
  const auto make_node = [&](Mat2 m, double mass) {
    // The homography is scale-invariant; keep entries bounded on deep paths.
    const double big = std::max(std::max(std::fabs(m.a11), std::fabs(m.a12)),
                                std::max(std::fabs(m.a21), std::fabs(m.a22)));
    if (big > 1e100) {
      m.a11 /= big;
      m.a12 /= big;
      m.a21 /= big;
      m.a22 /= big;
    }
    const double ia = moebius(m, B);
    const double ib = moebius(m, top);
    Node n;
    n.m = m;
    n.mass = mass;
    n.lo = std::min(ia, ib);
    n.hi = std::max(ia, ib);
    n.err = mass * (std::log(n.hi) - std::log(n.lo));
    n.contrib = mass * std::log(0.5 * (n.lo + n.hi));
    n.id = next_id++;
    return n;
  };

  std::priority_queue<Node, std::vector<Node>, ByErr> heap;
  double total_err = 0.0, total_est = 0.0;

  const auto push = [&](const Node& n) {
    total_err += n.err;
    total_est += n.contrib;
    heap.push(n);
  };

  push(make_node(Mat2::identity(), 1.0));

  const Mat2 mr = letter_matrix(Letter::R, lambda);
  const Mat2 ml = letter_matrix(Letter::L, lambda);
  constexpr long long kMaxNodes = 6'000'000;

  while (total_err > tol) {
    if (static_cast<long long>(heap.size()) > kMaxNodes)
      throw resource_error("integrate_log_mu: tol unreachable within node cap; achieved bound " +
                           std::to_string(total_err));
    const Node n = heap.top();
    heap.pop();
    total_err -= n.err;
    total_est -= n.contrib;
    // Children prepend a letter: the composed map picks up the letter's
    // action on the inside, i.e. the matrix multiplies from the left.
    if (p > 0.0) push(make_node(mr * n.m, n.mass * p));
    if (p < 1.0) push(make_node(ml * n.m, n.mass * (1.0 - p)));
  }

  return QuadratureResult{total_est, total_err,
                          static_cast<long long>(heap.size())};
}

}  // namespace rfl
