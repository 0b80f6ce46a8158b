#include "rfl/stern_brocot.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "rfl/errors.hpp"
#include "rfl/params.hpp"

namespace rfl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double snapped_ratio(double num, double den, double scale) {
  const double eps = 1e-12 * scale;
  if (std::fabs(den) <= eps) return kInf;
  if (std::fabs(num) <= eps) return 0.0;
  return num / den;
}

double mat_scale(const Mat2& m) {
  return std::max(std::max(std::fabs(m.a11), std::fabs(m.a12)),
                  std::max(std::fabs(m.a21), std::fabs(m.a22)));
}

double image_of_zero(const Mat2& m) {
  return snapped_ratio(m.a12, m.a11, mat_scale(m));
}
double image_of_inf(const Mat2& m) {
  return snapped_ratio(m.a22, m.a21, mat_scale(m));
}

Mat2 path_matrix(std::span<const int> digits, int k) {
  Mat2 m = Mat2::identity();
  for (int j : digits) {
    if (j < 0 || j > k - 2)
      throw std::domain_error("path digits must lie in [0, k-2]");
    m = rl_power(j, k) * m;  // inner maps multiply from the left
  }
  return m;
}

}  // namespace

std::pair<double, double> interval_of_matrix(const Mat2& m) {
  const double e0 = image_of_zero(m);
  const double e1 = image_of_inf(m);
  return {std::min(e0, e1), std::max(e0, e1)};
}

double MoebiusMap::operator()(double q) const {
  double num, den;
  if (std::isinf(q)) {
    num = m.a22;
    den = m.a21;
  } else {
    num = m.a12 + m.a22 * q;
    den = m.a11 + m.a21 * q;
  }
  return den == 0.0 ? kInf : num / den;
}

MoebiusMap f_map(int j, int k) { return MoebiusMap{rl_power(j, k)}; }

double apply_f(int j, double q, int k) { return f_map(j, k)(q); }

std::vector<double> endpoints_b(int k) {
  const double lambda = lambda_of_k(k);
  std::vector<double> b(static_cast<std::size_t>(k));
  b[0] = kInf;
  b[1] = lambda;
  for (int j = 1; j + 1 <= k - 1; ++j) b[static_cast<std::size_t>(j + 1)] = lambda - 1.0 / b[static_cast<std::size_t>(j)];
  return b;
}

std::pair<double, double> interval_of_path(std::span<const int> digits, int k) {
  if (k < 3) throw std::domain_error("interval_of_path: k must be >= 3");
  const Mat2 m = path_matrix(digits, k);
  const double e0 = image_of_zero(m);
  const double e1 = image_of_inf(m);
  return {std::min(e0, e1), std::max(e0, e1)};
}

NuMeasure NuMeasure::make(int k, double rho) {
  if (k < 3) throw std::domain_error("NuMeasure: k must be >= 3");
  if (!(rho >= 0.0 && rho <= 1.0))
    throw std::domain_error("NuMeasure: rho must lie in [0, 1]");
  NuMeasure nu;
  nu.k = k;
  nu.rho = rho;
  nu.block_probs.resize(static_cast<std::size_t>(k - 1));
  double pw = 1.0, z = 0.0;
  for (int j = 0; j <= k - 2; ++j) {
    nu.block_probs[static_cast<std::size_t>(j)] = pw;
    z += pw;
    pw *= rho;
  }
  nu.z = z;
  for (double& q : nu.block_probs) q /= z;
  return nu;
}

double nu_mass(std::span<const int> digits, const NuMeasure& nu) {
  double mass = 1.0;
  for (int j : digits) {
    if (j < 0 || j > nu.k - 2)
      throw std::domain_error("nu_mass: digit outside [0, k-2]");
    mass *= nu.block_probs[static_cast<std::size_t>(j)];
  }
  return mass;
}

SBTable build_sb_table(int k, int rank) {
  if (k < 3) throw std::domain_error("build_sb_table: k must be >= 3");
  if (rank < 1 || rank > 8)
    throw std::domain_error("build_sb_table: rank must lie in [1, 8]");
  double cells = std::pow(static_cast<double>(k - 1), rank);
  if (cells > 4e6) throw resource_error("build_sb_table: too many cells");

  struct Cell {
    double lo, hi;
    int digit_sum;
  };
  std::vector<Cell> out;
  out.reserve(static_cast<std::size_t>(cells));

  const std::function<void(int, const Mat2&, int)> rec = [&](int depth, const Mat2& m,
                                                             int sum) {
    if (depth == rank) {
      const double e0 = image_of_zero(m);
      const double e1 = image_of_inf(m);
      out.push_back(Cell{std::min(e0, e1), std::max(e0, e1), sum});
      return;
    }
    for (int j = 0; j <= k - 2; ++j) rec(depth + 1, rl_power(j, k) * m, sum + j);
  };
  rec(0, Mat2::identity(), 0);

  std::sort(out.begin(), out.end(),
            [](const Cell& a, const Cell& b) { return a.lo < b.lo; });

  SBTable t;
  t.k = k;
  t.rank = rank;
  t.cuts.reserve(out.size() + 1);
  t.digit_sums.reserve(out.size());
  t.cuts.push_back(0.0);
  for (const Cell& c : out) {
    t.cuts.push_back(c.hi);
    t.digit_sums.push_back(c.digit_sum);
  }
  return t;
}

std::vector<double> SBTable::masses(double rho) const {
  const double z = NuMeasure::make(k, rho).z;
  const double zl = std::pow(z, rank);
  std::vector<double> m(digit_sums.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    m[i] = std::pow(rho, digit_sums[i]) / zl;
  return m;
}

namespace {

// Index of `value` among the cuts, matched to relative tolerance; -1 when
// absent. Infinity matches the final cut.
std::ptrdiff_t locate_cut(const std::vector<double>& cuts, double value) {
  if (std::isinf(value)) return static_cast<std::ptrdiff_t>(cuts.size()) - 1;
  auto it = std::lower_bound(cuts.begin(), cuts.end(), value);
  for (auto cand : {it, it == cuts.begin() ? it : std::prev(it)}) {
    if (cand == cuts.end()) continue;
    if (std::isinf(*cand)) continue;
    if (std::fabs(*cand - value) <= 1e-9 * std::max(1.0, std::fabs(value)))
      return cand - cuts.begin();
  }
  return -1;
}

double delta_at_index(const SBTable& t, const std::vector<double>& prefix,
                      std::ptrdiff_t i) {
  // prefix[i] = total mass of cells strictly left of cut i.
  const double total = prefix.back();
  const double tail = total - prefix[static_cast<std::size_t>(i)];  // nu([t, inf))
  const double t_val = t.cuts[static_cast<std::size_t>(i)];
  double inv;
  if (t_val == 0.0)
    inv = kInf;
  else if (std::isinf(t_val))
    inv = 0.0;
  else
    inv = 1.0 / t_val;
  const std::ptrdiff_t j = locate_cut(t.cuts, inv);
  if (j < 0) throw std::domain_error("delta_t: 1/t is not an endpoint at this rank");
  const double head = prefix[static_cast<std::size_t>(j)];  // nu([0, 1/t])
  return tail - head;
}

std::vector<double> prefix_masses(const SBTable& t, double rho) {
  const std::vector<double> m = t.masses(rho);
  std::vector<double> prefix(m.size() + 1, 0.0);
  for (std::size_t i = 0; i < m.size(); ++i) prefix[i + 1] = prefix[i] + m[i];
  return prefix;
}

}  // namespace

double delta_t(double t, const NuMeasure& nu, int rank) {
  const SBTable table = build_sb_table(nu.k, rank);
  const std::ptrdiff_t i = locate_cut(table.cuts, t);
  if (i < 0) throw std::domain_error("delta_t: t is not an endpoint at this rank");
  return delta_at_index(table, prefix_masses(table, nu.rho), i);
}

std::vector<std::pair<double, double>> delta_spectrum(const NuMeasure& nu, int rank) {
  const SBTable table = build_sb_table(nu.k, rank);
  const std::vector<double> prefix = prefix_masses(table, nu.rho);
  std::vector<std::pair<double, double>> out;
  out.reserve(table.cuts.size());
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(table.cuts.size()); ++i)
    out.emplace_back(table.cuts[static_cast<std::size_t>(i)],
                     delta_at_index(table, prefix, i));
  return out;
}

double evaluate_rosen(const RosenCF& cf) {
  if (cf.terms.empty()) throw std::domain_error("evaluate_rosen: empty expansion");
  const double lambda = lambda_of_k(cf.k);
  // Back-to-front, projectively: v = a_i lambda + 1/v.
  double num = cf.terms.back() * lambda, den = 1.0;
  for (std::size_t i = cf.terms.size() - 1; i-- > 0;) {
    const double n2 = cf.terms[i] * lambda * num + den;
    den = num;
    num = n2;
  }
  // Endpoint values live in [0, inf]; snap the projective rounding fuzz.
  return snapped_ratio(num, den, std::max(std::fabs(num), std::fabs(den)));
}

namespace {

// Alternating terms +1, -1, +1, ... of length n.
std::vector<int> alternating(int n) {
  std::vector<int> t(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = (i % 2 == 0) ? 1 : -1;
  return t;
}

enum class EndpointKind { zero, inf, finite };

struct CFBuilder {
  EndpointKind kind;
  std::vector<int> terms;  // meaningful only when finite

  // Apply f_j on the outside. Prepending j+1 alternating terms encodes
  // f_j; the tail is negated when j is odd. The zero/infinity states use
  // the level-1 identities f_j(0) = b_j and f_j(inf) = b_{j+1}.
  void apply(int j, int k) {
    switch (kind) {
      case EndpointKind::zero:
        if (j == 0) {
          kind = EndpointKind::inf;
        } else {
          kind = EndpointKind::finite;
          terms = alternating(j);
        }
        return;
      case EndpointKind::inf:
        if (j == k - 2) {
          kind = EndpointKind::zero;
        } else {
          kind = EndpointKind::finite;
          terms = alternating(j + 1);
        }
        return;
      case EndpointKind::finite: {
        std::vector<int> head = alternating(j + 1);
        if (j % 2 == 1)
          for (int& t : terms) t = -t;
        head.insert(head.end(), terms.begin(), terms.end());
        terms = std::move(head);
        return;
      }
    }
  }

  RosenCF finish(int k) const {
    switch (kind) {
      case EndpointKind::zero:
        return RosenCF{alternating(k - 1), k};
      case EndpointKind::inf: {
        std::vector<int> t{1};
        const auto tail = alternating(k - 1);
        t.insert(t.end(), tail.begin(), tail.end());
        return RosenCF{std::move(t), k};
      }
      case EndpointKind::finite:
        return RosenCF{terms, k};
    }
    throw std::logic_error("CFBuilder: unreachable");
  }
};

RosenCF cf_of_endpoint(std::span<const int> digits, EndpointKind base, int k) {
  CFBuilder b{base, {}};
  for (std::size_t i = digits.size(); i-- > 0;) {  // innermost map first
    const int j = digits[i];
    if (j < 0 || j > k - 2) throw std::domain_error("path digits must lie in [0, k-2]");
    b.apply(j, k);
  }
  return b.finish(k);
}

}  // namespace

RosenCF endpoint_rosen_cf(int j, int k) {
  if (k < 3) throw std::domain_error("endpoint_rosen_cf: k must be >= 3");
  if (j < 0 || j > k - 1)
    throw std::domain_error("endpoint_rosen_cf: j must lie in [0, k-1]");
  if (j == 0) return CFBuilder{EndpointKind::inf, {}}.finish(k);
  return RosenCF{alternating(j), k};
}

std::pair<RosenCF, RosenCF> interval_rosen_cfs(std::span<const int> digits, int k) {
  if (k < 3) throw std::domain_error("interval_rosen_cfs: k must be >= 3");
  return {cf_of_endpoint(digits, EndpointKind::zero, k),
          cf_of_endpoint(digits, EndpointKind::inf, k)};
}

double sample_nu(const NuMeasure& nu, int depth, SplitMix64& rng) {
  if (depth < 1) throw std::domain_error("sample_nu: depth must be >= 1");
  Mat2 m = Mat2::identity();
  for (int step = 0; step < depth; ++step) {
    const double u = rng.uniform01();
    double acc = 0.0;
    int j = nu.k - 2;
    for (int cand = 0; cand <= nu.k - 2; ++cand) {
      acc += nu.block_probs[static_cast<std::size_t>(cand)];
      if (u < acc) {
        j = cand;
        break;
      }
    }
    m = rl_power(j, nu.k) * m;
    const double big = std::max(std::max(std::fabs(m.a11), std::fabs(m.a12)),
                                std::max(std::fabs(m.a21), std::fabs(m.a22)));
    if (big > 1e100) {
      m.a11 /= big;
      m.a12 /= big;
      m.a21 /= big;
      m.a22 /= big;
    }
  }
  const double e0 = image_of_zero(m);
  const double e1 = image_of_inf(m);
  const double lo = std::min(e0, e1), hi = std::max(e0, e1);
  if (std::isinf(hi)) return lo;  // probability-zero fringe cell
  return 0.5 * (lo + hi);
}

}  // namespace rfl
