#include "rfl/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <queue>
#include <stdexcept>
#include <thread>

#include "rfl/errors.hpp"
#include "rfl/mat2.hpp"
#include "rfl/reduction.hpp"
#include "rfl/rng.hpp"
#include "rfl/scaled_pair.hpp"
#include "rfl/stern_brocot.hpp"
#include "rfl/survival.hpp"

namespace rfl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int thread_budget(int want) {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  int cap = hw;
  if (const char* env = std::getenv("RFL_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) cap = std::min(cap, v);
  }
  return std::max(1, std::min(want, cap));
}

// f(i) for i in [0, n), striped over a fixed number of threads; results are
// written by index, so the outcome does not depend on scheduling.
template <typename F>
void run_indexed(int n, F f) {
  const int nthreads = thread_budget(n);
  if (nthreads <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nthreads));
  for (int t = 0; t < nthreads; ++t)
    pool.emplace_back([=] {
      for (int i = t; i < n; i += nthreads) f(i);
    });
  for (auto& th : pool) th.join();
}

double closed_form_p1(double lambda) {
  return std::log(0.5 * (lambda + std::sqrt(lambda * lambda + 4.0)));
}

}  // namespace

QuadratureResult integrate_log_nu(int k, double rho, double tol) {
  if (k < 3) throw std::domain_error("integrate_log_nu: k must be >= 3");
  if (!(rho >= 0.0 && rho <= 1.0))
    throw std::domain_error("integrate_log_nu: rho must lie in [0, 1]");
  if (!(tol > 0.0)) throw std::domain_error("integrate_log_nu: tol must be positive");

  const double lambda = lambda_of_k(k);
  if (rho == 0.0) {
    // Point mass at the fixed point of f_0.
    return QuadratureResult{closed_form_p1(lambda), 1e-15, 1};
  }

  const NuMeasure nu = NuMeasure::make(k, rho);
  const double prob0 = nu.block_probs.front();
  const double probk2 = nu.block_probs.back();
  const double qmax = std::max(prob0, probk2);  // < 1 since z > 1

  // The unbounded cells form two chains with alternating digits 0 and k-2
  // (an extra 1/q only enters through f_0, an extra contact with 0 only
  // through f_{k-2}). Cutting a chain at rank s leaves cells [s*lambda, inf]
  // resp. [0, 1/(s*lambda)], whose |log x| integral is bounded by the shell
  // series below.
  const auto chain_tail_bound = [&](int rank, double mass, int last_digit) {
    double mu = mass;
    int digit = last_digit;
    double s = static_cast<double>(rank);
    double acc = 0.0;
    for (int iter = 0; iter < 200000; ++iter) {
      const int next = digit == 0 ? k - 2 : 0;
      const double mu_next = mu * (next == 0 ? prob0 : probk2);
      acc += (mu - mu_next) * std::log((s + 1.0) * lambda);
      mu = mu_next;
      digit = next;
      s += 1.0;
      const double closing =
          mu * (std::log((s + 1.0) * lambda) + qmax / (1.0 - qmax) / (s + 1.0));
      if (closing <= 1e-4 * acc + 1e-320) return acc + closing;
    }
    return acc + mu * (std::log((s + 1.0) * lambda) + qmax / (1.0 - qmax) / (s + 1.0));
  };

  enum Kind : std::uint8_t { interior = 0, zero_chain = 1, inf_chain = 2 };
  struct Node {
    Mat2 m;
    double mass, err, contrib;
    int rank;
    int last_digit;
    Kind kind;
    std::uint64_t id;
  };
  struct ByErr {
    bool operator()(const Node& a, const Node& b) const {
      return a.err != b.err ? a.err < b.err : a.id < b.id;
    }
  };

  std::uint64_t next_id = 0;
  std::priority_queue<Node, std::vector<Node>, ByErr> heap;
  double total_err = 0.0, total_est = 0.0;

  const auto push = [&](Node n) {
    n.id = next_id++;
    total_err += n.err;
    total_est += n.contrib;
    heap.push(std::move(n));
  };

  const auto make_node = [&](const Mat2& m, double mass, int rank, int digit,
                             Kind kind) {
    Node n;
    n.m = m;
    n.mass = mass;
    n.rank = rank;
    n.last_digit = digit;
    n.kind = kind;
    if (kind == interior) {
      const auto [lo, hi] = interval_of_matrix(m);
      n.err = mass * (std::log(hi) - std::log(lo));
      n.contrib = mass * std::log(0.5 * (lo + hi));
    } else {
      n.err = chain_tail_bound(rank, mass, digit);
      n.contrib = 0.0;
    }
    return n;
  };

  const auto split = [&](const Node& n) {
    const int chain_next = n.last_digit == 0 ? k - 2 : 0;
    for (int j = 0; j <= k - 2; ++j) {
      const double mass = n.mass * nu.block_probs[static_cast<std::size_t>(j)];
      if (mass == 0.0 && n.kind == interior) continue;
      Kind kind = interior;
      if (n.kind != interior && j == chain_next) kind = n.kind;
      if (mass == 0.0 && kind == interior) continue;
      push(make_node(rl_power(j, k) * n.m, mass, n.rank + 1, j, kind));
    }
  };

  // Rank-1 cells: digit 0 holds +infinity, digit k-2 holds 0.
  for (int j = 0; j <= k - 2; ++j) {
    const Kind kind = j == 0 ? inf_chain : (j == k - 2 ? zero_chain : interior);
    const double mass = nu.block_probs[static_cast<std::size_t>(j)];
    if (mass == 0.0 && kind == interior) continue;
    push(make_node(rl_power(j, k), mass, 1, j, kind));
  }

  constexpr long long kMaxNodes = 6'000'000;
  while (total_err > tol) {
    if (static_cast<long long>(heap.size()) > kMaxNodes)
      throw resource_error(
          "integrate_log_nu: tol unreachable within node cap; achieved bound " +
          std::to_string(total_err));
    const Node n = heap.top();
    heap.pop();
    total_err -= n.err;
    total_est -= n.contrib;
    split(n);
  }

  return QuadratureResult{total_est, total_err, static_cast<long long>(heap.size())};
}

GammaResult gamma(const ModelParams& params, double tol) {
  if (!(tol > 0.0)) throw std::domain_error("gamma: tol must be positive");
  GammaResult r;
  r.params = params;
  r.method = GammaMethod::quadrature;
  if (params.is_hecke()) {
    if (params.variant == Variant::linear) {
      if (!(params.p > 0.0))
        throw regime_error(
            "gamma: linear growth rate requires p > 0 (at p = 0 the sequence "
            "of absolute values is periodic)");
    } else if (!(params.p > 1.0 / params.k)) {
      throw regime_error(
          "gamma: non-linear growth rate requires p > 1/k; at or below the "
          "threshold the trajectory instead has a bounded subsequence "
          "(simulate it via the dynamics interface)");
    }
    const SurvivalParams sp = survival_params(params.p, params.k, params.variant);
    const QuadratureResult q = integrate_log_nu(params.k, sp.rho, tol);
    r.gamma = q.value;
    r.error = q.error_bound;
    r.leaves = q.leaves;
    r.rho = sp.rho;
    r.p_r = sp.p_r;
    return r;
  }
  if (!(params.p > 0.0))
    throw regime_error("gamma: growth rate requires p > 0");
  const QuadratureResult q = integrate_log_mu(params.p, params.lambda, tol);
  r.gamma = q.value;
  r.error = q.error_bound;
  r.leaves = q.leaves;
  return r;
}

GammaResult mc_gamma(const ModelParams& params, long long steps, int trials,
                     std::uint64_t seed, double f1, double f2) {
  if (steps < 10000)
    throw std::domain_error("mc_gamma: steps must be >= 10^4");
  if (trials < 2) throw std::domain_error("mc_gamma: trials must be >= 2");
  const ScaledPair initial = ScaledPair::start(f1, f2);  // rejects (0, 0)

  constexpr long long kBurnIn = 1000;
  std::vector<double> g(static_cast<std::size_t>(trials));
  run_indexed(trials, [&](int t) {
    SplitMix64 rng(derive_stream(seed, static_cast<std::uint64_t>(t)));
    ScaledPair s = initial;
    for (long long i = 0; i < kBurnIn; ++i)
      s = scaled_step(s, rng.bernoulli(params.p) ? Sign::plus : Sign::minus,
                      params.lambda, params.variant);
    const double m0 = s.log_magnitude();
    for (long long i = 0; i < steps; ++i)
      s = scaled_step(s, rng.bernoulli(params.p) ? Sign::plus : Sign::minus,
                      params.lambda, params.variant);
    g[static_cast<std::size_t>(t)] = (s.log_magnitude() - m0) / static_cast<double>(steps);
  });

  double mean = 0.0;
  for (double v : g) mean += v;
  mean /= trials;
  double var = 0.0;
  for (double v : g) var += (v - mean) * (v - mean);
  var /= (trials - 1);

  GammaResult r;
  r.params = params;
  r.method = GammaMethod::montecarlo;
  r.gamma = mean;
  r.error = std::sqrt(var / trials);
  r.seed = seed;
  r.trial_gammas = std::move(g);
  if (params.is_hecke() &&
      (params.variant == Variant::linear ? params.p > 0.0
                                         : params.p > 1.0 / params.k)) {
    const SurvivalParams sp = survival_params(params.p, params.k, params.variant);
    r.rho = sp.rho;
    r.p_r = sp.p_r;
  }
  return r;
}

PStarResult pstar(const ModelParams& regime, double tol_p) {
  if (!(tol_p > 0.0 && tol_p < 1.0))
    throw std::domain_error("pstar: tol_p must lie in (0, 1)");
  const double log_lambda = std::log(regime.lambda);
  if (log_lambda <= 0.0) {
    // gamma > 0 = log(lambda) for every p > 0: the crossing degenerates.
    return PStarResult{0.0, true};
  }
  // gamma(p) - log lambda is negative near p = 0 (growth tends to 0 in the
  // discrete regime and to log B < log lambda for lambda >= 2) and positive
  // at p = 1.
  const double quad_tol = std::min(1e-6, tol_p * 1e-2);
  double lo = 0.0, hi = 1.0;
  while (hi - lo > tol_p) {
    const double mid = 0.5 * (lo + hi);
    ModelParams mp = regime;
    mp.p = mid;
    mp.variant = Variant::linear;
    if (gamma(mp, quad_tol).gamma > log_lambda)
      hi = mid;
    else
      lo = mid;
  }
  return PStarResult{0.5 * (lo + hi), false};
}

double embree_trefethen_sigma(double beta) {
  if (!(beta > 0.0)) throw std::domain_error("embree_trefethen_sigma: beta must be > 0");
  const double lambda = 1.0 / std::sqrt(beta);
  ModelParams mp;
  if (lambda >= 2.0) {
    mp = ModelParams::general(lambda, 0.5, Variant::linear);
  } else {
    const int k = static_cast<int>(std::lround(std::numbers::pi / std::acos(lambda / 2.0)));
    if (k < 3 || std::fabs(lambda_of_k(k) - lambda) > 1e-9)
      throw regime_error(
          "embree_trefethen_sigma: lambda = 1/sqrt(beta) is below 2 and not of "
          "the form 2cos(pi/k); this multiplier is outside the computable family");
    mp = ModelParams::hecke(k, 0.5, Variant::linear);
  }
  const GammaResult r = gamma(mp, 1e-7);
  return std::exp(r.gamma - std::log(lambda));
}

SignFlipStats signflip_empirical(int k, double p, long long steps, std::uint64_t seed) {
  if (k < 3) throw std::domain_error("signflip_empirical: k must be >= 3");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("signflip_empirical: p must lie in [0,1]");
  if (steps < 16) throw std::domain_error("signflip_empirical: steps must be >= 16");

  const double lambda = lambda_of_k(k);
  SplitMix64 rng(derive_stream(seed, 0));
  ScaledPair s = ScaledPair::start(1.0, 1.0);
  Reducer red(k, true);

  SignFlipStats stats;
  stats.steps = steps;
  stats.block_frequencies.assign(16, 0.0);
  const long long block_len = steps / 16;
  for (long long i = 0; i < steps; ++i) {
    const bool plus = rng.bernoulli(p);
    s = scaled_step(s, plus ? Sign::plus : Sign::minus, lambda, Variant::linear);
    red.push(plus ? 'R' : 'L');
    if (s.u * s.v < 0.0) {
      ++stats.flips;
      const long long b = std::min<long long>(i / std::max<long long>(block_len, 1), 15);
      stats.block_frequencies[static_cast<std::size_t>(b)] += 1.0;
    }
  }
  for (double& f : stats.block_frequencies) f /= static_cast<double>(block_len);
  stats.deletions = red.deletions();
  stats.frequency = static_cast<double>(stats.flips) / static_cast<double>(steps);
  return stats;
}

std::vector<ScanRow> scan(const std::vector<int>& ks,
                          const std::vector<double>& lambdas,
                          const std::vector<double>& p_grid, double tol) {
  std::vector<double> grid = p_grid;
  std::sort(grid.begin(), grid.end());

  std::vector<ScanRow> rows;
  for (int k : ks) {
    for (Variant v : {Variant::linear, Variant::nonlinear}) {
      for (double p : grid) {
        const bool defined = v == Variant::linear ? p > 0.0 : p > 1.0 / k;
        if (!defined) continue;
        const GammaResult r = gamma(ModelParams::hecke(k, p, v), tol);
        rows.push_back(ScanRow{true, static_cast<double>(k), p, v, r.gamma, r.error});
      }
    }
  }
  for (double lambda : lambdas) {
    // For lambda >= 2 absolute values are eventually inactive, so the
    // non-linear rate coincides with the linear one.
    std::vector<ScanRow> lin;
    for (double p : grid) {
      if (!(p > 0.0)) continue;
      const GammaResult r = gamma(ModelParams::general(lambda, p, Variant::linear), tol);
      lin.push_back(ScanRow{false, lambda, p, Variant::linear, r.gamma, r.error});
    }
    rows.insert(rows.end(), lin.begin(), lin.end());
    for (ScanRow row : lin) {
      row.variant = Variant::nonlinear;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace rfl
