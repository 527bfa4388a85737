#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "paulidisc/discrimination.hpp"
#include "paulidisc/pauli_dynamics.hpp"

namespace paulidisc {

enum class StrategyMode { separable, entangled };

inline const char* to_string(StrategyMode m) {
  return m == StrategyMode::separable ? "separable" : "entangled";
}

enum class SolveMethod { closed_form, numeric };

inline const char* to_string(SolveMethod m) {
  return m == SolveMethod::closed_form ? "closed_form" : "numeric";
}

/// Error probability for discriminating the two processes at time t.
inline double error_at(const DecayRates& rates1, const DecayRates& rates2, const Priors& priors,
                       double t, StrategyMode mode) {
  const RVector r =
      r_vector(priors, channel_probabilities(rates1, t), channel_probabilities(rates2, t));
  return mode == StrategyMode::separable ? error_prob_no_ent(r).p : error_prob_ent(r);
}

struct ErrorCurve {
  std::vector<double> times;
  std::vector<double> p_no_ent;
  std::vector<double> p_ent;
};

/// Both error probabilities on an explicit time grid (strictly increasing, positive).
inline ErrorCurve curve(const DecayRates& rates1, const DecayRates& rates2, const Priors& priors,
                        const std::vector<double>& t_grid) {
  for (std::size_t i = 0; i < t_grid.size(); ++i)
    if (!(t_grid[i] > 0.0) || (i > 0 && !(t_grid[i] > t_grid[i - 1])))
      throw std::invalid_argument("curve: time grid must be positive and strictly increasing");
  ErrorCurve c;
  c.times = t_grid;
  c.p_no_ent.reserve(t_grid.size());
  c.p_ent.reserve(t_grid.size());
  for (double t : t_grid) {
    const RVector r =
        r_vector(priors, channel_probabilities(rates1, t), channel_probabilities(rates2, t));
    c.p_no_ent.push_back(error_prob_no_ent(r).p);
    c.p_ent.push_back(error_prob_ent(r));
  }
  return c;
}

struct OptimizeConfig {
  double t_max_factor = 30.0;   // grid end: t_max_factor / (smallest positive decay constant)
  std::size_t grid_points = 2000;
  double refine_tol = 1e-10;
  double grid_span = 1e-6;      // grid start relative to the grid end
};

struct LocalMinimum {
  double t;
  double p;
  double bracket_lo;
  double bracket_hi;
};

struct OptimizationResult {
  StrategyMode mode;
  SolveMethod method = SolveMethod::numeric;
  bool at_infinity = false;  // infimum only reached in the stationary limit
  bool degenerate = false;   // identical processes: constant error curve
  double t_star = std::numeric_limits<double>::quiet_NaN();
  double p_star = 0.5;
  std::vector<LocalMinimum> minima;  // refined local minima, sorted by p
};

namespace detail {

/// Golden-section search on [lo, hi]; derivative-free, robust at the kinks
/// the absolute values in the error curves produce.
template <class F>
double golden_section(F&& f, double lo, double hi, double tol) {
  constexpr double invphi = 0.6180339887498949;
  constexpr double invphi2 = 0.3819660112501051;
  double a = lo, b = hi;
  double x1 = a + invphi2 * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = a + invphi2 * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

/// Value-only search locates a smooth minimum no better than ~sqrt(eps).
/// Tighten by bisecting the sign of a symmetric difference around the
/// candidate; this stays derivative-free and also converges on kinks.
template <class F>
double polish_minimum(F&& f, double t0, double refine_tol) {
  const double h = 4e-6 * t0;
  const auto slope = [&](double t) { return f(t + h) - f(t - h); };
  double lo = t0 - 256.0 * h;
  double hi = t0 + 256.0 * h;
  if (!(lo > 0.0) || !(slope(lo) < 0.0) || !(slope(hi) > 0.0)) return t0;
  const double target = std::max(refine_tol, 1e-11 * t0);
  while (hi - lo > target) {
    const double mid = 0.5 * (lo + hi);
    if (slope(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

inline double smallest_positive_rate_sum(const DecayRates& r1, const DecayRates& r2) {
  double s_min = std::numeric_limits<double>::infinity();
  for (const DecayRates* r : {&r1, &r2})
    for (double s : r->exponent_rate_sums())
      if (s > 0.0) s_min = std::min(s_min, s);
  return s_min;
}

}  // namespace detail

/// Minimizes the error probability over t in (0, inf). A geometric grid on
/// (0, T] is scanned, every bracketed local minimum is refined, and the best
/// finite value is compared against the exact stationary-limit error. The
/// result is AT_INFINITY unless a finite minimum beats the stationary value
/// by more than refine_tol; a curve that only approaches its infimum in the
/// stationary limit is thereby classified correctly even when the tail is
/// flat to double precision.
inline OptimizationResult minimize_error(const DecayRates& rates1, const DecayRates& rates2,
                                         const Priors& priors, StrategyMode mode,
                                         const OptimizeConfig& cfg = {}) {
  if (cfg.grid_points < 16)
    throw std::invalid_argument("minimize_error: grid_points must be >= 16");

  OptimizationResult res;
  res.mode = mode;
  res.method = SolveMethod::numeric;

  if (rates1 == rates2) {
    res.degenerate = true;
    res.p_star = error_at(rates1, rates2, priors, 0.0, mode);
    return res;
  }

  const auto f = [&](double t) { return error_at(rates1, rates2, priors, t, mode); };

  const double t_hi = cfg.t_max_factor / detail::smallest_positive_rate_sum(rates1, rates2);
  const std::size_t n = cfg.grid_points;
  std::vector<double> ts(n), fs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(n - 1);
    ts[i] = t_hi * std::pow(cfg.grid_span, 1.0 - u);
    fs[i] = f(ts[i]);
  }

  const RVector r_inf =
      r_vector(priors, stationary_probabilities(rates1), stationary_probabilities(rates2));
  const double p_inf =
      mode == StrategyMode::separable ? error_prob_no_ent(r_inf).p : error_prob_ent(r_inf);

  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (fs[i] < fs[i - 1] && fs[i] <= fs[i + 1]) {
      const double lo = ts[i - 1], hi = ts[i + 1];
      double t = detail::golden_section(f, lo, hi, std::max(cfg.refine_tol, 1e-13 * hi));
      t = detail::polish_minimum(f, t, cfg.refine_tol);
      res.minima.push_back({t, f(t), lo, hi});
    }
  }

  // Merge refinements that converged to the same point from adjacent brackets.
  std::sort(res.minima.begin(), res.minima.end(),
            [](const LocalMinimum& a, const LocalMinimum& b) { return a.t < b.t; });
  std::vector<LocalMinimum> merged;
  for (const auto& m : res.minima) {
    if (!merged.empty() && std::abs(m.t - merged.back().t) <= 1e-7 * std::max(1.0, m.t)) {
      if (m.p < merged.back().p) merged.back() = m;
    } else {
      merged.push_back(m);
    }
  }
  res.minima = std::move(merged);
  std::sort(res.minima.begin(), res.minima.end(),
            [](const LocalMinimum& a, const LocalMinimum& b) { return a.p < b.p; });

  if (!res.minima.empty() && res.minima.front().p < p_inf - cfg.refine_tol) {
    res.t_star = res.minima.front().t;
    res.p_star = res.minima.front().p;
  } else {
    res.at_infinity = true;
    res.p_star = p_inf;
  }
  return res;
}

}  // namespace paulidisc
