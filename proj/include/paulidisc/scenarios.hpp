#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "paulidisc/time_opt.hpp"

namespace paulidisc {

enum class ScenarioKind {
  same_axis_dephasing,
  orthogonal_dephasing,
  coplanar,
  depolarising,
  depol_vs_dephasing,
};

inline const char* to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::same_axis_dephasing: return "same_axis_dephasing";
    case ScenarioKind::orthogonal_dephasing: return "orthogonal_dephasing";
    case ScenarioKind::coplanar: return "coplanar";
    case ScenarioKind::depolarising: return "depolarising";
    default: return "depol_vs_dephasing";
  }
}

inline ScenarioKind scenario_kind_from_string(const std::string& s) {
  if (s == "same_axis_dephasing") return ScenarioKind::same_axis_dephasing;
  if (s == "orthogonal_dephasing") return ScenarioKind::orthogonal_dephasing;
  if (s == "coplanar") return ScenarioKind::coplanar;
  if (s == "depolarising") return ScenarioKind::depolarising;
  if (s == "depol_vs_dephasing") return ScenarioKind::depol_vs_dephasing;
  throw std::invalid_argument("unknown scenario kind: " + s);
}

struct ScenarioSpec {
  ScenarioKind kind;
  double gamma1;
  double gamma2;

  ScenarioSpec(ScenarioKind k, double g1, double g2) : kind(k), gamma1(g1), gamma2(g2) {
    if (!(g1 > 0.0) || !(g2 > 0.0) || !std::isfinite(g1) || !std::isfinite(g2))
      throw std::invalid_argument("ScenarioSpec: rates must be strictly positive");
  }
};

/// The full decay-rate vectors each scenario stands for.
inline std::pair<DecayRates, DecayRates> scenario_rates(ScenarioKind kind, double g1, double g2) {
  switch (kind) {
    case ScenarioKind::same_axis_dephasing:
      return {DecayRates(0, 0, g1), DecayRates(0, 0, g2)};
    case ScenarioKind::orthogonal_dephasing:
      return {DecayRates(0, 0, g1), DecayRates(g2, 0, 0)};
    case ScenarioKind::coplanar:
      return {DecayRates(g1, g1, 0), DecayRates(g2, g2, 0)};
    case ScenarioKind::depolarising:
      return {DecayRates(g1, g1, g1), DecayRates(g2, g2, g2)};
    default:
      return {DecayRates(g1, g1, g1), DecayRates(0, 0, g2)};
  }
}

/// Closed-form optima of one case study. Times are empty / nullopt when the
/// infimum is only reached in the stationary limit.
struct ScenarioSolution {
  ScenarioKind kind;
  double gamma1;
  double gamma2;
  bool no_ent_at_infinity = false;
  std::vector<double> t_star_no_ent;  // one entry, or two for the coplanar case
  double p_star_no_ent = 0.5;
  bool ent_at_infinity = false;
  std::optional<double> t_star_ent;
  double p_star_ent = 0.5;
  bool advantage_regime = false;
};

namespace detail {

inline void require_distinct(double g1, double g2, const char* who) {
  if (g1 == g2)
    throw std::invalid_argument(std::string(who) + ": degenerate case gamma1 == gamma2");
}

/// 1/2 - (1/4) (g1/g2)^{g1/(g2-g1)} |g1/g2 - 1|, the shared dephasing-type
/// optimum value; it depends on the rates only through their ratio.
inline double ratio_optimum_value(double g1, double g2, double prefactor) {
  const double rho = g1 / g2;
  return 0.5 - prefactor * std::pow(rho, g1 / (g2 - g1)) * std::abs(rho - 1.0);
}

}  // namespace detail

/// Dephasing along a common axis: a finite shared optimum, no advantage.
inline ScenarioSolution solve_same_axis_dephasing(double g1, double g2) {
  ScenarioSpec spec(ScenarioKind::same_axis_dephasing, g1, g2);
  detail::require_distinct(g1, g2, "solve_same_axis_dephasing");
  const double t = std::log(g1 / g2) / (2.0 * (g1 - g2));
  const double p = detail::ratio_optimum_value(g1, g2, 0.25);
  ScenarioSolution s{spec.kind, g1, g2};
  s.t_star_no_ent = {t};
  s.p_star_no_ent = p;
  s.t_star_ent = t;
  s.p_star_ent = p;
  return s;
}

/// Dephasing along orthogonal axes: both strategies only saturate at t -> inf.
inline ScenarioSolution solve_orthogonal_dephasing(double g1, double g2) {
  ScenarioSpec spec(ScenarioKind::orthogonal_dephasing, g1, g2);
  ScenarioSolution s{spec.kind, g1, g2};
  s.no_ent_at_infinity = true;
  s.p_star_no_ent = 0.25;
  s.ent_at_infinity = true;
  s.p_star_ent = 0.25;
  return s;
}

/// Coplanar decay (gamma, gamma, 0): two separable optima of equal value and
/// a unique entangled optimum from a transcendental stationarity condition,
/// solved by bisection on the analytic derivative sign.
inline ScenarioSolution solve_coplanar(double g1, double g2) {
  ScenarioSpec spec(ScenarioKind::coplanar, g1, g2);
  detail::require_distinct(g1, g2, "solve_coplanar");
  ScenarioSolution s{spec.kind, g1, g2};

  const double base = std::log(g1 / g2) / (g1 - g2);
  s.t_star_no_ent = {0.25 * base, 0.5 * base};
  s.p_star_no_ent = detail::ratio_optimum_value(g1, g2, 0.25);

  // d/dt p_E changes sign where a(e^{-4at}+e^{-2at}) = b(e^{-4bt}+e^{-2bt}).
  const auto residual = [&](double t) {
    return g1 * (std::exp(-4.0 * g1 * t) + std::exp(-2.0 * g1 * t)) -
           g2 * (std::exp(-4.0 * g2 * t) + std::exp(-2.0 * g2 * t));
  };
  const double sign0 = residual(1e-14) > 0.0 ? 1.0 : -1.0;
  double lo = 1e-14;
  double hi = 2.0 * base;
  while (residual(hi) * sign0 > 0.0) hi *= 2.0;
  while (hi - lo > 1e-12 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (residual(mid) * sign0 > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double t_ent = 0.5 * (lo + hi);
  s.t_star_ent = t_ent;
  s.p_star_ent = 0.5 - 0.25 * std::abs(std::exp(-2.0 * g1 * t_ent) - std::exp(-2.0 * g2 * t_ent)) -
                 0.125 * std::abs(std::exp(-4.0 * g1 * t_ent) - std::exp(-4.0 * g2 * t_ent));
  s.advantage_regime = true;
  return s;
}

/// Two depolarising processes: both strategies share one optimal time.
inline ScenarioSolution solve_depolarising(double g1, double g2) {
  ScenarioSpec spec(ScenarioKind::depolarising, g1, g2);
  detail::require_distinct(g1, g2, "solve_depolarising");
  const double t = std::log(g1 / g2) / (4.0 * (g1 - g2));
  ScenarioSolution s{spec.kind, g1, g2};
  s.t_star_no_ent = {t};
  s.p_star_no_ent = detail::ratio_optimum_value(g1, g2, 0.25);
  s.t_star_ent = t;
  s.p_star_ent = detail::ratio_optimum_value(g1, g2, 0.375);
  s.advantage_regime = true;
  return s;
}

/// Depolarising vs dephasing: separable strategies must wait for the
/// stationary state (p = 1/4); entanglement beats 1/4 at a finite time iff
/// the candidate closed-form optimum dips strictly below 1/4.
inline ScenarioSolution solve_depol_vs_dephasing(double g1, double g2) {
  ScenarioSpec spec(ScenarioKind::depol_vs_dephasing, g1, g2);
  ScenarioSolution s{spec.kind, g1, g2};
  s.no_ent_at_infinity = true;
  s.p_star_no_ent = 0.25;

  if (4.0 * g1 - 2.0 * g2 > 0.0) {
    const double t = std::log(3.0 * g1 / g2) / (4.0 * g1 - 2.0 * g2);
    const double p = 0.375 * (1.0 - std::pow(3.0 * g1 / g2, 2.0 * g1 / (g2 - 2.0 * g1)) *
                                        (2.0 * g1 / g2 - 1.0));
    if (t > 0.0 && p < 0.25) {
      s.t_star_ent = t;
      s.p_star_ent = p;
      s.advantage_regime = true;
      return s;
    }
  }
  s.ent_at_infinity = true;
  s.p_star_ent = 0.25;
  return s;
}

inline ScenarioSolution solve(const ScenarioSpec& spec) {
  switch (spec.kind) {
    case ScenarioKind::same_axis_dephasing:
      return solve_same_axis_dephasing(spec.gamma1, spec.gamma2);
    case ScenarioKind::orthogonal_dephasing:
      return solve_orthogonal_dephasing(spec.gamma1, spec.gamma2);
    case ScenarioKind::coplanar:
      return solve_coplanar(spec.gamma1, spec.gamma2);
    case ScenarioKind::depolarising:
      return solve_depolarising(spec.gamma1, spec.gamma2);
    default:
      return solve_depol_vs_dephasing(spec.gamma1, spec.gamma2);
  }
}

/// True iff an entangled probe beats the stationary error 1/4 at some finite
/// time for the depolarising-vs-dephasing pair (1,1,1) vs (0,0,ratio).
inline bool depol_dephasing_finite_advantage(double ratio) {
  OptimizeConfig cfg;
  cfg.refine_tol = 1e-12;  // the dip near the boundary ratio is shallow
  const auto res = minimize_error(DecayRates(1, 1, 1), DecayRates(0, 0, ratio), Priors::equal(),
                                  StrategyMode::entangled, cfg);
  return res.p_star < 0.25;
}

struct ThresholdResult {
  double ratio;
  double bracket_lo;
  double bracket_hi;
  int iterations;
};

/// Bisection for the largest rate ratio gamma2/gamma1 at which entanglement
/// still gives a finite-time advantage over the stationary value 1/4.
inline ThresholdResult find_advantage_threshold(double tol) {
  if (!(tol >= 1e-6)) throw std::invalid_argument("find_advantage_threshold: tol must be >= 1e-6");
  double lo = 0.05, hi = 0.95;
  if (!depol_dephasing_finite_advantage(lo) || depol_dephasing_finite_advantage(hi))
    throw std::runtime_error("find_advantage_threshold: initial bracket invalid");
  int iterations = 0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (depol_dephasing_finite_advantage(mid))
      lo = mid;
    else
      hi = mid;
    ++iterations;
  }
  return {0.5 * (lo + hi), lo, hi, iterations};
}

}  // namespace paulidisc
