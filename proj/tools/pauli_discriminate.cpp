// Command-line front end: curve tables, time optimization, case-study
// solutions, the advantage-threshold search, and self-verification of the
// closed forms against the brute-force oracles.

#include <cmath>
#include <cstdint>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "paulidisc/paulidisc.hpp"

using nlohmann::json;
using namespace paulidisc;

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string trimmed(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

/// Flat key=value config file. Emits "--key value" tokens (or bare "--key"
/// for boolean flags) for every key the command line does not already set,
/// so explicit flags always win.
std::vector<std::string> config_tokens(const std::string& path,
                                       const std::vector<std::string>& user_args) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    line = trimmed(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line is not key=value: " + line);
    const std::string key = trimmed(line.substr(0, eq));
    const std::string value = trimmed(line.substr(eq + 1));
    const std::string flag = "--" + key;
    bool overridden = false;
    for (const auto& a : user_args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) overridden = true;
    if (overridden) continue;
    if (key == "linear" || key == "gnuplot") {
      if (value == "true" || value == "1" || value == "yes") tokens.push_back(flag);
    } else {
      tokens.push_back(flag);
      tokens.push_back(value);
    }
  }
  return tokens;
}

struct OutputTarget {
  std::string path;  // empty = stdout

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
  }
};

std::vector<double> make_grid(double t_min, double t_max, std::size_t points, bool linear) {
  if (!(t_min > 0.0) || !(t_max > t_min) || points < 2)
    throw std::invalid_argument("grid: need 0 < t_min < t_max and points >= 2");
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(points - 1);
    grid[i] = linear ? t_min + u * (t_max - t_min) : t_min * std::pow(t_max / t_min, u);
  }
  grid.back() = t_max;
  return grid;
}

DecayRates to_rates(const std::vector<double>& v) {
  if (v.size() != 3) throw std::invalid_argument("rates must have exactly three components");
  return {v[0], v[1], v[2]};
}

json curve_config_json(const std::vector<double>& r1, const std::vector<double>& r2, double q1,
                       double t_min, double t_max, std::size_t points, bool linear) {
  return json{{"rates1", r1},          {"rates2", r2},   {"q1", q1},
              {"t_min", t_min},        {"t_max", t_max}, {"points", points},
              {"grid", linear ? "linear" : "geometric"}};
}

std::string curve_csv(const ErrorCurve& c) {
  std::string out = "t,p_no_ent,p_ent\n";
  for (std::size_t i = 0; i < c.times.size(); ++i)
    out += fmt17(c.times[i]) + "," + fmt17(c.p_no_ent[i]) + "," + fmt17(c.p_ent[i]) + "\n";
  return out;
}

std::string curve_gnuplot(const ErrorCurve& c) {
  std::string out;
  out += "set xlabel 't'\n";
  out += "set ylabel 'error probability'\n";
  out += "set key top right\n";
  out += "$data << EOD\n";
  for (std::size_t i = 0; i < c.times.size(); ++i)
    out += fmt17(c.times[i]) + " " + fmt17(c.p_no_ent[i]) + " " + fmt17(c.p_ent[i]) + "\n";
  out += "EOD\n";
  out += "plot $data using 1:2 with lines title 'no entanglement', \\\n";
  out += "     $data using 1:3 with lines title 'entangled'\n";
  return out;
}

json optimization_json(const OptimizationResult& r) {
  json j;
  j["mode"] = to_string(r.mode);
  j["method"] = to_string(r.method);
  j["p_star"] = r.p_star;
  if (r.degenerate) {
    j["degenerate"] = true;
    j["t_star"] = nullptr;
  } else if (r.at_infinity) {
    j["t_star"] = "infinity";
  } else {
    j["t_star"] = r.t_star;
  }
  json minima = json::array();
  for (const auto& m : r.minima)
    minima.push_back(json{{"t", m.t}, {"p", m.p}, {"bracket", {m.bracket_lo, m.bracket_hi}}});
  j["minima"] = minima;
  return j;
}

json scenario_side_json(bool at_infinity, const std::vector<double>& times, double p) {
  json j;
  j["at_infinity"] = at_infinity;
  if (at_infinity)
    j["t_star"] = "infinity";
  else if (times.size() == 1)
    j["t_star"] = times[0];
  else
    j["t_star"] = times;
  j["p_star"] = p;
  return j;
}

// ----------------------------------------------------------------- curve ---

int cmd_curve(const std::vector<double>& r1v, const std::vector<double>& r2v, double q1,
              double t_min, double t_max, std::size_t points, bool linear,
              const std::string& format, bool gnuplot, const OutputTarget& out) {
  const DecayRates r1 = to_rates(r1v);
  const DecayRates r2 = to_rates(r2v);
  const auto grid = make_grid(t_min, t_max, points, linear);
  const ErrorCurve c = curve(r1, r2, Priors::from_q1(q1), grid);

  if (gnuplot) {
    if (!out.path.empty()) {
      if (format == "json") {
        json j{{"times", c.times},
               {"p_no_ent", c.p_no_ent},
               {"p_ent", c.p_ent},
               {"config", curve_config_json(r1v, r2v, q1, t_min, t_max, points, linear)}};
        out.write(j.dump(2) + "\n");
      } else {
        out.write(curve_csv(c));
      }
    }
    std::cout << curve_gnuplot(c);
    return 0;
  }

  if (format == "json") {
    json j{{"times", c.times},
           {"p_no_ent", c.p_no_ent},
           {"p_ent", c.p_ent},
           {"config", curve_config_json(r1v, r2v, q1, t_min, t_max, points, linear)}};
    out.write(j.dump(2) + "\n");
  } else {
    out.write(curve_csv(c));
  }
  return 0;
}

// -------------------------------------------------------------- optimize ---

int cmd_optimize(const std::vector<double>& r1v, const std::vector<double>& r2v, double q1,
                 const std::string& mode, const OutputTarget& out) {
  const DecayRates r1 = to_rates(r1v);
  const DecayRates r2 = to_rates(r2v);
  const Priors priors = Priors::from_q1(q1);

  std::vector<StrategyMode> modes;
  if (mode == "separable" || mode == "both") modes.push_back(StrategyMode::separable);
  if (mode == "entangled" || mode == "both") modes.push_back(StrategyMode::entangled);
  if (modes.empty()) throw std::invalid_argument("mode must be separable, entangled or both");

  json results = json::array();
  for (StrategyMode m : modes) results.push_back(optimization_json(minimize_error(r1, r2, priors, m)));
  json j{{"rates1", r1v}, {"rates2", r2v}, {"q1", q1}, {"results", results}};
  out.write(j.dump(2) + "\n");
  return 0;
}

// -------------------------------------------------------------- scenario ---

int cmd_scenario(const std::string& kind_str, double g1, double g2, const OutputTarget& out) {
  const ScenarioKind kind = scenario_kind_from_string(kind_str);
  const ScenarioSolution s = solve(ScenarioSpec(kind, g1, g2));
  const auto [r1, r2] = scenario_rates(kind, g1, g2);

  json closed;
  closed["separable"] = scenario_side_json(s.no_ent_at_infinity, s.t_star_no_ent, s.p_star_no_ent);
  closed["entangled"] = scenario_side_json(
      s.ent_at_infinity, s.t_star_ent ? std::vector<double>{*s.t_star_ent} : std::vector<double>{},
      s.p_star_ent);
  closed["advantage_regime"] = s.advantage_regime;

  const auto check_side = [&](StrategyMode mode, bool closed_inf,
                              const std::vector<double>& closed_times, double closed_p) {
    const OptimizationResult num = minimize_error(r1, r2, Priors::equal(), mode);
    json j;
    j["at_infinity"] = num.at_infinity;
    if (num.at_infinity) {
      j["t_star"] = "infinity";
    } else {
      json times = json::array();
      for (const auto& m : num.minima) times.push_back(m.t);
      j["t_star"] = times;
    }
    j["p_star"] = num.p_star;
    j["dev_p"] = std::abs(num.p_star - closed_p);
    if (!closed_inf && !num.at_infinity) {
      double worst = 0.0;
      for (double tc : closed_times) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& m : num.minima) best = std::min(best, std::abs(m.t - tc));
        worst = std::max(worst, best);
      }
      j["dev_t"] = worst;
    } else {
      j["dev_t"] = nullptr;
    }
    return j;
  };

  json numeric;
  numeric["separable"] = check_side(StrategyMode::separable, s.no_ent_at_infinity, s.t_star_no_ent,
                                    s.p_star_no_ent);
  numeric["entangled"] = check_side(
      StrategyMode::entangled, s.ent_at_infinity,
      s.t_star_ent ? std::vector<double>{*s.t_star_ent} : std::vector<double>{}, s.p_star_ent);

  json j{{"kind", to_string(kind)}, {"gamma1", g1},          {"gamma2", g2},
         {"closed_form", closed},   {"numeric_check", numeric}};
  out.write(j.dump(2) + "\n");
  return 0;
}

// ------------------------------------------------------------- threshold ---

int cmd_threshold(double tol, const OutputTarget& out) {
  const ThresholdResult res = find_advantage_threshold(tol);
  json j{{"ratio", res.ratio},
         {"tol", tol},
         {"iterations", res.iterations},
         {"bracket", {res.bracket_lo, res.bracket_hi}}};
  out.write(j.dump(2) + "\n");
  return 0;
}

// ---------------------------------------------------------------- verify ---

double vuniform(std::mt19937_64& g, double lo = 0.0, double hi = 1.0) {
  return lo + (hi - lo) * (static_cast<double>(g() >> 11) * 0x1.0p-53);
}

PauliProbVector vprob(std::mt19937_64& g) {
  std::array<double, 4> w;
  double s = 0.0;
  for (double& v : w) {
    v = -std::log(vuniform(g, 1e-16, 1.0));
    s += v;
  }
  return {{w[0] / s, w[1] / s, w[2] / s, w[3] / s}};
}

DecayRates vrates(std::mt19937_64& g) {
  std::array<double, 3> r;
  for (double& v : r)
    v = vuniform(g) < 0.25 ? 0.0 : 0.02 * std::exp(vuniform(g) * std::log(3.0 / 0.02));
  return {r[0], r[1], r[2]};
}

struct VerifyCheck {
  std::string name;
  bool pass;
  std::string detail;
};

int cmd_verify(std::uint64_t seed, std::size_t n_grid, std::size_t n_samples, double sep_tol,
               const OutputTarget& out) {
  std::vector<VerifyCheck> checks;
  std::mt19937_64 g(seed);

  {  // closed form vs Fibonacci-grid search over pure qubit probes
    double max_dev = 0.0, min_floor = 0.0;
    for (int i = 0; i < 200; ++i) {
      const auto p1 = vprob(g), p2 = vprob(g);
      const Priors pr = Priors::from_q1(vuniform(g, 0.02, 0.98));
      const double closed = error_prob_no_ent(r_vector(pr, p1, p2)).p;
      const double brute = brute_force_no_ent(p1, p2, pr, n_grid);
      max_dev = std::max(max_dev, std::abs(brute - closed));
      min_floor = std::min(min_floor, brute - closed);
    }
    checks.push_back({"separable-oracle",
                      max_dev <= sep_tol && min_floor >= -1e-12,
                      "max|brute-closed| = " + fmt17(max_dev) + " (tol " + fmt17(sep_tol) +
                          "), floor = " + fmt17(min_floor)});
  }

  {  // Bell input attains the entangled closed form; no sample beats it
    double max_bell_dev = 0.0, worst_margin = 0.0;
    for (int i = 0; i < 200; ++i) {
      const auto p1 = vprob(g), p2 = vprob(g);
      const Priors pr = Priors::from_q1(vuniform(g, 0.02, 0.98));
      const auto res = brute_force_ent(p1, p2, pr, n_samples, seed + 1000 + i);
      max_bell_dev = std::max(max_bell_dev, std::abs(res.bell_error - res.closed_form));
      worst_margin = std::min(worst_margin, res.min_sample_error - res.closed_form);
    }
    checks.push_back({"entangled-bell", max_bell_dev <= 1e-12,
                      "max|bell-closed| = " + fmt17(max_bell_dev) + " (tol 1e-12)"});
    checks.push_back({"entangled-samples", worst_margin >= -1e-10,
                      "min(sample-closed) = " + fmt17(worst_margin) + " (floor -1e-10)"});
  }

  {  // advantage criterion: product sign vs strict error ordering
    std::size_t agree = 0;
    const std::size_t total = 100000;
    for (std::size_t i = 0; i < total; ++i) {
      const auto r = r_vector(Priors::from_q1(vuniform(g, 0.02, 0.98)), vprob(g), vprob(g));
      const bool strict = error_prob_ent(r) < error_prob_no_ent(r).p - 1e-14;
      if (entanglement_advantage(r) == strict) ++agree;
    }
    checks.push_back({"advantage-iff", agree == total,
                      std::to_string(agree) + "/" + std::to_string(total) + " agree"});
  }

  {  // semigroup composition against the Pauli-group convolution
    double max_dev = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const DecayRates rates = vrates(g);
      const double s = vuniform(g, 0.0, 5.0), t = vuniform(g, 0.0, 5.0);
      const auto direct = channel_probabilities(rates, s + t);
      const auto ps = channel_probabilities(rates, s);
      const auto pt = channel_probabilities(rates, t);
      PauliProbVector conv{{0, 0, 0, 0}};
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) conv.p[a ^ b] += ps.p[a] * pt.p[b];
      for (std::size_t k = 0; k < 4; ++k)
        max_dev = std::max(max_dev, std::abs(direct.p[k] - conv.p[k]));
    }
    checks.push_back(
        {"semigroup", max_dev <= 1e-12, "max deviation = " + fmt17(max_dev) + " (tol 1e-12)"});
  }

  std::string report;
  std::string first_fail;
  for (const auto& c : checks) {
    report += (c.pass ? "PASS " : "FAIL ") + c.name + "  " + c.detail + "\n";
    if (!c.pass && first_fail.empty()) first_fail = c.name;
  }
  if (!first_fail.empty()) report += "FAILED: " + first_fail + "\n";
  out.write(report);
  return first_fail.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-error discrimination of Pauli dynamical processes"};
  app.require_subcommand(1);

  std::vector<double> r1v, r2v;
  double q1 = 0.5;
  double t_min = 1e-3, t_max = 5.0;
  std::size_t points = 200;
  bool linear = false, gnuplot = false;
  std::string format = "csv", mode = "both", out_path;
  double tol = 5e-4;
  std::uint64_t seed = 12345;
  std::size_t n_grid = 10000, n_samples = 200;
  double verify_tol = 2e-4;
  std::string kind_str;
  double g1 = 0.0, g2 = 0.0;

  const auto add_rates = [&](CLI::App* sub) {
    sub->add_option("--rates1", r1v, "decay rates of process 1 as gx,gy,gz")
        ->required()
        ->delimiter(',')
        ->expected(3);
    sub->add_option("--rates2", r2v, "decay rates of process 2 as gx,gy,gz")
        ->required()
        ->delimiter(',')
        ->expected(3);
    sub->add_option("--q1", q1, "prior probability of process 1 (default 0.5)");
  };
  std::string config_doc;  // handled before parsing; present here for --help
  const auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "output file (default stdout)");
    sub->add_option("--config", config_doc, "flat key=value config file; flags override it");
  };

  CLI::App* curve_cmd = app.add_subcommand("curve", "emit (t, p_no_ent, p_ent) on a time grid");
  add_rates(curve_cmd);
  curve_cmd->add_option("--t-min", t_min, "grid start (default 1e-3)");
  curve_cmd->add_option("--t-max", t_max, "grid end (default 5)");
  curve_cmd->add_option("--points", points, "grid size (default 200)");
  curve_cmd->add_flag("--linear", linear, "linear grid instead of geometric");
  curve_cmd->add_option("--format", format, "csv or json (default csv)")
      ->check(CLI::IsMember({"csv", "json"}));
  curve_cmd->add_flag("--gnuplot", gnuplot, "print a ready-to-pipe gnuplot script");
  add_out(curve_cmd);

  CLI::App* opt_cmd = app.add_subcommand("optimize", "minimize the error probability over time");
  add_rates(opt_cmd);
  opt_cmd->add_option("--mode", mode, "separable, entangled or both (default both)")
      ->check(CLI::IsMember({"separable", "entangled", "both"}));
  add_out(opt_cmd);

  CLI::App* scen_cmd = app.add_subcommand("scenario", "closed-form case study with numeric check");
  scen_cmd->add_option("kind", kind_str,
                       "same_axis_dephasing | orthogonal_dephasing | coplanar | depolarising | "
                       "depol_vs_dephasing")
      ->required();
  scen_cmd->add_option("gamma1", g1, "rate of process 1")->required();
  scen_cmd->add_option("gamma2", g2, "rate of process 2")->required();
  add_out(scen_cmd);

  CLI::App* thr_cmd = app.add_subcommand("threshold", "advantage-threshold rate ratio search");
  thr_cmd->add_option("--tol", tol, "bisection tolerance (default 5e-4, min 1e-6)");
  add_out(thr_cmd);

  CLI::App* ver_cmd = app.add_subcommand("verify", "closed forms vs brute-force oracles");
  ver_cmd->add_option("--seed", seed, "random seed (default 12345)");
  ver_cmd->add_option("--n-grid", n_grid, "Fibonacci grid size (default 10000)");
  ver_cmd->add_option("--n-samples", n_samples, "random entangled probes per pair (default 200)");
  ver_cmd->add_option("--tol", verify_tol, "tolerance of the separable check (default 2e-4)");
  add_out(ver_cmd);

  app.name("paulidisc");
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    // Extract --config ourselves: the file is flat key=value, applied to the
    // subcommand's options unless the same flag is given on the command line.
    std::string config_path;
    for (auto it = args.begin(); it != args.end();) {
      if (*it == "--config" && std::next(it) != args.end()) {
        config_path = *std::next(it);
        it = args.erase(it, it + 2);
      } else if (it->rfind("--config=", 0) == 0) {
        config_path = it->substr(9);
        it = args.erase(it);
      } else {
        ++it;
      }
    }
    if (!config_path.empty() && !args.empty()) {
      const auto tokens = config_tokens(config_path, args);
      args.insert(args.begin() + 1, tokens.begin(), tokens.end());
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    std::reverse(args.begin(), args.end());  // CLI11's vector parse wants reversed args
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const OutputTarget out{out_path};
  try {
    if (curve_cmd->parsed())
      return cmd_curve(r1v, r2v, q1, t_min, t_max, points, linear, format, gnuplot, out);
    if (opt_cmd->parsed()) return cmd_optimize(r1v, r2v, q1, mode, out);
    if (scen_cmd->parsed()) return cmd_scenario(kind_str, g1, g2, out);
    if (thr_cmd->parsed()) return cmd_threshold(tol, out);
    if (ver_cmd->parsed()) return cmd_verify(seed, n_grid, n_samples, verify_tol, out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
