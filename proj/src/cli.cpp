#include "prophet_lab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "prophet_lab/analytic.hpp"
#include "prophet_lab/engine.hpp"
#include "prophet_lab/error.hpp"
#include "prophet_lab/optimize.hpp"
#include "prophet_lab/serialize.hpp"

namespace prophet_lab {
namespace {

struct RunConfig {
  std::string strategy;
  std::string x = "0.5";
  std::int64_t n = 2000;
  std::string reps = "100000";
  std::uint64_t seed = 42;
  double lambda = 0.5;
  std::string instance = "dirac";
  double ratio = 0.9;  // geometric family
  std::string instance_file;
  std::string alpha_table;
  std::string schedule;
  std::string format = "json";
  std::string output;

  std::string formula;
  std::string objective;
  double tol = 1e-6;
  std::string grid = "0:1:0.01";
  std::string curves = "both";
  double p = 0.0;
  int k = 1;
  double grid_step = 0.05;
  std::vector<double> thresholds;
  std::int64_t oracle_n = 2;
  std::int64_t trial_n = 200;
  std::string trial_reps = "20000";
};

std::uint64_t parse_count(const std::string& s, const char* what) {
  // Integers, or scientific literals with an integral value ("2e5").
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec == std::errc{} && ptr == s.data() + s.size()) return v;
  double d = 0.0;
  auto [dptr, dec] = std::from_chars(s.data(), s.data() + s.size(), d);
  if (dec == std::errc{} && dptr == s.data() + s.size() && d >= 0.0 && d < 1.8e19 && d == std::floor(d)) {
    return static_cast<std::uint64_t>(d);
  }
  throw InvalidParameter(std::string(what) + " must be a nonnegative integer");
}

AlphaTable alpha_from(const RunConfig& c) {
  return c.alpha_table.empty() ? AlphaTable::default_table() : load_alpha_table(c.alpha_table);
}

PolicySpec spec_from(const RunConfig& c) {
  PolicySpec spec;
  spec.kind = parse_strategy_kind(c.strategy);
  spec.x = ObservationFraction::parse(c.x);
  if (!c.schedule.empty()) {
    if (spec.kind != StrategyKind::Rpi) throw InvalidParameter("--schedule only applies to rpi");
    spec.schedules = std::make_shared<const ScheduleFamily>(load_schedule_family(c.schedule));
  }
  return spec;
}

std::pair<Instance, std::string> instance_from(const RunConfig& c) {
  if (!c.instance_file.empty()) return {load_instance(c.instance_file), "file:" + c.instance_file};
  if (c.n < 1) throw InvalidParameter("n must be positive");
  if (c.instance == "dirac") return {instances::dirac(c.n), "dirac"};
  if (c.instance == "uniform") return {instances::uniform(c.n, c.seed), "uniform"};
  if (c.instance == "geometric") {
    return {instances::geometric(c.n, c.ratio), "geometric[r=" + format9(c.ratio) + "]"};
  }
  throw InvalidParameter("unknown instance family '" + c.instance + "'");
}

void check_format(const RunConfig& c) {
  if (c.format != "json" && c.format != "csv") throw InvalidParameter("format must be json or csv");
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.output, std::ios::binary);
  if (!f) throw ConfigurationError("cannot write '" + c.output + "'");
  f << text;
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

std::string cmd_simulate(const RunConfig& c) {
  check_format(c);
  const PolicySpec spec = spec_from(c);
  const auto [instance, label] = instance_from(c);
  const std::uint64_t reps = parse_count(c.reps, "reps");
  const auto report = monte_carlo(spec, instance, reps, c.seed, LambdaWeight(c.lambda), label);
  if (c.format == "csv") return csv_header(report) + "\n" + csv_row(report) + "\n";
  return json_text(to_json(report));
}

std::string cmd_analytic(const RunConfig& c) {
  check_format(c);
  const LambdaWeight lambda(c.lambda);
  const ObservationFraction xf = ObservationFraction::parse(c.x);
  const double x = xf.value();
  const std::string& f = c.formula;
  double value = 0.0;
  if (f == "secretary") {
    value = secretary_limit_prob(x);
  } else if (f == "sop") {
    value = sop_limit_perf(x);
  } else if (f == "wai") {
    value = wai_limit_prob(x, lambda);
  } else if (f == "rpi") {
    value = rpi_limit_perf(x, alpha_from(c), lambda);
  } else if (f == "sop-finite") {
    value = sop_finite_prob(c.n, xf);
  } else if (f == "wai-finite") {
    value = wai_finite_probs(c.n, xf).weighted(lambda);
  } else if (f == "alpha") {
    value = alpha_lower(c.p, alpha_from(c));
  } else {
    throw InvalidParameter("unknown formula '" + f + "'");
  }
  if (c.format == "csv") return "formula,x,lambda,value\n" + f + "," + xf.to_string() + "," + format9(c.lambda) + "," + format9(value) + "\n";
  return json_text(Json{{"formula", f}, {"x", round9(x)}, {"lambda", round9(c.lambda)}, {"value", round9(value)}});
}

std::string cmd_optimize(const RunConfig& c) {
  const LambdaWeight lambda(c.lambda);
  std::function<double(double)> f;
  if (c.objective == "secretary" || c.objective == "sec") {
    f = secretary_limit_prob;
  } else if (c.objective == "sop") {
    f = sop_limit_perf;
  } else if (c.objective == "wai") {
    f = [lambda](double x) { return wai_limit_prob(x, lambda); };
  } else if (c.objective == "rpi") {
    f = [lambda, table = alpha_from(c)](double x) { return rpi_limit_perf(x, table, lambda); };
  } else {
    throw InvalidParameter("unknown objective '" + c.objective + "'");
  }
  Json j{{"objective", c.objective}, {"lambda", round9(c.lambda)}};
  j.update(to_json(maximize_concave(f, c.tol)));
  return json_text(j);
}

std::string cmd_sweep(const RunConfig& c) {
  std::vector<SweepCurve> curves;
  if (c.curves == "both") {
    curves = {SweepCurve::RpiLower, SweepCurve::WaiUpper};
  } else if (c.curves == "rpi_lower" || c.curves == "rpi") {
    curves = {SweepCurve::RpiLower};
  } else if (c.curves == "wai_upper" || c.curves == "wai") {
    curves = {SweepCurve::WaiUpper};
  } else {
    throw InvalidParameter("curves must be both, rpi_lower or wai_upper");
  }
  const auto points = lambda_sweep(curves, parse_grid(c.grid), c.tol, alpha_from(c));
  std::ostringstream s;
  write_sweep_csv(s, points);
  return s.str();
}

std::string cmd_oracle(const RunConfig& c) {
  if (c.oracle_n > kMaxExhaustiveN) throw InvalidParameter("oracle enumerates (2n)! orders and needs n <= 4");
  RunConfig oc = c;
  oc.n = c.oracle_n;
  const PolicySpec spec = spec_from(oc);
  const auto [instance, label] = instance_from(oc);
  Json j = to_json(exhaustive(spec, instance, LambdaWeight(c.lambda)));
  j["instance"] = label;
  return json_text(j);
}

std::string cmd_tune(const RunConfig& c) {
  const auto tuned = tune_schedule(c.p, c.k, c.grid_step, c.trial_n, parse_count(c.trial_reps, "reps"), c.seed);
  Json j{{"p", round9(c.p)}, {"k", c.k}, {"grid_step", round9(c.grid_step)}, {"n", c.trial_n}, {"seed", c.seed}};
  j.update(to_json(tuned));
  return json_text(j);
}

std::string cmd_alpha(const RunConfig& c) {
  const ThresholdSchedule schedule(c.thresholds);
  const auto est = estimate_alpha_by_simulation(c.p, schedule, c.trial_n, parse_count(c.trial_reps, "reps"), c.seed);
  Json j{{"p", round9(c.p)}, {"thresholds", c.thresholds}, {"n", c.trial_n}, {"seed", c.seed}};
  j.update(to_json(est));
  return json_text(j);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Two-phase optimal stopping toolkit"};
  app.name("prophet_lab");
  app.require_subcommand(1);

  auto add_policy = [&](CLI::App* s, bool strategy_required) {
    auto* opt = s->add_option("--strategy", c.strategy, "sec | sop | tps | rpi | wai");
    if (strategy_required) opt->required();
    s->add_option("--x", c.x, "observation fraction in [0,1]")->capture_default_str();
    s->add_option("--schedule", c.schedule, "RPI threshold schedule file (JSON)");
  };
  auto add_instance = [&](CLI::App* s) {
    s->add_option("--instance", c.instance, "dirac | uniform | geometric")->capture_default_str();
    s->add_option("--ratio", c.ratio, "decay ratio of the geometric family")->capture_default_str();
    s->add_option("--instance-file", c.instance_file, "instance file (JSON)");
  };
  auto add_output = [&](CLI::App* s, bool with_format) {
    if (with_format) s->add_option("--format", c.format, "json | csv")->capture_default_str();
    s->add_option("--output", c.output, "write to this file instead of stdout");
  };

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo estimate of a policy");
  add_policy(simulate, true);
  add_instance(simulate);
  simulate->add_option("--n", c.n, "phase length")->capture_default_str();
  simulate->add_option("--reps", c.reps, "replications")->capture_default_str();
  simulate->add_option("--seed", c.seed)->capture_default_str();
  simulate->add_option("--lambda", c.lambda, "Phase-2 weight")->capture_default_str();
  add_output(simulate, true);

  auto* analytic = app.add_subcommand("analytic", "evaluate a closed-form or quadrature value");
  analytic->add_option("--formula", c.formula, "secretary | sop | wai | rpi | sop-finite | wai-finite | alpha")
      ->required();
  analytic->add_option("--x", c.x)->capture_default_str();
  analytic->add_option("--lambda", c.lambda)->capture_default_str();
  analytic->add_option("--n", c.n, "phase length for finite formulas")->capture_default_str();
  analytic->add_option("--p", c.p, "sample fraction for alpha")->capture_default_str();
  analytic->add_option("--alpha-table", c.alpha_table, "alpha table file (JSON)");
  add_output(analytic, true);

  auto* optimize = app.add_subcommand("optimize", "maximize a limit objective over x");
  optimize->add_option("--objective", c.objective, "secretary | sop | wai | rpi")->required();
  optimize->add_option("--lambda", c.lambda)->capture_default_str();
  optimize->add_option("--tol", c.tol)->capture_default_str();
  optimize->add_option("--alpha-table", c.alpha_table, "alpha table file (JSON)");
  add_output(optimize, false);

  auto* sweep = app.add_subcommand("sweep", "lambda sweep of both bound curves (CSV)");
  sweep->add_option("--grid", c.grid, "start:stop:step")->capture_default_str();
  sweep->add_option("--curves", c.curves, "both | rpi_lower | wai_upper")->capture_default_str();
  sweep->add_option("--tol", c.tol)->capture_default_str();
  sweep->add_option("--alpha-table", c.alpha_table, "alpha table file (JSON)");
  add_output(sweep, false);

  auto* oracle = app.add_subcommand("oracle", "exact report by enumerating every order (n <= 4)");
  add_policy(oracle, true);
  add_instance(oracle);
  oracle->add_option("--n", c.oracle_n, "phase length")->capture_default_str();
  oracle->add_option("--lambda", c.lambda)->capture_default_str();
  add_output(oracle, false);

  auto* tune = app.add_subcommand("tune", "grid-search a threshold schedule for sample fraction p");
  tune->add_option("--p", c.p)->required();
  tune->add_option("--k", c.k, "schedule length (1..4)")->capture_default_str();
  tune->add_option("--grid-step", c.grid_step)->capture_default_str();
  tune->add_option("--n", c.trial_n, "items per trial")->capture_default_str();
  tune->add_option("--reps", c.trial_reps)->capture_default_str();
  tune->add_option("--seed", c.seed)->capture_default_str();
  add_output(tune, false);

  auto* alpha = app.add_subcommand("alpha", "simulate the sample-driven ratio of a threshold schedule");
  alpha->add_option("--p", c.p)->required();
  alpha->add_option("--thresholds", c.thresholds, "t_1 ... t_K (nondecreasing)")->required()->delimiter(',');
  alpha->add_option("--n", c.trial_n, "items per trial")->capture_default_str();
  alpha->add_option("--reps", c.trial_reps)->capture_default_str();
  alpha->add_option("--seed", c.seed)->capture_default_str();
  add_output(alpha, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    std::string text;
    if (simulate->parsed()) {
      text = cmd_simulate(c);
    } else if (analytic->parsed()) {
      text = cmd_analytic(c);
    } else if (optimize->parsed()) {
      text = cmd_optimize(c);
    } else if (sweep->parsed()) {
      text = cmd_sweep(c);
    } else if (oracle->parsed()) {
      text = cmd_oracle(c);
    } else if (tune->parsed()) {
      text = cmd_tune(c);
    } else {
      text = cmd_alpha(c);
    }
    emit(c, text, out);
  } catch (const InvalidParameter& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace prophet_lab
