#include "prophet_lab/serialize.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "prophet_lab/error.hpp"

namespace prophet_lab {
namespace {

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ConfigurationError("malformed JSON in '" + path + "': " + e.what());
  }
}

// Validation failures inside a loaded file are configuration errors.
template <class F>
auto as_config(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ConfigurationError(what + ": " + e.what());
  } catch (const InvalidParameter& e) {
    throw ConfigurationError(what + ": " + e.what());
  }
}

Json real(double v) { return round9(v); }

Json rational(const Rational& r) { return r.to_string(); }

}  // namespace

double round9(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
  double out = 0.0;
  std::from_chars(buf, res.ptr, out);
  return out;
}

std::string format9(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

Instance instance_from_json(const Json& j) {
  return as_config("invalid instance", [&] {
    return Instance(j.at("n").get<std::int64_t>(), j.at("values").get<std::vector<double>>());
  });
}

Json to_json(const Instance& instance) {
  return Json{{"n", instance.n()}, {"values", instance.values()}};
}

Instance load_instance(const std::string& path) { return instance_from_json(read_json_file(path)); }

ScheduleFamily schedule_family_from_json(const Json& j) {
  return as_config("invalid schedule file", [&] {
    auto grid = j.at("p_grid").get<std::vector<double>>();
    const auto raw = j.at("schedules").get<std::vector<std::vector<double>>>();
    if (grid.empty() && raw.empty()) return ScheduleFamily::single_threshold();
    std::vector<ThresholdSchedule> schedules;
    for (const auto& t : raw) schedules.emplace_back(t);
    return ScheduleFamily::tabulated(std::move(grid), std::move(schedules));
  });
}

Json to_json(const ScheduleFamily& family) {
  Json schedules = Json::array();
  for (const auto& s : family.schedules()) schedules.push_back(s.thresholds());
  return Json{{"p_grid", family.p_grid()}, {"schedules", schedules}};
}

ScheduleFamily load_schedule_family(const std::string& path) {
  return schedule_family_from_json(read_json_file(path));
}

AlphaTable alpha_table_from_json(const Json& j) {
  return as_config("invalid alpha table", [&] {
    std::vector<AlphaAnchor> anchors;
    for (const auto& a : j.at("anchors")) {
      anchors.push_back({a.at("p").get<double>(), a.at("alpha_lb").get<double>(), a.value("source", "")});
    }
    return AlphaTable(std::move(anchors));
  });
}

Json to_json(const AlphaTable& table) {
  Json anchors = Json::array();
  for (const auto& a : table.anchors()) {
    anchors.push_back(Json{{"p", a.p}, {"alpha_lb", a.alpha_lb}, {"source", a.source}});
  }
  return Json{{"anchors", anchors}};
}

AlphaTable load_alpha_table(const std::string& path) { return alpha_table_from_json(read_json_file(path)); }

Json to_json(const SimulationReport& r) {
  return Json{{"strategy", r.strategy},
              {"instance", r.instance},
              {"n", r.n},
              {"reps", r.reps},
              {"seed", r.seed},
              {"lambda", real(r.lambda)},
              {"mean_phase1", real(r.mean_phase1)},
              {"mean_phase2", real(r.mean_phase2)},
              {"prophet_mean", real(r.prophet_mean)},
              {"ratio", real(r.ratio)},
              {"ratio_ci_halfwidth", real(r.ratio_ci_halfwidth)},
              {"accept_v1_prob", real(r.accept_v1_prob)},
              {"accept_v1_phase1_prob", real(r.accept_v1_phase1_prob)},
              {"accept_v1_phase2_prob", real(r.accept_v1_phase2_prob)},
              {"mean_phase1_stop", real(r.mean_phase1_stop)}};
}

SimulationReport simulation_report_from_json(const Json& j) {
  return as_config("invalid report", [&] {
    SimulationReport r;
    r.strategy = j.at("strategy").get<std::string>();
    r.instance = j.at("instance").get<std::string>();
    r.n = j.at("n").get<std::int64_t>();
    r.reps = j.at("reps").get<std::uint64_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.lambda = j.at("lambda").get<double>();
    r.mean_phase1 = j.at("mean_phase1").get<double>();
    r.mean_phase2 = j.at("mean_phase2").get<double>();
    r.prophet_mean = j.at("prophet_mean").get<double>();
    r.ratio = j.at("ratio").get<double>();
    r.ratio_ci_halfwidth = j.at("ratio_ci_halfwidth").get<double>();
    r.accept_v1_prob = j.at("accept_v1_prob").get<double>();
    r.accept_v1_phase1_prob = j.at("accept_v1_phase1_prob").get<double>();
    r.accept_v1_phase2_prob = j.at("accept_v1_phase2_prob").get<double>();
    r.mean_phase1_stop = j.at("mean_phase1_stop").get<double>();
    return r;
  });
}

std::string csv_header(const SimulationReport&) {
  return "strategy,instance,n,reps,seed,lambda,mean_phase1,mean_phase2,prophet_mean,ratio,ratio_ci_halfwidth,"
         "accept_v1_prob,accept_v1_phase1_prob,accept_v1_phase2_prob,mean_phase1_stop";
}

std::string csv_row(const SimulationReport& r) {
  std::ostringstream s;
  s << r.strategy << ',' << r.instance << ',' << r.n << ',' << r.reps << ',' << r.seed;
  for (double v : {r.lambda, r.mean_phase1, r.mean_phase2, r.prophet_mean, r.ratio, r.ratio_ci_halfwidth,
                   r.accept_v1_prob, r.accept_v1_phase1_prob, r.accept_v1_phase2_prob, r.mean_phase1_stop}) {
    s << ',' << format9(v);
  }
  return s.str();
}

Json to_json(const ExactReport& r) {
  Json stops = Json::array();
  for (const auto& q : r.phase1_stop) stops.push_back(rational(q));
  return Json{{"strategy", r.strategy},
              {"n", r.n},
              {"orders", r.orders},
              {"lambda", real(r.lambda)},
              {"mean_phase1", real(r.mean_phase1)},
              {"mean_phase2", real(r.mean_phase2)},
              {"prophet_mean", real(r.prophet_mean)},
              {"ratio", real(r.ratio)},
              {"accept_v1", rational(r.accept_v1)},
              {"accept_v1_decimal", real(r.accept_v1.value())},
              {"accept_v1_phase1", rational(r.accept_v1_phase1)},
              {"accept_v1_phase2", rational(r.accept_v1_phase2)},
              {"phase1_stop_pmf", stops}};
}

Json to_json(const OptResult& r) {
  return Json{{"x_star", real(r.x_star)},
              {"f_star", real(r.f_star)},
              {"tolerance", real(r.tolerance)},
              {"iterations", r.iterations}};
}

Json to_json(const AlphaEstimate& e) {
  return Json{{"value", real(e.value)},
              {"ci_halfwidth", real(e.ci_halfwidth)},
              {"worst_plateau", e.worst_plateau},
              {"reps", e.reps}};
}

Json to_json(const TunedSchedule& t) {
  Json thresholds = Json::array();
  for (double v : t.schedule.thresholds()) thresholds.push_back(real(v));
  return Json{{"thresholds", thresholds},
              {"candidates", t.candidates},
              {"search_estimate", to_json(t.search_estimate)},
              {"estimate", to_json(t.estimate)}};
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& points) {
  out << "lambda,curve,x_star,value\n";
  for (const auto& p : points) {
    out << format9(p.lambda) << ',' << to_string(p.curve) << ',' << format9(p.x_star) << ',' << format9(p.value)
        << '\n';
  }
}

}  // namespace prophet_lab
