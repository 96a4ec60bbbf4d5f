#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "prophet_lab/cli.hpp"
#include "prophet_lab/error.hpp"
#include "prophet_lab/serialize.hpp"

using namespace prophet_lab;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("prophet_lab_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("simulate emits a parseable report") {
    const auto r = run({"simulate", "--strategy", "wai", "--x", "0.463", "--n", "100", "--reps", "2e3"});
    REQUIRE(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j["strategy"] == "wai[x=0.463]");
    CHECK(j["reps"] == 2000);
    CHECK(j["seed"] == 42);
    CHECK(j["instance"] == "dirac");
  }

  TEST_CASE("simulate is deterministic and honours csv") {
    const std::vector<std::string> args{"simulate", "--strategy", "sop", "--x", "0.5", "--n", "30",
                                        "--reps", "3000", "--instance", "uniform"};
    CHECK(run(args).out == run(args).out);
    auto csv = args;
    csv.insert(csv.end(), {"--format", "csv"});
    const auto r = run(csv);
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string header, row, extra;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header.rfind("strategy,instance,n,reps,seed,lambda", 0) == 0);
    CHECK(row.rfind("sop[x=0.5],uniform,30,3000,42,0.5,", 0) == 0);
    CHECK_FALSE(std::getline(lines, extra));
  }

  TEST_CASE("validation failures exit 2 with one line") {
    auto r = run({"simulate", "--strategy", "wai", "--x", "1.5"});
    CHECK(r.code == 2);
    CHECK(r.err == "error: x must lie in [0,1]\n");
    CHECK(run({"simulate", "--strategy", "best", "--x", "0.5"}).code == 2);
    CHECK(run({"simulate", "--strategy", "wai", "--lambda", "2"}).code == 2);
    CHECK(run({"simulate", "--strategy", "wai", "--reps", "0"}).code == 2);
    CHECK(run({"simulate", "--strategy", "wai", "--format", "xml"}).code == 2);
    CHECK(run({"simulate"}).code == 2);
    CHECK(run({"optimize", "--objective", "nope"}).code == 2);
    CHECK(run({"sweep", "--grid", "0:1"}).code == 2);
    CHECK(run({"oracle", "--strategy", "wai", "--n", "5"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
  }

  TEST_CASE("configuration errors exit 3") {
    CHECK(run({"optimize", "--objective", "rpi", "--alpha-table", "/nonexistent/table.json"}).code == 3);
    const auto bad = temp_file("bad_alpha.json", R"({"anchors": [{"p": 0.5, "alpha_lb": 0.9}]})");
    CHECK(run({"optimize", "--objective", "rpi", "--alpha-table", bad}).code == 3);
    const auto junk = temp_file("junk.json", "{not json");
    CHECK(run({"simulate", "--strategy", "wai", "--instance-file", junk}).code == 3);
  }

  TEST_CASE("oracle prints the exact rational") {
    const auto r = run({"oracle", "--strategy", "sop", "--x", "0.5", "--n", "2"});
    REQUIRE(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j["accept_v1"] == "5/8");
    CHECK(j["accept_v1_decimal"] == 0.625);
    CHECK(j["orders"] == 24);
    const auto w = Json::parse(run({"oracle", "--strategy", "wai", "--x", "0.5", "--n", "1"}).out);
    CHECK(w["orders"] == 2);
  }

  TEST_CASE("analytic, optimize and sweep") {
    auto j = Json::parse(run({"analytic", "--formula", "secretary", "--x", "0"}).out);
    CHECK(j["value"] == 0.0);
    j = Json::parse(run({"analytic", "--formula", "sop", "--x", "0.545"}).out);
    CHECK(j["value"].get<double>() == doctest::Approx(0.4494).epsilon(1e-4));
    j = Json::parse(run({"analytic", "--formula", "wai", "--x", "0.463", "--lambda", "0.5"}).out);
    CHECK(j["value"].get<double>() == doctest::Approx(0.501).epsilon(2e-3));
    j = Json::parse(run({"analytic", "--formula", "alpha", "--p", "0.5"}).out);
    CHECK(j["value"] == 0.671);
    j = Json::parse(run({"optimize", "--objective", "wai", "--lambda", "0.5", "--tol", "1e-6"}).out);
    CHECK(j["x_star"].get<double>() == doctest::Approx(0.463).epsilon(0.01));
    const auto s = run({"sweep", "--grid", "0:1:0.01"});
    REQUIRE(s.code == 0);
    CHECK(std::count(s.out.begin(), s.out.end(), '\n') == 203);
    CHECK(s.out.rfind("lambda,curve,x_star,value\n", 0) == 0);
  }

  TEST_CASE("output files and loaded inputs") {
    const auto inst = temp_file("inst.json", R"({"n": 2, "values": [3, 2, 1, 0]})");
    const auto out = (std::filesystem::temp_directory_path() / "prophet_lab_test_out.json").string();
    const auto r = run({"simulate", "--strategy", "wai", "--x", "0.5", "--instance-file", inst, "--reps", "500",
                        "--output", out});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(out);
    const auto j = Json::parse(in);
    CHECK(j["n"] == 2);
    const auto sched = temp_file("sched.json", R"({"p_grid": [0.0, 0.5], "schedules": [[0.4, 0.7], [0.5]]})");
    CHECK(run({"oracle", "--strategy", "rpi", "--x", "0.5", "--n", "3", "--schedule", sched}).code == 0);
    CHECK(run({"oracle", "--strategy", "wai", "--x", "0.5", "--n", "3", "--schedule", sched}).code == 2);
  }

  TEST_CASE("report JSON round-trips") {
    SimulationReport r{"wai[x=0.463]", "dirac", 2000, 12345, 42, 0.5, 0.1794412345678, 0.3217612345,
                       1.0, 0.50120000001, 0.002191340312345, 0.5012, 0.17944, 0.32176, 1638.565341234};
    const auto once = to_json(r).dump();
    const auto parsed = simulation_report_from_json(Json::parse(once));
    CHECK(to_json(parsed).dump() == once);
    CHECK(simulation_report_from_json(Json::parse(to_json(parsed).dump())) == parsed);
    CHECK(parsed.mean_phase1 == round9(r.mean_phase1));
    CHECK(round9(round9(0.1234567891234)) == round9(0.1234567891234));
    CHECK(format9(0.1234567891234) == "0.123456789");
  }

  TEST_CASE("file formats round-trip") {
    const Instance inst(2, {3, 2, 1, 0});
    CHECK(instance_from_json(to_json(inst)) == inst);
    const auto table = AlphaTable::default_table();
    CHECK(alpha_table_from_json(to_json(table)) == table);
    const auto fam = ScheduleFamily::tabulated({0.0, 0.5}, {ThresholdSchedule({0.4}), ThresholdSchedule({0.5, 0.8})});
    const auto back = schedule_family_from_json(to_json(fam));
    CHECK(back.p_grid() == fam.p_grid());
    CHECK(back.schedules() == fam.schedules());
    CHECK_THROWS_AS(instance_from_json(Json{{"n", 2}, {"values", {1, 2, 3, 4}}}), ConfigurationError);
    CHECK_THROWS_AS(instance_from_json(Json{{"values", {1, 0}}}), ConfigurationError);
  }

  TEST_CASE("the shipped default table file matches the built-in table") {
    CHECK(load_alpha_table(PROPHET_LAB_DATA_DIR "/alpha_default.json") == AlphaTable::default_table());
  }
}
