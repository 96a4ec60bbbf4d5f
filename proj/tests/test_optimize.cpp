#include <doctest.h>

#include <cmath>
#include <numbers>

#include "prophet_lab/analytic.hpp"
#include "prophet_lab/error.hpp"
#include "prophet_lab/optimize.hpp"

using namespace prophet_lab;

namespace {

// Two-stage grid argmax: 10^5 cells on [0,1], then 10^5 cells across the
// best cell and its neighbours.
double grid_argmax(const std::function<double(double)>& f) {
  const int cells = 100000;
  double best_x = 0.0, best_f = f(0.0);
  for (int i = 1; i <= cells; ++i) {
    const double x = static_cast<double>(i) / cells;
    const double v = f(x);
    if (v > best_f) best_f = v, best_x = x;
  }
  const double lo = std::max(0.0, best_x - 1.0 / cells), hi = std::min(1.0, best_x + 1.0 / cells);
  for (int i = 0; i <= cells; ++i) {
    const double x = lo + (hi - lo) * i / cells;
    const double v = f(x);
    if (v > best_f) best_f = v, best_x = x;
  }
  return best_x;
}

}  // namespace

TEST_SUITE("optimize") {
  TEST_CASE("secretary optimum is 1/e") {
    const auto r = maximize_concave(secretary_limit_prob, 1e-6);
    CHECK(std::abs(r.x_star - 1.0 / std::numbers::e) <= 1e-6);
    CHECK(r.f_star == doctest::Approx(1.0 / std::numbers::e).epsilon(1e-12));
    CHECK(r.tolerance == 1e-6);
    CHECK(r.iterations > 0);
  }

  TEST_CASE("SOP and WAI optima") {
    const auto s = maximize_concave(sop_limit_perf, 1e-6);
    CHECK(s.x_star == doctest::Approx(0.545).epsilon(0.01));
    CHECK(s.f_star < 0.450);
    CHECK(s.f_star > 0.449);
    const auto w = maximize_concave([](double x) { return wai_limit_prob(x, LambdaWeight(0.5)); }, 1e-6);
    CHECK(w.x_star == doctest::Approx(0.463).epsilon(0.01));
    CHECK(w.f_star == doctest::Approx(0.501).epsilon(0.002));
  }

  TEST_CASE("golden section matches the grid argmax for every shipped objective") {
    const std::function<double(double)> objectives[] = {
        secretary_limit_prob, sop_limit_perf, [](double x) { return wai_limit_prob(x, LambdaWeight(0.5)); }};
    for (const auto& f : objectives) {
      const auto r = maximize_concave(f, 1e-6);
      CHECK(std::abs(r.x_star - grid_argmax(f)) <= 2e-6);
    }
  }

  TEST_CASE("the optimum is not beaten within the tolerance") {
    const auto f = [](double x) { return wai_limit_prob(x, LambdaWeight(0.5)); };
    const auto r = maximize_concave(f, 1e-6);
    CHECK(f(r.x_star - r.tolerance) <= r.f_star + 1e-9);
    CHECK(f(r.x_star + r.tolerance) <= r.f_star + 1e-9);
  }

  TEST_CASE("boundary maxima are returned exactly") {
    CHECK(maximize_concave([](double x) { return x; }).x_star == 1.0);
    CHECK(maximize_concave([](double x) { return -x; }).x_star == 0.0);
    CHECK_THROWS_AS(maximize_concave([](double x) { return x; }, 0.0), InvalidParameter);
    CHECK_THROWS_AS(maximize_concave([](double x) { return x; }, -1.0), InvalidParameter);
  }

  TEST_CASE("sweep endpoints") {
    const auto t = AlphaTable::default_table();
    const auto pts = lambda_sweep({SweepCurve::RpiLower, SweepCurve::WaiUpper}, {0.0, 1.0}, 1e-6, t);
    REQUIRE(pts.size() == 4u);
    CHECK(pts[0].curve == SweepCurve::RpiLower);
    CHECK(pts[0].value == doctest::Approx(1.0 / std::numbers::e).epsilon(1e-9));
    CHECK(pts[1].value == doctest::Approx(1.0 / std::numbers::e).epsilon(1e-9));
    CHECK(pts[2].value == doctest::Approx(0.671).epsilon(1e-12));
    CHECK(pts[3].value == doctest::Approx(std::numbers::ln2).epsilon(1e-12));
  }

  TEST_CASE("sweep: parallel equals serial, upper dominates lower, curves convex in lambda") {
    const auto t = AlphaTable::default_table();
    const auto grid = parse_grid("0:1:0.01");
    const std::vector<SweepCurve> both{SweepCurve::RpiLower, SweepCurve::WaiUpper};
    const auto par = lambda_sweep(both, grid, 1e-6, t);
    const auto ser = lambda_sweep_serial(both, grid, 1e-6, t);
    CHECK(par == ser);
    REQUIRE(par.size() == 202u);
    std::vector<double> lower, upper;
    for (std::size_t i = 0; i < par.size(); i += 2) {
      CHECK(par[i + 1].value >= par[i].value - 1e-9);
      lower.push_back(par[i].value);
      upper.push_back(par[i + 1].value);
    }
    for (const auto* c : {&lower, &upper}) {
      for (std::size_t i = 1; i + 1 < c->size(); ++i) {
        REQUIRE((*c)[i] <= 0.5 * ((*c)[i - 1] + (*c)[i + 1]) + 1e-9);
      }
    }
  }

  TEST_CASE("sweep validation") {
    const auto t = AlphaTable::default_table();
    CHECK_THROWS_AS(lambda_sweep({SweepCurve::WaiUpper}, {}, 1e-6, t), InvalidParameter);
    CHECK_THROWS_AS(lambda_sweep({}, {0.5}, 1e-6, t), InvalidParameter);
    CHECK_THROWS_AS(lambda_sweep({SweepCurve::WaiUpper}, {1.5}, 1e-6, t), InvalidParameter);
    CHECK(to_string(SweepCurve::RpiLower) == "rpi_lower");
  }

  TEST_CASE("grid parsing") {
    const auto g = parse_grid("0:1:0.01");
    CHECK(g.size() == 101u);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 1.0);
    CHECK(parse_grid("0.2:0.4:0.1").size() == 3u);
    CHECK(parse_grid("0.5:0.5:0.1") == std::vector<double>{0.5});
    for (const char* bad : {"", "0:1", "0:1:0", "1:0:0.1", "a:1:0.1", "0:1:0.1:2", "0:1:-0.1"}) {
      CHECK_THROWS_AS(parse_grid(bad), InvalidParameter);
    }
  }
}
