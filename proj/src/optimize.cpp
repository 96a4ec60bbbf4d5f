#include "prophet_lab/optimize.hpp"

#include <omp.h>

#include <charconv>
#include <cmath>
#include <numbers>

#include "prophet_lab/analytic.hpp"
#include "prophet_lab/engine.hpp"
#include "prophet_lab/error.hpp"

namespace prophet_lab {
namespace {

const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;

double curve_value(SweepCurve curve, double x, double lambda, const AlphaTable& alpha) {
  const LambdaWeight w(lambda);
  return curve == SweepCurve::RpiLower ? rpi_limit_perf(x, alpha, w) : wai_limit_prob(x, w);
}

void check_sweep(const std::vector<SweepCurve>& curves, const std::vector<double>& grid) {
  if (grid.empty()) throw InvalidParameter("lambda grid is empty");
  if (curves.empty()) throw InvalidParameter("no curves requested");
  for (double l : grid) LambdaWeight{l};
}

void sweep_point(const std::vector<SweepCurve>& curves, double lambda, double tol, const AlphaTable& alpha,
                 SweepPoint* out) {
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const auto r = maximize_concave([&](double x) { return curve_value(curves[c], x, lambda, alpha); }, tol);
    out[c] = {lambda, curves[c], r.x_star, r.f_star};
  }
}

double parse_number(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw InvalidParameter("malformed grid, expected start:stop:step");
  }
  return v;
}

}  // namespace

OptResult maximize_concave(const std::function<double(double)>& f, double tol) {
  if (!(tol > 0.0)) throw InvalidParameter("tol must be positive");
  double a = 0.0, b = 1.0;
  double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  int it = 0;
  while (b - a >= tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
    ++it;
  }
  OptResult r{0.5 * (a + b), 0.0, tol, it};
  r.f_star = f(r.x_star);
  for (double e : {0.0, 1.0}) {
    const double fe = f(e);
    if (fe > r.f_star) {
      r.x_star = e;
      r.f_star = fe;
    }
  }
  return r;
}

std::string_view to_string(SweepCurve curve) {
  return curve == SweepCurve::RpiLower ? "rpi_lower" : "wai_upper";
}

std::vector<SweepPoint> lambda_sweep(const std::vector<SweepCurve>& curves, const std::vector<double>& grid,
                                     double tol, const AlphaTable& alpha) {
  check_sweep(curves, grid);
  if (!(tol > 0.0)) throw InvalidParameter("tol must be positive");
  std::vector<SweepPoint> out(grid.size() * curves.size());
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(grid.size()); ++i) {
    sweep_point(curves, grid[i], tol, alpha, out.data() + i * curves.size());
  }
  return out;
}

std::vector<SweepPoint> lambda_sweep_serial(const std::vector<SweepCurve>& curves,
                                            const std::vector<double>& grid, double tol, const AlphaTable& alpha) {
  check_sweep(curves, grid);
  if (!(tol > 0.0)) throw InvalidParameter("tol must be positive");
  std::vector<SweepPoint> out(grid.size() * curves.size());
  for (std::size_t i = 0; i < grid.size(); ++i) sweep_point(curves, grid[i], tol, alpha, out.data() + i * curves.size());
  return out;
}

std::vector<double> parse_grid(std::string_view spec) {
  const auto c1 = spec.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : spec.find(':', c1 + 1);
  if (c2 == std::string_view::npos || spec.find(':', c2 + 1) != std::string_view::npos) {
    throw InvalidParameter("malformed grid, expected start:stop:step");
  }
  const double start = parse_number(spec.substr(0, c1));
  const double stop = parse_number(spec.substr(c1 + 1, c2 - c1 - 1));
  const double step = parse_number(spec.substr(c2 + 1));
  if (!(step > 0.0)) throw InvalidParameter("grid step must be positive");
  if (stop < start) throw InvalidParameter("grid stop must not be below start");
  const double span = (stop - start) / step;
  if (span > 1e7) throw InvalidParameter("grid has too many points");
  const auto count = static_cast<std::int64_t>(std::floor(span + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  for (std::int64_t k = 0; k < count; ++k) {
    double v = start + static_cast<double>(k) * step;
    if (std::abs(v - stop) < 1e-12) v = stop;
    grid.push_back(v);
  }
  return grid;
}

}  // namespace prophet_lab
