#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "prophet_lab/alpha.hpp"

namespace prophet_lab {

struct OptResult {
  double x_star = 0.0;
  double f_star = 0.0;
  double tolerance = 0.0;
  int iterations = 0;

  friend bool operator==(const OptResult&, const OptResult&) = default;
};

// Golden-section search on [0,1] until the bracket is narrower than tol,
// returning its midpoint. The endpoints 0 and 1 are also evaluated and win
// if strictly better, so boundary maxima are found exactly. Concavity is the
// caller's responsibility. Throws InvalidParameter for tol <= 0.
OptResult maximize_concave(const std::function<double(double)>& f, double tol = 1e-6);

enum class SweepCurve { RpiLower, WaiUpper };

std::string_view to_string(SweepCurve curve);  // "rpi_lower" / "wai_upper"

struct SweepPoint {
  double lambda = 0.0;
  SweepCurve curve = SweepCurve::RpiLower;
  double x_star = 0.0;
  double value = 0.0;

  friend bool operator==(const SweepPoint&, const SweepPoint&) = default;
};

// For each lambda (in grid order), one row per requested curve (in the order
// given). Parallel over grid points. Throws InvalidParameter for an empty
// grid, an empty curve list or lambda outside [0,1].
std::vector<SweepPoint> lambda_sweep(const std::vector<SweepCurve>& curves, const std::vector<double>& grid,
                                     double tol, const AlphaTable& alpha);
std::vector<SweepPoint> lambda_sweep_serial(const std::vector<SweepCurve>& curves,
                                            const std::vector<double>& grid, double tol, const AlphaTable& alpha);

// "start:stop:step", inclusive of stop up to rounding; points are computed as
// start + k * step. Throws InvalidParameter on malformed or empty grids.
std::vector<double> parse_grid(std::string_view spec);

}  // namespace prophet_lab
