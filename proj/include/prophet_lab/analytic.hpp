#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "prophet_lab/alpha.hpp"
#include "prophet_lab/fraction.hpp"

namespace prophet_lab {

// Weight on Phase 2 in the convex combination (1 - lambda) * phase1 + lambda * phase2.
class LambdaWeight {
 public:
  // Throws InvalidParameter outside [0,1].
  explicit LambdaWeight(double lambda);
  double value() const { return lambda_; }

 private:
  double lambda_;
};

// Probability of catching v_1 in each phase (unconditional, so each is at
// most 1/2). The lambda-weighted ratio on the dirac instance is
// 2(1 - lambda) * phase1 + 2 * lambda * phase2; at lambda = 1/2 this is the
// plain probability of accepting v_1.
struct PhaseProbabilities {
  double phase1 = 0.0;
  double phase2 = 0.0;

  double total() const { return phase1 + phase2; }
  double weighted(LambdaWeight lambda) const {
    return 2.0 * (1.0 - lambda.value()) * phase1 + 2.0 * lambda.value() * phase2;
  }
};

// Limit of P(SEC[x] accepts the maximum): -x ln x, 0 at x = 0.
double secretary_limit_prob(double x);

// Exact P(accept the maximum) for a secretary that skips `observed` of
// `items` and then takes the first record.
double secretary_finite_prob(std::int64_t items, std::int64_t observed);

// Exact finite-n P(SOP[x] accepts v_1). With ceil(xn) = 0 the policy takes
// the first item of each phase, giving 1/n.
double sop_finite_prob(std::int64_t n, ObservationFraction x);
PhaseProbabilities sop_finite_phase_probs(std::int64_t n, ObservationFraction x);

// -(x/2) ln(x^2 / (x + 1)), 0 at x = 0.
double sop_limit_perf(double x);

// Distribution of the number T of Phase-1 items revealed by the secretary
// stage that skips m = ceil(xn) items.
struct StoppingTimePmf {
  std::int64_t n = 0;
  ObservationFraction x;
  std::vector<double> pmf;  // pmf[t - 1] = P(T = t)

  double operator()(std::int64_t t) const { return pmf[static_cast<std::size_t>(t - 1)]; }
  // Compensated sum of all entries.
  double total() const;
};

// Throws InvalidParameter when n < 1 or ceil(xn) = 0.
StoppingTimePmf stopping_time_pmf(std::int64_t n, ObservationFraction x);

// Integral of alpha(u/(1+u)) / u^2 over [x, 1] for x > 0, evaluated exactly:
// the closed-form regime u <= 1/(e-1) has antiderivative (ln u - 1/u)/e, and
// the table bound is constant between jumps above it.
double rpi_phase2_integral(double x, const AlphaTable& alpha);

// -(1-lambda) x ln x + lambda x (integral + alpha(1/2)). The x -> 0 limit is
// lambda / e.
double rpi_limit_perf(double x, const AlphaTable& alpha, LambdaWeight lambda);

// Limit lambda-weighted probability that WAI[x] catches v_1:
//   -(1-lambda) x ln x + lambda x (I1 + I2 + ln 2), c = 1/(e-1),
//   I1 = integral of (u+1)/(e u^2) over [min(x,c), c]   (closed form)
//   I2 = integral of ln(1 + 1/u)/u over [max(x,c), 1]   (adaptive Simpson)
// The x -> 0 limit is lambda / e.
double wai_limit_prob(double x, LambdaWeight lambda);

// Exact finite-n counterpart of wai_limit_prob, per phase.
PhaseProbabilities wai_finite_probs(std::int64_t n, ObservationFraction x);

// Adaptive Simpson quadrature with absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = 50);

}  // namespace prophet_lab
