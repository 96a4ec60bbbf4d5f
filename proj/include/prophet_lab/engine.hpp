#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "prophet_lab/alpha.hpp"
#include "prophet_lab/analytic.hpp"
#include "prophet_lab/model.hpp"
#include "prophet_lab/strategies.hpp"

namespace prophet_lab {

// Worker threads for parallel kernels: PROPHET_LAB_THREADS when set to a
// positive integer, otherwise the OpenMP default.
int worker_count();

namespace instances {
Instance dirac(std::int64_t n);                               // (1, 0, ..., 0)
Instance geometric(std::int64_t n, double ratio);             // v_i = ratio^i
Instance uniform(std::int64_t n, std::uint64_t seed);         // sorted U[0,1) draws
}  // namespace instances

using PolicyFactory = std::function<std::unique_ptr<Policy>(std::int64_t n)>;

struct SimulationReport {
  std::string strategy;
  std::string instance;
  std::int64_t n = 0;
  std::uint64_t reps = 0;
  std::uint64_t seed = 0;
  double lambda = 0.5;
  double mean_phase1 = 0.0;
  double mean_phase2 = 0.0;
  double prophet_mean = 0.0;
  // (1-lambda) E[phase1]/E[max phase 1] + lambda E[phase2]/E[max phase 2],
  // with both phase-maximum expectations estimated by prophet_mean / 2
  // (they are equal under a uniform order).
  double ratio = 0.0;
  double ratio_ci_halfwidth = 0.0;  // 95%, delta method, normal approximation
  double accept_v1_prob = 0.0;
  double accept_v1_phase1_prob = 0.0;
  double accept_v1_phase2_prob = 0.0;
  double mean_phase1_stop = 0.0;

  friend bool operator==(const SimulationReport&, const SimulationReport&) = default;
};

// Parallel over fixed blocks of replications; replication r always uses the
// Philox stream (seed, r) and block partial sums are combined in block order,
// so the report is bitwise identical for any worker count.
SimulationReport monte_carlo(const PolicySpec& spec, const Instance& instance, std::uint64_t reps,
                             std::uint64_t seed, LambdaWeight lambda, const std::string& instance_label = "custom");
SimulationReport monte_carlo(const PolicyFactory& factory, const std::string& descriptor, const Instance& instance,
                             std::uint64_t reps, std::uint64_t seed, LambdaWeight lambda,
                             const std::string& instance_label = "custom");

// Serial reference: one pass in replication order with a single accumulator.
// Same replications as monte_carlo; agrees to rounding in the sums and exactly
// in every count.
SimulationReport monte_carlo_serial(const PolicyFactory& factory, const std::string& descriptor,
                                    const Instance& instance, std::uint64_t reps, std::uint64_t seed,
                                    LambdaWeight lambda, const std::string& instance_label = "custom");

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Rational reduced(std::uint64_t num, std::uint64_t den);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

struct ExactReport {
  std::string strategy;
  std::int64_t n = 0;
  std::uint64_t orders = 0;
  double lambda = 0.5;
  double mean_phase1 = 0.0;
  double mean_phase2 = 0.0;
  double prophet_mean = 0.0;
  double ratio = 0.0;
  Rational accept_v1;
  Rational accept_v1_phase1;
  Rational accept_v1_phase2;
  std::vector<Rational> phase1_stop;  // phase1_stop[t - 1] = P(T = t)

  friend bool operator==(const ExactReport&, const ExactReport&) = default;
};

inline constexpr std::int64_t kMaxExhaustiveN = 4;

// Every one of the (2n)! orders, exactly. Throws InvalidParameter for n > 4.
ExactReport exhaustive(const PolicySpec& spec, const Instance& instance, LambdaWeight lambda);
ExactReport exhaustive(const PolicyFactory& factory, const std::string& descriptor, const Instance& instance,
                       LambdaWeight lambda);

// Empirical distribution of the Phase-1 stopping time; entry t-1 is the
// frequency of T = t.
std::vector<double> phase1_stop_frequencies(const PolicySpec& spec, std::int64_t n, std::uint64_t reps,
                                            std::uint64_t seed);

struct TunedSchedule {
  ThresholdSchedule schedule;
  AlphaEstimate search_estimate;  // on the search randomness (optimistic)
  AlphaEstimate estimate;         // re-estimated on independent randomness
  std::uint64_t candidates = 0;
};

// Grid search over nondecreasing (t_1, ..., t_K), thresholds drawn from
// {max(p, k * grid_step)}, maximizing the plateau-minimum ratio on common
// random numbers. Requires K in 1..4, grid_step in [0.01, 1].
TunedSchedule tune_schedule(double p, int max_rank, double grid_step, std::int64_t n, std::uint64_t reps,
                            std::uint64_t seed);

}  // namespace prophet_lab
