#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prophet_lab/model.hpp"
#include "prophet_lab/strategies.hpp"

namespace prophet_lab {

// Known ceiling: alpha(1), the i.i.d. prophet ratio.
inline constexpr double kAlphaCeiling = 0.7452;

struct AlphaAnchor {
  double p;
  double alpha_lb;
  std::string source;

  friend bool operator==(const AlphaAnchor&, const AlphaAnchor&) = default;
};

// Lower bound for alpha(p), the optimal ratio of the random sample-driven
// prophet inequality with sample probability p.
//
//   p <= 1/e : exact closed form 1/(e(1-p))
//   p >  1/e : the largest anchor bound with p_k <= p, floored at
//              alpha(1/e) = 1/(e-1)
//
// Left-constant interpolation between anchors is a valid lower bound because
// alpha is nondecreasing.
class AlphaTable {
 public:
  // Throws ConfigurationError unless anchors are strictly increasing in p,
  // nondecreasing in alpha_lb, with p in [0,1] and alpha_lb in (0, 0.7452].
  explicit AlphaTable(std::vector<AlphaAnchor> anchors);

  // Anchors (1/e, 1/(e-1)) and (1/2, 0.671).
  static AlphaTable default_table();

  const std::vector<AlphaAnchor>& anchors() const { return anchors_; }

  // Throws ConfigurationError for p > 1/e when the table is empty, and
  // InvalidParameter for p outside [0,1].
  double operator()(double p) const;

  // Points u = p_k / (1 - p_k) in (lo, hi) where alpha(u/(1+u)) jumps.
  std::vector<double> jump_points_u(double lo, double hi) const;

  friend bool operator==(const AlphaTable&, const AlphaTable&) = default;

 private:
  std::vector<AlphaAnchor> anchors_;
};

// 1/(e(1-p)), exact for p <= 1/e.
double alpha_closed_form(double p);

double alpha_lower(double p, const AlphaTable& table);

struct AlphaEstimate {
  double value = 0.0;         // min over plateau instances of the ratio
  double ci_halfwidth = 0.0;  // 95% normal approximation at the minimizing instance
  std::int64_t worst_plateau = 0;  // k of the minimizing instance (1 = dirac)
  std::uint64_t reps = 0;
};

// Realized runs of the sample-driven process on n items: every item arrives
// at an independent uniform time in [0,1); those arriving before p are
// samples. Each online item is ranked against everything arrived so far. The
// runs are stored compactly so many schedules can be scored on the same
// randomness.
//
// Scoring a value-oblivious schedule only needs the plateau instances
// v = (1,...,1,0,...,0) with k ones: every nonincreasing instance is a
// nonnegative combination of them, so the worst ratio over all instances is
// attained on one of them. k = 1 is the dirac instance.
class SampleDrivenTrials {
 public:
  SampleDrivenTrials(double p, std::size_t max_rank, std::int64_t n, std::uint64_t reps, std::uint64_t seed);

  double p() const { return p_; }
  std::size_t max_rank() const { return max_rank_; }
  std::uint64_t reps() const { return reps_; }

  // Throws InvalidParameter if the schedule uses ranks beyond max_rank.
  AlphaEstimate evaluate(const ThresholdSchedule& schedule) const;

 private:
  struct Candidate {
    double time;
    std::uint32_t rank;
    ItemIndex item;
  };

  double p_;
  std::size_t max_rank_;
  std::int64_t n_;
  std::uint64_t reps_;
  std::vector<Candidate> candidates_;
  std::vector<std::uint64_t> offsets_;  // reps + 1 entries into candidates_
  std::vector<ItemIndex> best_online_;  // n when every item was a sample
};

// Empirical surrogate for alpha(p) under a given schedule. The result is a
// lower-bound estimate, not a certificate. Requires p in [0,1), n >= 10,
// reps >= 1.
AlphaEstimate estimate_alpha_by_simulation(double p, const ThresholdSchedule& schedule, std::int64_t n,
                                           std::uint64_t reps, std::uint64_t seed);

}  // namespace prophet_lab
