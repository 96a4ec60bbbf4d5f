#include "prophet_lab/alpha.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "prophet_lab/error.hpp"
#include "prophet_lab/philox.hpp"

namespace prophet_lab {
namespace {

constexpr double kInvE = 1.0 / std::numbers::e;
constexpr std::uint64_t kTrialBlock = 512;

}  // namespace

AlphaTable::AlphaTable(std::vector<AlphaAnchor> anchors) : anchors_(std::move(anchors)) {
  for (std::size_t i = 0; i < anchors_.size(); ++i) {
    const auto& a = anchors_[i];
    if (!(a.p >= 0.0 && a.p <= 1.0)) throw ConfigurationError("alpha anchor p outside [0,1]");
    if (!(a.alpha_lb > 0.0 && a.alpha_lb <= kAlphaCeiling)) {
      throw ConfigurationError("alpha anchor bound outside (0, 0.7452]");
    }
    if (i > 0) {
      if (!(a.p > anchors_[i - 1].p)) throw ConfigurationError("alpha anchors must be strictly increasing in p");
      if (a.alpha_lb < anchors_[i - 1].alpha_lb) {
        throw ConfigurationError("alpha anchor bounds must be nondecreasing");
      }
    }
  }
}

AlphaTable AlphaTable::default_table() {
  return AlphaTable({
      {kInvE, 1.0 / (std::numbers::e - 1.0), "closed form 1/(e(1-p)) at p = 1/e"},
      {0.5, 0.671, "alpha(1/2) ~ 0.671, sample-driven prophet inequality with half the items sampled"},
  });
}

double alpha_closed_form(double p) { return 1.0 / (std::numbers::e * (1.0 - p)); }

double AlphaTable::operator()(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter("p must lie in [0,1]");
  if (p <= kInvE) return alpha_closed_form(p);
  if (anchors_.empty()) throw ConfigurationError("alpha table is empty; no bound for p > 1/e");
  double bound = alpha_closed_form(kInvE);
  for (const auto& a : anchors_) {
    if (a.p > p) break;
    bound = std::max(bound, a.alpha_lb);
  }
  return bound;
}

std::vector<double> AlphaTable::jump_points_u(double lo, double hi) const {
  std::vector<double> out;
  for (const auto& a : anchors_) {
    if (a.p <= kInvE || a.p >= 1.0) continue;
    const double u = a.p / (1.0 - a.p);
    if (u > lo && u < hi) out.push_back(u);
  }
  return out;
}

double alpha_lower(double p, const AlphaTable& table) { return table(p); }

SampleDrivenTrials::SampleDrivenTrials(double p, std::size_t max_rank, std::int64_t n, std::uint64_t reps,
                                       std::uint64_t seed)
    : p_(p), max_rank_(max_rank), n_(n), reps_(reps) {
  if (!(p >= 0.0 && p < 1.0)) throw InvalidParameter("p must lie in [0,1)");
  if (n < 10) throw InvalidParameter("sample-driven simulation needs n >= 10");
  if (reps == 0) throw InvalidParameter("reps must be positive");
  if (max_rank == 0) throw InvalidParameter("max_rank must be positive");

  const std::uint64_t blocks = (reps + kTrialBlock - 1) / kTrialBlock;
  std::vector<std::vector<Candidate>> block_candidates(blocks);
  std::vector<std::vector<std::uint64_t>> block_counts(blocks);
  best_online_.assign(reps, static_cast<ItemIndex>(n));

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    std::vector<ItemIndex> order(static_cast<std::size_t>(n));
    std::vector<double> times(static_cast<std::size_t>(n) + 1);
    std::vector<ItemIndex> top;
    top.reserve(max_rank + 1);
    auto& cands = block_candidates[b];
    auto& counts = block_counts[b];
    const std::uint64_t first = static_cast<std::uint64_t>(b) * kTrialBlock;
    const std::uint64_t last = std::min(reps, first + kTrialBlock);
    for (std::uint64_t r = first; r < last; ++r) {
      ReplicationRng rng(seed, r);
      draw_permutation(rng, order);
      // Sorted uniform arrival times from normalized exponential spacings.
      double total = 0.0;
      for (auto& t : times) {
        total -= std::log1p(-rng.uniform01());
        t = total;
      }
      top.clear();
      std::uint64_t count = 0;
      ItemIndex best = static_cast<ItemIndex>(n);
      for (std::int64_t i = 0; i < n; ++i) {
        const ItemIndex item = order[i];
        const double time = times[i] / total;
        const auto pos = static_cast<std::size_t>(std::lower_bound(top.begin(), top.end(), item) - top.begin());
        if (pos < max_rank) {
          top.insert(top.begin() + static_cast<std::ptrdiff_t>(pos), item);
          if (top.size() > max_rank) top.pop_back();
        }
        if (time < p) continue;
        best = std::min(best, item);
        if (pos < max_rank) {
          cands.push_back({time, static_cast<std::uint32_t>(pos + 1), item});
          ++count;
        }
      }
      counts.push_back(count);
      best_online_[r] = best;
    }
  }

  offsets_.reserve(reps + 1);
  offsets_.push_back(0);
  for (std::uint64_t b = 0; b < blocks; ++b) {
    candidates_.insert(candidates_.end(), block_candidates[b].begin(), block_candidates[b].end());
    for (auto c : block_counts[b]) offsets_.push_back(offsets_.back() + c);
  }
}

AlphaEstimate SampleDrivenTrials::evaluate(const ThresholdSchedule& schedule) const {
  if (schedule.size() == 0 || schedule.size() > max_rank_) {
    throw InvalidParameter("schedule length must be in 1..max_rank");
  }
  const auto n = static_cast<std::size_t>(n_);
  std::vector<std::uint64_t> accepted(n + 1, 0);
  std::vector<std::uint64_t> best(n + 1, 0);
  for (std::uint64_t r = 0; r < reps_; ++r) {
    ++best[best_online_[r]];
    for (std::uint64_t c = offsets_[r]; c < offsets_[r + 1]; ++c) {
      const auto& cand = candidates_[c];
      if (schedule.accepts(cand.rank, cand.time)) {
        ++accepted[cand.item];
        break;
      }
    }
  }

  AlphaEstimate est;
  est.reps = reps_;
  est.value = std::numeric_limits<double>::infinity();
  std::uint64_t a = 0, b = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    a += accepted[k - 1];
    b += best[k - 1];
    if (b == 0) continue;
    const double ratio = static_cast<double>(a) / static_cast<double>(b);
    if (ratio < est.value) {
      est.value = ratio;
      est.worst_plateau = static_cast<std::int64_t>(k);
      // Delta method for A/B with A <= B indicator pairs.
      const double ma = static_cast<double>(a) / static_cast<double>(reps_);
      const double mb = static_cast<double>(b) / static_cast<double>(reps_);
      const double var = std::max(0.0, ma * (1.0 - 2.0 * ratio) + ratio * ratio * mb);
      est.ci_halfwidth = 1.96 * std::sqrt(var / static_cast<double>(reps_)) / mb;
    }
  }
  if (!std::isfinite(est.value)) throw InvalidParameter("no online items were ever observed");
  return est;
}

AlphaEstimate estimate_alpha_by_simulation(double p, const ThresholdSchedule& schedule, std::int64_t n,
                                           std::uint64_t reps, std::uint64_t seed) {
  if (schedule.size() == 0) throw InvalidParameter("schedule must have at least one threshold");
  return SampleDrivenTrials(p, schedule.size(), n, reps, seed).evaluate(schedule);
}

}  // namespace prophet_lab
