#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "prophet_lab/fraction.hpp"
#include "prophet_lab/model.hpp"

namespace prophet_lab {

enum class StrategyKind { Sec, Sop, Tps, Rpi, Wai };

std::string_view to_string(StrategyKind kind);
// Accepts "sec", "sop", "tps", "rpi", "wai" (case-insensitive).
StrategyKind parse_strategy_kind(std::string_view name);

// Nondecreasing thresholds t_1 <= ... <= t_K in [0,1]. An item whose rank
// among everything seen so far is i is acceptable once the fraction of items
// revealed before it is at least t_i; ranks beyond K are never accepted.
// With N items in total the k-th is acceptable iff (k - 1) / N >= t_i, so
// t_1 = 1/e means "not before ceil(N/e) items have been observed".
class ThresholdSchedule {
 public:
  ThresholdSchedule() = default;
  explicit ThresholdSchedule(std::vector<double> thresholds);

  std::size_t size() const { return thresholds_.size(); }
  const std::vector<double>& thresholds() const { return thresholds_; }

  bool accepts(std::int64_t rank, double fraction_before) const {
    return rank >= 1 && static_cast<std::size_t>(rank) <= thresholds_.size() &&
           fraction_before >= thresholds_[rank - 1];
  }

  friend bool operator==(const ThresholdSchedule&, const ThresholdSchedule&) = default;

 private:
  std::vector<double> thresholds_;
};

// Maps a sample fraction p to the schedule used for the online part.
//
// The single-threshold family (t_1 = max(p, 1/e)) needs no data. A tabulated
// family holds one schedule per grid point and serves p from the largest grid
// point not above it.
class ScheduleFamily {
 public:
  static ScheduleFamily single_threshold();
  // Throws ConfigurationError on an empty/unsorted grid or size mismatch.
  static ScheduleFamily tabulated(std::vector<double> p_grid, std::vector<ThresholdSchedule> schedules);

  bool is_single_threshold() const { return p_grid_.empty(); }
  const std::vector<double>& p_grid() const { return p_grid_; }
  const std::vector<ThresholdSchedule>& schedules() const { return schedules_; }

  // Throws ConfigurationError if p lies below the first grid point.
  ThresholdSchedule schedule_for(double p) const;
  // Throws ConfigurationError unless every p = t/(n+t), t in 1..n, is served.
  void check_covers(std::int64_t n) const;

 private:
  std::vector<double> p_grid_;
  std::vector<ThresholdSchedule> schedules_;
};

// Everything needed to build a fresh policy for any n.
struct PolicySpec {
  StrategyKind kind = StrategyKind::Wai;
  ObservationFraction x;
  std::shared_ptr<const ScheduleFamily> schedules;  // RPI only; null = single threshold

  std::string descriptor() const;
};

std::unique_ptr<Policy> sec_policy(ObservationFraction x, std::int64_t n);
std::unique_ptr<Policy> sop_policy(ObservationFraction x, std::int64_t n);
std::unique_ptr<Policy> tps_policy(ObservationFraction x, std::int64_t n);
std::unique_ptr<Policy> rpi_policy(ObservationFraction x, std::int64_t n,
                                   std::shared_ptr<const ScheduleFamily> family);
std::unique_ptr<Policy> wai_policy(ObservationFraction x, std::int64_t n);

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, std::int64_t n);

// Phase-2 waiting point of WAI: ceil((n + t) / e).
std::int64_t wai_wait_count(std::int64_t n, std::int64_t t);

}  // namespace prophet_lab
