#include "prophet_lab/strategies.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "prophet_lab/error.hpp"

namespace prophet_lab {
namespace {

constexpr double kInvE = 1.0 / std::numbers::e;

void check_n(std::int64_t n) {
  if (n < 1) throw InvalidParameter("n must be positive");
}

// Phase 1 of SEC/TPS/RPI/WAI: skip the first m items, then take a record.
struct SecretaryStage {
  std::int64_t observe;
  std::int64_t seen = 0;

  bool offer(const RevealEvent& ev) {
    ++seen;
    return seen > observe && ev.is_record;
  }
};

// Tracks whether a new item beats the best member of a comparison set, using
// only relative ranks among all revealed items. `above` counts revealed items
// ranked strictly above the set's best member.
struct ComparisonSet {
  bool empty = true;
  std::int64_t above = 0;

  // Reveals an item of the given rank; returns whether it beats the set.
  bool reveal(std::int64_t rank, bool member) {
    const bool better = empty || rank <= above + 1;
    if (member && better) {
      above = rank - 1;
      empty = false;
    } else if (better) {
      ++above;
    }
    return better;
  }
};

class SecPolicy final : public Policy {
 public:
  SecPolicy(ObservationFraction x, std::int64_t n) : stage_{x.observed_count(n)} {}

  bool on_reveal(const RevealEvent& ev) override {
    return ev.phase == 1 && stage_.offer(ev);
  }

 private:
  SecretaryStage stage_;
};

class SopPolicy final : public Policy {
 public:
  SopPolicy(ObservationFraction x, std::int64_t n) : observe_(x.observed_count(n)) {}

  bool on_reveal(const RevealEvent& ev) override {
    ++revealed_;
    const bool observing = revealed_ <= observe_;
    const bool beats = obs_.reveal(ev.relative_rank, observing);
    if (observing) return false;
    if (ev.phase == 1) return beats;
    if (beats && !accepted2_) return accepted2_ = true;
    return false;
  }

 private:
  std::int64_t observe_;
  std::int64_t revealed_ = 0;
  ComparisonSet obs_;
  bool accepted2_ = false;
};

class TpsPolicy final : public Policy {
 public:
  TpsPolicy(ObservationFraction x, std::int64_t n) : stage_{x.observed_count(n)}, observe_(x.observed_count(n)) {}

  bool on_reveal(const RevealEvent& ev) override {
    if (ev.phase == 1) return stage_.offer(ev);
    ++seen2_;
    const bool phase2_record = phase2_.reveal(ev.relative_rank, true);
    return seen2_ > observe_ && phase2_record;
  }

 private:
  SecretaryStage stage_;
  std::int64_t observe_;
  std::int64_t seen2_ = 0;
  ComparisonSet phase2_;
};

class WaiPolicy final : public Policy {
 public:
  WaiPolicy(ObservationFraction x, std::int64_t n) : n_(n), stage_{x.observed_count(n)} {}

  bool on_reveal(const RevealEvent& ev) override {
    if (ev.phase == 1) return stage_.offer(ev);
    if (seen2_++ == 0) wait_ = wai_wait_count(n_, stage_.seen);
    return ev.is_record && stage_.seen + seen2_ > wait_;
  }

 private:
  std::int64_t n_;
  SecretaryStage stage_;
  std::int64_t seen2_ = 0;
  std::int64_t wait_ = 0;
};

class RpiPolicy final : public Policy {
 public:
  RpiPolicy(ObservationFraction x, std::int64_t n, std::shared_ptr<const ScheduleFamily> family)
      : n_(n), stage_{x.observed_count(n)}, family_(std::move(family)) {}

  bool on_reveal(const RevealEvent& ev) override {
    if (ev.phase == 1) return stage_.offer(ev);
    const std::int64_t t = stage_.seen;
    if (seen2_++ == 0) {
      const double p = static_cast<double>(t) / static_cast<double>(n_ + t);
      schedule_ = family_ ? family_->schedule_for(p) : ScheduleFamily::single_threshold().schedule_for(p);
    }
    const double fraction = static_cast<double>(t + seen2_ - 1) / static_cast<double>(n_ + t);
    return schedule_.accepts(ev.relative_rank, fraction);
  }

 private:
  std::int64_t n_;
  SecretaryStage stage_;
  std::shared_ptr<const ScheduleFamily> family_;
  std::int64_t seen2_ = 0;
  ThresholdSchedule schedule_;
};

}  // namespace

std::string_view to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::Sec: return "sec";
    case StrategyKind::Sop: return "sop";
    case StrategyKind::Tps: return "tps";
    case StrategyKind::Rpi: return "rpi";
    case StrategyKind::Wai: return "wai";
  }
  return "?";
}

StrategyKind parse_strategy_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (auto kind : {StrategyKind::Sec, StrategyKind::Sop, StrategyKind::Tps, StrategyKind::Rpi, StrategyKind::Wai}) {
    if (lower == to_string(kind)) return kind;
  }
  throw InvalidParameter("unknown strategy '" + std::string(name) + "' (expected sec|sop|tps|rpi|wai)");
}

ThresholdSchedule::ThresholdSchedule(std::vector<double> thresholds) : thresholds_(std::move(thresholds)) {
  for (std::size_t i = 0; i < thresholds_.size(); ++i) {
    if (!(thresholds_[i] >= 0.0 && thresholds_[i] <= 1.0)) {
      throw InvalidParameter("schedule thresholds must lie in [0,1]");
    }
    if (i > 0 && thresholds_[i] < thresholds_[i - 1]) {
      throw InvalidParameter("schedule thresholds must be nondecreasing");
    }
  }
}

ScheduleFamily ScheduleFamily::single_threshold() { return ScheduleFamily{}; }

ScheduleFamily ScheduleFamily::tabulated(std::vector<double> p_grid, std::vector<ThresholdSchedule> schedules) {
  if (p_grid.empty()) throw ConfigurationError("schedule family needs at least one grid point");
  if (p_grid.size() != schedules.size()) {
    throw ConfigurationError("schedule family: p_grid and schedules differ in length");
  }
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    if (!(p_grid[i] >= 0.0 && p_grid[i] <= 1.0)) throw ConfigurationError("schedule family: p_grid outside [0,1]");
    if (i > 0 && !(p_grid[i] > p_grid[i - 1])) {
      throw ConfigurationError("schedule family: p_grid must be strictly increasing");
    }
    if (schedules[i].size() == 0) throw ConfigurationError("schedule family: empty schedule");
  }
  ScheduleFamily f;
  f.p_grid_ = std::move(p_grid);
  f.schedules_ = std::move(schedules);
  return f;
}

ThresholdSchedule ScheduleFamily::schedule_for(double p) const {
  if (is_single_threshold()) return ThresholdSchedule({std::max(p, kInvE)});
  const auto it = std::upper_bound(p_grid_.begin(), p_grid_.end(), p);
  if (it == p_grid_.begin()) {
    throw ConfigurationError("no threshold schedule for p = " + std::to_string(p));
  }
  return schedules_[static_cast<std::size_t>(it - p_grid_.begin()) - 1];
}

void ScheduleFamily::check_covers(std::int64_t n) const {
  if (is_single_threshold()) return;
  const double smallest = 1.0 / static_cast<double>(n + 1);
  if (p_grid_.front() > smallest) {
    throw ConfigurationError("schedule family does not cover p = 1/(n+1) = " + std::to_string(smallest));
  }
}

std::string PolicySpec::descriptor() const {
  std::string d = std::string(to_string(kind)) + "[x=" + x.to_string();
  if (kind == StrategyKind::Rpi) {
    d += (!schedules || schedules->is_single_threshold()) ? ",schedule=single" : ",schedule=table";
  }
  return d + "]";
}

std::int64_t wai_wait_count(std::int64_t n, std::int64_t t) {
  return static_cast<std::int64_t>(std::ceil(static_cast<double>(n + t) * kInvE));
}

std::unique_ptr<Policy> sec_policy(ObservationFraction x, std::int64_t n) {
  check_n(n);
  return std::make_unique<SecPolicy>(x, n);
}

std::unique_ptr<Policy> sop_policy(ObservationFraction x, std::int64_t n) {
  check_n(n);
  return std::make_unique<SopPolicy>(x, n);
}

std::unique_ptr<Policy> tps_policy(ObservationFraction x, std::int64_t n) {
  check_n(n);
  return std::make_unique<TpsPolicy>(x, n);
}

std::unique_ptr<Policy> rpi_policy(ObservationFraction x, std::int64_t n,
                                   std::shared_ptr<const ScheduleFamily> family) {
  check_n(n);
  if (family) family->check_covers(n);
  return std::make_unique<RpiPolicy>(x, n, std::move(family));
}

std::unique_ptr<Policy> wai_policy(ObservationFraction x, std::int64_t n) {
  check_n(n);
  return std::make_unique<WaiPolicy>(x, n);
}

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, std::int64_t n) {
  switch (spec.kind) {
    case StrategyKind::Sec: return sec_policy(spec.x, n);
    case StrategyKind::Sop: return sop_policy(spec.x, n);
    case StrategyKind::Tps: return tps_policy(spec.x, n);
    case StrategyKind::Rpi: return rpi_policy(spec.x, n, spec.schedules);
    case StrategyKind::Wai: return wai_policy(spec.x, n);
  }
  throw InvalidParameter("unknown strategy kind");
}

}  // namespace prophet_lab
