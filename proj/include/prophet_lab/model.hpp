#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "prophet_lab/philox.hpp"

namespace prophet_lab {

// Item indices are 0-based throughout: item 0 is v_1, the largest value.
// Equal values are ranked by ascending index, so the strict rank order of
// items is exactly their index order.
using ItemIndex = std::uint32_t;

// The adversary's list of 2n nonincreasing, nonnegative values.
class Instance {
 public:
  // Throws InvalidParameter unless values has 2n entries, is nonincreasing
  // and nonnegative, and n >= 1.
  Instance(std::int64_t n, std::vector<double> values);

  std::int64_t n() const { return n_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double value(ItemIndex item) const { return values_[item]; }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::int64_t n_;
  std::vector<double> values_;
};

// sigma[position - 1] is the item revealed at that position.
class ArrivalOrder {
 public:
  // Throws InvalidParameter unless sigma is a permutation of 0..size-1 with
  // even, positive size.
  explicit ArrivalOrder(std::vector<ItemIndex> sigma);

  std::int64_t n() const { return static_cast<std::int64_t>(sigma_.size() / 2); }
  std::span<const ItemIndex> sigma() const { return sigma_; }
  ItemIndex item_at(std::int64_t position) const { return sigma_[position - 1]; }

  friend bool operator==(const ArrivalOrder&, const ArrivalOrder&) = default;

 private:
  std::vector<ItemIndex> sigma_;
};

struct RevealEvent {
  std::int64_t position;       // 1..2n in the arrival order
  int phase;                   // 1 or 2
  std::int64_t relative_rank;  // among every item revealed so far, 1 = best
  bool is_record;              // relative_rank == 1
};

struct ProcessOutcome {
  double phase1_value = 0.0;
  double phase2_value = 0.0;
  std::int64_t phase1_stop = 0;  // number of Phase-1 items revealed
  std::optional<std::int64_t> phase1_position;
  std::optional<std::int64_t> phase2_position;
  std::optional<ItemIndex> phase1_item;
  std::optional<ItemIndex> phase2_item;

  bool accepted_item(ItemIndex item) const {
    return phase1_item == item || phase2_item == item;
  }
};

// Online decision procedure. Sees ranks only, never values. One instance per
// replication.
class Policy {
 public:
  virtual ~Policy() = default;
  // Returns true to accept the item just revealed.
  virtual bool on_reveal(const RevealEvent& event) = 0;
};

// Order-statistics counter over item indices (Fenwick tree). Because rank
// order equals index order, the relative rank of a newly revealed item is one
// plus the number of revealed items with a smaller index.
class RankTracker {
 public:
  explicit RankTracker(std::size_t items = 0);

  void reset(std::size_t items);
  // Inserts item and returns its rank among all inserted items (1 = best).
  std::int64_t insert(ItemIndex item);

 private:
  std::vector<std::uint32_t> tree_;
};

// Uniform permutation of 2n items, deterministic in (seed, stream).
ArrivalOrder draw_arrival_order(std::int64_t n, std::uint64_t seed, std::uint64_t stream = 0);

// In-place Fisher-Yates shuffle of 0..size-1 driven by rng.
void draw_permutation(ReplicationRng& rng, std::span<ItemIndex> out);

ProcessOutcome run_two_phase(const Instance& instance, const ArrivalOrder& order, Policy& policy);

// Same as above over a raw permutation, reusing the caller's rank tracker.
ProcessOutcome run_two_phase(const Instance& instance, std::span<const ItemIndex> sigma,
                             Policy& policy, RankTracker& ranks);

// Sum of the two phase maxima under this order.
double prophet_value(const Instance& instance, const ArrivalOrder& order);
double prophet_value(const Instance& instance, std::span<const ItemIndex> sigma);

}  // namespace prophet_lab
