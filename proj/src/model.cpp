#include "prophet_lab/model.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "prophet_lab/error.hpp"

namespace prophet_lab {

Instance::Instance(std::int64_t n, std::vector<double> values) : n_(n), values_(std::move(values)) {
  if (n_ < 1) throw InvalidParameter("instance n must be positive");
  if (values_.size() != static_cast<std::size_t>(2 * n_)) {
    throw InvalidParameter("instance must have exactly 2n = " + std::to_string(2 * n_) +
                           " values, got " + std::to_string(values_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] >= 0.0)) throw InvalidParameter("instance values must be nonnegative");
    if (i > 0 && values_[i] > values_[i - 1]) {
      throw InvalidParameter("instance values must be nonincreasing (index " + std::to_string(i) + ")");
    }
  }
}

ArrivalOrder::ArrivalOrder(std::vector<ItemIndex> sigma) : sigma_(std::move(sigma)) {
  if (sigma_.empty() || sigma_.size() % 2 != 0) {
    throw InvalidParameter("arrival order must cover 2n items");
  }
  std::vector<bool> seen(sigma_.size(), false);
  for (ItemIndex item : sigma_) {
    if (item >= sigma_.size() || seen[item]) throw InvalidParameter("arrival order is not a permutation");
    seen[item] = true;
  }
}

RankTracker::RankTracker(std::size_t items) { reset(items); }

void RankTracker::reset(std::size_t items) { tree_.assign(items + 1, 0); }

std::int64_t RankTracker::insert(ItemIndex item) {
  // Count inserted items with index < item, then add item.
  std::int64_t better = 0;
  for (std::size_t i = item; i > 0; i -= i & (~i + 1)) better += tree_[i];
  for (std::size_t i = item + 1; i < tree_.size(); i += i & (~i + 1)) ++tree_[i];
  return better + 1;
}

void draw_permutation(ReplicationRng& rng, std::span<ItemIndex> out) {
  std::iota(out.begin(), out.end(), ItemIndex{0});
  for (std::size_t i = out.size(); i > 1; --i) {
    const std::uint32_t j = rng.uniform_below(static_cast<std::uint32_t>(i));
    std::swap(out[i - 1], out[j]);
  }
}

ArrivalOrder draw_arrival_order(std::int64_t n, std::uint64_t seed, std::uint64_t stream) {
  if (n < 1) throw InvalidParameter("n must be positive");
  std::vector<ItemIndex> sigma(static_cast<std::size_t>(2 * n));
  ReplicationRng rng(seed, stream);
  draw_permutation(rng, sigma);
  return ArrivalOrder(std::move(sigma));
}

ProcessOutcome run_two_phase(const Instance& instance, std::span<const ItemIndex> sigma,
                             Policy& policy, RankTracker& ranks) {
  const std::int64_t n = instance.n();
  if (sigma.size() != instance.size()) throw InvalidParameter("arrival order and instance sizes differ");
  ranks.reset(sigma.size());

  ProcessOutcome out;
  for (std::int64_t pos = 1; pos <= n; ++pos) {
    const ItemIndex item = sigma[pos - 1];
    const std::int64_t rank = ranks.insert(item);
    out.phase1_stop = pos;
    if (policy.on_reveal({pos, 1, rank, rank == 1})) {
      out.phase1_position = pos;
      out.phase1_item = item;
      out.phase1_value = instance.value(item);
      break;
    }
  }
  for (std::int64_t pos = n + 1; pos <= 2 * n; ++pos) {
    const ItemIndex item = sigma[pos - 1];
    const std::int64_t rank = ranks.insert(item);
    if (policy.on_reveal({pos, 2, rank, rank == 1})) {
      out.phase2_position = pos;
      out.phase2_item = item;
      out.phase2_value = instance.value(item);
      break;
    }
  }
  return out;
}

ProcessOutcome run_two_phase(const Instance& instance, const ArrivalOrder& order, Policy& policy) {
  RankTracker ranks;
  return run_two_phase(instance, order.sigma(), policy, ranks);
}

double prophet_value(const Instance& instance, std::span<const ItemIndex> sigma) {
  if (sigma.size() != instance.size()) throw InvalidParameter("arrival order and instance sizes differ");
  const auto half = sigma.begin() + instance.n();
  const ItemIndex best1 = *std::min_element(sigma.begin(), half);
  const ItemIndex best2 = *std::min_element(half, sigma.end());
  return instance.value(best1) + instance.value(best2);
}

double prophet_value(const Instance& instance, const ArrivalOrder& order) {
  return prophet_value(instance, order.sigma());
}

}  // namespace prophet_lab
