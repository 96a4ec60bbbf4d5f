#include "prophet_lab/engine.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numeric>

#include "prophet_lab/error.hpp"

namespace prophet_lab {
namespace {

constexpr std::uint64_t kBlock = 1024;
constexpr std::uint64_t kMaxTuneCandidates = 1'000'000;

// Raw sums over replications. a1, a2: accepted values; p: prophet value.
struct Moments {
  std::uint64_t count = 0;
  double s1 = 0, s2 = 0, sp = 0;
  double s11 = 0, s22 = 0, spp = 0, s12 = 0, s1p = 0, s2p = 0;
  std::uint64_t v1_phase1 = 0, v1_phase2 = 0;
  std::uint64_t stop_sum = 0;

  void add(const ProcessOutcome& o, double prophet) {
    const double a1 = o.phase1_value, a2 = o.phase2_value;
    ++count;
    s1 += a1;
    s2 += a2;
    sp += prophet;
    s11 += a1 * a1;
    s22 += a2 * a2;
    spp += prophet * prophet;
    s12 += a1 * a2;
    s1p += a1 * prophet;
    s2p += a2 * prophet;
    v1_phase1 += o.phase1_item == ItemIndex{0};
    v1_phase2 += o.phase2_item == ItemIndex{0};
    stop_sum += static_cast<std::uint64_t>(o.phase1_stop);
  }

  void merge(const Moments& m) {
    count += m.count;
    s1 += m.s1;
    s2 += m.s2;
    sp += m.sp;
    s11 += m.s11;
    s22 += m.s22;
    spp += m.spp;
    s12 += m.s12;
    s1p += m.s1p;
    s2p += m.s2p;
    v1_phase1 += m.v1_phase1;
    v1_phase2 += m.v1_phase2;
    stop_sum += m.stop_sum;
  }
};

void check_run(const Instance&, std::uint64_t reps) {
  if (reps == 0) throw InvalidParameter("reps must be positive");
}

void simulate_range(const PolicyFactory& factory, const Instance& instance, std::uint64_t first,
                    std::uint64_t last, std::uint64_t seed, Moments& acc) {
  std::vector<ItemIndex> sigma(instance.size());
  RankTracker ranks(instance.size());
  for (std::uint64_t r = first; r < last; ++r) {
    ReplicationRng rng(seed, r);
    draw_permutation(rng, sigma);
    auto policy = factory(instance.n());
    const ProcessOutcome outcome = run_two_phase(instance, sigma, *policy, ranks);
    acc.add(outcome, prophet_value(instance, sigma));
  }
}

SimulationReport finish(const Moments& m, const std::string& descriptor, const std::string& label,
                        const Instance& instance, std::uint64_t seed, LambdaWeight lambda) {
  const double N = static_cast<double>(m.count);
  const double l = lambda.value();
  const double w1 = 2.0 * (1.0 - l), w2 = 2.0 * l;

  SimulationReport r;
  r.strategy = descriptor;
  r.instance = label;
  r.n = instance.n();
  r.reps = m.count;
  r.seed = seed;
  r.lambda = l;
  r.mean_phase1 = m.s1 / N;
  r.mean_phase2 = m.s2 / N;
  r.prophet_mean = m.sp / N;
  r.accept_v1_phase1_prob = static_cast<double>(m.v1_phase1) / N;
  r.accept_v1_phase2_prob = static_cast<double>(m.v1_phase2) / N;
  r.accept_v1_prob = static_cast<double>(m.v1_phase1 + m.v1_phase2) / N;
  r.mean_phase1_stop = static_cast<double>(m.stop_sum) / N;
  if (m.sp > 0.0) {
    const double R = (w1 * m.s1 + w2 * m.s2) / m.sp;
    r.ratio = R;
    // Linearized residual d = w1 a1 + w2 a2 - R p has mean zero.
    const double ed2 = (w1 * w1 * m.s11 + w2 * w2 * m.s22 + R * R * m.spp + 2.0 * w1 * w2 * m.s12 -
                        2.0 * w1 * R * m.s1p - 2.0 * w2 * R * m.s2p) /
                       N;
    r.ratio_ci_halfwidth = 1.96 * std::sqrt(std::max(0.0, ed2) / N) / r.prophet_mean;
  }
  return r;
}

PolicyFactory factory_for(const PolicySpec& spec) {
  return [spec](std::int64_t n) { return make_policy(spec, n); };
}

}  // namespace

int worker_count() {
  if (const char* env = std::getenv("PROPHET_LAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(std::min(v, 1024L));
  }
  return omp_get_max_threads();
}

namespace instances {

Instance dirac(std::int64_t n) {
  if (n < 1) throw InvalidParameter("n must be positive");
  std::vector<double> v(static_cast<std::size_t>(2 * n), 0.0);
  v[0] = 1.0;
  return Instance(n, std::move(v));
}

Instance geometric(std::int64_t n, double ratio) {
  if (n < 1) throw InvalidParameter("n must be positive");
  if (!(ratio > 0.0 && ratio <= 1.0)) throw InvalidParameter("geometric ratio must lie in (0,1]");
  std::vector<double> v(static_cast<std::size_t>(2 * n));
  double x = ratio;
  for (auto& e : v) {
    e = x;
    x *= ratio;
  }
  return Instance(n, std::move(v));
}

Instance uniform(std::int64_t n, std::uint64_t seed) {
  if (n < 1) throw InvalidParameter("n must be positive");
  std::vector<double> v(static_cast<std::size_t>(2 * n));
  // Stream id far from replication ids so instance draws never alias them.
  ReplicationRng rng(seed, ~std::uint64_t{0});
  for (auto& e : v) e = rng.uniform01();
  std::sort(v.begin(), v.end(), std::greater<>());
  return Instance(n, std::move(v));
}

}  // namespace instances

SimulationReport monte_carlo(const PolicyFactory& factory, const std::string& descriptor, const Instance& instance,
                             std::uint64_t reps, std::uint64_t seed, LambdaWeight lambda,
                             const std::string& instance_label) {
  check_run(instance, reps);
  factory(instance.n());  // surface construction errors before going parallel
  const std::uint64_t blocks = (reps + kBlock - 1) / kBlock;
  std::vector<Moments> partial(blocks);

#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    const std::uint64_t first = static_cast<std::uint64_t>(b) * kBlock;
    simulate_range(factory, instance, first, std::min(reps, first + kBlock), seed, partial[b]);
  }

  Moments total;
  for (const auto& m : partial) total.merge(m);
  return finish(total, descriptor, instance_label, instance, seed, lambda);
}

SimulationReport monte_carlo(const PolicySpec& spec, const Instance& instance, std::uint64_t reps,
                             std::uint64_t seed, LambdaWeight lambda, const std::string& instance_label) {
  return monte_carlo(factory_for(spec), spec.descriptor(), instance, reps, seed, lambda, instance_label);
}

SimulationReport monte_carlo_serial(const PolicyFactory& factory, const std::string& descriptor,
                                    const Instance& instance, std::uint64_t reps, std::uint64_t seed,
                                    LambdaWeight lambda, const std::string& instance_label) {
  check_run(instance, reps);
  Moments total;
  simulate_range(factory, instance, 0, reps, seed, total);
  return finish(total, descriptor, instance_label, instance, seed, lambda);
}

Rational Rational::reduced(std::uint64_t num, std::uint64_t den) {
  const std::uint64_t g = std::gcd(num, den);
  return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

std::string Rational::to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

ExactReport exhaustive(const PolicyFactory& factory, const std::string& descriptor, const Instance& instance,
                       LambdaWeight lambda) {
  const std::int64_t n = instance.n();
  if (n > kMaxExhaustiveN) {
    throw InvalidParameter("exhaustive enumeration is limited to n <= 4 ((2n)! orders)");
  }
  std::vector<ItemIndex> sigma(instance.size());
  std::iota(sigma.begin(), sigma.end(), ItemIndex{0});
  RankTracker ranks(instance.size());

  std::uint64_t orders = 0, v1_p1 = 0, v1_p2 = 0;
  long double s1 = 0, s2 = 0, sp = 0;
  std::vector<std::uint64_t> stops(static_cast<std::size_t>(n), 0);
  do {
    auto policy = factory(n);
    const ProcessOutcome o = run_two_phase(instance, sigma, *policy, ranks);
    ++orders;
    s1 += o.phase1_value;
    s2 += o.phase2_value;
    sp += prophet_value(instance, sigma);
    v1_p1 += o.phase1_item == ItemIndex{0};
    v1_p2 += o.phase2_item == ItemIndex{0};
    ++stops[static_cast<std::size_t>(o.phase1_stop - 1)];
  } while (std::next_permutation(sigma.begin(), sigma.end()));

  ExactReport r;
  r.strategy = descriptor;
  r.n = n;
  r.orders = orders;
  r.lambda = lambda.value();
  const long double N = static_cast<long double>(orders);
  r.mean_phase1 = static_cast<double>(s1 / N);
  r.mean_phase2 = static_cast<double>(s2 / N);
  r.prophet_mean = static_cast<double>(sp / N);
  const long double l = lambda.value();
  if (sp > 0) r.ratio = static_cast<double>((2 * (1 - l) * s1 + 2 * l * s2) / sp);
  r.accept_v1 = Rational::reduced(v1_p1 + v1_p2, orders);
  r.accept_v1_phase1 = Rational::reduced(v1_p1, orders);
  r.accept_v1_phase2 = Rational::reduced(v1_p2, orders);
  for (auto c : stops) r.phase1_stop.push_back(Rational::reduced(c, orders));
  return r;
}

ExactReport exhaustive(const PolicySpec& spec, const Instance& instance, LambdaWeight lambda) {
  return exhaustive(factory_for(spec), spec.descriptor(), instance, lambda);
}

std::vector<double> phase1_stop_frequencies(const PolicySpec& spec, std::int64_t n, std::uint64_t reps,
                                            std::uint64_t seed) {
  if (reps == 0) throw InvalidParameter("reps must be positive");
  const Instance instance = instances::dirac(n);
  make_policy(spec, n);
  const std::uint64_t blocks = (reps + kBlock - 1) / kBlock;
  std::vector<std::vector<std::uint64_t>> partial(blocks, std::vector<std::uint64_t>(static_cast<std::size_t>(n), 0));

#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    std::vector<ItemIndex> sigma(instance.size());
    RankTracker ranks(instance.size());
    const std::uint64_t first = static_cast<std::uint64_t>(b) * kBlock;
    const std::uint64_t last = std::min(reps, first + kBlock);
    for (std::uint64_t r = first; r < last; ++r) {
      ReplicationRng rng(seed, r);
      draw_permutation(rng, sigma);
      auto policy = make_policy(spec, n);
      const auto o = run_two_phase(instance, sigma, *policy, ranks);
      ++partial[b][static_cast<std::size_t>(o.phase1_stop - 1)];
    }
  }

  std::vector<double> freq(static_cast<std::size_t>(n), 0.0);
  for (const auto& block : partial) {
    for (std::size_t t = 0; t < block.size(); ++t) freq[t] += static_cast<double>(block[t]);
  }
  for (auto& f : freq) f /= static_cast<double>(reps);
  return freq;
}

TunedSchedule tune_schedule(double p, int max_rank, double grid_step, std::int64_t n, std::uint64_t reps,
                            std::uint64_t seed) {
  if (max_rank < 1 || max_rank > 4) throw InvalidParameter("K must lie in 1..4");
  if (!(grid_step >= 0.01 && grid_step <= 1.0)) throw InvalidParameter("grid_step must lie in [0.01, 1]");
  if (!(p >= 0.0 && p < 1.0)) throw InvalidParameter("p must lie in [0,1)");

  std::vector<double> grid;
  const auto steps = static_cast<std::int64_t>(std::floor(1.0 / grid_step + 1e-9));
  for (std::int64_t k = 0; k <= steps; ++k) {
    const double t = std::max(p, std::min(1.0, static_cast<double>(k) * grid_step));
    if (grid.empty() || t > grid.back()) grid.push_back(t);
  }

  // Nondecreasing index tuples over the grid.
  std::vector<std::vector<double>> tuples;
  std::vector<std::size_t> idx(static_cast<std::size_t>(max_rank), 0);
  std::function<void(std::size_t, std::size_t)> build = [&](std::size_t depth, std::size_t from) {
    if (tuples.size() > kMaxTuneCandidates) return;
    if (depth == idx.size()) {
      std::vector<double> t;
      for (auto i : idx) t.push_back(grid[i]);
      tuples.push_back(std::move(t));
      return;
    }
    for (std::size_t i = from; i < grid.size(); ++i) {
      idx[depth] = i;
      build(depth + 1, i);
    }
  };
  build(0, 0);
  if (tuples.empty()) throw InvalidParameter("threshold grid is empty");
  if (tuples.size() > kMaxTuneCandidates) throw InvalidParameter("threshold grid too fine for K; use a coarser step");

  const SampleDrivenTrials search(p, static_cast<std::size_t>(max_rank), n, reps, seed);
  std::vector<AlphaEstimate> scores(tuples.size());
#pragma omp parallel for schedule(dynamic, 16) num_threads(worker_count())
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(tuples.size()); ++i) {
    scores[i] = search.evaluate(ThresholdSchedule(tuples[i]));
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i].value > scores[best].value) best = i;
  }

  TunedSchedule out;
  out.schedule = ThresholdSchedule(tuples[best]);
  out.search_estimate = scores[best];
  out.candidates = tuples.size();
  const SampleDrivenTrials fresh(p, static_cast<std::size_t>(max_rank), n, reps, seed ^ 0x9E3779B97F4A7C15ull);
  out.estimate = fresh.evaluate(out.schedule);
  return out;
}

}  // namespace prophet_lab
