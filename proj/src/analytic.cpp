#include "prophet_lab/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "prophet_lab/error.hpp"
#include "prophet_lab/strategies.hpp"

namespace prophet_lab {
namespace {

constexpr double kE = std::numbers::e;
constexpr double kInvE = 1.0 / std::numbers::e;
const double kC = 1.0 / (std::numbers::e - 1.0);  // u where u/(1+u) = 1/e
constexpr double kQuadTol = 1e-12;

void check_x(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw InvalidParameter("x must lie in [0,1]");
}

void check_n(std::int64_t n) {
  if (n < 1) throw InvalidParameter("n must be positive");
}

double closed_form_antiderivative(double u) { return (std::log(u) - 1.0 / u) / kE; }

double simpson(const std::function<double(double)>& f, double a, double fa, double b, double fb, double m,
               double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

// sum_{k=lo}^{hi} 1/k
double harmonic_range(std::int64_t lo, std::int64_t hi) {
  long double s = 0.0L;
  for (std::int64_t k = hi; k >= lo; --k) s += 1.0L / static_cast<long double>(k);
  return static_cast<double>(s);
}

}  // namespace

LambdaWeight::LambdaWeight(double lambda) : lambda_(lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvalidParameter("lambda must lie in [0,1]");
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol, int max_depth) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

double secretary_limit_prob(double x) {
  check_x(x);
  return x == 0.0 ? 0.0 : -x * std::log(x);
}

double secretary_finite_prob(std::int64_t items, std::int64_t observed) {
  if (items < 1 || observed < 0) throw InvalidParameter("secretary needs items >= 1 and observed >= 0");
  if (observed >= items) return 0.0;
  if (observed == 0) return 1.0 / static_cast<double>(items);
  // v_1 at position i > m is taken iff the best of the first i-1 lies in the first m.
  return static_cast<double>(observed) / static_cast<double>(items) * harmonic_range(observed, items - 1);
}

PhaseProbabilities sop_finite_phase_probs(std::int64_t n, ObservationFraction x) {
  check_n(n);
  const std::int64_t m = x.observed_count(n);
  const double half_over_n = 0.5 / static_cast<double>(n);
  if (m == 0) return {half_over_n, half_over_n};
  PhaseProbabilities p;
  // Phase 1: v_1 at position i in (m, n] is taken iff the best of the first
  // i-1 items sits in the observation stage.
  if (m < n) p.phase1 = half_over_n * static_cast<double>(m) * harmonic_range(m, n - 1);
  // Phase 2: v_1 at n+i is taken iff no earlier Phase-2 item beat the
  // observation stage.
  p.phase2 = half_over_n * static_cast<double>(m) * harmonic_range(m, m + n - 1);
  return p;
}

double sop_finite_prob(std::int64_t n, ObservationFraction x) { return sop_finite_phase_probs(n, x).total(); }

double sop_limit_perf(double x) {
  check_x(x);
  if (x == 0.0) return 0.0;
  return -0.5 * x * std::log(x * x / (x + 1.0));
}

double StoppingTimePmf::total() const {
  double sum = 0.0, comp = 0.0;
  for (double v : pmf) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return sum + comp;
}

StoppingTimePmf stopping_time_pmf(std::int64_t n, ObservationFraction x) {
  check_n(n);
  const std::int64_t m = x.observed_count(n);
  if (m == 0) throw InvalidParameter("stopping-time pmf needs ceil(xn) >= 1");
  StoppingTimePmf out{n, x, std::vector<double>(static_cast<std::size_t>(n), 0.0)};
  const auto md = static_cast<double>(m);
  for (std::int64_t t = m + 1; t <= n; ++t) {
    out.pmf[static_cast<std::size_t>(t - 1)] = md / (static_cast<double>(t) * static_cast<double>(t - 1));
  }
  out.pmf[static_cast<std::size_t>(n - 1)] += md / static_cast<double>(n);
  return out;
}

double rpi_phase2_integral(double x, const AlphaTable& alpha) {
  if (!(x > 0.0 && x <= 1.0)) throw InvalidParameter("integral needs x in (0,1]");
  double total = 0.0;
  if (x < kC) total += closed_form_antiderivative(kC) - closed_form_antiderivative(x);
  const double lo = std::max(x, kC);
  if (lo >= 1.0) return total;
  std::vector<double> cuts{lo};
  for (double u : alpha.jump_points_u(lo, 1.0)) cuts.push_back(u);
  cuts.push_back(1.0);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    const double mid = 0.5 * (a + b);
    const double level = alpha(mid / (1.0 + mid));
    total += level * (1.0 / a - 1.0 / b);
  }
  return total;
}

double rpi_limit_perf(double x, const AlphaTable& alpha, LambdaWeight lambda) {
  check_x(x);
  const double l = lambda.value();
  if (x == 0.0) return l * kInvE;
  const double phase1 = -x * std::log(x);
  const double phase2 = x * (rpi_phase2_integral(x, alpha) + alpha(0.5));
  return (1.0 - l) * phase1 + l * phase2;
}

double wai_limit_prob(double x, LambdaWeight lambda) {
  check_x(x);
  const double l = lambda.value();
  if (x == 0.0) return l * kInvE;
  const double first = x < kC ? closed_form_antiderivative(kC) - closed_form_antiderivative(x) : 0.0;
  const double second = adaptive_simpson([](double u) { return std::log1p(1.0 / u) / u; }, std::max(x, kC), 1.0,
                                         kQuadTol);
  const double phase1 = -x * std::log(x);
  const double phase2 = x * (first + second + std::numbers::ln2);
  return (1.0 - l) * phase1 + l * phase2;
}

PhaseProbabilities wai_finite_probs(std::int64_t n, ObservationFraction x) {
  check_n(n);
  const std::int64_t m = x.observed_count(n);
  PhaseProbabilities p;
  p.phase1 = 0.5 * secretary_finite_prob(n, m);

  // Given T = t Phase-1 items revealed, the n + t items seen by the end are
  // in uniform order and v_1 is among them with probability (n + t) / 2n;
  // Phase 2 then behaves as a secretary on n + t items that skips
  // max(t, ceil((n + t)/e)).
  auto phase2_given = [n](std::int64_t t) {
    const std::int64_t skip = std::max(t, wai_wait_count(n, t));
    return static_cast<double>(n + t) / (2.0 * static_cast<double>(n)) * secretary_finite_prob(n + t, skip);
  };
  if (m == 0) {
    p.phase2 = phase2_given(1);  // the first item is a record, so T = 1
    return p;
  }
  const auto pmf = stopping_time_pmf(n, x);
  long double acc = 0.0L;
  for (std::int64_t t = m + 1; t <= n; ++t) acc += static_cast<long double>(pmf(t) * phase2_given(t));
  if (m == n) acc += static_cast<long double>(pmf(n) * phase2_given(n));
  p.phase2 = static_cast<double>(acc);
  return p;
}

}  // namespace prophet_lab
