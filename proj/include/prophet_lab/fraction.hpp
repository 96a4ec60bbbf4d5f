#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace prophet_lab {

// Observation fraction x in [0,1], stored exactly as an integer number of
// billionths so that ceil(x * n) is an exact integer computation.
class ObservationFraction {
 public:
  static constexpr std::int64_t kScale = 1'000'000'000;

  constexpr ObservationFraction() = default;

  // Rounds to the nearest billionth. Throws InvalidParameter outside [0,1].
  static ObservationFraction from_double(double x);
  // Accepts a plain decimal literal ("0.463", "1", ".5"), rounded half-up to
  // the nearest billionth. Throws InvalidParameter otherwise.
  static ObservationFraction parse(std::string_view text);
  static ObservationFraction from_billionths(std::int64_t b);

  constexpr std::int64_t billionths() const { return billionths_; }
  double value() const { return static_cast<double>(billionths_) / kScale; }

  // ceil(x * n), exact.
  std::int64_t observed_count(std::int64_t n) const;

  std::string to_string() const;

  friend constexpr bool operator==(ObservationFraction, ObservationFraction) = default;

 private:
  std::int64_t billionths_ = 0;
};

}  // namespace prophet_lab
