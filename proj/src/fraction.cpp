#include "prophet_lab/fraction.hpp"

#include <cctype>
#include <cmath>

#include "prophet_lab/error.hpp"

namespace prophet_lab {

ObservationFraction ObservationFraction::from_billionths(std::int64_t b) {
  if (b < 0 || b > kScale) throw InvalidParameter("x must lie in [0,1]");
  ObservationFraction f;
  f.billionths_ = b;
  return f;
}

ObservationFraction ObservationFraction::from_double(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw InvalidParameter("x must lie in [0,1]");
  return from_billionths(std::llround(x * static_cast<double>(kScale)));
}

ObservationFraction ObservationFraction::parse(std::string_view text) {
  std::int64_t whole = 0;
  std::int64_t frac = 0;
  int frac_digits = 0;
  bool any_digit = false;
  bool seen_point = false;
  bool round_up = false;
  for (char c : text) {
    if (c == '.') {
      if (seen_point) throw InvalidParameter("malformed x: '" + std::string(text) + "'");
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      any_digit = true;
      if (seen_point) {
        // Digits past the ninth only decide rounding.
        if (++frac_digits > 9) {
          if (frac_digits == 10) round_up = c >= '5';
          continue;
        }
        frac = frac * 10 + (c - '0');
      } else {
        whole = whole * 10 + (c - '0');
        if (whole > 1) throw InvalidParameter("x must lie in [0,1]");
      }
    } else if (c == '-') {
      throw InvalidParameter("x must lie in [0,1]");
    } else {
      throw InvalidParameter("malformed x: '" + std::string(text) + "'");
    }
  }
  if (!any_digit) throw InvalidParameter("malformed x: '" + std::string(text) + "'");
  for (int d = frac_digits; d < 9; ++d) frac *= 10;
  return from_billionths(whole * kScale + frac + (round_up ? 1 : 0));
}

std::int64_t ObservationFraction::observed_count(std::int64_t n) const {
  // n stays far below 2^63 / 1e9 for every supported instance size.
  const std::int64_t num = billionths_ * n;
  return (num + kScale - 1) / kScale;
}

std::string ObservationFraction::to_string() const {
  std::string s = std::to_string(billionths_ / kScale);
  std::int64_t frac = billionths_ % kScale;
  if (frac == 0) return s;
  std::string digits = std::to_string(frac);
  digits.insert(0, 9 - digits.size(), '0');
  while (digits.back() == '0') digits.pop_back();
  return s + "." + digits;
}

}  // namespace prophet_lab
