#include "qks/types.hpp"

#include <charconv>
#include <cmath>
#include <string>

namespace qks {
namespace {

bool parse_int(std::string_view s, std::int64_t& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

HalfInt HalfInt::parse(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t num = 0;
    std::int64_t den = 0;
    if (!parse_int(text.substr(0, slash), num) || !parse_int(text.substr(slash + 1), den) ||
        (den != 1 && den != 2)) {
      throw ValidationError("not a half-integer: '" + std::string(text) + "'");
    }
    return from_twice(den == 2 ? num : 2 * num);
  }
  std::int64_t whole = 0;
  if (parse_int(text, whole)) return HalfInt(static_cast<int>(whole));
  try {
    std::size_t used = 0;
    const double v = std::stod(std::string(text), &used);
    if (used != text.size()) throw ValidationError("");
    return from_double(v);
  } catch (const std::exception&) {
    throw ValidationError("not a half-integer: '" + std::string(text) + "'");
  }
}

HalfInt HalfInt::from_double(double value) {
  const double twice = 2.0 * value;
  if (!std::isfinite(twice) || std::abs(twice - std::round(twice)) > 1e-12) {
    throw ValidationError("not a half-integer: " + std::to_string(value));
  }
  return from_twice(static_cast<std::int64_t>(std::llround(twice)));
}

std::string HalfInt::to_string() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

std::int64_t integer_difference(HalfInt a, HalfInt b) {
  const HalfInt d = a - b;
  if (!d.is_integer()) {
    throw ValidationError("integrality mismatch between " + a.to_string() + " and " +
                          b.to_string());
  }
  return d.as_integer();
}

}  // namespace qks
