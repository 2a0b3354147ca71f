#include "renyikit/order.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

namespace renyikit {

ExtOrder ExtOrder::infinity() {
  return ExtOrder(OrderTag::infinity, std::numeric_limits<double>::infinity());
}

ExtOrder ExtOrder::finite(double a) {
  if (!std::isfinite(a) || !(a > 0.0) || a == 1.0) {
    throw InvalidOrder("finite order must be positive and != 1, got " +
                       format_double(a));
  }
  return ExtOrder(OrderTag::finite, a);
}

ExtOrder ExtOrder::from_value(double a) {
  if (std::isnan(a) || a < 0.0) {
    throw InvalidOrder("order must lie in [0, inf], got " + format_double(a));
  }
  if (a == 0.0) return zero();
  if (a == 1.0) return one();
  if (std::isinf(a)) return infinity();
  return ExtOrder(OrderTag::finite, a);
}

ExtOrder ExtOrder::parse(std::string_view text) {
  std::string t(text);
  t.erase(std::remove_if(t.begin(), t.end(),
                         [](unsigned char c) { return std::isspace(c); }),
          t.end());
  std::string lower = t;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "inf" || lower == "infinity" || lower == "+inf") {
    return infinity();
  }
  double v = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (t.empty() || ec != std::errc() || ptr != last) {
    throw InvalidOrder("cannot parse order '" + std::string(text) + "'");
  }
  return from_value(v);
}

std::string ExtOrder::str() const { return format_double(value_); }

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace renyikit
