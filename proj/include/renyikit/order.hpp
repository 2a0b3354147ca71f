#pragma once

#include <string>
#include <string_view>

#include "renyikit/errors.hpp"

namespace renyikit {

enum class OrderTag { zero, finite, one, infinity };

/// An order on the extended half-line [0, inf]. The values 0, 1 and inf are
/// exact tags; every other positive real is Finite.
class ExtOrder {
 public:
  static ExtOrder zero() { return ExtOrder(OrderTag::zero, 0.0); }
  static ExtOrder one() { return ExtOrder(OrderTag::one, 1.0); }
  static ExtOrder infinity();
  /// Throws InvalidOrder unless a is finite, > 0 and != 1.
  static ExtOrder finite(double a);
  /// Maps 0, 1 and +inf to their tags. Throws InvalidOrder on negative/NaN.
  static ExtOrder from_value(double a);
  /// Accepts decimal numbers and "inf" / "infinity" (case-insensitive).
  static ExtOrder parse(std::string_view text);

  OrderTag tag() const { return tag_; }
  /// Numeric value; +inf for the infinity tag.
  double value() const { return value_; }

  bool is_zero() const { return tag_ == OrderTag::zero; }
  bool is_one() const { return tag_ == OrderTag::one; }
  bool is_inf() const { return tag_ == OrderTag::infinity; }
  bool is_finite_positive() const {
    return tag_ == OrderTag::finite || tag_ == OrderTag::one;
  }

  /// Shortest round-trip decimal, or "inf".
  std::string str() const;

  friend bool operator==(const ExtOrder&, const ExtOrder&) = default;

 private:
  ExtOrder(OrderTag tag, double value) : tag_(tag), value_(value) {}
  OrderTag tag_;
  double value_;
};

/// (alpha, beta) for the two-parameter measures. For beta the value 1 carries
/// no special meaning and is evaluated by the generic formula.
struct OrderPair {
  ExtOrder alpha;
  ExtOrder beta;

  /// (0, 0): the two-parameter measures are discontinuous here.
  bool is_discontinuity_corner() const { return alpha.is_zero() && beta.is_zero(); }
  /// (1, inf): left undefined.
  bool is_undefined_corner() const { return alpha.is_one() && beta.is_inf(); }

  friend bool operator==(const OrderPair&, const OrderPair&) = default;
};

/// Shortest round-trip decimal representation of a double ("inf", "-inf",
/// "nan" for the non-finite values).
std::string format_double(double v);

}  // namespace renyikit
