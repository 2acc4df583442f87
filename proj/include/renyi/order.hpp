#pragma once

#include <limits>
#include <string>

namespace renyi {

/// Extended-real order (p, p' or q). Infinity is an exact tag, never a
/// large finite number, so q = 1 and q = inf dispatch by equality.
class Order {
 public:
  constexpr Order() = default;
  constexpr explicit Order(double value) : value_(value) {}

  static constexpr Order infinity() { return Order(std::numeric_limits<double>::infinity()); }

  constexpr double value() const { return value_; }
  constexpr bool is_infinite() const { return value_ == std::numeric_limits<double>::infinity(); }
  constexpr bool is_finite() const { return !is_infinite(); }

  friend constexpr bool operator==(Order a, Order b) { return a.value_ == b.value_; }

 private:
  double value_ = 1.0;
};

/// Hoelder conjugate p' = p / (p - 1), with 1 <-> inf. Throws for p = 0,
/// p = -inf and NaN.
Order conjugate(Order p);

/// Member of the risk family selected by an order p.
enum class Regime {
  avar,       // p = 1
  higher,     // 1 < p < inf
  shannon,    // p = inf
  collapse,   // 0 < p < 1
  negative,   // p < 0
};

Regime classify(Order p);

/// Parses "inf", "+inf", "infinity" or a decimal literal.
Order parse_order(const std::string& token);
std::string to_string(Order p);

}  // namespace renyi
