#include "renyi/order.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <stdexcept>

namespace renyi {

Order conjugate(Order p) {
  const double v = p.value();
  if (std::isnan(v) || v == 0.0 || v == -std::numeric_limits<double>::infinity()) {
    throw std::invalid_argument("order has no conjugate");
  }
  if (p.is_infinite()) return Order(1.0);
  if (v == 1.0) return Order::infinity();
  return Order(v / (v - 1.0));
}

Regime classify(Order p) {
  const double v = p.value();
  if (std::isnan(v) || v == 0.0 || v == -std::numeric_limits<double>::infinity()) {
    throw std::invalid_argument("order must be nonzero and not -inf");
  }
  if (p.is_infinite()) return Regime::shannon;
  if (v == 1.0) return Regime::avar;
  if (v > 1.0) return Regime::higher;
  if (v > 0.0) return Regime::collapse;
  return Regime::negative;
}

Order parse_order(const std::string& token) {
  if (token == "inf" || token == "+inf" || token == "infinity" || token == "Inf") {
    return Order::infinity();
  }
  const char* begin = token.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (token.empty() || end != begin + token.size() || errno == ERANGE || !std::isfinite(v)) {
    throw std::invalid_argument("invalid order token '" + token + "'");
  }
  if (v == 0.0) throw std::invalid_argument("order 0 is not a member of the family");
  return Order(v);
}

std::string to_string(Order p) {
  if (p.is_infinite()) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", p.value());
  return buf;
}

}  // namespace renyi
