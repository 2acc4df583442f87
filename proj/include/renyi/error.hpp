#pragma once

#include <stdexcept>
#include <string>

namespace renyi {

// Thrown when an iterative solve exhausts its iteration or expansion budget.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace renyi
