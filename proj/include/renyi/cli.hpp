#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "renyi/distribution.hpp"
#include "renyi/entropy.hpp"

namespace renyi::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitSpec = 3;

/// Malformed input data. `line` is 1-based, or 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Invalid risk specification or grid on the command line.
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// CSV with a header containing `value` and optionally `weight`, or JSON
/// {"atoms": [[v, p], ...]}. JSON is recognized by a leading '{'.
DiscreteDistribution parse_distribution(const std::string& text);
DiscreteDistribution load_distribution(const std::string& path);

/// CSV with `weight` and optional `prob` columns (uniform when absent), or
/// JSON {"prob": [...], "weight": [...]}.
Density parse_density(const std::string& text);
Density load_density(const std::string& path);

/// Shortest form is not attempted: always 17 significant digits.
std::string format_number(double v);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace renyi::cli
