#pragma once

#include <optional>
#include <string>
#include <vector>

namespace renyi::cli {

// Minimal streaming JSON builder; numbers go through format_number so that
// reparsing reproduces every double exactly.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& k);
  JsonWriter& value(double v);
  JsonWriter& value(std::optional<double> v);
  JsonWriter& value(long v);
  JsonWriter& value(bool v);
  JsonWriter& value(const std::string& v);
  JsonWriter& value(const char* v) { return value(std::string(v)); }
  JsonWriter& null();
  JsonWriter& numbers(const std::vector<double>& v);

  std::string str() const { return out_ + "\n"; }

 private:
  void separate();
  void write_string(const std::string& v);
  std::string out_;
  std::vector<bool> first_;
  bool after_key_ = false;
};

std::string csv_field(std::optional<double> v);

}  // namespace renyi::cli
