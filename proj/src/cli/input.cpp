#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "renyi/cli.hpp"

namespace renyi::cli {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& token, int line) {
  if (token.empty()) throw ParseError("empty numeric field", line);
  const char* begin = token.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end != begin + token.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ParseError("not a finite number: '" + token + "'", line);
  }
  return v;
}

bool looks_like_json(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{';
  }
  return false;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<int> lines;
};

Table read_csv(const std::string& text) {
  Table t;
  std::stringstream ss(text);
  std::string raw;
  int line = 0;
  while (std::getline(ss, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (line == 1 && raw.rfind("\xEF\xBB\xBF", 0) == 0) raw.erase(0, 3);
    const std::string body = trim(raw);
    if (body.empty() || body.front() == '#') continue;
    std::vector<std::string> fields = split_fields(body);
    if (t.header.empty()) {
      for (std::string& f : fields) {
        for (char& c : f) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      }
      t.header = std::move(fields);
      continue;
    }
    if (fields.size() != t.header.size()) {
      throw ParseError("expected " + std::to_string(t.header.size()) + " fields, found " +
                           std::to_string(fields.size()),
                       line);
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const std::string& f : fields) row.push_back(parse_number(f, line));
    t.rows.push_back(std::move(row));
    t.lines.push_back(line);
  }
  if (t.header.empty()) throw ParseError("missing CSV header", 0);
  if (t.rows.empty()) throw ParseError("no data rows", 0);
  return t;
}

int column(const Table& t, const std::string& name, bool required) {
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (t.header[i] == name) return static_cast<int>(i);
  }
  if (required) throw ParseError("missing column '" + name + "'", 1);
  return -1;
}

nlohmann::json parse_json(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // The byte offset is the only position nlohmann reports; map it to a line.
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + upto, '\n'));
    throw ParseError("invalid JSON", line);
  }
}

std::vector<double> json_numbers(const nlohmann::json& arr, const std::string& what) {
  if (!arr.is_array()) throw ParseError("'" + what + "' must be an array", 0);
  std::vector<double> out;
  for (const auto& x : arr) {
    if (!x.is_number()) throw ParseError("'" + what + "' must contain numbers", 0);
    out.push_back(x.get<double>());
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

DiscreteDistribution parse_distribution(const std::string& text) {
  std::vector<double> values;
  std::vector<double> weights;
  if (looks_like_json(text)) {
    const nlohmann::json doc = parse_json(text);
    if (!doc.is_object() || !doc.contains("atoms") || !doc["atoms"].is_array()) {
      throw ParseError("JSON input needs an 'atoms' array", 0);
    }
    for (const auto& atom : doc["atoms"]) {
      const std::vector<double> pair = json_numbers(atom, "atoms");
      if (pair.size() != 2) throw ParseError("each atom must be [value, probability]", 0);
      values.push_back(pair[0]);
      weights.push_back(pair[1]);
    }
  } else {
    const Table t = read_csv(text);
    const int vcol = column(t, "value", true);
    const int wcol = column(t, "weight", false);
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      values.push_back(t.rows[r][vcol]);
      if (wcol >= 0) {
        if (t.rows[r][wcol] < 0.0) throw ParseError("negative weight", t.lines[r]);
        weights.push_back(t.rows[r][wcol]);
      }
    }
  }
  try {
    return DiscreteDistribution::from_samples(values, weights);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 0);
  }
}

DiscreteDistribution load_distribution(const std::string& path) {
  return parse_distribution(read_file(path));
}

Density parse_density(const std::string& text) {
  std::vector<double> probs;
  std::vector<double> weights;
  if (looks_like_json(text)) {
    const nlohmann::json doc = parse_json(text);
    if (!doc.is_object() || !doc.contains("weight")) {
      throw ParseError("JSON density needs a 'weight' array", 0);
    }
    weights = json_numbers(doc["weight"], "weight");
    if (doc.contains("prob")) probs = json_numbers(doc["prob"], "prob");
  } else {
    const Table t = read_csv(text);
    const int wcol = column(t, "weight", true);
    const int pcol = column(t, "prob", false);
    for (const auto& row : t.rows) {
      weights.push_back(row[wcol]);
      if (pcol >= 0) probs.push_back(row[pcol]);
    }
  }
  if (weights.empty()) throw ParseError("density has no weights", 0);
  if (probs.empty()) probs.assign(weights.size(), 1.0 / static_cast<double>(weights.size()));
  if (probs.size() != weights.size()) throw ParseError("'prob' and 'weight' differ in length", 0);
  try {
    return Density(std::move(probs), std::move(weights));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 0);
  }
}

Density load_density(const std::string& path) { return parse_density(read_file(path)); }

}  // namespace renyi::cli
