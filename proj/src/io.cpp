#include "hajlasz/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace hajlasz {

using nlohmann::json;

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  std::string s = fmt::format("{:.17g}", v);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

namespace {

bool is_flat(const json& v) {
  for (const auto& e : v) {
    if (e.is_array() || e.is_object()) return false;
  }
  return true;
}

void emit(const json& v, int indent, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  switch (v.type()) {
    case json::value_t::number_float:
      out += format_double(v.get<double>());
      return;
    case json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      if (is_flat(v)) {
        out += '[';
        bool first = true;
        for (const auto& e : v) {
          if (!first) out += ", ";
          first = false;
          emit(e, indent, depth + 1, out);
        }
        out += ']';
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& e : v) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        emit(e, indent, depth + 1, out);
      }
      out += '\n' + close_pad + ']';
      return;
    }
    case json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(it.key()).dump() + ": ";
        emit(it.value(), indent, depth + 1, out);
      }
      out += '\n' + close_pad + '}';
      return;
    }
    default:
      out += v.dump();
  }
}

std::vector<double> number_array(const json& doc, const std::string& field) {
  if (!doc.is_array()) throw std::invalid_argument(field + ": expected an array");
  std::vector<double> out;
  out.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    if (!doc[i].is_number()) {
      throw std::invalid_argument(field + "[" + std::to_string(i) + "]: expected a number");
    }
    out.push_back(doc[i].get<double>());
  }
  return out;
}

const json& member(const json& doc, const std::string& key, const std::string& where) {
  if (!doc.is_object()) throw std::invalid_argument(where + ": expected an object");
  auto it = doc.find(key);
  if (it == doc.end()) {
    throw std::invalid_argument((where.empty() ? key : where + "." + key) + ": missing");
  }
  return *it;
}

}  // namespace

std::string to_json_text(const json& value, int indent) {
  std::string out;
  emit(value, indent, 0, out);
  out += '\n';
  return out;
}

json space_to_json(const FiniteSpace& space) {
  json doc;
  doc["points"] = space.labels();
  json measure = json::array();
  for (double w : space.weights()) measure.push_back(w);
  doc["measure"] = measure;
  json metric;
  if (space.has_coords()) {
    metric["coords"] = space.coords();
    metric["snowflake_beta"] = space.snowflake_beta();
  } else {
    json matrix = json::array();
    for (Index i = 0; i < space.size(); ++i) {
      auto row = space.dist_row(i);
      matrix.push_back(std::vector<double>(row.begin(), row.end()));
    }
    metric["matrix"] = matrix;
  }
  doc["metric"] = metric;
  return doc;
}

FiniteSpace space_from_json(const json& doc, std::optional<int> quantize_digits) {
  const json& points = member(doc, "points", "");
  if (!points.is_array()) throw std::invalid_argument("points: expected an array");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const json& p = points[i];
    if (p.is_string()) {
      labels.push_back(p.get<std::string>());
    } else if (p.is_number_integer()) {
      labels.push_back(std::to_string(p.get<long long>()));
    } else {
      throw std::invalid_argument("points[" + std::to_string(i) +
                                  "]: expected a string label");
    }
  }
  std::vector<double> weight = number_array(member(doc, "measure", ""), "measure");
  if (weight.size() != labels.size()) {
    throw std::invalid_argument("measure: dimension mismatch (" +
                                std::to_string(weight.size()) + " weights for " +
                                std::to_string(labels.size()) + " points)");
  }
  const json& metric = member(doc, "metric", "");
  const std::size_t n = labels.size();
  if (metric.contains("matrix")) {
    const json& rows = metric["matrix"];
    if (!rows.is_array() || rows.size() != n) {
      throw std::invalid_argument("metric.matrix: dimension mismatch");
    }
    std::vector<double> dist;
    dist.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::string field = "metric.matrix[" + std::to_string(i) + "]";
      auto row = number_array(rows[i], field);
      if (row.size() != n) throw std::invalid_argument(field + ": dimension mismatch");
      dist.insert(dist.end(), row.begin(), row.end());
    }
    FiniteSpace space(std::move(dist), std::move(weight), std::move(labels));
    return quantize_digits ? space.quantized(*quantize_digits) : space;
  }
  if (metric.contains("coords")) {
    const json& rows = metric["coords"];
    if (!rows.is_array() || rows.size() != n) {
      throw std::invalid_argument("metric.coords: dimension mismatch");
    }
    std::vector<std::vector<double>> coords;
    for (std::size_t i = 0; i < n; ++i) {
      coords.push_back(number_array(rows[i], "metric.coords[" + std::to_string(i) + "]"));
    }
    double beta = 1.0;
    if (metric.contains("snowflake_beta")) {
      if (!metric["snowflake_beta"].is_number()) {
        throw std::invalid_argument("metric.snowflake_beta: expected a number");
      }
      beta = metric["snowflake_beta"].get<double>();
    }
    FiniteSpace space =
        FiniteSpace::from_coords(std::move(coords), beta, std::move(weight), std::move(labels));
    return quantize_digits ? space.quantized(*quantize_digits) : space;
  }
  throw std::invalid_argument("metric: needs 'matrix' or 'coords'");
}

json function_to_json(const FunctionField& f) {
  json doc;
  doc["values"] = f.values;
  return doc;
}

FunctionField function_from_json(const json& doc) {
  return FunctionField(number_array(member(doc, "values", ""), "values"));
}

json exponent_to_json(const ExponentField& p) {
  json doc;
  doc["values"] = p.values();
  doc["basepoint"] = p.basepoint();
  return doc;
}

ExponentField exponent_from_json(const json& doc) {
  auto values = number_array(member(doc, "values", ""), "values");
  Index basepoint = 0;
  if (doc.contains("basepoint")) {
    const json& b = doc["basepoint"];
    if (!b.is_number_integer() || b.get<long long>() < 0) {
      throw std::invalid_argument("basepoint: expected a nonnegative index");
    }
    basepoint = b.get<Index>();
  }
  return ExponentField(std::move(values), basepoint);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": malformed JSON (" + e.what() + ")");
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot write file");
  out << text;
}

FiniteSpace load_space(const std::string& path, std::optional<int> quantize_digits) {
  return space_from_json(read_json_file(path), quantize_digits);
}

void save_space(const FiniteSpace& space, const std::string& path) {
  write_text_file(path, to_json_text(space_to_json(space)));
}

FunctionField load_function(const std::string& path) {
  return function_from_json(read_json_file(path));
}

void save_function(const FunctionField& f, const std::string& path) {
  write_text_file(path, to_json_text(function_to_json(f)));
}

ExponentField load_exponent(const std::string& path) {
  return exponent_from_json(read_json_file(path));
}

void save_exponent(const ExponentField& p, const std::string& path) {
  write_text_file(path, to_json_text(exponent_to_json(p)));
}

}  // namespace hajlasz
