#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "hajlasz/exponent.hpp"
#include "hajlasz/lebesgue.hpp"
#include "hajlasz/space.hpp"

namespace hajlasz {

// File formats (JSON):
//   space:    {"points": [labels],
//              "metric": {"matrix": [[...]]} | {"coords": [[...]], "snowflake_beta": b},
//              "measure": [...]}
//   function: {"values": [...]}
//   exponent: {"values": [...], "basepoint": i}
//
// Parse and validation failures throw std::invalid_argument naming the field.

/// Serializes with every floating value at 17 significant digits.
std::string to_json_text(const nlohmann::json& value, int indent = 2);
std::string format_double(double v);

nlohmann::json space_to_json(const FiniteSpace& space);
FiniteSpace space_from_json(const nlohmann::json& doc,
                            std::optional<int> quantize_digits = {});
nlohmann::json function_to_json(const FunctionField& f);
FunctionField function_from_json(const nlohmann::json& doc);
nlohmann::json exponent_to_json(const ExponentField& p);
ExponentField exponent_from_json(const nlohmann::json& doc);

FiniteSpace load_space(const std::string& path,
                       std::optional<int> quantize_digits = {});
void save_space(const FiniteSpace& space, const std::string& path);
FunctionField load_function(const std::string& path);
void save_function(const FunctionField& f, const std::string& path);
ExponentField load_exponent(const std::string& path);
void save_exponent(const ExponentField& p, const std::string& path);

nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace hajlasz
