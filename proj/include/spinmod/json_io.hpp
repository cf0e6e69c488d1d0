#pragma once

// JSON forms. Integers are decimal strings so values survive any JSON parser:
//   CycNumber   {"conductor": n, "coeffs": [["num", "den"], ...]}
//   CycMatrix   {"rows": r, "cols": c, "entries": [[CycNumber, ...], ...]}

#include <string>

#include <json.hpp>

#include "spinmod/modular_data.hpp"

namespace spinmod
{

using Json = nlohmann::json;

Json to_json(const BigRational& q);
BigRational rational_from_json(const Json& j);

Json to_json(const CycNumber& a);
CycNumber cyc_from_json(const Json& j);

Json to_json(const CycMatrix& m);
CycMatrix matrix_from_json(const Json& j);

Json to_json(const ModularData& md);
ModularData modular_data_from_json(const Json& j);

Json to_json(const HatData& hat);
HatData hat_data_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

} // namespace spinmod
