#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "mesoc/cone.hpp"
#include "mesoc/micp.hpp"

namespace mesoc::cli {

using Json = nlohmann::ordered_json;

/// Malformed or schema-invalid problem file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProblemFile {
  int version = 1;
  ConeSpec cone;
  std::string command;
  Json payload;
};

ProblemFile parse_problem(const std::string& text);
ProblemFile load_problem(const std::string& path);

/// A JSON number, or a string holding a decimal or a rational "a/b".
double parse_number(const Json& j, const std::string& where);
Vector parse_vector(const Json& j, const std::string& where);
Matrix parse_matrix(const Json& j, const std::string& where);
ConeSpec parse_cone(const Json& j);
/// {"x": [...], "u": [...]} or a flat array split after the first p entries.
PartitionedVector parse_point(const Json& j, int p, int q, const std::string& where);
StructuredMap parse_map(const Json& j, int p, int q);

Json cone_to_json(const ConeSpec& cone);
Json vector_to_json(const Vector& v);
Json point_to_json(const PartitionedVector& z);

/// Flattens a report into "path: value" lines.
std::string to_text(const Json& report);

}  // namespace mesoc::cli
