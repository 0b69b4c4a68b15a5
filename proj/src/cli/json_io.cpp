#include "mesoc/cli/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace mesoc::cli {
namespace {

const Json& require_key(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing key \"" + key + "\"");
  return j.at(key);
}

int parse_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
  return j.get<int>();
}

double parse_decimal(const std::string& s, const std::string& where) {
  if (s.empty()) throw ParseError(where + ": empty number");
  char* end = nullptr;
  const double value = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw ParseError(where + ": cannot parse \"" + s + "\" as a number");
  return value;
}

struct ConeName {
  const char* name;
  ConeKind kind;
};

constexpr ConeName cone_names[] = {
    {"MESOC", ConeKind::Mesoc},
    {"MESOC_DUAL", ConeKind::MesocDual},
    {"ESOC", ConeKind::Esoc},
    {"ESOC_DUAL", ConeKind::EsocDual},
    {"MONOTONE", ConeKind::Monotone},
    {"MONOTONE_NONNEG", ConeKind::MonotoneNonneg},
    {"MONOTONE_DUAL", ConeKind::MonotoneDual},
    {"MONOTONE_NONNEG_DUAL", ConeKind::MonotoneNonnegDual},
    {"NONNEG_ORTHANT", ConeKind::NonnegOrthant},
    {"LORENTZ", ConeKind::Lorentz},
    {"CYLINDER", ConeKind::Cylinder},
    {"CYLINDER_DUAL", ConeKind::CylinderDual},
};

const char* cone_name(ConeKind kind) {
  for (const auto& entry : cone_names) {
    if (entry.kind == kind) return entry.name;
  }
  return "UNKNOWN";
}

void flatten(const Json& j, const std::string& path, std::ostringstream& out) {
  const bool scalar_array =
      j.is_array() && std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(value, path.empty() ? key : path + "." + key, out);
  } else if (j.is_array() && !scalar_array) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else if (j.is_string()) {
    out << path << ": " << j.get<std::string>() << "\n";
  } else {
    out << path << ": " << j.dump() << "\n";
  }
}

}  // namespace

ProblemFile parse_problem(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("problem file: top level must be an object");
  for (const auto& [key, value] : root.items()) {
    if (key != "version" && key != "cone" && key != "command" && key != "payload") {
      throw ParseError("problem file: unknown top-level key \"" + key + "\"");
    }
  }
  const int version = parse_int(require_key(root, "version", "problem file"), "version");
  if (version != 1) throw ParseError("problem file: unsupported version " + std::to_string(version));
  const Json& command = require_key(root, "command", "problem file");
  if (!command.is_string()) throw ParseError("command: expected a string");
  const Json payload = root.contains("payload") ? root.at("payload") : Json::object();
  if (!payload.is_object()) throw ParseError("payload: expected an object");
  return ProblemFile{version, parse_cone(require_key(root, "cone", "problem file")), command.get<std::string>(),
                     payload};
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open problem file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_problem(buffer.str());
}

double parse_number(const Json& j, const std::string& where) {
  double value = 0.0;
  if (j.is_number()) {
    value = j.get<double>();
  } else if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
      value = parse_decimal(s, where);
    } else {
      const double den = parse_decimal(s.substr(slash + 1), where);
      if (den == 0.0) throw ParseError(where + ": zero denominator in \"" + s + "\"");
      value = parse_decimal(s.substr(0, slash), where) / den;
    }
  } else {
    throw ParseError(where + ": expected a number or a numeric string");
  }
  if (!std::isfinite(value)) throw ParseError(where + ": number is not finite");
  return value;
}

Vector parse_vector(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = parse_number(j[i], where + "[" + std::to_string(i) + "]");
  }
  return v;
}

Matrix parse_matrix(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ParseError(where + ": expected a non-empty array of rows");
  const Vector first = parse_vector(j[0], where + "[0]");
  Matrix m(static_cast<Eigen::Index>(j.size()), first.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Vector row = parse_vector(j[i], where + "[" + std::to_string(i) + "]");
    if (row.size() != m.cols()) throw ParseError(where + ": ragged rows");
    m.row(static_cast<Eigen::Index>(i)) = row.transpose();
  }
  return m;
}

ConeSpec parse_cone(const Json& j) {
  const Json& type = require_key(j, "type", "cone");
  if (!type.is_string()) throw ParseError("cone.type: expected a string");
  const std::string name = type.get<std::string>();
  const auto count = [&](const char* key) { return parse_int(require_key(j, key, "cone " + name), key); };
  if (name == "MESOC") return ConeSpec::mesoc(count("p"), count("q"));
  if (name == "MESOC_DUAL") return ConeSpec::mesoc_dual(count("p"), count("q"));
  if (name == "ESOC") return ConeSpec::esoc(count("p"), count("q"));
  if (name == "ESOC_DUAL") return ConeSpec::esoc_dual(count("p"), count("q"));
  if (name == "MONOTONE") return ConeSpec::monotone(count("n"));
  if (name == "MONOTONE_NONNEG") return ConeSpec::monotone_nonneg(count("n"));
  if (name == "MONOTONE_DUAL") return ConeSpec::monotone_dual(count("n"));
  if (name == "MONOTONE_NONNEG_DUAL") return ConeSpec::monotone_nonneg_dual(count("n"));
  if (name == "NONNEG_ORTHANT") return ConeSpec::nonneg_orthant(count("n"));
  if (name == "LORENTZ") return ConeSpec::lorentz(count("n"));
  if (name == "CYLINDER") return ConeSpec::cylinder(count("p"), parse_cone(require_key(j, "inner", "cone")));
  if (name == "CYLINDER_DUAL") {
    return ConeSpec::cylinder_dual(count("p"), parse_cone(require_key(j, "inner", "cone")));
  }
  throw ParseError("cone.type: unknown cone \"" + name + "\"");
}

PartitionedVector parse_point(const Json& j, int p, int q, const std::string& where) {
  if (j.is_array()) {
    const Vector flat = parse_vector(j, where);
    if (flat.size() != p + q) {
      throw DimensionError(where + ": expected " + std::to_string(p + q) + " entries, got " +
                           std::to_string(flat.size()));
    }
    return PartitionedVector::split(flat, p);
  }
  if (!j.is_object()) throw ParseError(where + ": expected {\"x\", \"u\"} or a flat array");
  Vector x = parse_vector(require_key(j, "x", where), where + ".x");
  Vector u = j.contains("u") ? parse_vector(j.at("u"), where + ".u") : Vector(0);
  if (x.size() != p || u.size() != q) {
    throw DimensionError(where + ": expected split (" + std::to_string(p) + "," + std::to_string(q) + "), got (" +
                         std::to_string(x.size()) + "," + std::to_string(u.size()) + ")");
  }
  return {std::move(x), std::move(u)};
}

StructuredMap parse_map(const Json& j, int p, int q) {
  const Json& form = require_key(j, "form", "map");
  if (!form.is_string()) throw ParseError("map.form: expected a string");
  const std::string name = form.get<std::string>();
  if (name == "AFFINE") {
    return StructuredMap::affine(p, q, parse_matrix(require_key(j, "M", "map"), "map.M"),
                                 parse_vector(require_key(j, "c", "map"), "map.c"));
  }
  if (name != "SCALAR_COMBO") throw ParseError("map.form: unknown form \"" + name + "\"");
  const Json& terms = require_key(j, "terms", "map");
  const Json& directions = require_key(j, "directions", "map");
  if (!terms.is_array() || !directions.is_array()) throw ParseError("map: terms and directions must be arrays");
  std::vector<ScalarTerm> parsed_terms;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::string where = "map.terms[" + std::to_string(k) + "]";
    ScalarTerm term;
    term.g = parse_vector(require_key(terms[k], "g", where), where + ".g");
    term.s = terms[k].contains("s") ? parse_number(terms[k].at("s"), where + ".s") : 0.0;
    term.t = terms[k].contains("t") ? parse_number(terms[k].at("t"), where + ".t") : 0.0;
    parsed_terms.push_back(std::move(term));
  }
  std::vector<PartitionedVector> parsed_directions;
  for (std::size_t k = 0; k < directions.size(); ++k) {
    parsed_directions.push_back(parse_point(directions[k], p, q, "map.directions[" + std::to_string(k) + "]"));
  }
  return StructuredMap::scalar_combo(p, q, std::move(parsed_terms), std::move(parsed_directions));
}

Json cone_to_json(const ConeSpec& cone) {
  Json j{{"type", cone_name(cone.kind())}};
  switch (cone.kind()) {
    case ConeKind::Mesoc:
    case ConeKind::MesocDual:
    case ConeKind::Esoc:
    case ConeKind::EsocDual:
      j["p"] = cone.p();
      j["q"] = cone.q();
      break;
    case ConeKind::Cylinder:
    case ConeKind::CylinderDual:
      j["p"] = cone.p();
      j["inner"] = cone_to_json(cone.inner());
      break;
    default:
      j["n"] = cone.dim();
  }
  return j;
}

Json vector_to_json(const Vector& v) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v(i));
  return j;
}

Json point_to_json(const PartitionedVector& z) { return Json{{"x", vector_to_json(z.x())}, {"u", vector_to_json(z.u())}}; }

std::string to_text(const Json& report) {
  std::ostringstream out;
  flatten(report, "", out);
  return out.str();
}

}  // namespace mesoc::cli
