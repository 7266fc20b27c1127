#include "ellfib/family_io.hpp"

#include <fstream>
#include <sstream>

#include "ellfib/error.hpp"

namespace ellfib {

namespace {

using nlohmann::json;

[[noreturn]] void schema_fail(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::SchemaError, "field '" + field + "': " + why);
}

const json& require(const json& j, const std::string& field) {
  const auto it = j.find(field);
  if (it == j.end()) schema_fail(field, "missing required field");
  return *it;
}

std::vector<cplx> complex_list(const json& j, const std::string& field) {
  if (!j.is_array()) schema_fail(field, "expected an array of [re, im] pairs");
  std::vector<cplx> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const json& e = j[k];
    const std::string where = field + "[" + std::to_string(k) + "]";
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      schema_fail(where, "expected [re, im] with numeric entries");
    out.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return out;
}

json complex_list_json(std::span<const cplx> v) {
  json a = json::array();
  for (const auto& z : v) a.push_back({z.real(), z.imag()});
  return a;
}

}  // namespace

CurveFamily family_from_json(const json& j) {
  if (!j.is_object()) schema_fail("<root>", "expected a JSON object");
  CurveFamily f;
  const json& name = require(j, "name");
  if (!name.is_string()) schema_fail("name", "expected a string");
  f.name = name.get<std::string>();
  const json& nf = require(j, "nf");
  if (!nf.is_number_integer()) schema_fail("nf", "expected an integer");
  f.nf = nf.get<int>();
  f.g2 = ComplexPoly(complex_list(require(j, "g2"), "g2"));
  f.g3 = ComplexPoly(complex_list(require(j, "g3"), "g3"));
  if (const auto it = j.find("masses"); it != j.end()) f.masses = complex_list(*it, "masses");
  return f;
}

json family_to_json(const CurveFamily& f) {
  json j;
  j["name"] = f.name;
  j["nf"] = f.nf;
  j["g2"] = complex_list_json(f.g2.coeffs());
  j["g3"] = complex_list_json(f.g3.coeffs());
  if (!f.masses.empty()) j["masses"] = complex_list_json(f.masses);
  return j;
}

CurveFamily load_family(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, "'" + path.string() + "' is not valid JSON: " + e.what());
  }
  return family_from_json(j);
}

}  // namespace ellfib
