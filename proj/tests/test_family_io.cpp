#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "ellfib/error.hpp"
#include "ellfib/family_io.hpp"
#include "support.hpp"

using namespace ellfib;
using nlohmann::json;

namespace {

std::string message_of(auto&& fn, ErrorCode expected) {
  try {
    fn();
  } catch (const Error& e) {
    CHECK(e.code() == expected);
    return e.what();
  }
  FAIL("no error thrown");
  return {};
}

json sample() {
  return json::parse(R"({"name": "s", "nf": 1, "g2": [[1, 0], [0, 0], [3, 0]],
                         "g3": [[1, 0], [0.5, 0], [0, 0], [1, 0]]})");
}

}  // namespace

TEST_SUITE("family_io") {
  TEST_CASE("parse and round trip") {
    const CurveFamily f = family_from_json(sample());
    CHECK(f.name == "s");
    CHECK(f.nf == 1);
    CHECK(f.g2.degree() == 2);
    CHECK(f.g3.coeff(1) == cplx(0.5, 0.0));
    CHECK(f.masses.empty());

    const CurveFamily nf4 = test::fixture("nf4");
    REQUIRE(nf4.masses.size() == 4);
    const CurveFamily back = family_from_json(family_to_json(nf4));
    CHECK(back.name == nf4.name);
    CHECK(back.nf == nf4.nf);
    CHECK(back.g2 == nf4.g2);
    CHECK(back.g3 == nf4.g3);
    CHECK(back.masses == nf4.masses);
  }

  TEST_CASE("missing fields are named") {
    for (const char* field : {"nf", "g2", "g3"}) {
      json j = sample();
      j.erase(field);
      const std::string msg = message_of([&] { family_from_json(j); }, ErrorCode::SchemaError);
      CHECK(msg.find(std::string("'") + field + "'") != std::string::npos);
    }
  }

  TEST_CASE("malformed fields") {
    json j = sample();
    j["g2"] = json::array({json::array({1.0})});
    CHECK(message_of([&] { family_from_json(j); }, ErrorCode::SchemaError).find("g2") != std::string::npos);
    j = sample();
    j["nf"] = "four";
    CHECK(message_of([&] { family_from_json(j); }, ErrorCode::SchemaError).find("nf") != std::string::npos);
    message_of([&] { family_from_json(json::array()); }, ErrorCode::SchemaError);
  }

  TEST_CASE("files") {
    const auto dir = std::filesystem::temp_directory_path() / "ellfib_family_io";
    std::filesystem::create_directories(dir);
    const auto bad = dir / "bad.json";
    std::ofstream(bad) << "{\"nf\": 1, ";
    message_of([&] { load_family(bad); }, ErrorCode::SchemaError);
    message_of([&] { load_family(dir / "absent.json"); }, ErrorCode::IoError);
    std::filesystem::remove_all(dir);
  }
}
