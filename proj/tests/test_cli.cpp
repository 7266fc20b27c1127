#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kScratch = ELLFIB_SCRATCH_DIR;

std::string fixture(const std::string& name) {
  return std::string(ELLFIB_FIXTURE_DIR) + "/" + name + ".json";
}

int run(const std::string& args, const std::string& stderr_name = "stderr.txt") {
  fs::create_directories(kScratch);
  const std::string cmd = std::string("\"") + ELLFIB_CLI_PATH + "\" " + args + " 2> \"" +
                          (kScratch / stderr_name).string() + "\"";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  fs::create_directories(kScratch);
  const fs::path p = kScratch / name;
  fs::remove(p);
  return p;
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("classify reports fibers and signatures") {
  const fs::path out = scratch("classify_nf0.json");
  REQUIRE(run("classify --family \"" + fixture("nf0") + "\" --out \"" + out.string() + "\"") == 0);
  const json j = json::parse(slurp(out));
  CHECK(j["sign_z"] == 0);
  CHECK(j["sign_zbar"] == -8);
  CHECK(j["fibers"].size() == 3);
  CHECK(j["fibers"].back()["kodaira"] == "I*_4");
  CHECK(j["fibers"].back()["location"] == "infinity");
}

TEST_CASE("signature from monodromy") {
  const fs::path out = scratch("signature_nf3.json");
  REQUIRE(run("signature --family \"" + fixture("nf3") + "\" --out \"" + out.string() + "\"") == 0);
  const json j = json::parse(slurp(out));
  CHECK(j["signature"] == -3);
  CHECK(j["curvature_ledger"].is_object());
}

TEST_CASE("holonomy of a loop around both nodes") {
  const fs::path out = scratch("holonomy.json");
  REQUIRE(run("holonomy --family \"" + fixture("nf0") +
              "\" --center 0,0 --radius 3 --operator signature --orientation cw --chart u --out \"" +
              out.string() + "\"") == 0);
  const json j = json::parse(slurp(out));
  CHECK(j["winding"] == -2);
  CHECK(j["log_monodromy"]["num"] == -4);
  CHECK(j["log_monodromy"]["den"] == 3);
}

TEST_CASE("determinants and zeta oracle agree") {
  const fs::path d = scratch("det.json"), z = scratch("zeta.json");
  REQUIRE(run("determinants --tau 0,1 --two-omega 1,0 --out \"" + d.string() + "\"") == 0);
  REQUIRE(run("zeta-oracle --tau 0,1 --nu1 0 --nu2 1 --two-omega 1,0 --out \"" + z.string() + "\"") == 0);
  const json dj = json::parse(slurp(d)), zj = json::parse(slurp(z));
  for (const char* key : {"tau", "q", "det_prime", "det_twisted", "det_dirichlet", "det_dirichlet_flat", "quillen_norm"})
    CHECK(dj.contains(key));
  CHECK(dj["det_twisted"].size() == 3);
  CHECK(std::abs(dj["det_prime"].get<double>() - 0.00882256695068) < 1e-12);
  const double det = zj["det"].get<double>();
  const double closed = zj["closed_form"].get<double>();
  CHECK(std::abs(det - closed) < 1e-8 * std::abs(closed));
}

TEST_CASE("periods of a curve") {
  const fs::path out = scratch("periods.json");
  REQUIRE(run("periods --g2 4,0 --g3 0,0 --out \"" + out.string() + "\"") == 0);
  const json j = json::parse(slurp(out));
  CHECK(std::abs(j["tau"][0].get<double>()) < 1e-12);
  CHECK(std::abs(j["tau"][1].get<double>() - 1.0) < 1e-12);
}

TEST_CASE("anomaly CSV") {
  const fs::path out = scratch("anomaly.csv");
  REQUIRE(run("anomaly --family \"" + fixture("nf0") + "\" --at 0.3,0.4 --at -0.5,0.8 --out \"" +
              out.string() + "\"") == 0);
  const std::string csv = slurp(out);
  CHECK(csv.rfind("u_re,u_im,lhs,rhs,ratio\n", 0) == 0);
  CHECK(count_lines(csv) == 3);
}

TEST_CASE("scan is deterministic and reports skipped points") {
  const fs::path a = scratch("scan_a.csv"), b = scratch("scan_b.csv");
  const std::string args = "scan --family \"" + fixture("nf1") + "\" --grid -2.5,2.5,0.25,2.5,10,10 --out ";
  REQUIRE(run(args + "\"" + a.string() + "\"") == 0);
  REQUIRE(run(args + "\"" + b.string() + "\"") == 0);
  const std::string sa = slurp(a);
  CHECK(sa.rfind("u_re,u_im,im_tau,f1,quillen_norm,scalar_curvature\n", 0) == 0);
  CHECK(count_lines(sa) == 101);
  CHECK(sa == slurp(b));

  const fs::path c = scratch("scan_c.csv");
  fs::remove(c.string() + ".skipped");
  REQUIRE(run("scan --family \"" + fixture("nf0") + "\" --grid -1.1547005383792515,1.1547005383792515,0,0,2,1 --margin 0.01 --out \"" +
              c.string() + "\"") == 0);
  CHECK(count_lines(slurp(c)) == 1);
  CHECK(fs::exists(c.string() + ".skipped"));
}

TEST_CASE("input errors exit with status 2 and write nothing") {
  const fs::path bad = scratch("malformed.json");
  std::ofstream(bad) << "{\"nf\": 0, \"g2\": [";
  const fs::path out = scratch("never.json");
  CHECK(run("classify --family \"" + bad.string() + "\" --out \"" + out.string() + "\"") == 2);
  CHECK_FALSE(fs::exists(out));

  const fs::path missing = scratch("missing_g3.json");
  std::ofstream(missing) << R"({"name": "x", "nf": 0, "g2": [[1, 0], [0, 0], [3, 0]]})";
  CHECK(run("classify --family \"" + missing.string() + "\" --out \"" + out.string() + "\"", "missing.txt") == 2);
  CHECK(slurp(kScratch / "missing.txt").find("g3") != std::string::npos);
  CHECK_FALSE(fs::exists(out));

  CHECK(run("classify --family \"" + (kScratch / "absent.json").string() + "\"") == 2);
  CHECK(run("periods --g2 1,0") == 2);
  CHECK(run("scan --family \"" + fixture("nf0") + "\" --grid 0,1,0,1,2,2 --tol bogus=1") == 2);
}

TEST_CASE("domain errors exit with status 1") {
  const fs::path out = scratch("domain.json");
  CHECK(run("periods --g2 3,0 --g3 1,0 --out \"" + out.string() + "\"") == 1);
  CHECK_FALSE(fs::exists(out));
  CHECK(run("holonomy --family \"" + fixture("nf0") + "\" --center 0,0 --radius 1.1547005383792515") == 1);
  const fs::path degree = scratch("degree.json");
  std::ofstream(degree) << R"({"name": "x", "nf": 3, "g2": [[1, 0], [0, 0], [3, 0]], "g3": [[0, 0], [1, 0]]})";
  CHECK(run("classify --family \"" + degree.string() + "\"") == 1);
}
