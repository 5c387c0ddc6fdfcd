#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "wedgescatter/cli.hpp"
#include "wedgescatter/errors.hpp"
#include "wedgescatter/io.hpp"

using namespace wedgescatter;
namespace fs = std::filesystem;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "wedgescatter");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int status = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("wedgescatter_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 7.552048988531770, -2.5e-300, 123456789.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("scan CSV has the fixed header and parses back") {
  const auto series = scan_energies(make_potential(4, 1.0), BoundaryKind::PlaneWave, 0.5, 1.0, 0.1);
  std::ostringstream os;
  write_scan_csv(os, series);
  const std::string text = os.str();
  CHECK(text.rfind("E,magnitude,incident_re,incident_im,reflected_re,reflected_im,phi_re,phi_im,dphi_re,dphi_im\n", 0) ==
        0);
  CHECK(text.find('\r') == std::string::npos);

  std::istringstream is(text);
  const auto rows = read_scan_csv(is);
  REQUIRE(rows.size() == series.points.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& p = series.points[i];
    CHECK(rows[i].energy == p.energy);
    CHECK(rows[i].magnitude == p.magnitude);
    CHECK(rows[i].incident == p.amplitudes.incident);
    CHECK(rows[i].reflected == p.amplitudes.reflected);
    CHECK(rows[i].phi == p.endpoint.value);
    CHECK(rows[i].dphi == p.endpoint.derivative);
    // both observables can be re-derived offline from the endpoint columns
    const WaveState end{-1.0, rows[i].phi, rows[i].dphi};
    CHECK(std::abs(rt_amplitudes(end, rows[i].energy, 1.0).reflected) == doctest::Approx(rows[i].magnitude));
  }
}

TEST_CASE("scan CSV parse errors name the problem") {
  std::istringstream bad_header("E,mag\n1,2\n");
  CHECK_THROWS_AS(read_scan_csv(bad_header), UsageError);
  std::istringstream bad_row(std::string(kScanCsvHeader) + "\n1,2,3\n");
  CHECK_THROWS_AS(read_scan_csv(bad_row), UsageError);
  std::istringstream bad_number(std::string(kScanCsvHeader) + "\n1,x,3,4,5,6,7,8,9,10\n");
  CHECK_THROWS_AS(read_scan_csv(bad_number), UsageError);
}

TEST_CASE("zeros JSON schema") {
  ReflectionZero a;
  a.energy = 1.4773;
  a.residual = 1e-9;
  a.bracket = {1.47, 1.48, 1.475, 1e-3};
  a.matched_eigenvalue = 1.47715;
  a.oracle = "contour";
  ReflectionZero b;
  b.energy = 0.76;
  b.bracket = {0.75, 0.77, 0.76, 0.0};
  const auto j = zeros_to_json({a, b});
  REQUIRE(j.is_array());
  std::vector<std::string> keys;
  for (const auto& [k, v] : j[0].items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"energy", "residual", "bracket_lo", "bracket_hi", "matched_eigenvalue", "oracle"});
  CHECK(j[1]["matched_eigenvalue"].is_null());
  CHECK(j[1]["oracle"].is_null());

  const auto back = zeros_from_json(nlohmann::json::parse(j.dump()));
  REQUIRE(back.size() == 2);
  CHECK(back[0].energy == a.energy);
  CHECK(*back[0].matched_eigenvalue == 1.47715);
  CHECK_FALSE(back[1].matched_eigenvalue);
  CHECK_THROWS_AS(zeros_from_json(nlohmann::json::parse(R"([{"energy": 1}])")), UsageError);
}

TEST_CASE("CLI usage errors exit with status 2 and a JSON record") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"scan", "--potential", "x5"},
           {"scan", "--bc", "dirichlet"},
           {"scan", "--emin", "3", "--emax", "1"},
           {"scan", "--de", "-0.1"},
           {"scan", "--cutoff", "0"},
           {"scan", "--format", "xml"},
           {"figure", "--id", "14"},
           {"eigen", "--potential", "x6", "--method", "partner"},
           {"bogus"},
           {}}) {
    const auto r = invoke(args);
    CHECK(r.status == 2);
    const auto record = nlohmann::json::parse(r.err);
    CHECK(record["error"]["kind"] == "usage");
  }
}

TEST_CASE("CLI numerical failure exits with status 1") {
  const auto r = invoke({"eigen", "--potential", "x4", "--emin", "0.5", "--emax", "3", "--count", "3"});
  CHECK(r.status == 1);
  CHECK(nlohmann::json::parse(r.err)["error"]["kind"] == "insufficient_range");
}

TEST_CASE("CLI scan writes byte-identical CSV for identical configs") {
  const auto dir = scratch("scan");
  const std::vector<std::string> base{"scan", "--potential", "x4", "--cutoff", "1", "--bc",
                                      "plane", "--emin", "0.5", "--emax", "21", "--de", "0.01"};
  auto first = base;
  first.insert(first.end(), {"--out", (dir / "a.csv").string()});
  auto second = base;
  second.insert(second.end(), {"--out", (dir / "b.csv").string()});
  REQUIRE(invoke(first).status == 0);
  REQUIRE(invoke(second).status == 0);
  const std::string a = slurp(dir / "a.csv");
  CHECK(a == slurp(dir / "b.csv"));

  std::istringstream is(a);
  const auto rows = read_scan_csv(is);
  std::vector<double> e;
  std::vector<double> m;
  for (const auto& r : rows) {
    e.push_back(r.energy);
    m.push_back(r.magnitude);
  }
  const auto brackets = locate_minima(e, m);
  REQUIRE(brackets.size() == 3);
  CHECK(std::abs(brackets[0].center - 0.76) < 0.02);
  CHECK(std::abs(brackets[1].center - 7.55) < 0.02);
  CHECK(std::abs(brackets[2].center - 19.99) < 0.02);
}

TEST_CASE("CLI zeros from a written CSV equal in-process zeros") {
  const auto dir = scratch("roundtrip");
  const std::vector<std::string> flags{"--potential", "x4", "--cutoff", "5", "--bc", "wkb",
                                       "--emin", "0.5", "--emax", "3", "--de", "0.005", "--oracle", "none"};
  auto scan = std::vector<std::string>{"scan"};
  scan.insert(scan.end(), flags.begin(), flags.end() - 2);
  scan.insert(scan.end(), {"--out", (dir / "scan.csv").string()});
  REQUIRE(invoke(scan).status == 0);

  auto from_csv = std::vector<std::string>{"zeros"};
  from_csv.insert(from_csv.end(), flags.begin(), flags.end());
  from_csv.insert(from_csv.end(), {"--from-csv", (dir / "scan.csv").string(), "--out", (dir / "a.json").string()});
  auto direct = std::vector<std::string>{"zeros"};
  direct.insert(direct.end(), flags.begin(), flags.end());
  direct.insert(direct.end(), {"--out", (dir / "b.json").string()});
  REQUIRE(invoke(from_csv).status == 0);
  REQUIRE(invoke(direct).status == 0);

  const auto a = zeros_from_json(nlohmann::json::parse(slurp(dir / "a.json")));
  const auto b = zeros_from_json(nlohmann::json::parse(slurp(dir / "b.json")));
  REQUIRE(a.size() == 1);
  REQUIRE(b.size() == 1);
  CHECK(std::abs(a[0].energy - b[0].energy) < 1e-6);
  CHECK(std::abs(a[0].energy - 1.475) < 0.005);
}

TEST_CASE("CLI eigen emits JSON energies") {
  const auto r = invoke({"eigen", "--potential", "x4", "--method", "partner", "--count", "3"});
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["method"] == "partner");
  CHECK(j["power"] == 4);
  REQUIRE(j["energies"].size() == 3);
  CHECK(std::abs(j["energies"][0].get<double>() - 1.477150) < 1e-4);
}

TEST_CASE("CLI eigen contour for x6") {
  const auto r = invoke({"eigen", "--potential", "x6", "--method", "contour", "--count", "3"});
  REQUIRE(r.status == 0);
  const auto e = nlohmann::json::parse(r.out)["energies"];
  CHECK(std::abs(e[0].get<double>() - 1.354862) < 1e-5);
  CHECK(std::abs(e[1].get<double>() - 5.262586) < 1e-5);
  CHECK(std::abs(e[2].get<double>() - 11.234957) < 1e-5);
}

TEST_CASE("CLI figure preset writes scan CSV and zeros JSON") {
  const auto dir = scratch("figure");
  const auto r = invoke({"figure", "--id", "5", "--out-dir", dir.string()});
  REQUIRE(r.status == 0);
  CHECK(fs::exists(dir / "fig5_scan.csv"));
  const auto zeros = zeros_from_json(nlohmann::json::parse(slurp(dir / "fig5_zeros.json")));
  REQUIRE(zeros.size() == 1);
  CHECK(std::abs(zeros[0].energy - 1.475) < 0.005);
  REQUIRE(zeros[0].matched_eigenvalue);
  CHECK(std::abs(*zeros[0].matched_eigenvalue - 1.477150) < 1e-5);
  CHECK(zeros[0].oracle == "contour");
}

TEST_CASE("figure 7 preset also emits the L = 5 comparison") {
  const auto dir = scratch("figure7");
  REQUIRE(invoke({"figure", "--id", "7", "--out-dir", dir.string(), "--oracle", "partner"}).status == 0);
  CHECK(fs::exists(dir / "fig7_scan.csv"));
  CHECK(fs::exists(dir / "fig7_L5_scan.csv"));
  const auto l7 = zeros_from_json(nlohmann::json::parse(slurp(dir / "fig7_zeros.json")));
  const auto l5 = zeros_from_json(nlohmann::json::parse(slurp(dir / "fig7_L5_zeros.json")));
  REQUIRE(l7.size() == 1);
  REQUIRE(l5.size() == 1);
  CHECK(std::abs(l7[0].energy - 11.820) < 0.01);
  CHECK(std::abs(l5[0].energy - 11.700) < 0.01);
}

TEST_CASE("figure presets cover ids 2 through 13") {
  CHECK(cli::figure_presets().size() == 12);
  for (int id = 2; id <= 13; ++id) CHECK(cli::figure_preset(id).id == id);
  CHECK(cli::figure_preset(7).comparison_cutoff == 5.0);
}

TEST_CASE("help exits cleanly") {
  const auto r = invoke({"--help"});
  CHECK(r.status == 0);
  CHECK(r.out.find("scan") != std::string::npos);
}
