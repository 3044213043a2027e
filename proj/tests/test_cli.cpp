#include "doctest.h"

#include "nkerr/commands.hpp"
#include "nkerr/errors.hpp"
#include "nkerr/scenario.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace nkerr;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("nkerr_cli_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }

  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = path / name;
    std::ofstream(p) << text;
    return p.string();
  }
};

std::string scenario(double ga, double gb, double gc, double da, double db, double dc,
                     const std::string& gamma = "") {
  std::ostringstream os;
  os.precision(17);
  os << R"({"modes": {"a": {"g_re": )" << ga << R"(, "g_im": 0, "delta": )" << da
     << R"(, "n": 1}, "b": {"g_re": )" << gb << R"(, "delta": )" << db
     << R"(, "n": 0}, "c": {"g_re": )" << gc << R"(, "delta": )" << dc << R"(, "n": 1}})";
  if (!gamma.empty()) os << R"(, "gamma": )" << gamma;
  os << "}";
  return os.str();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("scenario parsing") {
  const auto c = parse_scenario(scenario(0.1, 1.0, 0.1, 0.3, 0.2, 0.5, R"({"g1": 0.1, "g2": 0, "g3": 0.2})"));
  CHECK(c.a.coupling == cd(0.1, 0.0));
  CHECK(c.b.detuning == 0.2);
  CHECK(c.gamma.g3 == 0.2);
  CHECK(parse_scenario(scenario_to_json(c)).gamma.g1 == 0.1);

  CHECK_THROWS_AS(parse_scenario("{"), SchemaError);
  CHECK_THROWS_AS(parse_scenario(R"({"modes": {}})"), SchemaError);
  CHECK_THROWS_AS(parse_scenario(R"({"modes": {"a": {"g_re": 0.1, "delta": 0, "n": 1.5},
      "b": {"g_re": 1, "delta": 0, "n": 0}, "c": {"g_re": 0.1, "delta": 0, "n": 1}}})"),
                  SchemaError);
  CHECK_THROWS_AS(parse_scenario(R"({"modes": {"a": {"g_re": 0.1, "delta": 0, "n": 1, "x": 2},
      "b": {"g_re": 1, "delta": 0, "n": 0}, "c": {"g_re": 0.1, "delta": 0, "n": 1}}})"),
                  SchemaError);
  CHECK_THROWS_AS(parse_scenario(scenario(0.1, 1, 0.1, 0, 0, 0, R"({"g1": -1})")), SchemaError);
  CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), SchemaError);
}

TEST_CASE("number formatting round-trips") {
  CHECK(format_number(0.0) == "0");
  for (double x : {0.1, -2e-5, 1.0 / 3.0, 6.02214076e23, -4.9e-324}) {
    CHECK(std::strtod(format_number(x).c_str(), nullptr) == x);
  }
}

TEST_CASE("coeffs command") {
  TempDir dir;
  std::ostringstream out, err;
  const auto pure = dir.write("pure.json", scenario(0.1, 1.0, 0.1, 0.0, 0.0, 5.0));
  CHECK(cmd_coeffs(pure, out, err) == kExitOk);
  CHECK(out.str().rfind("L=0 S=0 K=-2", 0) == 0);
  CHECK(out.str().find("agrees") != std::string::npos);

  std::ostringstream out2, err2;
  const auto pole = dir.write("pole.json", scenario(0.1, 1.0, 0.1, 0.3, 0.1, -0.2));
  CHECK(cmd_coeffs(pole, out2, err2) == kExitDomain);
  CHECK(err2.str().find("pole: delta_3 = 0") != std::string::npos);

  std::ostringstream out3, err3;
  const auto lossy = dir.write("lossy.json", scenario(0.1, 1.0, 0.1, 0.3, 0.1, 0.5, R"({"g1": 0.1})"));
  CHECK(cmd_coeffs(lossy, out3, err3) == kExitRegime);

  std::ostringstream out4, err4;
  CHECK(cmd_coeffs(dir.write("bad.json", "[1, 2]"), out4, err4) == kExitSchema);
}

TEST_CASE("sweep command") {
  TempDir dir;
  const auto path = dir.write("s.json", scenario(0.05, 1.0, 0.05, 0.0, 0.0, 0.0, R"({"g3": 0.2})"));
  std::ostringstream out, err;
  const std::string csv1 = (dir.path / "a.csv").string();
  const std::string csv2 = (dir.path / "b.csv").string();
  REQUIRE(cmd_sweep(path, "dc", -1.0, 1.0, 21, csv1, out, err) == kExitOk);
  REQUIRE(cmd_sweep(path, "dc", -1.0, 1.0, 21, csv2, out, err) == kExitOk);
  const std::string text = slurp(csv1);
  CHECK(text == slurp(csv2));
  CHECK(text.rfind(std::string(kSweepHeader) + "\n", 0) == 0);

  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  CHECK(rows.size() == 21);
  CHECK(rows[10].rfind("dc,0,", 0) == 0);

  std::ostringstream e2;
  CHECK(cmd_sweep(path, "dz", -1, 1, 5, csv1, out, e2) == kExitSchema);
  CHECK(cmd_sweep(path, "dc", -1, 1, 1, csv1, out, e2) == kExitSchema);
  CHECK(cmd_sweep(path, "dc", -1, 1, 2, (dir.path / "two.csv").string(), out, e2) == kExitOk);
  const std::string two = slurp((dir.path / "two.csv").string());
  CHECK(std::count(two.begin(), two.end(), '\n') == 3);
}

TEST_CASE("evolve command") {
  TempDir dir;
  const auto weak = dir.write("w.json", scenario(0.01, 1.0, 0.01, 0.3, 0.1, 0.5));
  std::ostringstream out, err;
  CHECK(cmd_evolve(weak, 0.0, std::nullopt, out, err) == kExitOk);
  CHECK(out.str().find("effective_phase=0\n") != std::string::npos);
  CHECK(out.str().find("oracle_phase=0\n") != std::string::npos);

  std::ostringstream out2;
  const std::string report = (dir.path / "evolve.txt").string();
  CHECK(cmd_evolve(weak, 4.8e7, report, out2, err) == kExitOk);
  CHECK(out2.str().find("within_bound=yes") != std::string::npos);
  CHECK(slurp(report) == out2.str());

  std::ostringstream out3, err3;
  const auto degenerate = dir.write("d.json", scenario(0.01, 1.0, 0.01, 0.0, 0.0, 0.0));
  CHECK(cmd_evolve(degenerate, 1.0, std::nullopt, out3, err3) == kExitDomain);
  CHECK(err3.str().find("DegeneracyError") != std::string::npos);

  std::ostringstream out4, err4;
  const auto lossy = dir.write("l.json", scenario(0.01, 1.0, 0.01, 0.3, 0.1, 0.5, R"({"g2": 0.1})"));
  CHECK(cmd_evolve(lossy, 1.0, std::nullopt, out4, err4) == kExitRegime);
}

TEST_CASE("validate is deterministic") {
  std::ostringstream a, b, err;
  CHECK(cmd_validate(0, a, err) == kExitOk);
  CHECK(cmd_validate(0, b, err) == kExitOk);
  CHECK(a.str() == b.str());
  CHECK(err.str().empty());
}
