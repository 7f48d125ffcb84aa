#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "stargraph/error.hpp"
#include "stargraph/io.hpp"
#include "stargraph/secular.hpp"
#include "stargraph/seba.hpp"

using namespace stargraph;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "stargraph_test_io";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::vector<std::string> read_lines(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("reals round-trip") {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 12.555396913379436}) {
    CHECK(std::stod(format_real(x)) == x);
  }
  CHECK(format_real(0.0) == "0");
}

TEST_CASE("spectrum csv") {
  const BondLengths l({1.0, 1.5, 2.2});
  const auto spec = eigenvalues(l, 10, 1);
  const auto p = scratch("spectrum.csv");
  write_spectrum_csv(p, spec);
  const auto lines = read_lines(p);
  REQUIRE(lines.size() == 11);
  CHECK(lines[0] == "n,k,z_prime,bracket_lo,bracket_hi");
  std::stringstream row(lines[4]);
  std::string n, k;
  std::getline(row, n, ',');
  std::getline(row, k, ',');
  CHECK(n == "3");
  CHECK(std::stod(k) == spec[3].k);
}

TEST_CASE("values, histogram and curve files") {
  const std::vector<double> values = {1.0, 2.0, 0.25};
  write_values_csv(scratch("values.csv"), values);
  const auto v = read_lines(scratch("values.csv"));
  REQUIRE(v.size() == 4);
  CHECK(v[0] == "value");
  CHECK(std::stod(v[3]) == 0.25);

  DensityCurve c;
  c.x = {1.0, 2.0};
  c.pdf = {0.5, 0.25};
  c.mass = 0.75;
  c.tail = TailModel{0.3, 1.5};
  c.l_bar = 2.0;
  write_curve_csv(scratch("curve.csv"), c);
  write_curve_json(scratch("curve.json"), c);
  write_histogram_csv(scratch("hist.csv"), c);
  CHECK(read_lines(scratch("curve.csv"))[0] == "x,pdf");
  CHECK(read_lines(scratch("hist.csv"))[0] == "bin_center,density");
  std::ifstream in(scratch("curve.json"));
  const auto j = nlohmann::json::parse(in);
  CHECK(j["mass"].get<double>() == 0.75);
  CHECK(j["tail_coefficient"].get<double>() == 0.3);
  CHECK(j["tail_exponent"].get<double>() == 1.5);
  CHECK(j["l_bar"].get<double>() == 2.0);
}

TEST_CASE("rectangle and summary files") {
  const RectangleSpectrum s = rectangle_levels(golden_alpha(), 5);
  write_rectangle_csv(scratch("rect.csv"), s);
  const auto r = read_lines(scratch("rect.csv"));
  REQUIRE(r.size() == 6);
  CHECK(r[0] == "idx,n,m,energy");
  CHECK(r[1] == "1,0,0,0");

  write_summary_json(scratch("summary.json"), 10000, 0.01);
  std::ifstream in(scratch("summary.json"));
  const auto j = nlohmann::json::parse(in);
  CHECK(j["n"] == 10000);
  CHECK(j["ks"].get<double>() == 0.01);
  CHECK(j["ks_99_threshold"].get<double>() == doctest::Approx(0.016276));
}

TEST_CASE("unwritable paths raise io errors") {
  CHECK_THROWS_AS(write_text("/dev/null/sub/file.txt", "x"), io_error);
}
