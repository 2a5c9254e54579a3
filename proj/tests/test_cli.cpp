#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "cli.hpp"
#include <numbers>
#include "confgas/specfun.hpp"

using namespace confgas;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

// Rows of a CSV without quoted fields, keyed by header name.
std::vector<std::map<std::string, std::string>> parse_csv(const std::string& text) {
  auto lines = split(text, '\n');
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  REQUIRE(!lines.empty());
  const auto header = split(lines[0], ',');
  std::vector<std::map<std::string, std::string>> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split(lines[i], ',');
    REQUIRE(cells.size() >= header.size());
    std::map<std::string, std::string> row;
    for (std::size_t k = 0; k < header.size(); ++k) row[header[k]] = cells[k];
    rows.push_back(row);
  }
  return rows;
}

double num(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

std::vector<nlohmann::json> json_lines(const std::string& text) {
  std::vector<nlohmann::json> v;
  for (const auto& line : split(text, '\n'))
    if (!line.empty()) v.push_back(nlohmann::json::parse(line));
  return v;
}

}  // namespace

TEST_CASE("specfun reproduces zeta(2) and ln 2 and round-trips its numbers") {
  auto r = run({"specfun", "--stat", "bose", "--order", "2", "--z", "1"});
  CHECK(r.code == 0);
  auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 1);
  CHECK(num(rows[0]["value"]) == doctest::Approx(std::numbers::pi * std::numbers::pi / 6).epsilon(1e-15));

  r = run({"specfun", "--stat", "fermi", "--order", "1", "--z", "1"});
  CHECK(num(parse_csv(r.out)[0]["value"]) == doctest::Approx(std::log(2.0)).epsilon(1e-15));

  r = run({"specfun", "--stat", "fermi", "--order", "1.5", "--z", "2"});
  rows = parse_csv(r.out);
  CHECK(rows[0]["method"] == "quadrature");
  CHECK(num(rows[0]["error_bound"]) > 0);
  CHECK(num(rows[0]["value"]) == h(StatKind::Fermi, orders::three_halves, 2.0));
}

TEST_CASE("specfun grid is closed and keeps failing points as error rows") {
  auto r = run({"specfun", "--stat", "bose", "--order", "1", "--z-grid", "0.5:1.5:5"});
  CHECK(r.code == 2);
  auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(num(rows.front()["z"]) == 0.5);
  CHECK(num(rows.back()["z"]) == 1.5);
  CHECK(rows[0]["status"] == "ok");
  CHECK(rows[4]["status"] == "DomainError");
  CHECK(rows[4]["value"].empty());
  CHECK(!r.err.empty());
  for (const auto& j : json_lines(r.err)) CHECK(j["level"] == "error");
}

TEST_CASE("solve inverts the free-space equation of state") {
  // N lambda^2 / Omega = 0.1 at T = 2 pi (lambda = 1).
  auto r = run({"solve", "--stat", "bose", "--shape", "free:100", "--N", "10", "--T", "6.283185307179586"});
  CHECK(r.code == 0);
  auto rows = parse_csv(r.out);
  CHECK(num(rows[0]["z"]) == doctest::Approx(-std::expm1(-0.1)).epsilon(1e-12));
  CHECK(rows[0]["fermi_extension_used"] == "false");
  CHECK(rows[0]["Lz"].empty());
}

TEST_CASE("solve flags the Fermi extension and threshold warnings") {
  auto r = run({"solve", "--stat", "fermi", "--shape", "disk:10", "--N", "200", "--T", "1"});
  CHECK(r.code == 2);
  auto rows = parse_csv(r.out);
  CHECK(num(rows[0]["z"]) > 1);
  CHECK(rows[0]["fermi_extension_used"] == "true");

  // lambda / sqrt(Omega) = 0.3 on the unit square.
  const double T = 2 * std::numbers::pi / 0.09;
  r = run({"solve", "--stat", "bose", "--shape", "rect:1,1", "--N", "5", "--T", std::to_string(T), "--format",
           "jsonl"});
  CHECK(r.code == 2);
  const auto row = json_lines(r.out).at(0);
  CHECK(row["shape"] == "rect:1,1");
  CHECK(row["ratio_wavelength"].get<double>() == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(row["warnings"].get<std::string>().find("0.2") != std::string::npos);
  bool saw = false;
  for (const auto& j : json_lines(r.err)) saw = saw || (j["level"] == "warning" && j["kind"] == "wavelength");
  CHECK(saw);

  r = run({"solve", "--stat", "bose", "--shape", "rect:1,1", "--N", "5", "--T", std::to_string(T),
           "--warn-wavelength", "0.5"});
  CHECK(r.code == 0);
}

TEST_CASE("solve maps failures to exit codes with JSON diagnostics") {
  auto r = run({"solve", "--stat", "bose", "--shape", "disk:1"});
  CHECK(r.code == 3);
  CHECK(json_lines(r.err).at(0)["kind"] == "usage");

  r = run({"solve", "--stat", "bose", "--shape", "annulus:2,1", "--N", "10", "--T", "100"});
  CHECK(r.code == 3);
  CHECK(json_lines(r.err).at(0)["kind"] == "GeometryError");
  CHECK(json_lines(r.err).at(0)["exit_code"] == 3);

  // Far past the Bose resolution limit: an accuracy failure, not bad input.
  r = run({"solve", "--stat", "bose", "--shape", "disk:1", "--N", "1e6", "--T", "100"});
  CHECK(r.code == 4);
  CHECK(r.out.empty());

  r = run({"solve", "--stat", "bose", "--shape", "free:100", "--N", "1", "--T", "10"});
  CHECK(r.code == 0);
  r = run({"solve", "--stat", "bose", "--shape", "free:x", "--N", "1", "--T", "1"});
  CHECK(r.code == 3);
}

TEST_CASE("table rows satisfy S = (U - F)/T and are independent of the thread count") {
  const std::vector<std::string> base{"table", "--stat", "fermi", "--shape", "annulus:1,3", "--N", "200",
                                      "--T-grid", "20:400:7"};
  auto one = base;
  one.insert(one.end(), {"--threads", "1"});
  auto four = base;
  four.insert(four.end(), {"--threads", "4"});
  const Run a = run(one), b = run(four), c = run(one);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  auto rows = parse_csv(a.out);
  REQUIRE(rows.size() == 7);
  CHECK(num(rows[0]["T"]) == 20);
  CHECK(num(rows[6]["T"]) == 400);
  for (const auto& r : rows) {
    REQUIRE(r.at("error").empty());
    const double U = num(r.at("U")), F = num(r.at("F")), S = num(r.at("S")), T = num(r.at("T"));
    CHECK(std::abs(S - (U - F) / T) <= 1e-12 * std::abs(S));
    CHECK(r.at("xi1").empty());
  }
}

TEST_CASE("table honours CONFGAS_THREADS without changing output") {
  const std::vector<std::string> args{"table", "--stat", "bose", "--shape", "disk:2", "--N", "100",
                                      "--T-grid", "50:500:5", "--spacing", "log"};
  const Run a = run(args);
  ::setenv("CONFGAS_THREADS", "3", 1);
  const Run b = run(args);
  ::setenv("CONFGAS_THREADS", "zero", 1);
  const Run c = run(args);
  ::unsetenv("CONFGAS_THREADS");
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  CHECK(c.err.find("CONFGAS_THREADS") != std::string::npos);
}

TEST_CASE("free-space tube tends to C_V/N = 3/2 in the classical tail") {
  auto r = run({"table", "--stat", "bose", "--shape", "free:100", "--Lz", "1e4", "--N", "10", "--T-grid",
                "10:1e6:3", "--spacing", "log", "--format", "jsonl"});
  CHECK(r.code == 0);
  const auto rows = json_lines(r.out);
  REQUIRE(rows.size() == 3);
  const double last = rows.back()["C_V"].get<double>() / 10;
  CHECK(last == doctest::Approx(1.5).epsilon(1e-5));
  CHECK(std::abs(rows.front()["C_V"].get<double>() / 10 - 1.5) > std::abs(last - 1.5));
  CHECK(rows.back()["xi1"].is_number());
}

TEST_CASE("table keeps failing grid points as error rows") {
  auto r = run({"table", "--stat", "bose", "--shape", "disk:1", "--N", "50", "--T-grid", "1:200:4"});
  CHECK(r.code == 2);
  auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0]["status"] != "ok");
  CHECK(rows[0]["status"] != "warned");
  CHECK(!rows[0]["error"].empty());
  CHECK(rows[0]["z"].empty());
  CHECK(rows[3]["z"].size() > 0);
}

TEST_CASE("grid syntax errors are usage failures") {
  for (std::string g : {"1:2", "1:2:0", "1:2:3:4", "a:b:c", "1:2:1"}) {
    auto r = run({"table", "--stat", "bose", "--shape", "disk:1", "--N", "5", "--T-grid", g});
    CHECK_MESSAGE(r.code == 3, g);
  }
}

TEST_CASE("verify reports heat-kernel rows including the informational corner constant") {
  auto r = run({"verify", "--suite", "heatkernel", "--format", "jsonl"});
  CHECK(r.code == 0);
  bool corner = false, disk = false;
  for (const auto& j : json_lines(r.out)) {
    const std::string check = j["check"];
    if (check.find("constant term") != std::string::npos && check.find("square") != std::string::npos) {
      corner = true;
      CHECK(j["status"] == "info");
      CHECK(j["measured"].get<double>() == doctest::Approx(0.25).epsilon(0.02));
    }
    if (check == "disk R=1 residual t=0.05") {
      disk = true;
      CHECK(j["measured"].get<double>() <= 0.03);
    }
  }
  CHECK(corner);
  CHECK(disk);
}

TEST_CASE("verify thermo passes and writes a report") {
  const auto path = std::filesystem::temp_directory_path() / "confgas_verify_report.json";
  auto r = run({"verify", "--suite", "thermo", "--samples", "8", "--report", path.string()});
  CHECK(r.code == 0);
  std::ifstream f(path);
  const auto doc = nlohmann::json::parse(f);
  CHECK(doc["passed"] == true);
  CHECK(doc["rows"].size() == parse_csv(r.out).size());
  std::filesystem::remove(path);

  r = run({"verify", "--suite", "heatkernel", "--t-list", "10"});
  CHECK(r.code == 4);
}

TEST_CASE("oracle lists spectra, theta sums and exact sums") {
  auto r = run({"oracle", "--shape", "disk:1", "--cutoff", "30"});
  CHECK(r.code == 0);
  auto rows = parse_csv(r.out);
  REQUIRE(rows.size() >= 3);
  CHECK(num(rows[0]["mu"]) == doctest::Approx(0.5 * 2.404825557695773 * 2.404825557695773).epsilon(1e-14));
  CHECK(rows[0]["multiplicity"] == "1");
  CHECK(rows[1]["multiplicity"] == "2");

  r = run({"oracle", "--shape", "rect:1,1", "--theta", "0.1,0.2"});
  rows = parse_csv(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(num(rows[0]["theta"]) == doctest::Approx(0.58006).epsilon(1e-3));

  r = run({"oracle", "--shape", "rect:4,1", "--exact", "--stat", "fermi", "--N", "100", "--T", "50"});
  CHECK(r.code == 0);
  rows = parse_csv(r.out);
  CHECK(num(rows[0]["N_reached"]) == doctest::Approx(100).epsilon(1e-10));

  r = run({"oracle", "--shape", "polygon:@/nonexistent/file"});
  CHECK(r.code == 3);
  r = run({"oracle", "--shape", "disk:1", "--exact"});
  CHECK(r.code == 3);
  r = run({"oracle", "--shape", "disk:1", "--cutoff", "1e6", "--max-states", "100"});
  CHECK(r.code == 3);
  CHECK(json_lines(r.err).at(0)["kind"] == "ResourceError");
}

TEST_CASE("--out writes the rows to a file and help exits cleanly") {
  const auto path = std::filesystem::temp_directory_path() / "confgas_out.csv";
  auto r = run({"specfun", "--stat", "bose", "--order", "0.5", "--z", "0.3", "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(parse_csv(ss.str()).size() == 1);
  std::filesystem::remove(path);

  r = run({"table", "--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("Columns: T,status") != std::string::npos);
  r = run({});
  CHECK(r.code == 3);
}
