#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "toda/io.hpp"

namespace fs = std::filesystem;
using toda::io::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = toda::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / ("toda_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("enumerate command") {
  for (const auto& [mu, count] : std::vector<std::pair<std::string, int>>{
           {"1", 6}, {"2", 20}, {"3/10", 6}, {"0.3", 6}}) {
    const Result r = run({"enumerate", "--mu1", mu, "--mu2", mu});
    REQUIRE(r.code == toda::cli::kOk);
    const json j = json::parse(r.out);
    CHECK(j["count"] == count);
    CHECK(j["points"].size() == static_cast<std::size_t>(count));
  }
  const Result csv = run({"enumerate", "--mu1", "1", "--mu2", "1", "--format", "csv"});
  REQUIRE(csv.code == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 7);
}

TEST_CASE("enumerate output re-parses to an equal set") {
  const Result r = run({"enumerate", "--mu1", "2", "--mu2", "2"});
  REQUIRE(r.code == 0);
  const toda::SigmaSet back = toda::io::sigma_set_from_json(json::parse(r.out));
  const toda::SigmaSet fresh = toda::enumerate(toda::Conic(2, 2));
  REQUIRE(back.size() == fresh.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(toda::numeric::compare(back.points[i].s1, fresh.points[i].s1) ==
          toda::numeric::Ordering::EQ);
    CHECK(toda::numeric::compare(back.points[i].s2, fresh.points[i].s2) ==
          toda::numeric::Ordering::EQ);
  }
}

TEST_CASE("usage errors exit 1") {
  CHECK(run({}).code == toda::cli::kUsage);
  CHECK(run({"frobnicate"}).code == toda::cli::kUsage);
  CHECK(run({"enumerate", "--mu1", "1"}).code == toda::cli::kUsage);
  CHECK(run({"enumerate", "--mu1", "1/3.2", "--mu2", "1"}).code == toda::cli::kUsage);
  CHECK(run({"enumerate", "--mu1", "0", "--mu2", "1"}).code == toda::cli::kUsage);
  CHECK(run({"quantize", "--n", "2", "--gamma", "0"}).code == toda::cli::kUsage);
  CHECK(run({"quantize", "--n", "1", "--gamma", "-1"}).code == toda::cli::kUsage);
  const Result help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("enumerate") != std::string::npos);
}

TEST_CASE("closure failure exits 2") {
  const Result r = run({"enumerate", "--mu1", "2", "--mu2", "2", "--budget", "1"});
  CHECK(r.code == toda::cli::kClosureFailure);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("integration failure exits 3") {
  const Result r = run({"simulate", "--eta", "800"});
  CHECK(r.code == toda::cli::kIntegrationFailure);
  CHECK(r.err.find("t =") != std::string::npos);
}

TEST_CASE("quantize command") {
  Result r = run({"quantize", "--n", "2", "--gamma", "0,0"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["sigma"] == json::array({"4", "4"}));
  CHECK(j["pohozaev_residual"] == "0");
  CHECK(j["margins"] == json::array({"2", "2"}));
  r = run({"quantize", "--n", "2", "--gamma", "1,1"});
  j = json::parse(r.out);
  CHECK(j["sigma"] == json::array({"8", "8"}));
}

TEST_CASE("simulate presets") {
  Result r = run({"simulate", "--preset", "scalar"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  REQUIRE(j["plateaus"].size() == 1);
  CHECK(std::abs(j["plateaus"][0][0].get<double>() - 2.0) <= 1e-3);

  r = run({"simulate", "--preset", "symmetric"});
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  REQUIRE(j["plateaus"].size() == 1);
  CHECK(std::abs(j["plateaus"][0][0].get<double>() - 4.0) <= 1e-3);
  CHECK(std::abs(j["plateaus"][0][1].get<double>() - 4.0) <= 1e-3);
  CHECK(j["sigma_set_match"] == json::array({true}));

  r = run({"simulate", "--preset", "tower"});
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["plateaus"].size() == 3);
  CHECK(j["sigma_set_match"] == json::array({true, true, true}));
}

TEST_CASE("check passes on fresh output and flags tampering") {
  const fs::path dir = scratch_dir();
  const std::string csv = (dir / "tower.csv").string();
  const std::string report = (dir / "tower.json").string();
  REQUIRE(run({"simulate", "--preset", "tower", "--output", csv, "--report", report}).code == 0);
  CHECK(json::parse(slurp(report))["plateaus"].size() == 3);

  Result r = run({"check", "--input", csv});
  CHECK(r.code == toda::cli::kOk);
  CHECK(json::parse(r.out)["pass"] == true);

  // Shift sigma1 on one row: both identities break there.
  std::string text = slurp(csv);
  std::istringstream in(text);
  std::ostringstream tampered;
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    if (row == 100) {
      std::vector<std::string> cells;
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ',')) cells.push_back(cell);
      cells[6] = std::to_string(std::stod(cells[6]) + 0.5);
      line.clear();
      for (std::size_t i = 0; i < cells.size(); ++i) line += (i ? "," : "") + cells[i];
    }
    tampered << line << '\n';
    ++row;
  }
  const std::string bad = (dir / "tampered.csv").string();
  std::ofstream(bad) << tampered.str();
  r = run({"check", "--input", bad});
  CHECK(r.code == toda::cli::kResidualViolation);

  const std::string junk = (dir / "junk.csv").string();
  std::ofstream(junk) << "t,r,u1\n1,2\n";
  CHECK(run({"check", "--input", junk}).code == toda::cli::kMalformedInput);
  CHECK(run({"check", "--input", (dir / "missing.csv").string()}).code ==
        toda::cli::kMalformedInput);
  fs::remove_all(dir);
}

TEST_CASE("sweep runs independent jobs") {
  const fs::path dir = scratch_dir() / "sweep";
  fs::create_directories(dir);
  const json jobs = json::array(
      {{{"preset", "scalar"},
        {"output", (dir / "a.csv").string()},
        {"report", (dir / "a.json").string()}},
       {{"preset", "symmetric"},
        {"output", (dir / "b.csv").string()},
        {"report", (dir / "b.json").string()}},
       {{"eta", "800"}, {"output", (dir / "c.csv").string()}, {"report", (dir / "c.json").string()}}});
  const std::string sweep = (dir / "sweep.json").string();
  std::ofstream(sweep) << jobs.dump();
  const Result r = run({"simulate", "--sweep", sweep});
  CHECK(r.code == toda::cli::kIntegrationFailure);
  CHECK(r.out.find("job 0: exit 0") != std::string::npos);
  CHECK(r.out.find("job 1: exit 0") != std::string::npos);
  CHECK(r.out.find("job 2: exit 3") != std::string::npos);
  CHECK(json::parse(slurp(dir / "a.json"))["plateaus"].size() == 1);
  CHECK(fs::exists(dir / "b.csv"));

  std::ofstream(sweep) << "{not json";
  CHECK(run({"simulate", "--sweep", sweep}).code == toda::cli::kMalformedInput);
  fs::remove_all(dir.parent_path());
}
