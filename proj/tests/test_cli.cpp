#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "meyer/cli.hpp"

using meyer::CliResult;
using meyer::dispatch;

namespace {

std::string value_of(const std::string& out, const std::string& key) {
  const std::string needle = key + "=";
  std::size_t pos = 0;
  while ((pos = out.find(needle, pos)) != std::string::npos) {
    if (pos == 0 || out[pos - 1] == '\n' || out[pos - 1] == ' ') {
      const std::size_t start = pos + needle.size();
      return out.substr(start, out.find_first_of(" \n", start) - start);
    }
    pos += needle.size();
  }
  return {};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("meyer_cli_" + name)).string();
}

}  // namespace

TEST_CASE("minkowski verify on a lattice") {
  const CliResult r = dispatch({"minkowski", "verify", "--lattice", "1,0;0,1", "--region", "40", "--body", "ball:r=5",
                                "--cutoff", "10.5", "--R", "20"});
  CHECK(r.status == 0);
  CHECK(value_of(r.out, "pass") == "true");
  CHECK(std::stod(value_of(r.out, "margin")) > 0.0);
}

TEST_CASE("malformed input exits with status 2") {
  CHECK(dispatch({"minkowski", "verify", "--lattice", "1,0;0,1", "--region", "40", "--body", "ball:r=-1", "--cutoff",
                  "3", "--R", "20"})
            .status == 2);
  CHECK(dispatch({"minkowski", "verify", "--lattice", "1,0;0,1", "--region", "40", "--body", "cube", "--cutoff", "3",
                  "--R", "20"})
            .status == 2);
  CHECK(dispatch({"minkowski", "equality", "--k", "4"}).status == 2);
  CHECK(dispatch({"frobnicate"}).status == 2);
  CHECK(dispatch({"minkowski", "verify"}).status == 2);
  CHECK(dispatch({"pointset", "delone", "--pts", temp_path("missing.pts"), "--spacing", "1"}).status == 2);
}

TEST_CASE("equality instance") {
  const CliResult r = dispatch({"minkowski", "equality", "--k", "3"});
  CHECK(r.status == 0);
  CHECK(value_of(r.out, "margin") == "0");
}

TEST_CASE("classical bound") {
  const CliResult r = dispatch({"minkowski", "classical", "--basis", "1,0;0,1", "--body", "ball:r=1.13"});
  CHECK(r.status == 0);
  CHECK(value_of(r.out, "count") == "4");
  CHECK(value_of(r.out, "bound") == "3");
}

TEST_CASE("generate, tabulate and find a witness through files") {
  const std::string pts = temp_path("z2.pts");
  REQUIRE(dispatch({"modelset", "gen", "--kind", "lattice", "--lattice", "1,0;0,1", "--R", "120", "--out", pts}).status ==
          0);
  const CliResult w = dispatch({"dirichlet", "find", "--alpha", "0.4142135623730950488016887242096980785697", "--Q",
                                "10", "--pts", pts});
  CHECK(w.status == 0);
  CHECK(value_of(w.out, "certified") == "true");
  const std::string table = temp_path("z2.tab");
  CHECK(dispatch({"freq", "table", "--pts", pts, "--cutoff", "5", "--R", "50", "--out", table}).status == 0);
  const CliResult m = dispatch({"freq", "mean", "--table", table, "--radius", "2", "--centers", "0,0;1,1"});
  CHECK(m.status == 0);
  std::filesystem::remove(pts);
  std::filesystem::remove(table);
}

TEST_CASE("output is deterministic") {
  const std::vector<std::string> args{"discretize", "tau", "--seed", "3", "--k", "4", "--R", "60"};
  const CliResult a = dispatch(args);
  const CliResult b = dispatch(args);
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("acceptance subset") {
  const CliResult r = dispatch({"accept", "--only", "1,4"});
  CHECK(r.status == 0);
  CHECK(r.out.find("criterion=1 ") != std::string::npos);
  CHECK(r.out.find("criterion=4 ") != std::string::npos);
  CHECK(r.out.find("criterion=2 ") == std::string::npos);
}
