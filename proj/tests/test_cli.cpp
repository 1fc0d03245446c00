#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "rpm/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run rpade(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = rpm::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("solve prints the stable energy and exits 0") {
  const auto r = rpade({"solve", "--preset", "triple-well", "--g", "0", "--dmax", "6"});
  CHECK(r.code == rpm::cli::kSuccess);
  CHECK(r.out.find("E = 1 + 0i\n") != std::string::npos);
}

TEST_CASE("usage errors exit 1") {
  CHECK(rpade({"solve", "--preset", "triple-well", "--potential", "k2=1", "--g", "0.1"}).code ==
        rpm::cli::kUsage);
  CHECK(rpade({"solve", "--preset", "triple-well"}).code == rpm::cli::kUsage);
  CHECK(rpade({"solve", "--preset", "quartic", "--g", "1"}).code == rpm::cli::kUsage);
  CHECK(rpade({"solve", "--potential", "k3=1"}).code == rpm::cli::kUsage);
  CHECK(rpade({"oracle-check", "nonsense"}).code == rpm::cli::kUsage);
  CHECK(rpade({}).code == rpm::cli::kUsage);
}

TEST_CASE("non-convergence exits 2") {
  const auto r = rpade({"solve", "--potential", "k2=1", "--dmax", "4", "--max-iters", "1",
                        "--seed", "1.3", "--digits", "40"});
  CHECK(r.code == rpm::cli::kNotConverged);
}

TEST_CASE("json output parses and carries the config hash") {
  const auto r = rpade({"solve", "--preset", "double-well", "--g", "3/10", "--dmax", "5",
                        "--target-digits", "8", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::ordered_json::parse(r.out);
  CHECK(j["config"]["problem"]["g"] == "3/10");
  CHECK(j["config_hash"].get<std::string>().size() == 16);
  CHECK(j.dump(2) + "\n" == r.out);
}

TEST_CASE("config file fills options and flags override it") {
  const std::string path = "rpade_test_config.txt";
  {
    std::ofstream f(path);
    f << "# double well\npreset = double-well\ng = 0.3\ndmax = 5\ntarget_digits = 8\nformat = json\n";
  }
  const auto from_file = rpade({"solve", "--config", path});
  REQUIRE(from_file.code == 0);
  CHECK(nlohmann::ordered_json::parse(from_file.out)["config"]["solver"]["D_max"] == 5);
  const auto overridden = rpade({"solve", "--config", path, "--dmax", "6"});
  REQUIRE(overridden.code == 0);
  CHECK(nlohmann::ordered_json::parse(overridden.out)["config"]["solver"]["D_max"] == 6);
  {
    std::ofstream f(path);
    f << "unknown_key = 1\n";
  }
  CHECK(rpade({"solve", "--config", path}).code == rpm::cli::kUsage);
  std::remove(path.c_str());
}

TEST_CASE("sweep rows follow input order") {
  const auto r = rpade({"sweep", "--preset", "double-well", "--g-list", "0.2,0.25,0.3", "--dmax", "5",
                        "--target-digits", "8", "--format", "csv", "--jobs", "2"});
  REQUIRE(r.code == 0);
  const auto first = r.out.find("1/5");
  const auto last = r.out.find("3/10");
  CHECK(first != std::string::npos);
  CHECK(last != std::string::npos);
  CHECK(first < last);
  CHECK(rpade({"sweep", "--preset", "double-well", "--g-list", "0.3,0.2"}).code == rpm::cli::kUsage);
}

TEST_CASE("oracle checks exit 0 on pass") {
  CHECK(rpade({"oracle-check", "two-route", "--preset", "triple-well", "--g", "7/50"}).code == 0);
  CHECK(rpade({"oracle-check", "determinant"}).code == 0);
  const auto rot = rpade({"oracle-check", "rotation", "--preset", "double-well", "--g", "0.30"});
  CHECK(rot.code == 0);
  CHECK(rot.out.find("rotation: pass") != std::string::npos);
}

TEST_CASE("reproduce 1 --diff passes") {
  const auto r = rpade({"reproduce", "1", "--diff"});
  CHECK(r.code == 0);
  CHECK(r.out.find("cells passing: 28/28") != std::string::npos);
}
