#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "cli.hpp"

#ifndef XXZPATH_GOLDEN_DIR
#error "XXZPATH_GOLDEN_DIR must be defined"
#endif

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = xxz::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Compares with tests/golden/<name>; XXZPATH_UPDATE_GOLDEN=1 rewrites it.
void check_golden(const std::string& name, const std::vector<std::string>& args,
                  int expected_code = 0) {
  const Result r = run(args);
  CHECK(r.code == expected_code);
  const std::filesystem::path path = std::filesystem::path(XXZPATH_GOLDEN_DIR) / name;
  if (std::getenv("XXZPATH_UPDATE_GOLDEN") != nullptr) {
    std::ofstream(path) << r.out;
    return;
  }
  REQUIRE_MESSAGE(std::filesystem::exists(path), "missing golden file " << path);
  CHECK(r.out == read_file(path));
}

nlohmann::json json_of(const std::vector<std::string>& args) {
  const Result r = run(args);
  REQUIRE(r.code == 0);
  return nlohmann::json::parse(r.out);
}

}  // namespace

TEST_CASE("golden outputs") {
  check_golden("partition_2_1.json", {"partition", "--n", "2", "--m", "1"});
  check_golden("partition_3_3_eval.csv",
               {"partition", "--n", "3", "--m", "3", "--eval", "1/2", "--format", "csv"});
  check_golden("partition_3_2_float.json",
               {"partition", "--n", "3", "--m", "2", "--recursive", "--eval", "0.3", "--float"});
  check_golden("correlate_2_2_exact.json",
               {"correlate", "--n", "2", "--m", "2", "--sites", "3:down,4:down", "--eval", "1/2"});
  check_golden("correlate_1_1_symbolic.json",
               {"correlate", "--n", "1", "--m", "1", "--sites", "2:down", "--exact"});
  check_golden("correlate_3_3_pair.csv", {"correlate", "--n", "3", "--m", "3", "--sites",
                                          "4:down,5:up", "--eval", "3/10", "--format", "csv"});
  check_golden("fluctuations_8_4.json", {"fluctuations", "--N", "8", "--L", "4", "--q", "1/2"});
  check_golden("fluctuations_8_4_float.csv", {"fluctuations", "--N", "8", "--L", "4", "--q",
                                              "0.5", "--float", "--format", "csv"});
  check_golden("sample_4_4.txt",
               {"sample", "--n", "4", "--m", "4", "--q", "1/2", "--count", "8", "--seed", "42"});
  check_golden("sample_2_3.json", {"sample", "--n", "2", "--m", "3", "--q", "2/3", "--count",
                                   "3", "--seed", "1", "--format", "json"});
  check_golden("reduce2d_3_3_k3.json",
               {"reduce2d", "--N", "3", "--M", "3", "--k", "3", "--check"});
  check_golden("reduce2d_2_2_all.csv",
               {"reduce2d", "--N", "2", "--M", "2", "--all", "--format", "csv"});
  check_golden("verify_identities_4.json", {"verify", "identities", "--max-nm", "4"});
}

TEST_CASE("partition result matches the oracle value") {
  const auto j = json_of({"partition", "--n", "2", "--m", "1"});
  CHECK(j["result"].dump() == R"([[6,"1"],[8,"1"],[10,"1"]])");
  CHECK(j["version"] == "0.1.0");
  CHECK(j["q_mode"] == "symbolic");
  CHECK(j["config"]["n"] == 2);
  for (const char* method : {"--recursive", "--oracle", "--closed"}) {
    CHECK(json_of({"partition", "--n", "2", "--m", "1", method})["result"] == j["result"]);
  }
}

TEST_CASE("verify identities passes") {
  const auto j = json_of({"verify", "identities", "--max-nm", "8"});
  CHECK(j["result"]["passed"] == true);
  std::set<std::string> covered;
  for (const auto& r : j["result"]["records"]) covered.insert(r["name"].get<std::string>());
  CHECK(covered.count("q_pascal_upper_corner") == 1);
  CHECK(covered.count("q_pascal_lower_corner") == 1);
  CHECK(covered.count("markov_cut") == 1);
  CHECK(covered.count("translation_to_origin") == 1);
  CHECK(covered.count("time_reversal_symmetry") == 1);
}

TEST_CASE("reduce2d lists the three composition sets") {
  const auto j = json_of({"reduce2d", "--N", "3", "--M", "3", "--k", "3", "--check"});
  const auto& entry = j["result"]["entries"][0];
  CHECK(entry["compositions"].dump() == "[[2,0,0,1],[1,1,1,0],[0,3,0,0]]");
  CHECK(entry["multinomials"].dump() == R"(["3","6","1"])");
  CHECK(j["result"]["check"]["passed"] == true);
}

TEST_CASE("correlate reports probability, bound and verdict") {
  const auto j = json_of(
      {"correlate", "--n", "2", "--m", "2", "--sites", "3:down,4:down", "--eval", "1/2"});
  CHECK(j["result"]["probability"] == "1/357");
  CHECK(j["result"]["bound"] == "1/256");
  CHECK(j["result"]["bound_holds"] == true);
  CHECK(j["q_mode"] == "exact");
}

TEST_CASE("usage errors exit with 2 and name the precondition") {
  auto expect = [](const std::vector<std::string>& args, const std::string& fragment) {
    const Result r = run(args);
    CHECK(r.code == 2);
    CHECK_MESSAGE(r.err.find(fragment) != std::string::npos, r.err);
    CHECK(r.out.empty());
  };
  expect({"partition", "--n", "2"}, "--m is required");
  expect({"partition", "--n", "-1", "--m", "2"}, "--n");
  expect({"partition", "--n", "2", "--m", "1", "--eval", "0.5"}, "exact q must be a rational");
  expect({"partition", "--n", "2", "--m", "1", "--eval", "3/2"}, "q must lie strictly in (0,1)");
  expect({"partition", "--n", "1", "--m", "1", "--closed", "--oracle"}, "excludes");
  expect({"correlate", "--n", "1", "--m", "1", "--sites", "1:down,2:down"},
         "more down spins than n");
  expect({"correlate", "--n", "1", "--m", "1", "--sites", "3:down"}, "beyond chain length");
  expect({"correlate", "--n", "1", "--m", "1", "--sites", "1:down", "--eval", "1/2", "--exact"},
         "excludes");
  expect({"fluctuations", "--N", "7", "--L", "2", "--q", "1/2"}, "N must be even");
  expect({"sample", "--n", "2", "--m", "2", "--q", "1/2", "--count", "0"}, "--count");
  expect({"reduce2d", "--N", "2", "--M", "2"}, "--k or --all");
  expect({"reduce2d", "--N", "2", "--M", "2", "--k", "9"}, "outside");
  expect({"verify", "everything"}, "suite");
  expect({"partition", "--n", "30", "--m", "30", "--oracle"}, "cap");
  expect({}, "subcommand");
}

TEST_CASE("help and version exit 0") {
  CHECK(run({"--help"}).code == 0);
  const Result v = run({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out.find("0.1.0") != std::string::npos);
}

TEST_CASE("identical config and seed give identical bytes") {
  const std::vector<std::string> args{"sample", "--n", "5", "--m", "4", "--q",
                                      "3/5", "--count", "50", "--seed", "9"};
  CHECK(run(args).out == run(args).out);
}

TEST_CASE("sweep emits one ordered record per grid point") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto config = dir / "xxzpath_sweep_test.cfg";
  std::ofstream(config) << "# two sectors, two queries\n"
                           "command = correlate\n"
                           "n = 2 3\n"
                           "m = 2\n"
                           "sites = 4:down 1:up\n"
                           "eval = 1/2\n";
  const Result one = run({"sweep", "--config", config.string(), "--jobs", "1"});
  const Result four = run({"sweep", "--config", config.string(), "--jobs", "4"});
  CHECK(one.code == 0);
  CHECK(one.out == four.out);
  std::istringstream lines(one.out);
  std::vector<nlohmann::json> records;
  for (std::string line; std::getline(lines, line);) records.push_back(nlohmann::json::parse(line));
  REQUIRE(records.size() == 4);
  CHECK(records[0]["point"]["n"] == "2");
  CHECK(records[0]["point"]["sites"] == "4:down");
  CHECK(records[1]["point"]["sites"] == "1:up");
  CHECK(records[2]["point"]["n"] == "3");
  CHECK(records[0]["output"]["result"]["probability"] == "1/17");
  for (std::size_t i = 0; i < records.size(); ++i) CHECK(records[i]["index"] == i);

  std::ofstream(config) << "command = correlate\nn = 1\nm = 1\nsites = 1:down,2:down 2:down\n";
  const Result mixed = run({"sweep", "--config", config.string()});
  CHECK(mixed.code == 2);
  CHECK(mixed.out.find("more down spins than n") != std::string::npos);

  std::ofstream(config) << "n = 1\n";
  CHECK(run({"sweep", "--config", config.string()}).code == 2);
  std::filesystem::remove(config);
}
