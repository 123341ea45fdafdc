#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "test_support.hpp"

using namespace hexpst;
using namespace hexpst::testing;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "hexpst_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("build dumps the graph and validates") {
    const Result r = run({"build", data_path("hexagon.json")});
    CHECK(r.code == cli::kPass);
    CHECK(r.out.rfind("# hexpst.graph/1", 0) == 0);
    CHECK(r.out.find("# validation ok") != std::string::npos);

    const Result t = run({"build", data_path("hexagon.json"), "--format", "triplets"});
    CHECK(t.code == cli::kPass);
    CHECK(t.out.rfind("# hexpst.triplets/1", 0) == 0);

    CHECK(run({"build", data_path("hexagon.json"), "--format", "xml"}).code == cli::kSpecError);
  }

  TEST_CASE("spec errors exit with 2") {
    const Result r = run({"build", data_path("bad_connector.json")});
    CHECK(r.code == cli::kSpecError);
    CHECK(r.err.find("connector 0") != std::string::npos);
    CHECK(run({"build", data_path("nope.json")}).code == cli::kSpecError);
    CHECK(run({"frobnicate"}).code == cli::kSpecError);
    CHECK(run({"route", data_path("hexagon.json"), "--from", "0,0,0"}).code == cli::kSpecError);
    CHECK(run({"route", data_path("hexagon.json"), "--from", "0,0", "--to", "0,1,2"}).code == cli::kSpecError);
    CHECK(run({"route", data_path("hexagon.json"), "--from", "0,0,0", "--to", "0,9,9"}).code == cli::kSpecError);
    const fs::path unknown = write_file("unknown_field.json", R"({"schema": "hexpst.lattice/1", "colour": 3})");
    CHECK(run({"build", unknown.string()}).code == cli::kSpecError);
  }

  TEST_CASE("verify-blocks prints the census") {
    const Result r = run({"verify-blocks", data_path("hexagon.json")});
    CHECK(r.code == cli::kPass);
    CHECK(r.out.find("2-chains: 6, 3-chains: 6, isolated: 6") != std::string::npos);

    const Result two = run({"verify-blocks", data_path("two_planes.json")});
    CHECK(two.code == cli::kPass);
    CHECK(two.out.find("inter-plane 3-chains: 1") != std::string::npos);

    const Result j = run({"verify-blocks", data_path("hexagon.json"), "--json"});
    const auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["schema"] == "hexpst.chain_inventory/1");
    CHECK(doc["census"]["three_chain"] == 6);
  }

  TEST_CASE("a perturbed Hamiltonian is a structure violation") {
    const Result r = run({"verify-blocks", data_path("hexagon.json"), "--perturb", "0,30,0.001"});
    CHECK(r.code == cli::kStructureViolation);
    CHECK_FALSE(r.err.empty());
  }

  TEST_CASE("verify-chains passes all four checks") {
    const Result r = run({"verify-chains", "--max-n", "12"});
    CHECK(r.code == cli::kPass);
    int pass_lines = 0;
    std::istringstream in(r.out);
    for (std::string line; std::getline(in, line);) pass_lines += line.rfind("PASS ", 0) == 0;
    CHECK(pass_lines == 4);
  }

  TEST_CASE("route reports a passing transfer") {
    const Result r = run({"route", data_path("hexagon.json"), "--from", "0,0,0", "--to", "0,1,2"});
    REQUIRE(r.code == cli::kPass);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["schema"] == "hexpst.transfer_report/1");
    CHECK(doc["n_three_chain_hops"] == 3);
    CHECK(doc["total_duration"] == "2t0+3t1");
    CHECK(doc["verdict"] == "pass");

    const Result again = run({"route", data_path("hexagon.json"), "--from", "0,0,0", "--to", "0,1,2"});
    CHECK(again.out == r.out);
  }

  TEST_CASE("route exit codes") {
    CHECK(run({"route", data_path("hexagon.json"), "--from", "0,0,0", "--to", "0,1,2", "--faults", "0,0,1", "0,1,0"})
              .code == cli::kUnroutable);
    CHECK(run({"route", data_path("hexagon_faulty.json"), "--from", "0,0,0", "--to", "0,0,2"}).code == cli::kPass);
    CHECK(run({"route", data_path("hexagon_faulty.json"), "--from", "0,0,0", "--to", "0,0,2", "--faults"}).code ==
          cli::kPass);
    CHECK(run({"route", data_path("hexagon.json"), "--from", "0,0,0", "--to", "0,1,2", "--delay-pulse", "1", "2t1"})
              .code == cli::kPass);
    CHECK(run({"route", data_path("hexagon.json"), "--from", "0,0,0", "--to", "0,1,2", "--delay-pulse", "1", "t1"})
              .code == cli::kVerdictFail);
    CHECK(run({"route", data_path("hexagon.json"), "--from", "0,0,0", "--to", "0,1,2", "--delay-pulse", "1", "soon"})
              .code == cli::kSpecError);
    CHECK(run({"route", data_path("two_planes.json"), "--from", "0,1,2", "--to", "0,0,0"}).code == cli::kSpecError);
  }

  TEST_CASE("route writes report and trajectory files") {
    const fs::path report = scratch("report.json");
    const fs::path csv = scratch("trajectory.csv");
    const Result r = run({"route", data_path("hexagon.json"), "--from", "0,0,0", "--to", "0,0,1", "-o", report.string(),
                          "--trajectory", csv.string(), "--samples-per-t1", "4"});
    CHECK(r.code == cli::kPass);
    CHECK(r.out.empty());
    std::ifstream f(report);
    CHECK(nlohmann::json::parse(f)["verdict"] == "pass");
    std::ifstream c(csv);
    std::string header;
    std::getline(c, header);
    CHECK(header == "time,site,label,re,im");
  }

  TEST_CASE("tolerance override from the environment") {
    ::setenv(cli::kToleranceEnv, "1e-3", 1);
    const Result r = run({"route", data_path("hexagon.json"), "--from", "0,0,0", "--to", "0,0,1"});
    CHECK(nlohmann::json::parse(r.out)["tolerance"]["modulus"] == 1e-3);
    ::setenv(cli::kToleranceEnv, "abc", 1);
    CHECK(run({"route", data_path("hexagon.json"), "--from", "0,0,0", "--to", "0,0,1"}).code == cli::kSpecError);
    ::unsetenv(cli::kToleranceEnv);
  }

  TEST_CASE("sweep covers every ordered head pair") {
    const Result r = run({"sweep", data_path("hexagon.json"), "--workers", "2"});
    CHECK(r.code == cli::kPass);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["schema"] == "hexpst.sweep_report/1");
    CHECK(doc["runs"] == 30);
    CHECK(doc["passed"] == 30);
    CHECK(doc["min_modulus"].get<double>() >= 1.0 - 1e-9);

    const Result faults = run({"sweep", data_path("hexagon.json"), "--single-faults", "--unordered"});
    const auto fdoc = nlohmann::json::parse(faults.out);
    CHECK(fdoc["runs"] == 15 * 4);
    CHECK(fdoc["failed"] == 0);
    CHECK(faults.code == cli::kPass);
    CHECK(run({"sweep", data_path("hexagon.json"), "--single-faults", "--unordered", "--strict"}).code == cli::kPass);
    CHECK(run({"sweep", data_path("hexagon_faulty.json"), "--strict"}).code == cli::kUnroutable);
  }

  TEST_CASE("an empty head list is valid") {
    const fs::path spec =
        write_file("no_heads.json", R"({"schema": "hexpst.lattice/1", "rw_head_policy": "listed", "rw_heads": []})");
    CHECK(run({"build", spec.string()}).code == cli::kPass);
    const Result s = run({"sweep", spec.string()});
    CHECK(s.code == cli::kPass);
    CHECK(nlohmann::json::parse(s.out)["runs"] == 0);
  }
}
