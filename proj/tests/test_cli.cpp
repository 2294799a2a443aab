// End-to-end tests that drive the installed command-line binary through a
// shell, checking exit codes and exact output shapes.  The binary path and
// fixture directory arrive as compile definitions from the build.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "macfaces/counting.hpp"

namespace {

struct RunResult {
  int code = -1;
  std::string output;  // stdout and stderr interleaved
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(MACFACES_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0)
    result.output.append(buf, n);
  const int status = ::pclose(pipe);
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  result.code = WEXITSTATUS(status);
  return result;
}

std::string fx(const char* name) {
  return std::string(MACFACES_FIXTURES_DIR) + "/" + name;
}

std::size_t count_lines(const std::string& text) {
  std::size_t lines = 0;
  for (char c : text)
    if (c == '\n') ++lines;
  return lines;
}

}  // namespace

TEST_CASE("info prints the channel summary and all sum-rate bounds") {
  const RunResult r = run("info " + fx("adder2.json"));
  CHECK(r.code == 0);
  CHECK(r.output.find("users: 2") != std::string::npos);
  CHECK(r.output.find("{1}: 1.000000") != std::string::npos);
  CHECK(r.output.find("{1,2}: 1.500000") != std::string::npos);
}

TEST_CASE("check classifies the shipped channels") {
  SUBCASE("adders pass") {
    for (const char* name : {"adder2.json", "adder3.json",
                             "adder3_biased.json"}) {
      const RunResult r = run("check " + fx(name));
      CHECK(r.code == 0);
      CHECK(r.output.find("nondegenerate") != std::string::npos);
    }
  }
  SUBCASE("the modulo channel trips condition 1") {
    const RunResult r = run("check " + fx("xor2.json"));
    CHECK(r.code == 1);
    CHECK(r.output.find("condition 1 violated") != std::string::npos);
  }
  SUBCASE("the orthogonal channel trips condition 2") {
    const RunResult r = run("check " + fx("parallel2.json"));
    CHECK(r.code == 1);
    CHECK(r.output.find("condition 2 violated") != std::string::npos);
  }
  SUBCASE("a wide margin flags even a clean channel") {
    CHECK(run("check --margin 0.6 " + fx("adder2.json")).code == 1);
  }
  SUBCASE("json form parses") {
    const RunResult r = run("check --json " + fx("xor2.json"));
    CHECK(r.code == 1);
    const nlohmann::json j = nlohmann::json::parse(r.output);
    CHECK(j.at("nondegenerate") == false);
  }
}

TEST_CASE("faces lists one line per label, matching the closed form") {
  for (int users = 1; users <= 6; ++users) {
    macfaces::counting::BigInt want = 0;
    for (int d = 0; d <= users; ++d)
      want += macfaces::counting::count_total(users, d);
    const RunResult r = run("faces --users " + std::to_string(users));
    CHECK(r.code == 0);
    CHECK(macfaces::counting::BigInt(count_lines(r.output)) == want);
  }
  SUBCASE("every line is a label with its decoding order") {
    const RunResult r = run("faces --users 2");
    CHECK(r.output.find("F({1,2}>{1}|)  dim=0  order=[{2},{1}]") !=
          std::string::npos);
    CHECK(r.output.find("F(|)  dim=2  order=[{1,2}]") != std::string::npos);
  }
  SUBCASE("--dim filters") {
    const RunResult r = run("faces --users 3 --dim 0");
    CHECK(r.code == 0);
    CHECK(count_lines(r.output) == 16);
  }
  SUBCASE("per-dimension line counts equal the per-dimension counts") {
    for (int users = 1; users <= 6; ++users) {
      for (int dim = 0; dim <= users; ++dim) {
        const std::string m = std::to_string(users);
        const std::string d = std::to_string(dim);
        const RunResult faces = run("faces --users " + m + " --dim " + d);
        const RunResult count = run("count --users " + m + " --dim " + d);
        CHECK(faces.code == 0);
        CHECK(count.code == 0);
        CHECK(std::to_string(count_lines(faces.output)) + "\n" ==
              count.output);
      }
    }
  }
  SUBCASE("a channel file fixes the user count after a degeneracy check") {
    CHECK(count_lines(run("faces " + fx("adder2.json")).output) == 11);
    CHECK(run("faces " + fx("xor2.json")).code == 1);
  }
}

TEST_CASE("count emits the closed-form counts") {
  SUBCASE("single user count: one line, dimensions ascending") {
    const RunResult r = run("count --users 3");
    CHECK(r.code == 0);
    CHECK(r.output == "D=0:16 D=1:24 D=2:10 D=3:1\n");
  }
  SUBCASE("table as CSV") {
    const RunResult r = run("count --table 4");
    CHECK(r.code == 0);
    std::istringstream in(r.output);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "M,D,N_total,N_dominant,N_front,N_back");
    // Header plus one row per (M, D) pair with 0 <= D <= M.
    CHECK(count_lines(r.output) == 1 + 2 + 3 + 4 + 5);
    CHECK(r.output.find("3,0,16,6,6,10") != std::string::npos);
  }
  SUBCASE("json form parses") {
    const nlohmann::json j =
        nlohmann::json::parse(run("count --users 4 --json").output);
    CHECK(j.at("total") ==
          nlohmann::json::parse(R"(["65", "130", "84", "19", "1"])"));
  }
}

TEST_CASE("locate names the minimal face or the violated bound") {
  SUBCASE("a dominant-face corner") {
    const RunResult r = run("locate " + fx("adder2.json") + " --rate 1.0,0.5");
    CHECK(r.code == 0);
    CHECK(r.output ==
          "F({1,2}>{1}|)\n"
          "dim=0\n"
          "order=[{2},{1}]\n");
  }
  SUBCASE("an unachievable tuple reports the violated constraint") {
    const RunResult r = run("locate " + fx("adder2.json") + " --rate 1.6,0.2");
    CHECK(r.code == 1);
    CHECK(r.output.find("not achievable") != std::string::npos);
  }
  SUBCASE("json form parses") {
    const nlohmann::json j = nlohmann::json::parse(
        run("locate --json " + fx("adder2.json") + " --rate 0.1,0.2").output);
    CHECK(j.at("achievable") == true);
    CHECK(j.at("label") == "F(|)");
  }
}

TEST_CASE("vertices prints bare coordinate tuples") {
  const RunResult r = run("vertices " + fx("adder2.json"));
  CHECK(r.code == 0);
  CHECK(count_lines(r.output) == 5);
  CHECK(r.output.find("(0.000000000, 0.000000000)\n") == 0);
  CHECK(r.output.find("(0.500000000, 1.000000000)") != std::string::npos);
}

TEST_CASE("verify cross-checks the label calculus against brute force") {
  SUBCASE("clean channels pass") {
    const RunResult r = run("verify " + fx("adder2.json"));
    CHECK(r.code == 0);
    CHECK(r.output.find("per-dim faces: lattice [5,5,1] vs formulas [5,5,1]"
                        " (match)") != std::string::npos);
    CHECK(r.output.find("labels: 11/11 matched") != std::string::npos);
    CHECK(r.output.find("PASS\n") != std::string::npos);
  }
  SUBCASE("degenerate channels are refused") {
    CHECK(run("verify " + fx("xor2.json")).code == 1);
  }
  SUBCASE("json form parses") {
    const nlohmann::json j = nlohmann::json::parse(
        run("verify --json " + fx("adder3_biased.json")).output);
    CHECK(j.at("clean") == true);
    CHECK(j.at("lattice_counts") == nlohmann::json::parse("[16, 24, 10, 1]"));
  }
}

TEST_CASE("lattice writes Graphviz DOT") {
  const std::filesystem::path out =
      std::filesystem::temp_directory_path() / "macfaces_cli_lattice.dot";
  std::filesystem::remove(out);
  const RunResult r = run("lattice --users 3 --dot " + out.string());
  CHECK(r.code == 0);
  CHECK(r.output.find("51 nodes") != std::string::npos);
  std::ifstream in(out);
  REQUIRE(in.good());
  std::string first;
  std::getline(in, first);
  CHECK(first.find("digraph") != std::string::npos);
  std::filesystem::remove(out);

  SUBCASE("user cap") {
    CHECK(run("lattice --users 7 --dot /dev/null").code == 2);
  }
}

TEST_CASE("usage and input errors exit with code 2") {
  CHECK(run("").code == 2);                      // missing subcommand
  CHECK(run("--no-such-flag").code == 2);        // unknown option
  CHECK(run("count").code == 2);                 // neither --users nor --max
  CHECK(run("count --users 2 --table 3").code == 2);
  CHECK(run("count --table 3 --dim 1").code == 2);  // --dim needs --users
  CHECK(run("count --users 2 --dim 0 --json").code == 2);
  CHECK(run("faces").code == 2);                 // no channel and no --users
  CHECK(run("faces --users 3 " + fx("adder2.json")).code == 2);
  CHECK(run("locate " + fx("adder2.json")).code == 2);  // --rate required
  CHECK(run("locate " + fx("adder2.json") + " --rate 0.1,hi").code == 2);
  CHECK(run("locate " + fx("adder2.json") + " --rate 0.1").code == 2);
  CHECK(run("info /nonexistent.json").code == 2);
  CHECK(run("count --users 30").code == 2);      // beyond the counting cap
  CHECK(run("--help").code == 0);                // help is a success path
}
