#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "rvl/catalog.hpp"
#include "rvl/json_io.hpp"

using namespace rvl;

namespace {

struct RunResult {
  int exitCode = -1;
  std::string out;
};

const char* cliPath() { return std::getenv("RVL_CLI_PATH"); }

RunResult runCli(const std::string& args) {
  const std::string cmd = std::string("\"") + cliPath() + "\" " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct TempFile {
  std::string path;
  TempFile(const std::string& name, const std::string& contents) : path(name) {
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

// The CLI binary location is handed to the test run by the build; absent
// (e.g. running the test binary by hand from elsewhere), skip quietly.
#define NEED_CLI()                                        \
  do {                                                    \
    if (cliPath() == nullptr) {                           \
      MESSAGE("RVL_CLI_PATH not set; skipping CLI test"); \
      return;                                             \
    }                                                     \
  } while (0)

}  // namespace

TEST_CASE("tables report for three voters") {
  NEED_CLI();
  const RunResult r = runCli("tables --n 3 --format json");
  CHECK(r.exitCode == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["all_passed"] == true);
  for (const Json& a : j["assertions"]) {
    CAPTURE(a["name"].get<std::string>());
    CHECK(a["pass"] == true);
  }
  CHECK(r.out.find("35/57") != std::string::npos);
  CHECK(r.out.find("2/3") != std::string::npos);

  const RunResult csv = runCli("tables --n 3 --format csv");
  CHECK(csv.exitCode == 0);
  CHECK(csv.out.find(',') != std::string::npos);
  CHECK(runCli("tables --n 3 --format yaml").exitCode != 0);
}

TEST_CASE("certification subcommand exits clean on a passing theorem") {
  NEED_CLI();
  const RunResult r = runCli("certify --theorem 4");
  CHECK(r.exitCode == 0);
  CHECK(r.out.find("4095") != std::string::npos);
}

TEST_CASE("eval on files and fixtures") {
  NEED_CLI();
  const TempFile mech("cli_test_mech.json", R"("quadratic-lottery")");
  const TempFile prof("cli_test_prof.json",
                      R"({"m":3,"n":2,"voters":[["1","1/2","0"],["0","1","1/4"]]})");
  const RunResult r =
      runCli("eval --mechanism " + mech.path + " --profile " + prof.path);
  CHECK(r.exitCode == 0);
  CHECK(r.out.find("23/64") != std::string::npos);
  CHECK(r.out.find("95/192") != std::string::npos);

  const TempFile rm("cli_test_rm.json", R"("random-majority")");
  const RunResult fx = runCli("eval --mechanism " + rm.path + " --fixture thm6#1");
  CHECK(fx.exitCode == 0);
  CHECK(fx.out.find("1816/2163") != std::string::npos);

  // Sampling audits are defined on finite profiles, not limit fixtures.
  CHECK(runCli("eval --mechanism " + rm.path + " --fixture thm6#1 --audit 3").exitCode == 2);
  CHECK(runCli("eval --mechanism " + rm.path + " --profile no_such_file.json").exitCode == 2);
  const RunResult audited = runCli("eval --mechanism " + rm.path + " --profile " +
                                   prof.path + " --audit 3 --seed 7");
  CHECK(audited.exitCode == 0);
}

TEST_CASE("pessimize slides a profile to its quasi-combinatorial floor") {
  NEED_CLI();
  const TempFile mech("cli_test_mix.json",
                      R"({"mix":[["3/4",{"unilateral":3}],["1/4",{"unilateral":1}]]})");
  const TempFile prof("cli_test_prof2.json",
                      R"({"m":3,"n":2,"voters":[["1","1/2","0"],["0","1","1/4"]]})");
  const RunResult r = runCli("pessimize --mechanism " + mech.path + " --profile " +
                             prof.path + " --k 20");
  CHECK(r.exitCode == 0);
  CHECK(r.out.find("25/32") != std::string::npos);
}

TEST_CASE("solve-game over full and catalogue columns") {
  NEED_CLI();
  const RunResult full = runCli("solve-game --family O --m 3 --n 2");
  CHECK(full.exitCode == 0);
  CHECK(full.out.find("2/3") != std::string::npos);

  Json cat = Json::array();
  for (const TypeProfile& tp : thm6Catalogue()) cat.push_back(typeProfileToJson(tp));
  const TempFile catFile("cli_test_catalogue.json", cat.dump());
  const RunResult restricted =
      runCli("solve-game --family OU --m 3 --n 23000 --catalogue " + catFile.path);
  CHECK(restricted.exitCode == 0);
  CHECK(restricted.out.find("26/41") != std::string::npos);
  // --n stays mandatory alongside a catalogue, and must match its columns.
  CHECK(runCli("solve-game --family OU --m 3 --catalogue " + catFile.path).exitCode != 0);
  CHECK(runCli("solve-game --family OU --m 3 --n 5 --catalogue " + catFile.path).exitCode == 2);
}
