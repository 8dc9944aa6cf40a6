#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "extempore/analysis.hpp"
#include "extempore/interaction_log.hpp"

#include "../support/common.hpp"

namespace {

struct Result {
  int status;
  std::string out;
};

Result run(const std::string& args) {
  const std::string command = std::string(EXTEMPORE_CLI) + " " + args + " 2>&1";
  Result r{-1, {}};
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe);
  std::array<char, 4096> buffer{};
  while (auto n = fread(buffer.data(), 1, buffer.size(), pipe)) r.out.append(buffer.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string fixture(const std::string& name) { return std::string(EXTEMPORE_FIXTURE_DIR) + "/" + name; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("classify") {
    auto r = run("classify --log " + fixture("logs/democratic-senator.log.json"));
    CHECK(r.status == 0);
    CHECK(r.out == "OI\n");
    r = run("classify --tokens OIO");
    CHECK(r.out == "M OIO\n");
    r = run("classify --tokens OOI --format records");
    CHECK(nlohmann::json::parse(r.out)["class"] == "OI");
  }

  TEST_CASE("replay and classify agree with the library") {
    const auto& mini = testing_support::mini();
    for (const char* name : {"logs/democratic-senator.log.json", "logs/drill-down.log.json"}) {
      const auto replayed = run("replay --log " + fixture(name));
      REQUIRE(replayed.status == 0);
      std::ifstream in(fixture(name));
      std::stringstream text;
      text << in.rdbuf();
      const auto tokens =
          extempore::session_tokens(extempore::replay(mini.site, mini.vocabulary, extempore::parse_log(std::string_view(text.str()))).events());
      CHECK(replayed.out == extempore::to_string(tokens) + "\n");
      const auto cls = run("classify --tokens " + extempore::to_string(tokens));
      CHECK(run("classify --log " + fixture(name)).out == cls.out);
    }
  }

  TEST_CASE("mincount and orient") {
    auto r = run("mincount --site builtin:full-congress --task " + fixture("tasks/district-20.task.json"));
    CHECK(r.status == 0);
    CHECK(r.out == "in-turn-only 67\nout-of-turn-allowed 1\n");
    r = run("orient --site builtin:full-congress --task " + fixture("tasks/district-20.task.json"));
    CHECK(r.out == "out-of-turn-oriented\n");
    r = run("orient --site builtin:full-congress --task " + fixture("tasks/florida-17.task.json"));
    CHECK(r.out == "non-oriented\n");
  }

  TEST_CASE("curve and report") {
    auto r = run("curve --log " + fixture("logs/democratic-senator.log.json"));
    CHECK(r.out == "0 8\n1 3\n2 1\n3 1\n");
    r = run("report --format records --log " + fixture("logs/democratic-senator.log.json") + " --log " +
            fixture("logs/drill-down.log.json"));
    CHECK(r.status == 0);
    CHECK(r.out.find("\"record\":\"table\"") != std::string::npos);
  }

  TEST_CASE("interact prints each state") {
    const auto r = run("interact --log " + fixture("logs/democratic-senator.log.json"));
    CHECK(r.status == 0);
    CHECK(r.out.find("utterance \"Democrat\" [O]") != std::string::npos);
    CHECK(r.out.find("links: American Samoa | Georgia") != std::string::npos);
    CHECK(r.out.find("leaf: GA-SS") != std::string::npos);
  }

  TEST_CASE("exit codes") {
    auto r = run("validate --site " + fixture("invalid/duplicate-sibling.site.json"));
    CHECK(r.status == 3);
    CHECK(r.out.find("'Georgia'") != std::string::npos);
    CHECK(r.out.find("root") != std::string::npos);
    CHECK(run("validate --site " + fixture("mini-congress.site.json")).status == 0);
    CHECK(run("validate --site /does/not/exist.json").status == 2);
    CHECK(run("frobnicate").status == 1);
    CHECK(run("mincount --site builtin:mini-congress --task " + fixture("tasks/district-20.task.json")).status == 3);
    CHECK(run("classify --tokens ''").status == 1);
  }
}
