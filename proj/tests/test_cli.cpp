#include <cstdio>

#include "doctest.h"
#include "support.hpp"

using namespace movcat;
using namespace support;

namespace {

std::vector<std::string> split(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

CommandResult run(const std::string& line) { return run_cli(split(line)); }

Witness witness_from_json(const FinCategory& cat, const nlohmann::json& j) {
  Witness w{cat.object(j.at("target").get<std::string>()), cat.object(j.at("mover").get<std::string>()),
            cat.morphism(j.at("movability").get<std::string>()), {}};
  for (const auto& [p, u] : j.at("factors").items()) w.factors.emplace(cat.morphism(p), cat.morphism(u.get<std::string>()));
  return w;
}

} // namespace

TEST_CASE("golden command outputs") {
  std::istringstream list(read_file(std::string(MOVCAT_TEST_DIR) + "/golden/cli/commands.txt"));
  std::size_t count = 0;
  for (std::string line; std::getline(list, line);) {
    if (line.empty()) continue;
    const std::string name = line.substr(0, line.find(' '));
    const CommandResult r = run(line.substr(line.find(' ') + 1));
    const std::string expected = read_file(std::string(MOVCAT_TEST_DIR) + "/golden/cli/" + name + ".out");
    std::string actual = "exit " + std::to_string(r.status) + "\n" + r.output();
    if (actual.back() != '\n') actual += '\n';
    CAPTURE(name);
    CHECK(actual == expected);
    ++count;
  }
  CHECK(count >= 20);
}

TEST_CASE("exit-code contract") {
  CHECK(run("check-movable --cat FIX-A --object s1 --uniform").status == 1);
  CHECK(run("check-movable --cat FIX-A --object s1").status == 0);
  CHECK(run("theorem-check --exp FIX-EXP").status == 0);
  CHECK(run("theorem-check --exp AE2-BAD").status == 2);
  CHECK(run("system-check --system SOLENOID2 --uniform").status == 1);
  CHECK(run("expansion-check --exp FIX-EXP-AE1").status == 1);
  CHECK(run("frobnicate").status == 2);
  CHECK(run("check-movable --cat FIX-A --object s1 --bogus").status == 2);
  CHECK(run("check-movable --cat NOPE --object s1").status == 2);
  CHECK(run("check-movable --cat FIX-A --object s9").status == 2);
  CHECK(run("-w /nonexistent/file.ws validate").status == 2);
  CHECK(run("").status == 2);

  const CommandResult e = run("check-movable --cat NOPE --object s1 --json");
  CHECK(e.status == 2);
  CHECK(e.report.contains("error"));
}

TEST_CASE("JSON witnesses verify when read back") {
  std::size_t verified = 0;
  for (const auto& entry : fixtures().categories) {
    const FinCategory& cat = *entry.category;
    for (std::size_t o = 0; o < cat.object_count(); ++o)
      for (bool uniform : {false, true}) {
        const std::string cmd = "check-movable --cat " + entry.name + " --object " + cat.name(obj(o)) +
                                (uniform ? " --uniform" : "") + " --json";
        const CommandResult r = run(cmd);
        const auto j = nlohmann::json::parse(r.output());
        CAPTURE(cmd);
        CHECK(j.at("holds").get<bool>() == (r.status == 0));
        if (r.status != 0) continue;
        CHECK(verify_witness(cat, witness_from_json(cat, j.at("witness")), uniform).ok());
        ++verified;
      }
  }
  CHECK(verified > 10);
}

TEST_CASE("generated workspace validates through the command line") {
  const std::string path = "cli_gen_test.ws";
  const CommandResult g = run("gen --seed 5 --objects 3");
  REQUIRE(g.status == 0);
  {
    std::ofstream out(path);
    out << g.output();
  }
  CHECK(run("-w " + path + " validate").status == 0);
  CHECK(run("gen --seed 5 --objects 3").output() == g.output());
  std::remove(path.c_str());
}
