#include "doctest.h"

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <string>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run arbor(const std::string& args) {
  const std::string cmd = std::string(ARBOR_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("catalog") {
  const auto list = arbor("catalog list");
  CHECK(list.code == 0);
  CHECK(lines(list.out) == 5);
  const auto show = arbor("catalog show grigorchuk");
  CHECK(show.out.find("b = (a, c)\n") != std::string::npos);
  CHECK(arbor("catalog show nope").code == 64);
  const auto exported = arbor("catalog export odometer");
  CHECK(exported.out.find("\"name\": \"odometer\"") != std::string::npos);
}

TEST_CASE("spectrum csv") {
  const auto r = arbor("spectrum --action odometer --levels 1..3 --gens a");
  CHECK(r.code == 0);
  CHECK(lines(r.out) == 1 + 2 + 4 + 8);
  CHECK(r.out.starts_with("level,index,value\n"));
  CHECK(arbor("spectrum --action odometer --levels 1..3 --gens a").out == r.out);
}

TEST_CASE("checks and exit codes") {
  const auto kernel = arbor("check kernel --action grigorchuk --level 1 --radius 8 --depth 8");
  CHECK(kernel.code == 0);
  CHECK(kernel.out.starts_with("PASS"));
  const auto lsf = arbor("check lsf --action odometer --radius 3 --depth 6");
  CHECK(lsf.code == 0);
  CHECK(lsf.out.starts_with("Certified: vertex"));
  CHECK(arbor("check kernel --action odometer --level 1 --radius 6 --depth 4").code == 2);
  CHECK(arbor("check chain --action example6 --levels 3").code == 0);
  CHECK(arbor("check nesting --action aleshin --levels 0..4").code == 0);
  CHECK(arbor("coverage --action odometer --interval -1,1 --levels 1..4 --threshold 0.001").code == 1);
  CHECK(arbor("coverage --action odometer --interval -1,1 --levels 1..4").code == 0);
}

TEST_CASE("usage errors") {
  CHECK(arbor("").code == 64);
  CHECK(arbor("spectrum --action odometer").code == 64);
  CHECK(arbor("spectrum --action nope --levels 1..2").code == 64);
  CHECK(arbor("spectrum --action odometer --levels 3..1").code == 64);
  CHECK(arbor("coverage --action odometer --interval 1 --levels 1..2").code == 64);
  CHECK(arbor("run acceptance --only 99").code == 64);
}

TEST_CASE("json output") {
  const auto r = arbor("--format json check chain --action odometer --levels 4");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"status\": \"PASS\"") != std::string::npos);
  CHECK(r.out.find("\"indices\"") != std::string::npos);
  CHECK(arbor("--format json check chain --action odometer --levels 4").out == r.out);
}

TEST_CASE("machine files") {
  const auto r = arbor(std::string("schreier --action ") + ARBOR_MACHINES_DIR + "/odometer.json --level 2");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"11\" -> \"21\" [label=\"a\"];") != std::string::npos);
  const std::string bad = "/tmp/arbor_bad_machine.json";
  std::ofstream(bad) << R"({"name": "x", "shape": {"tail": [2]}, "states": [{"name": "a", "perm": [1, 1], "transitions": ["", ""]}]})";
  CHECK(arbor("schreier --action " + bad + " --level 1").code == 1);
}
