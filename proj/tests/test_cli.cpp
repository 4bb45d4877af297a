#include "doctest.h"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " '" MONORES_CLI_PATH "' " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[65536];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string tmp_path(const char* name) { return std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/" + name; }

}  // namespace

TEST_CASE("cli: resolve emits a schema 1 atlas and exits 0") {
  Run r = cli("resolve -n 2 'x1^2 - x2^2'");
  CHECK(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["verification"]["ok"] == true);
  CHECK(!j["charts"].empty());
  CHECK(j["charts"][0].contains("steps"));
}

TEST_CASE("cli: input errors exit 1") {
  CHECK(cli("resolve -n 2 '0'").status == 1);
  CHECK(cli("resolve -n 2 'x3'").status == 1);
  CHECK(cli("resolve -n 2 'x1 +'").status == 1);
  CHECK(cli("resolve").status == 1);
  CHECK(cli("frobnicate").status == 1);
  CHECK(cli("resolve -n 2 x1 --norm padic:4").status == 1);
}

TEST_CASE("cli: chart budget exits 2") { CHECK(cli("resolve -n 2 'x1^2 - x2^2' --max-charts 2").status == 2); }

TEST_CASE("cli: MONORES_SEED overrides --seed") {
  const Run a = cli("resolve -n 2 'x2^2 + 2*x1*x2 + x1^3' --seed 1", "MONORES_SEED=7");
  const Run b = cli("resolve -n 2 'x2^2 + 2*x1*x2 + x1^3' --seed 7");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(nlohmann::json::parse(a.out)["config"]["seed"] == 7);
}

TEST_CASE("cli: a stored atlas re-verifies to the embedded report") {
  const Run r = cli("resolve -n 2 'x1^2*x2 + x2^3'");
  REQUIRE(r.status == 0);
  const std::string path = tmp_path("monores_cli_atlas.json");
  std::ofstream(path) << r.out;
  const Run v = cli("verify --atlas '" + path + "'");
  CHECK(v.status == 0);
  auto embedded = nlohmann::json::parse(r.out)["verification"];
  auto again = nlohmann::json::parse(v.out)["reports"][0];
  CHECK(embedded == again);
  std::remove(path.c_str());
}

TEST_CASE("cli: polyhedron with svg, order and regions") {
  const std::string svg = tmp_path("monores_cli_polygon.svg");
  const Run p = cli("polyhedron -n 2 'x1^2*x2 + x2^3' --svg '" + svg + "'");
  CHECK(p.status == 0);
  auto j = nlohmann::json::parse(p.out);
  CHECK(j["vertices"] == nlohmann::json::parse("[[0,3],[2,1]]"));
  CHECK(j["newton_distance"] == "3/2");
  std::ifstream in(svg);
  std::string first;
  std::getline(in, first);
  CHECK(first.rfind("<svg", 0) == 0);
  std::remove(svg.c_str());

  const Run o = cli("order 2,0 1,1 0,3");
  CHECK(o.status == 0);
  auto t = nlohmann::json::parse(o.out);
  CHECK(t["leaves"].size() >= 2);
  CHECK(cli("order 2,0 1").status == 1);

  const Run g = cli("regions -n 2 'x1^2*x2 + x2^3' --samples 100");
  CHECK(g.status == 0);
  auto rj = nlohmann::json::parse(g.out);
  CHECK(rj["theorem"]["violations_a"] == 0);
  CHECK(!rj["regions"].empty());
}

TEST_CASE("cli: verify suites") {
  const Run v = cli("verify --suite fixtures --samples 200");
  CHECK(v.status == 0);
  CHECK(nlohmann::json::parse(v.out)["ok"] == true);
  CHECK(cli("verify --suite nonsense").status == 1);
}
