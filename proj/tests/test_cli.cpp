#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "aal/io.hpp"
#include "aal/reproduce.hpp"

using namespace aal;

namespace {

struct Run {
  int rc;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(AALCHECK_BIN) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

bool has(const Run& r, const std::string& s) { return r.out.find(s) != std::string::npos; }

}  // namespace

TEST_CASE("fg command") {
  auto r = run("fg --algebra WK3 --logic PWK --gen \"\"");
  CHECK(r.rc == 0);
  CHECK(has(r, "= {1,½}"));
  CHECK(has(r, "C0 = {}"));
  r = run("fg --algebra WK3 --logic PWK --gen carrier");
  CHECK(has(r, "= {0,1,½}"));
  r = run("fg --algebra L4 --logic LUK --gen 2");
  CHECK(r.rc == 0);
  CHECK(has(r, "= {0,⅓,⅔,1}"));
  CHECK(has(r, "C0 = {⅔}"));
  r = run("fg --algebra L4 --logic LUK --gen 2 --format json");
  auto j = json::parse(r.out);
  CHECK(j["filter"].size() == 4);
}

TEST_CASE("check command exit codes") {
  CHECK(run("check edcf --logic KL --candidate kl-global --testbed k3-isp").rc == 0);
  auto f = run("check fdc --logic PWK --generators WK3 --arity 2");
  CHECK(f.rc == 1);
  CHECK(has(f, "<½,0>"));
  CHECK(has(f, "<1,0>"));
  CHECK(has(f, "replay:   check fdc"));
  auto m = run("check minrelcong --algebra box5 --class alpha12 --logic ONE");
  CHECK(m.rc == 1);
  CHECK(has(m, "minimal:"));
  CHECK(run("check edcf --logic KL --candidate nope --testbed k3-isp").rc == 2);
  CHECK(run("check bogus --logic KL").rc == 2);
  CHECK(run("fg --algebra K3 --logic KL --bogus").rc == 2);
  CHECK(run("fg --algebra WK3 --logic ORDER --gen 1").rc == 2);
  CHECK(run("check edcf --logic KL --candidate kl-global --testbed k3-isp --budget 10").rc == 3);
  CHECK(run("reproduce nope").rc == 2);
}

TEST_CASE("json verdicts replay to the same verdict") {
  auto dir = std::filesystem::temp_directory_path() / "aal-cli-test";
  std::filesystem::create_directories(dir);
  for (const auto* args : {"check fdc --logic PWK --generators WK3 --arity 2",
                           "check minrelcong --algebra box5 --class alpha12 --logic ONE",
                           "check edcf --logic LP --candidate kl-global --testbed k3-isp",
                           "check brouwerian --algebra M3 --logic ORDER"}) {
    auto r = run(std::string(args) + " --format json");
    auto v = verdict_from_json(json::parse(r.out));
    CHECK(exit_code(v.outcome) == r.rc);
    CHECK(to_json(v) == json::parse(r.out));
    auto path = dir / "verdict.json";
    std::ofstream(path) << r.out;
    auto rep = run("replay " + path.string());
    CHECK(rep.rc == r.rc);
    CHECK(has(rep, "identical"));
    auto changed = json::parse(r.out);
    changed["summary"] = "something else";
    std::ofstream(path) << changed.dump();
    CHECK(run("replay " + path.string()).rc == 1);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("random relabelling does not change outcomes") {
  for (unsigned seed : {1u, 2u, 3u}) {
    std::string s = " --seed " + std::to_string(seed);
    CHECK(run("check edcf --logic KL --candidate kl-global --testbed k3-isp" + s).rc == 0);
    CHECK(run("check edcf --logic PWK --candidate pwk-local --testbed wk3-isp" + s).rc == 0);
    CHECK(run("check fdc --logic PWK --generators WK3 --arity 2" + s).rc == 1);
    CHECK(run("check brouwerian --algebra M3 --logic ORDER" + s).rc == 1);
    CHECK(run("check brouwerian --algebra B4 --logic ORDER" + s).rc == 0);
    CHECK(run("check minrelcong --algebra box5 --class alpha12 --logic ONE" + s).rc == 1);
    auto r = run("fg --algebra WK3 --logic PWK --gen \"\" --format json" + s);
    auto j = json::parse(r.out);
    std::set<std::string> labels(j["filter"].begin(), j["filter"].end());
    CHECK(labels == std::set<std::string>{"1", "½"});
    auto l = run("fg --algebra L4 --logic LUK --gen ⅔ --format json" + s);
    CHECK(json::parse(l.out)["filter"].size() == 4);
  }
}

TEST_CASE("list and reproduce") {
  auto l = run("list");
  CHECK(l.rc == 0);
  CHECK(has(l, "classes: all alpha12"));
  CHECK(has(l, "examples: kleene-edcf"));
  auto r = run("reproduce kl-only-filter pwk-no-pedcf");
  CHECK(r.rc == 0);
  CHECK(has(r, "reproduced"));
  CHECK_FALSE(has(r, "MISMATCH"));
  Workspace ws;
  CHECK_THROWS_AS(reproduce("nope", ws), UnknownExample);
}

TEST_CASE("congruence and leibniz commands") {
  auto c = run("congruences --algebra K3 --format json");
  CHECK(c.rc == 0);
  CHECK(json::parse(c.out) == json::parse("[[[0,1,2]],[[0],[1],[2]]]"));
  auto b = run("congruences --algebra box5 --format json");
  CHECK(json::parse(b.out).dump().find("[[0,1],[2,4],[3]]") != std::string::npos);
  auto lb = run("leibniz --algebra K3 --gen 1");
  CHECK(lb.rc == 0);
}

TEST_CASE("workspace resolution") {
  Workspace ws;
  CHECK_THROWS_AS(ws.algebra("nope"), UnknownName);
  CHECK(ws.algebra(ws.data_dir().string() + "/algebras/K3.json").size() == 3);
  CHECK(ws.names("class").front() == "all");
  auto tb = ws.testbed("k3-isp");
  CHECK(tb.algebras.size() == 8);
  auto k3 = ws.algebra("K3");
  CHECK(parse_elements(k3, "carrier").size() == 3);
  CHECK(parse_elements(k3, "").empty());
  CHECK(parse_elements(k3, "½,#2").size() == 2);
  auto sq = ws.testbed("wk3-isp").algebras;
  bool found = false;
  for (const auto& a : sq)
    if (a.size() == 9) found = parse_elements(a, "<½,0>,<1,0>").size() == 2;
  CHECK(found);
  CHECK_THROWS_AS(parse_elements(k3, "7"), UnknownName);
}
