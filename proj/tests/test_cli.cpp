#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "qh/cli.hpp"

using namespace qh;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream o, e;
  int c = run_cli(args, o, e);
  return {c, o.str(), e.str()};
}

std::string tmpfile(const std::string& name, const std::string& text) {
  std::string p = "/tmp/qhall_test_" + name;
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("seed DOT reproduces the A3 window golden") {
  auto r = run({"seed", "--type", "A3", "--window=-17:3", "--tilde", "--dot"});
  REQUIRE(r.code == kOk);
  auto a = tmpfile("a3.dot", r.out);
  auto g = run({"golden-compare", "--artifact", a, "--golden", std::string(QH_SOURCE_DIR) + "/golden/a3_window.dot",
                "--restrict-artifact"});
  CHECK(g.code == kOk);
  CHECK(nlohmann::json::parse(g.out)["status"] == "pass");
}

TEST_CASE("negative window value and the small example") {
  auto r = run({"seed", "--type", "A3", "--window", "-6:3", "--tilde", "--dot"});
  CHECK(r.code == kOk);
  CHECK(r.out.find("S~_{2,-1}") != std::string::npos);
  // determinism
  CHECK(run({"seed", "--type", "A3", "--window", "-6:3", "--tilde", "--dot"}).out == r.out);
}

TEST_CASE("perturbed arrow is named") {
  auto r = run({"seed", "--type", "A2", "--window", "-2:3", "--tilde"});
  REQUIRE(r.code == kOk);
  auto gold = tmpfile("g.dot", r.out);
  // drop the first edge
  std::string text = r.out;
  auto pos = text.find(" -> ");
  auto bol = text.rfind('\n', pos) + 1, eol = text.find('\n', pos);
  text.erase(bol, eol - bol + 1);
  auto art = tmpfile("a.dot", text);
  auto g = run({"golden-compare", "--artifact", art, "--golden", gold});
  CHECK(g.code == kCheckFailed);
  auto j = nlohmann::json::parse(g.out);
  REQUIRE(j["diff"].size() == 1);
  CHECK(j["diff"][0].get<std::string>().rfind("missing edge ", 0) == 0);
  auto e = run({"golden-compare", "--artifact", tmpfile("e1.dot", "digraph G {}\n"), "--golden",
                tmpfile("e2.dot", "digraph G {}\n")});
  CHECK(e.code == kOk);
}

TEST_CASE("braid and tsystem") {
  auto b = run({"braid", "--type", "A2", "--levels", "-2:2"});
  CHECK(b.code == kOk);
  auto j = nlohmann::json::parse(b.out);
  CHECK(j.size() > 100);
  for (auto& c : j) CHECK(c["status"] == "pass");
  auto t = run({"tsystem", "--type", "A1", "--k", "1", "--p", "0"});
  CHECK(t.code == kOk);
  auto tj = nlohmann::json::parse(t.out);
  CHECK(tj["a"] == -1.0);
  CHECK(tj["b"] == 0.0);
}

TEST_CASE("char, sdh, seq, theta") {
  auto c = run({"char", "--type", "A1", "--monomial", "Y_{1,0}", "--kind", "F"});
  CHECK(c.code == kOk);
  CHECK(nlohmann::json::parse(c.out) == nlohmann::json{{"Y_{1,0}", "1"}, {"Y_{1,2}^-1", "1"}});
  auto s = run({"sdh", "--type", "A1", "--eps", "1", "--monomial", "Y_{1,1}Y_{1,3}"});
  CHECK(s.code == kOk);
  CHECK(nlohmann::json::parse(s.out)["degree"].is_string());
  auto q = run({"seq", "--type", "A2", "--window", "0:2"});
  CHECK(q.code == kOk);
  CHECK(nlohmann::json::parse(q.out).size() == 3);
  auto th = run({"theta", "--type", "A1", "--window", "-3:0"});
  CHECK(th.code == kOk);
  CHECK(nlohmann::json::parse(th.out)["ok"] == true);
}

TEST_CASE("errors are machine readable") {
  auto r = run({"seed", "--type", "A3", "--window", "3:-6"});
  CHECK(r.code == kUsage);
  CHECK(nlohmann::json::parse(r.err)["error"]["kind"] == "usage");
  CHECK(run({}).code == kUsage);
  CHECK(run({"seed", "--type", "Q9", "--window", "0:1"}).code == kUsage);
  auto b = run({"char", "--type", "A3", "--monomial", "Y_{1,1}Y_{1,3}Y_{2,0}", "--budget", "3"});
  CHECK(b.code == kBudget);
  CHECK(nlohmann::json::parse(b.err)["error"]["kind"] == "budget");
  auto f = run({"golden-compare", "--artifact", "/nonexistent.dot", "--golden", "/nonexistent.dot"});
  CHECK(f.code == kIO);
  auto m = run({"seed", "--type", "A2", "--window", "-2:3", "--mutate", "nosuchlabel"});
  CHECK(m.code == kUsage);
}

TEST_CASE("verify-all subset") {
  auto r = run({"verify-all", "--only", "6,4"});
  CHECK(r.code == kOk);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["checks"].size() == 2);
  CHECK(j["checks"][0]["id"] == 4);
  CHECK(j["checks"][1]["id"] == 6);
  CHECK(run({"verify-all", "--only", "12"}).code == kUsage);
}
