#include "doctest.h"
#include "qh/braid.hpp"

using namespace qh;

namespace {

struct Fix {
  AdmissibleSequence seq;
  QuiverData qd;
  SDHAlgebra A;
  Fix(char t, int n, IntVec eps) : seq(DynkinData::make(t, n), eps), qd(seq), A(qd) {}
};

void require_all(const std::vector<BraidCheck>& cs) {
  for (auto& c : cs) {
    CAPTURE(c.identity);
    CAPTURE(c.instance);
    CAPTURE(c.lhs);
    CAPTURE(c.rhs);
    CHECK(c.ok);
  }
}

}  // namespace

TEST_CASE("generator images") {
  Fix f('A', 2, {0, 1});
  const auto& g = f.seq.dynkin();
  auto s = sigma(g, 0, GenExpr::E(0, 3));
  CHECK(evaluate(f.A, s) == f.A.mul(f.A.Ei(0, 4), f.A.Ki(0, 3, -1)));
  CHECK(evaluate(f.A, sigma(g, 0, GenExpr::K(1, 2))) == f.A.mul(f.A.Ki(0, 2), f.A.Ki(1, 2)));
  CHECK(evaluate(f.A, sigma(g, 0, GenExpr::K(0, 2))) == f.A.Ki(0, 2, -1));
  Fix d('A', 3, {1, 0, 1});
  CHECK(evaluate(d.A, sigma(d.seq.dynkin(), 0, GenExpr::E(2, 0))) == d.A.Ei(2, 0));
}

TEST_CASE("A1 inverse") {
  Fix f('A', 1, {0});
  auto cs = check_braid(f.A, -1, 1);
  CHECK(!cs.empty());
  require_all(cs);
}

TEST_CASE("A2 braid suite") {
  for (IntVec eps : {IntVec{0, 1}, IntVec{1, 0}}) {
    Fix f('A', 2, eps);
    require_all(check_braid(f.A, -2, 2));
  }
}

TEST_CASE("serial and parallel batches agree") {
  Fix f('A', 2, {0, 1});
  auto a = check_braid(f.A, 0, 1, Exec::Serial), b = check_braid(f.A, 0, 1, Exec::Parallel);
  REQUIRE(a.size() == b.size());
  for (size_t k = 0; k < a.size(); ++k) CHECK(a[k].ok == b[k].ok);
}

TEST_CASE("presentation audit A3") {
  Fix f('A', 3, {1, 0, 1});
  require_all(check_presentation(f.A, -2, 2));
}

TEST_CASE("json report") {
  std::vector<BraidCheck> cs{{"braid", "x", true, "", ""}};
  auto s = braid_report_json(cs);
  CHECK(s.find("\"status\": \"pass\"") != std::string::npos);
}

TEST_CASE("A3 braid suite") {
  Fix f('A', 3, {1, 0, 1});
  auto cs = check_braid(f.A, -1, 1);
  int braids = 0;
  for (auto& c : cs) braids += c.identity == "braid";
  CHECK(braids > 0);
  require_all(cs);
}
