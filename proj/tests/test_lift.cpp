#include "doctest.h"
#include "qh/lift.hpp"

using namespace qh;

TEST_CASE("T-system lift A1") {
  AdmissibleSequence s(DynkinData::make('A', 1), {0});
  QuiverData qd(s);
  SDHAlgebra A(qd);
  QTChar C(s);
  auto r = verify_tsystem_lift(A, C, 0, 1, 0);
  CHECK(r.ok());
  REQUIRE(r.semi.half_exps.size() == 2);
  CHECK(*r.semi.half_exps[0] == -2);
  CHECK(*r.semi.half_exps[1] == 0);
  CHECK(r.semi.half_exps == r.quantum.half_exps);
  CHECK(r.semi.kfactors[0].empty());
  CHECK(semi_derived_L(A, C, Monomial()) == A.one());
  auto r2 = verify_tsystem_lift(A, C, 0, 2, -2);
  CHECK(r2.ok());
  CHECK(r2.semi.half_exps == r2.quantum.half_exps);
}

TEST_CASE("T-system lift A2") {
  AdmissibleSequence s(DynkinData::make('A', 2), {0, 1});
  QuiverData qd(s);
  SDHAlgebra A(qd);
  QTChar C(s);
  for (int i = 0; i < 2; ++i) {
    auto r = verify_tsystem_lift(A, C, i, 1, s.eps()[i]);
    CHECK(r.ok());
    CHECK(r.semi.half_exps == r.quantum.half_exps);
    CHECK(*r.semi.half_exps[0] == -1);
    CHECK(*r.semi.half_exps[1] == 1);
  }
}

TEST_CASE("exchange lift failure is reported") {
  AdmissibleSequence s(DynkinData::make('A', 1), {0});
  QuiverData qd(s);
  SDHAlgebra A(qd);
  QTChar C(s);
  auto Y = [](int p) { return Monomial::Y(0, p); };
  auto r = verify_exchange_lift(A, C, {Y(0), Y(2)}, {{Y(0) * Y(2)}});
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.error.empty());
}
