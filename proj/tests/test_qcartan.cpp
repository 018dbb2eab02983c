#include "doctest.h"
#include "qh/qcartan.hpp"

using namespace qh;

TEST_CASE("inverse quantum Cartan coefficients") {
  InvQCartan a1(DynkinData::make('A', 1), 8);
  CHECK(a1.a(0, 0, 1) == 1);
  CHECK(a1.a(0, 0, 2) == 0);
  CHECK(a1.a(0, 0, 3) == -1);
  CHECK(a1.a(0, 0, 5) == 1);
  InvQCartan a2(DynkinData::make('A', 2), 8);
  CHECK(a2.a(0, 0, 1) == 1);
  CHECK(a2.a(0, 0, 5) == -1);
  CHECK(a2.a(0, 1, 2) == 1);
  CHECK(a2.a(0, 1, 4) == -1);
  for (auto name : {"A3", "D4", "E6"}) {
    InvQCartan t(DynkinData::parse(name), 12);
    CHECK(t.verify());
    InvQCartan t2(DynkinData::parse(name), 24);
    CHECK(t2.verify());
    int n = t.dynkin().rank;
    for (int m = 1; m <= 12; ++m)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          CHECK(t.a(i, j, m) == t.a(j, i, m));
          CHECK(t.a(i, j, m) == t2.a(i, j, m));
        }
    // periodicity a(m + 2h) = a(m) for Dynkin type
    int h = t.dynkin().coxeter;
    for (int i = 0; i < n; ++i) CHECK(t.a(i, i, 1 + 2 * h) == t.a(i, i, 1));
  }
}

TEST_CASE("N-form") {
  InvQCartan a1(DynkinData::make('A', 1));
  InvQCartan a2(DynkinData::make('A', 2));
  CHECK(a1.n_form(0, 3, 0, 3) == 0);
  CHECK(a1.n_form(0, 0, 0, 2) == -2);
  CHECK(a2.n_form(0, 0, 1, 1) == 1);
  CHECK(a1.n_pairing(Monomial::Y(0, 0), Monomial::Y(0, 2)) == -2);
  CHECK(a1.n_form(0, 0, 0, 4) == 2);
  CHECK(a1.n_pairing(Monomial::Y(0, 0) * Monomial::Y(0, 2), Monomial::Y(0, 4)) == 0);
  InvQCartan a3(DynkinData::make('A', 3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int p = -4; p <= 4; ++p)
        for (int s = -4; s <= 4; ++s) CHECK(a3.n_form(i, p, j, s) == -a3.n_form(j, s, i, p));
  Monomial m = Monomial::Y(0, 0) * Monomial::Y(1, 3, -1) * Monomial::Y(2, 2, 2);
  CHECK(a3.n_pairing(m, m) == 0);
}
