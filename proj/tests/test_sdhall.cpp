#include <random>

#include "doctest.h"
#include "qh/sdhall.hpp"

using namespace qh;

namespace {

struct Fix {
  AdmissibleSequence seq;
  QuiverData qd;
  SDHAlgebra A;
  Fix(char t, int n, IntVec eps) : seq(DynkinData::make(t, n), eps), qd(seq), A(qd) {}
  IsoClass c(const std::string& s) const { return qd.parse_label(s); }
  SDHElement E(const std::string& s, int l) const { return A.E(c(s), l); }
  SDHElement m(const SDHElement& x, const SDHElement& y) const { return A.mul(x, y); }
  SDHElement m(const SDHElement& x, const SDHElement& y, const SDHElement& z) const {
    return A.mul({x, y, z});
  }
};

ScalarRat v(int k) { return ScalarRat::v(k); }

}  // namespace

TEST_CASE("same-level products A2") {
  Fix f('A', 2, {0, 1});  // 2 -> 1
  auto S1 = f.E("P_1", 0), S2 = f.E("I_2", 0);
  auto S12 = f.A.E(f.qd.add(f.c("P_1"), f.c("I_2")), 0), P2 = f.E("P_2", 0);
  CHECK(f.m(S1, S2) == (S12 + P2) * v(-1));
  CHECK(f.m(S2, S1) == S12);
  CHECK(f.A.str(f.m(S2, S1)) == "E_{P_1+I_2,0}");
}

TEST_CASE("defining relations on simple generators") {
  for (auto [t, n, eps] : {std::tuple{'A', 1, IntVec{0}}, {'A', 2, IntVec{0, 1}},
                           {'A', 2, IntVec{1, 0}}, {'A', 3, IntVec{1, 0, 1}},
                           {'A', 3, IntVec{0, 1, 2}}, {'D', 4, IntVec{0, 1, 0, 0}}}) {
    Fix f(t, n, eps);
    const auto& g = f.seq.dynkin();
    CAPTURE(g.name());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int a = g.cartan[i][j];
        for (int m = -1; m <= 0; ++m) {
          auto Ei = f.A.Ei(i, m), Ej = f.A.Ei(j, m);
          // K central
          CHECK(f.m(f.A.Ki(i, m), Ej) == f.m(Ej, f.A.Ki(i, m)));
          CHECK(f.m(f.A.Ki(i, m), f.A.Ei(j, m + 1)) == f.m(f.A.Ei(j, m + 1), f.A.Ki(i, m)));
          if (a == 0) CHECK(f.m(Ei, Ej) == f.m(Ej, Ei));  // commute
          if (a == -1) {                                   // Serre
            auto lhs = f.m(Ei, Ei, Ej) - f.m(Ei, Ej, Ei) * (v(1) + v(-1)) + f.m(Ej, Ei, Ei);
            CHECK(lhs.is_zero());
          }
          // adjacent levels
          auto Ei1 = f.A.Ei(i, m + 1);
          auto rhs = f.m(Ej, Ei1) * v(a);
          if (i == j) rhs += f.A.Ki(i, m) * (ScalarRat(1) - v(2));
          CHECK(f.m(Ei1, Ej) == rhs);
          // distant levels
          for (int r = m + 2; r <= m + 3; ++r) {
            int sgn = (r - m) % 2 == 0 ? 1 : -1;
            CHECK(f.m(f.A.Ei(j, r), Ei) == f.m(Ei, f.A.Ei(j, r)) * v(-sgn * a));
          }
        }
      }
  }
}

TEST_CASE("A1 adjacent-level relation") {
  Fix f('A', 1, {0});
  auto lhs = f.m(f.A.Ei(0, 1), f.A.Ei(0, 0));
  auto rhs = f.m(f.A.Ei(0, 0), f.A.Ei(0, 1)) * v(2) + f.A.Ki(0, 0) * (ScalarRat(1) - v(2));
  CHECK(lhs == rhs);
}

TEST_CASE("associativity and homogeneity") {
  for (auto [n, eps] : {std::pair{1, IntVec{0}}, {2, IntVec{0, 1}}, {2, IntVec{1, 0}},
                        {3, IntVec{1, 0, 1}}, {3, IntVec{0, 1, 0}}}) {
    Fix f('A', n, eps);
    std::vector<IsoClass> small;
    for (auto& c : f.qd.classes_up_to(2))
      if (!c.is_zero()) small.push_back(c);
    std::mt19937 rng(17 + n);
    auto rnd = [&]() {
      int pick = static_cast<int>(rng() % 5);
      int lvl = static_cast<int>(rng() % 3) - 1;
      if (pick == 0) {
        IntVec a(n, 0);
        a[rng() % n] = (rng() % 2) ? 1 : -1;
        return f.A.K(a, lvl);
      }
      IsoClass M = small[rng() % small.size()];
      auto x = f.A.E(M, lvl);
      if (pick == 1)
        for (auto& M2 : f.qd.classes_of_dim(f.qd.dim(M)))
          if (M2 != M) x += f.A.E(M2, lvl) * v(1);
      return x;
    };
    for (int trial = 0; trial < 40; ++trial) {
      auto x = rnd(), y = rnd(), z = rnd();
      auto xy = f.m(x, y);
      auto l = f.m(xy, z), r = f.m(x, f.m(y, z));
      CHECK(l == r);
      auto dx = f.A.homogeneous_degree(x), dy = f.A.homogeneous_degree(y);
      auto dxy = f.A.homogeneous_degree(xy);
      REQUIRE(dx);
      REQUIRE(dy);
      REQUIRE(dxy);
      if (!xy.is_zero()) CHECK(*dxy == *dx + *dy);
      // pi_H is a homomorphism
      CHECK(f.A.pi_H(xy) == f.A.dh_mul(f.A.pi_H(x), f.A.pi_H(y)));
    }
  }
}

TEST_CASE("pi_H and E_V, K_V") {
  Fix f('A', 1, {0});
  auto S = f.c("S");
  CHECK(f.A.pi_H(f.A.K({1}, 3)) == f.A.pi_H(f.A.one()));
  CHECK(f.A.pi_H(f.A.E(S, 2)).terms().size() == 1);
  DerivedObject V{{0, S}, {1, S}};
  auto [EV, KV] = f.A.build_EV_KV(V);
  CHECK(EV == f.m(f.A.E(S, 1), f.A.E(S, 0)));
  CHECK(KV == f.m(f.A.K({1}, 0), f.A.K({1}, 1)));
  CHECK(f.A.str(EV) == "E_{S,1}E_{S,0}");
  auto [E0, K0] = f.A.build_EV_KV({});
  CHECK(E0 == f.A.one());
  CHECK(K0 == f.A.one());
  CHECK(*f.A.homogeneous_degree(EV) == f.A.derived().degree(V));
}

TEST_CASE("K-monomials from degrees") {
  Fix f('A', 2, {0, 1});
  auto k = f.A.mul(f.A.K({1, 0}, 0), f.A.K({0, 1}, 2));
  auto d = f.A.homogeneous_degree(k);
  REQUIRE(d);
  CHECK(f.A.K_for_degree(*d) == k);
  CHECK_THROWS_AS(f.A.K_for_degree(f.A.derived().degree_E(f.c("P_1"), 0)), AlgebraError);
}
