#include "doctest.h"
#include "qh/sdh_oracle.hpp"

using namespace qh;

namespace {

struct Fix {
  AdmissibleSequence seq;
  QuiverData qd;
  SDHAlgebra A;
  Fix(char t, int n, IntVec eps) : seq(DynkinData::make(t, n), eps), qd(seq), A(qd) {}
  IsoClass c(const std::string& s) const { return qd.parse_label(s); }
};

SDHWord mword(std::map<int, IsoClass> m) { return SDHWord{std::move(m), {}}; }

}  // namespace

TEST_CASE("complexes: resolution and classification round trip") {
  Fix f('A', 2, {0, 1});
  SDHOracle O(f.A, 2);
  for (auto& M : f.qd.classes_up_to(3))
    for (int l = -1; l <= 1; ++l) {
      if (M.is_zero()) continue;
      auto C = O.resolution(M, l);
      CHECK(O.is_complex(C));
      auto key = O.classify(C);
      CHECK(key.mod.size() == 1);
      CHECK(key.mod.at(l) == M);
      CHECK(key.k.empty());
    }
  auto K = O.contractible({1, 1}, 0);
  auto key = O.classify(K);
  CHECK(key.mod.empty());
  CHECK(key.k.at(0) == IntVec{1, 1});
  SDHWord w{{{0, f.c("P_1")}, {1, f.c("I_2")}}, {{1, {0, 1}}}};
  CHECK(O.classify(O.realize(w)) == w);
}

TEST_CASE("Riedtmann cross-check of extension weights") {
  for (auto [n, eps] : {std::pair{1, IntVec{0}}, {2, IntVec{0, 1}}, {2, IntVec{1, 0}}}) {
    Fix f('A', n, eps);
    SDHOracle O(f.A, 2, 8);
    std::vector<SDHWord> small;
    for (auto& M : f.qd.classes_up_to(1))
      if (!M.is_zero())
        for (int l = 0; l <= 1; ++l) small.push_back(mword({{l, M}}));
    for (int j = 0; j < n; ++j) small.push_back(SDHWord{{}, {{0, [&] {
                                                         IntVec p(n, 0);
                                                         p[j] = 1;
                                                         return p;
                                                       }()}}});
    for (auto& X : small)
      for (auto& Y : small) {
        auto w = O.extension_weights(X, Y);
        mpq_class total = 0;
        for (auto& [B, c] : w) {
          long long cnt = O.subcomplex_count(B, X, Y);
          mpq_class rhs = mpq_class(static_cast<long>(cnt)) *
                          static_cast<long>(O.aut_size(O.realize(X))) *
                          static_cast<long>(O.aut_size(O.realize(Y))) /
                          static_cast<long>(O.aut_size(O.realize(B)));
          CHECK(c == rhs);
          total += c;
        }
        CHECK(!w.empty());
      }
  }
}

TEST_CASE("K is central in the oracle") {
  Fix f('A', 2, {0, 1});
  SDHOracle O(f.A, 3);
  auto K = O.generator_K({1, 0}, 0);
  for (auto& M : f.qd.classes_up_to(1))
    for (int l = -1; l <= 1; ++l) {
      if (M.is_zero()) continue;
      auto E = O.generator_E(M, l);
      CHECK(O.mul(K, E) == O.mul(E, K));
    }
}

TEST_CASE("engine agrees with the oracle on generator products") {
  for (auto [n, eps] : {std::pair{1, IntVec{0}}, {2, IntVec{0, 1}}, {2, IntVec{1, 0}}}) {
    Fix f('A', n, eps);
    for (int q : {2, 3}) {
      SDHOracle O(f.A, q, 6);
      std::vector<SDHElement> gens;
      for (auto& M : f.qd.classes_up_to(1))
        if (!M.is_zero())
          for (int l = 0; l <= 2; ++l) gens.push_back(f.A.E(M, l));
      for (auto& x : gens)
        for (auto& y : gens) {
          auto r = brute_product_oracle(f.A, O, x, y);
          CAPTURE(f.A.str(x));
          CAPTURE(f.A.str(y));
          CAPTURE(r.engine);
          CAPTURE(r.oracle);
          CHECK(r.ok);
        }
    }
  }
}

TEST_CASE("engine agrees with the oracle beyond simples") {
  for (auto [n, eps] : {std::pair{2, IntVec{0, 1}}, {3, IntVec{1, 0, 1}}, {3, IntVec{0, 1, 2}}}) {
    Fix f('A', n, eps);
    SDHOracle O(f.A, 2, 16);
    std::vector<SDHElement> gens;
    for (auto& M : f.qd.classes_up_to(n == 2 ? 2 : 1))
      if (!M.is_zero())
        for (int l = 0; l <= 1; ++l) gens.push_back(f.A.E(M, l));
    IntVec a(n, 0);
    a[0] = 1;
    gens.push_back(f.A.K(a, 0) + f.A.E(f.qd.single(f.qd.simple_root(0)), 1));
    for (auto& x : gens)
      for (auto& y : gens) {
        auto r = brute_product_oracle(f.A, O, x, y);
        CAPTURE(f.A.str(x));
        CAPTURE(f.A.str(y));
        CAPTURE(r.engine);
        CAPTURE(r.oracle);
        CHECK(r.ok);
      }
  }
}
