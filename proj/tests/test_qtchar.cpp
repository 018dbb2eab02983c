#include <random>

#include "doctest.h"
#include "qh/qtchar.hpp"

using namespace qh;

namespace {

Monomial Y(int i, int p, int e = 1) { return Monomial::Y(i, p, e); }
ScalarRat t(int k) { return ScalarRat::v(k); }
TorusElement comm(const Monomial& m) { return TorusElement::comm(m); }

std::map<Monomial, long long> as_int(const TorusElement& x) {
  std::map<Monomial, long long> out;
  for (auto& [m, c] : x.at_t_one()) {
    REQUIRE(c.get_den() == 1);
    out[m] = c.get_num().get_si();
  }
  return out;
}

struct Fix {
  AdmissibleSequence seq;
  QTChar C;
  Fix(char ty, int n, IntVec eps) : seq(DynkinData::make(ty, n), eps), C(seq) {}
};

}  // namespace

TEST_CASE("torus product and bar") {
  QuantumTorus A1(DynkinData::make('A', 1));
  CHECK(A1.mul(comm(Y(0, 0)), comm(Y(0, 2))) == comm(Y(0, 0) * Y(0, 2)) * t(-1));
  auto m = Y(0, 0) * Y(0, 4, -2);
  CHECK(A1.mul(comm(m), comm(m.inverse())) == comm(Monomial()));
  QuantumTorus A2(DynkinData::make('A', 2));
  CHECK(A2.mul(comm(Y(0, 0)), comm(Y(1, 1))) == comm(Y(0, 0) * Y(1, 1)) * ScalarRat::v_pow(1));
  CHECK((comm(m) * t(1)).bar() == comm(m) * t(-1));

  std::mt19937 rng(5);
  auto rnd = [&]() {
    TorusElement x;
    for (int k = 0; k < 3; ++k) {
      int i = static_cast<int>(rng() % 2), p = 2 * static_cast<int>(rng() % 3) + i;
      x.add(Y(i, p, static_cast<int>(rng() % 3) - 1) * Y(1 - i, p + 1),
            ScalarRat::v_pow(static_cast<int>(rng() % 5) - 2));
    }
    return x;
  };
  for (int k = 0; k < 20; ++k) {
    auto x = rnd(), y = rnd(), z = rnd();
    CHECK(A2.mul(x, y).bar() == A2.mul(y.bar(), x.bar()));
    CHECK(A2.mul(A2.mul(x, y), z) == A2.mul(x, A2.mul(y, z)));
  }
}

TEST_CASE("fundamental characters") {
  Fix a1('A', 1, {0});
  for (int p : {-2, 0, 4})
    CHECK(a1.C.F_t(0, p) == comm(Y(0, p)) + comm(Y(0, p + 2, -1)));
  Fix a2('A', 2, {0, 1});
  CHECK(a2.C.F_t(0, 0) ==
        comm(Y(0, 0)) + comm(Y(0, 2, -1) * Y(1, 1)) + comm(Y(1, 3, -1)));
}

TEST_CASE("t = 1 against Frenkel-Mukhin and tableaux") {
  for (auto [n, eps] : {std::pair{1, IntVec{0}}, {2, IntVec{0, 1}}, {2, IntVec{1, 0}},
                        {3, IntVec{1, 0, 1}}, {3, IntVec{0, 1, 2}}}) {
    Fix f('A', n, eps);
    for (int i = 0; i < n; ++i)
      for (int p = eps[i] - 4; p <= eps[i]; p += 2) {
        auto F = f.C.F_t(i, p);
        CAPTURE(F.str());
        CHECK(F.bar() == F);
        CHECK(F.dominant() == std::vector<Monomial>{Y(i, p)});
        auto ev = as_int(F);
        CHECK(ev == fm_classical(f.seq.dynkin(), Y(i, p)));
        CHECK(ev == type_a_fundamental(n, i, p));
      }
  }
  Fix d4('D', 4, {0, 1, 0, 0});
  for (int i = 0; i < 4; ++i) {
    int p = i == 1 ? 1 : 0;
    auto F = d4.C.F_t(i, p);
    CHECK(F.bar() == F);
    CHECK(as_int(F) == fm_classical(d4.seq.dynkin(), Y(i, p)));
  }
}

TEST_CASE("standard and simple characters A1") {
  Fix f('A', 1, {0});
  auto& T = f.C.torus();
  auto M = f.C.M_t(Y(0, 0) * Y(0, 2));
  CHECK(M == T.mul(f.C.F_t(0, 0), f.C.F_t(0, 2)) * t(1));
  CHECK(M.coeff(Y(0, 0) * Y(0, 2)).is_one());
  CHECK(f.C.M_t(Y(0, 4)) == f.C.F_t(0, 4));
  auto L = f.C.L_t(Y(0, 0) * Y(0, 2));
  REQUIRE(L.kl.size() == 1);
  CHECK(L.kl[0].first == Monomial());
  CHECK(L.kl[0].second == -t(1));
  CHECK(M == L.L + f.C.M_t(Monomial()) * t(1));
  CHECK(L.L == f.C.F_t(Y(0, 0) * Y(0, 2)));
  // not a KR monomial: general position strings
  auto L2 = f.C.L_t(Y(0, 0) * Y(0, 4));
  CHECK(L2.kl.empty());
  CHECK(f.C.F_t(Y(0, 0, 2)) == T.pow(f.C.F_t(0, 0), 2));
}

TEST_CASE("KR modules and triangularity") {
  for (auto [n, eps] : {std::pair{2, IntVec{0, 1}}, {3, IntVec{1, 0, 1}}}) {
    Fix f('A', n, eps);
    const auto& g = f.seq.dynkin();
    for (int i = 0; i < n; ++i)
      for (int k = 1; k <= 3; ++k) {
        auto m = kr_monomial(i, eps[i] - 2 * k, k);
        auto L = f.C.L_t(m);
        CHECK(L.L == f.C.F_t(m));
        auto rest = L.L - comm(m);
        for (auto& [x, c] : rest.terms()) CHECK(nakajima_less(g, x, m));
        for (auto& [x, a] : L.kl) {
          CHECK(nakajima_less(g, x, m));
          REQUIRE(a.is_laurent());
          CHECK(a.num().min_exp() >= 2);
        }
      }
    // non-KR product
    auto m = Y(0, eps[0]) * Y(n - 1, eps[n - 1] + 2);
    auto L = f.C.L_t(m);
    CHECK(L.L.bar() == L.L);
    for (auto& [x, a] : L.kl) CHECK(a.num().min_exp() >= 2);
  }
}

TEST_CASE("Hernandez-Leclerc images A1 and A2") {
  AdmissibleSequence s(DynkinData::make('A', 1), {1});
  QuiverData qd(s);
  SDHAlgebra A(qd);
  QTChar C(s);
  CHECK(phi_standard(A, C, Y(0, 1)) == phi_fundamental(A, 0, 1));
  auto m = Y(0, 1) * Y(0, 3);
  auto Z = phi_simple(A, C, m);
  CHECK(Z.terms().size() == 2);
  auto hl = hl_coefficients(A, C, m);
  REQUIRE(hl.lower.size() == 1);
  CHECK(hl.lower[0].first == Monomial());
  CHECK(A.derived().label(A.derived().monomial_object(m)) == "S[1]+S");
  auto Lv = semi_derived_L(A, C, m);
  CHECK(A.pi_H(Lv) == Z);
  CHECK(A.homogeneous_degree(Lv).has_value());
  MESSAGE("A1: ", A.str(Lv));
}

TEST_CASE("Hernandez-Leclerc image A2") {
  AdmissibleSequence s(DynkinData::make('A', 2), {0, 1});
  QuiverData qd(s);
  SDHAlgebra A(qd);
  QTChar C(s);
  auto m = Y(0, 0) * Y(0, 2);
  auto hl = hl_coefficients(A, C, m);
  REQUIRE(hl.lower.size() == 1);
  CHECK(hl.lower[0].first == Y(1, 1));
  CHECK(A.derived().label(A.derived().monomial_object(m)) == "P_1[1]+P_2");
  CHECK(A.derived().label(A.derived().monomial_object(Y(1, 1))) == "I_2");
  auto Lv = semi_derived_L(A, C, m);
  CHECK(Lv.terms().size() == 2);
  CHECK(A.pi_H(Lv) == phi_simple(A, C, m));
  CHECK(A.homogeneous_degree(Lv).has_value());
  for (auto& [w, c] : Lv.terms())
    if (w.mod.size() == 1) CHECK(w.k == KMonomial{{0, A.derived().proj_coords({1, 0})}});
  // recipe variant for comparison
  auto rc = hl_coefficients_recipe(A, C, m);
  MESSAGE("A2: ", A.str(Lv), " | recipe a(m)=", rc.leading.str(),
          " a(m,m')=", rc.lower.empty() ? "-" : rc.lower[0].second.str());
  // lambda is the same for every fundamental: the images satisfy the K = 1 relations
  for (int p = -2; p <= 2; ++p)
    for (int i = 0; i < 2; ++i)
      if (s.in_parity(i, p))
        CHECK(phi_standard(A, C, Y(i, p)) == phi_fundamental(A, i, p));
}

TEST_CASE("Phi is multiplicative on fundamentals") {
  for (auto [n, eps] : {std::pair{1, IntVec{1}}, {2, IntVec{0, 1}}, {2, IntVec{1, 0}},
                        {3, IntVec{1, 0, 1}}}) {
    AdmissibleSequence s(DynkinData::make('A', n), eps);
    QuiverData qd(s);
    SDHAlgebra A(qd);
    QTChar C(s);
    std::vector<Var> vs;
    for (int i = 0; i < n; ++i)
      for (int p = -3; p <= 3; ++p)
        if (s.in_parity(i, p)) vs.push_back({i, p});
    for (auto& a : vs)
      for (auto& b : vs) {
        if (std::abs(a.p - b.p) > 4) continue;
        auto x = C.torus().mul(C.F_t(a.i, a.p), C.F_t(b.i, b.p));
        CAPTURE(a.i);
        CAPTURE(a.p);
        CAPTURE(b.i);
        CAPTURE(b.p);
        CHECK(phi(A, C, x) == A.dh_mul(phi_fundamental(A, a.i, a.p), phi_fundamental(A, b.i, b.p)));
      }
  }
}
