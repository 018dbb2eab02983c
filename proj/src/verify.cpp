#include "qh/verify.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qh/braid.hpp"
#include "qh/lift.hpp"
#include "qh/qcluster.hpp"
#include "qh/sdh_oracle.hpp"

namespace qh {

namespace {

struct Cat {
  AdmissibleSequence s;
  QuiverData qd;
  SDHAlgebra A;
  Cat(char ty, int n, IntVec eps) : s(DynkinData::make(ty, n), std::move(eps)), qd(s), A(qd) {}
  const DerivedCat& dc() const { return A.derived(); }
};

// collects the first few failures
struct Tally {
  long long total = 0, bad = 0;
  std::vector<std::string> first;
  void operator()(bool ok, const std::string& what) {
    ++total;
    if (!ok) {
      ++bad;
      if (first.size() < 3) first.push_back(what);
    }
  }
  bool ok() const { return bad == 0 && total > 0; }
  std::string str() const {
    std::string s = std::to_string(total - bad) + "/" + std::to_string(total) + " hold";
    for (auto& f : first) s += "; FAILED " + f;
    return s;
  }
};

std::string eps_str(const IntVec& e) {
  std::string s = "(";
  for (size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s + ")";
}

std::string golden_path(const VerifyOptions& opt, const std::string& f) {
  return (opt.golden_dir.empty() ? std::string(QH_SOURCE_DIR) + "/golden" : opt.golden_dir) + "/" + f;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw AlgebraError("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// 1
CheckResult oracle_equivalence(const VerifyOptions& opt) {
  CheckResult r;
  Tally T;
  for (auto [n, eps] : {std::pair{2, IntVec{0, 1}}, {2, IntVec{1, 0}}, {3, IntVec{1, 0, 1}}}) {
    Cat c('A', n, eps);
    for (int q : {2, 3}) {
      SDHOracle O(c.A, q, 6);
      std::vector<std::pair<IsoClass, int>> gens;  // (M, total dim of its resolution)
      for (auto& M : c.qd.classes_up_to(6))
        if (!M.is_zero()) {
          int d = O.resolution(M, 0).total_dim();
          if (d <= 5) gens.push_back({M, d});
        }
      for (auto& [M, dm] : gens)
        for (auto& [N, dn] : gens) {
          if (dm + dn > 6) continue;
          for (auto [l1, l2] : {std::pair{0, 0}, {0, 1}, {1, 0}}) {
            auto x = c.A.E(M, l1), y = c.A.E(N, l2);
            auto rep = brute_product_oracle(c.A, O, x, y);
            T(rep.ok, "A" + std::to_string(n) + eps_str(eps) + " q=" + std::to_string(q) + " " + c.A.str(x) +
                          " * " + c.A.str(y));
          }
        }
    }
  }
  (void)opt;
  r.ok = T.ok();
  r.detail = T.str();
  return r;
}

// 2
CheckResult presentation_audit(const VerifyOptions& opt) {
  CheckResult r;
  Tally T;
  for (auto [n, eps] : {std::pair{1, IntVec{0}}, {2, IntVec{0, 1}}, {3, IntVec{1, 0, 1}}}) {
    Cat c('A', n, eps);
    for (auto& b : check_presentation(c.A, -2, 2, opt.exec)) T(b.ok, "A" + std::to_string(n) + " " + b.instance);
  }
  r.ok = T.ok();
  r.detail = T.str();
  return r;
}

// 3
CheckResult braid_suite(const VerifyOptions& opt) {
  CheckResult r;
  Tally T;
  std::map<std::string, int> kinds;
  for (auto [n, eps] : {std::pair{2, IntVec{0, 1}}, {2, IntVec{1, 0}}, {3, IntVec{1, 0, 1}}}) {
    Cat c('A', n, eps);
    for (auto& b : check_braid(c.A, -2, 2, opt.exec)) {
      T(b.ok, "A" + std::to_string(n) + eps_str(eps) + " " + b.identity + " " + b.instance);
      ++kinds[b.identity];
    }
  }
  r.ok = T.ok() && kinds.count("braid") && kinds.count("commute") && kinds.count("inverse") &&
         kinds.count("homomorphism") && kinds.count("specialization");
  r.detail = T.str();
  return r;
}

std::string half_str(int h) { return h % 2 == 0 ? std::to_string(h / 2) : std::to_string(h) + "/2"; }

// 4
CheckResult tsystem(const VerifyOptions&) {
  CheckResult r;
  Tally T;
  std::string vals;
  auto one = [&](Cat& c, int i, int p) {
    QTChar C(c.s);
    auto t = verify_tsystem_lift(c.A, C, i, 1, p);
    bool half = true;
    for (auto& h : t.semi.half_exps) half = half && h.has_value();
    std::string id = "A" + std::to_string(c.s.dynkin().rank) + " i=" + std::to_string(i + 1);
    T(t.ok() && half && t.semi.half_exps == t.quantum.half_exps && t.quantum.ok, id);
    if (half && t.semi.half_exps.size() == 2)
      vals += " " + id + ": (a,b)=(" + half_str(*t.semi.half_exps[0]) + "," + half_str(*t.semi.half_exps[1]) + ")";
  };
  Cat a1('A', 1, {0});
  one(a1, 0, 0);
  Cat a2('A', 2, {0, 1});
  for (int i = 0; i < 2; ++i) one(a2, i, a2.s.eps()[i]);
  r.ok = T.ok();
  r.detail = T.str() + ";" + vals;
  return r;
}

nlohmann::json worked(const Cat& c, const QTChar& C, const Monomial& m) {
  const auto& dc = c.dc();
  nlohmann::json j;
  j["monomial"] = m.str();
  auto hl = hl_coefficients(c.A, C, m);
  j["a"] = hl.leading.str();
  j["lower"] = nlohmann::json::array();
  for (auto& [mm, a] : hl.lower) j["lower"].push_back({{"monomial", mm.str()}, {"object", dc.label(dc.monomial_object(mm))}, {"a", a.str()}});
  j["object"] = dc.label(dc.monomial_object(m));
  auto Z = phi_simple(c.A, C, m);
  j["phi_support"] = nlohmann::json::array();
  for (auto& [w, x] : Z.terms()) j["phi_support"].push_back(w.empty() ? "1" : dc.label(w));
  auto L = semi_derived_L(c.A, C, m);
  j["L_v"] = c.A.str(L);
  return j;
}

}  // namespace

std::string worked_examples_json() {
  nlohmann::json j;
  Cat a1('A', 1, {1});
  QTChar C1(a1.s);
  j["A1"] = worked(a1, C1, Monomial::Y(0, 1) * Monomial::Y(0, 3));
  Cat a2('A', 2, {0, 1});
  QTChar C2(a2.s);
  j["A2"] = worked(a2, C2, Monomial::Y(0, 0) * Monomial::Y(0, 2));
  return j.dump(2) + "\n";
}

namespace {

// 5
CheckResult worked_examples(const VerifyOptions& opt) {
  CheckResult r;
  Tally T;
  auto now = nlohmann::json::parse(worked_examples_json());
  nlohmann::json gold;
  try {
    gold = nlohmann::json::parse(slurp(golden_path(opt, "worked_examples.json")));
  } catch (const std::exception& e) {
    r.detail = e.what();
    return r;
  }
  T(now == gold, "frozen coefficients");
  // structure, independent of the frozen values
  Cat a1('A', 1, {1});
  QTChar C1(a1.s);
  auto m1 = Monomial::Y(0, 1) * Monomial::Y(0, 3);
  {
    auto Z = phi_simple(a1.A, C1, m1);
    std::set<std::string> sup;
    for (auto& [w, x] : Z.terms()) sup.insert(w.empty() ? "1" : a1.dc().label(w));
    T(sup == std::set<std::string>{"S[1]+S", "1"}, "A1 Phi support");
    auto L = semi_derived_L(a1.A, C1, m1);
    T(a1.A.pi_H(L) == Z, "A1 pi_H(L_v) = Phi(L_t)");
    T(a1.A.homogeneous_degree(L).has_value(), "A1 L_v homogeneous");
    bool hasK = false;
    for (auto& [w, x] : L.terms()) hasK = hasK || (w.mod.empty() && w.k == KMonomial{{0, a1.dc().proj_coords({1})}});
    T(hasK, "A1 K_S term");
  }
  Cat a2('A', 2, {0, 1});
  QTChar C2(a2.s);
  auto m2 = Monomial::Y(0, 0) * Monomial::Y(0, 2);
  {
    auto Z = phi_simple(a2.A, C2, m2);
    std::set<std::string> sup;
    for (auto& [w, x] : Z.terms()) sup.insert(w.empty() ? "1" : a2.dc().label(w));
    // S_2 is injective here: I_2
    T(sup == std::set<std::string>{"P_1[1]+P_2", "I_2"}, "A2 Phi support");
    T(a2.qd.root(a2.qd.inj_root(1)) == IntVec{0, 1}, "A2 I_2 = S_2");
    auto L = semi_derived_L(a2.A, C2, m2);
    T(a2.A.pi_H(L) == Z, "A2 pi_H(L_v) = Phi(L_t)");
    T(a2.A.homogeneous_degree(L).has_value(), "A2 L_v homogeneous");
    bool hasK = false;
    for (auto& [w, x] : L.terms()) hasK = hasK || (w.mod.size() == 1 && w.k == KMonomial{{0, a2.dc().proj_coords({1, 0})}});
    T(hasK, "A2 K_S1 term");
  }
  r.ok = T.ok();
  r.detail = T.str();
  return r;
}

// 6
CheckResult characters(const VerifyOptions&) {
  CheckResult r;
  Tally T;
  for (auto [n, eps] : {std::pair{1, IntVec{0}}, {2, IntVec{0, 1}}, {3, IntVec{1, 0, 1}}}) {
    AdmissibleSequence s(DynkinData::make('A', n), eps);
    QTChar C(s);
    const auto& g = s.dynkin();
    std::string id = "A" + std::to_string(n);
    for (int i = 0; i < n; ++i)
      for (int p = eps[i] - 4; p <= eps[i]; p += 2) {
        auto F = C.F_t(i, p);
        std::map<Monomial, long long> ev;
        bool integral = true;
        for (auto& [m, c] : F.at_t_one()) {
          integral = integral && c.get_den() == 1;
          ev[m] = c.get_num().get_si();
        }
        T(integral && ev == fm_classical(g, Monomial::Y(i, p)),
          id + " F_t(Y_" + std::to_string(i + 1) + "," + std::to_string(p) + ")");
      }
    for (int i = 0; i < n; ++i)
      for (int k = 1; k <= 3; ++k) {
        auto m = kr_monomial(i, eps[i] - 2 * k, k);
        auto L = C.L_t(m);
        bool tri = true;
        auto rest = L.L - TorusElement::comm(m);
        for (auto& [x, c] : rest.terms()) tri = tri && nakajima_less(g, x, m);
        for (auto& [x, a] : L.kl) tri = tri && nakajima_less(g, x, m) && a.is_laurent() && a.num().min_exp() >= 2;
        T(tri, id + " L_t(" + m.str() + ")");
      }
  }
  r.ok = T.ok();
  r.detail = T.str();
  return r;
}

bool same_seed(const QuantumSeed& a, const QuantumSeed& b) {
  return a.Q.B() == b.Q.B() && a.Lambda == b.Lambda && a.X == b.X && a.mono == b.mono && a.g == b.g &&
         a.C == b.C;
}

// 7
CheckResult cluster_engine(const VerifyOptions& opt) {
  CheckResult r;
  Tally T;
  AdmissibleSequence s(DynkinData::make('A', 3), {1, 0, 1});
  auto root = build_window_seed(s, -6, 3);
  auto d0 = compatibility(root);
  T(d0.has_value(), "root compatible");
  auto muts = root.Q.mutable_vertices();
  std::mt19937 rng(opt.seed);
  for (int walk = 0; walk < 20; ++walk) {
    auto cur = root;
    FramedOracle O(root);
    int len = 1 + static_cast<int>(rng() % 6);
    for (int step = 0; step < len; ++step) {
      int k = muts[rng() % muts.size()];
      std::string id = "walk " + std::to_string(walk) + " step " + std::to_string(step) + " k=" + std::to_string(k);
      auto col = green_red(cur, k);
      T(col == VertexColor::Green || col == VertexColor::Red, id + " dichotomy");
      QuantumSeed next;
      try {
        next = mutate(cur, k);
      } catch (const AlgebraError& e) {
        T(false, id + " " + e.what());
        break;
      }
      T(same_seed(mutate(next, k), cur), id + " mu^2");
      T(compatibility(next) == d0, id + " compatibility");
      O.mutate(k);
      T(O.homogeneous(k) && O.g_vector(k) == next.g[k], id + " g-vector");
      T(next.mono[k] == monomial_from_g(root, next.g[k]), id + " monomial");
      bool laurent = true;
      for (auto& [a, c] : next.X[k].terms()) laurent = laurent && c.is_laurent();
      for (auto& [a, c] : next.X[k].at_t_one()) laurent = laurent && c.get_den() == 1 && c > 0;
      T(laurent, id + " Laurent");
      cur = next;
    }
  }
  r.ok = T.ok();
  r.detail = T.str();
  return r;
}

// 8
CheckResult graded_audit(const VerifyOptions& opt) {
  CheckResult r;
  Tally T;
  Cat c('A', 3, {1, 0, 1});
  QTChar C(c.s);
  auto root = extend_tilde(build_window_seed(c.s, -6, 3, {false}), c.dc());
  auto h = homogeneity_audit(root);
  T(h.ok, "root homogeneity");
  auto deg_L = [&](const Monomial& m) { return c.A.homogeneous_degree(semi_derived_L(c.A, C, m)); };
  for (int u = 0; u < root.size(); ++u)
    if (root.Q.vertex(u).kind == VertexKind::Cluster) T(deg_L(root.mono[u]) == root.deg[u], "root degree " + root.Q.vertex(u).label);
  auto muts = root.Q.mutable_vertices();
  std::mt19937 rng(opt.seed + 8);
  auto cur = root;
  for (int step = 0; step < 10; ++step) {
    int k = muts[rng() % muts.size()];
    cur = mutate(cur, k);
    std::string id = "step " + std::to_string(step) + " k=" + cur.Q.vertex(k).label;
    auto hh = homogeneity_audit(cur);
    T(hh.ok, id + " homogeneity" + (hh.failures.empty() ? "" : ": " + hh.failures[0]));
    T(deg_L(cur.mono[k]) == cur.deg[k], id + " deg(X) = deg(L_v(m))");
  }
  r.ok = T.ok();
  r.detail = T.str();
  return r;
}

// 9
CheckResult commuting_square(const VerifyOptions& opt) {
  CheckResult r;
  Tally T;
  struct Case {
    char ty;
    int n;
    IntVec eps;
    int a, b;
  };
  std::mt19937 rng(opt.seed + 9);
  for (auto cs : {Case{'A', 1, {0}, -3, 0}, Case{'A', 2, {0, 1}, 1, 3}, Case{'A', 2, {0, 1}, -2, 3}}) {
    Cat c(cs.ty, cs.n, cs.eps);
    QTChar C(c.s);
    auto root = extend_tilde(build_window_seed(c.s, cs.a, cs.b, {false}), c.dc());
    auto muts = root.Q.mutable_vertices();
    std::string id = "A" + std::to_string(cs.n) + " [" + std::to_string(cs.a) + "," + std::to_string(cs.b) + "]";
    for (int walk = 0; walk < 3; ++walk) {
      std::vector<int> ks;
      int len = 1 + static_cast<int>(rng() % 6);
      for (int i = 0; i < len; ++i) ks.push_back(muts[rng() % muts.size()]);
      auto w = theta_walk(c.A, C, root, ks);
      T(w.initial_ok, id + " initial degrees");
      for (size_t t = 0; t < w.steps.size(); ++t) {
        auto& st = w.steps[t];
        T(st.ok, id + " walk " + std::to_string(walk) + " step " + std::to_string(t) + ": " + st.error);
      }
    }
  }
  r.ok = T.ok();
  r.detail = T.str();
  return r;
}

std::string chain_word(int len) {
  std::string w = "R";
  for (int blk = 0; static_cast<int>(w.size()) < len; ++blk) w += blk % 2 == 0 ? "LLLL" : "RRRR";
  return w.substr(0, len);
}

// 10
CheckResult golden_quivers(const VerifyOptions& opt) {
  CheckResult r;
  std::string detail;
  AdmissibleSequence s3(DynkinData::make('A', 3), {1, 0, 1});
  QuiverData q3(s3);
  DerivedCat d3(q3);
  auto win = extend_tilde(build_window_seed(s3, -17, 3, {false}), d3);
  auto c1 = golden_compare(seed_dot(win, "a3_window"), slurp(golden_path(opt, "a3_window.dot")), false, true);
  detail += std::string("A3 window: ") + (c1.ok ? "isomorphic" : "differs");
  for (auto& d : c1.diff) detail += "; " + d;

  AdmissibleSequence s4(DynkinData::make('A', 4), {0, -1, 0, -1});
  QuiverData q4(s4);
  DerivedCat d4(q4);
  auto cs = chain_seed(s4, &d4, 3, chain_word(35), {false});
  auto c3 = golden_compare(seed_dot(cs.seed, "a4_chain"), slurp(golden_path(opt, "a4_chain.dot")), false, true);
  detail += std::string(" | A4 chain: ") + (c3.ok ? "isomorphic" : "differs");
  for (auto& d : c3.diff) detail += "; " + d;
  r.ok = c1.ok && c3.ok && cs.boxes_ok;
  r.detail = detail;
  return r;
}

// 11
CheckResult stabilization(const VerifyOptions&) {
  CheckResult r;
  Tally T;
  AdmissibleSequence s(DynkinData::make('A', 4), {0, -1, 0, -1});
  QuiverData qd(s);
  DerivedCat dc(qd);
  auto prev = chain_seed(s, &dc, 3, chain_word(1), {false});
  for (int len = 2; len <= 35; ++len) {
    auto next = chain_seed(s, &dc, 3, chain_word(len), {false});
    auto d = stabilization_diff(prev, next);
    T(next.boxes_ok && d.empty(), "step " + std::to_string(len) + (d.empty() ? "" : ": " + d[0]));
    prev = std::move(next);
  }
  r.ok = T.ok();
  r.detail = T.str();
  return r;
}

}  // namespace

std::vector<int> check_ids() { return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}; }

std::string check_name(int id) {
  static const char* names[] = {"",
                                "oracle equivalence (Hall level)",
                                "presentation audit",
                                "braid suite",
                                "T-system lift",
                                "worked examples",
                                "character sanity",
                                "cluster engine",
                                "graded quiver audit",
                                "commuting square",
                                "golden quivers",
                                "stabilization"};
  if (id < 1 || id > 11) throw AlgebraError("unknown check " + std::to_string(id));
  return names[id];
}

CheckResult run_check(int id, const VerifyOptions& opt) {
  using F = CheckResult (*)(const VerifyOptions&);
  static const F fs[] = {nullptr,          oracle_equivalence, presentation_audit, braid_suite,
                         tsystem,          worked_examples,    characters,         cluster_engine,
                         graded_audit,     commuting_square,   golden_quivers,     stabilization};
  std::string name = check_name(id);
  auto t0 = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    r = fs[id](opt);
  } catch (const std::exception& e) {
    r.ok = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.id = id;
  r.name = name;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<CheckResult> run_checks(const std::vector<int>& ids, const VerifyOptions& opt) {
  std::vector<int> sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<CheckResult> out;
  for (int id : sorted) out.push_back(run_check(id, opt));
  return out;
}

std::string checks_json(const std::vector<CheckResult>& rs) {
  nlohmann::ordered_json j;
  bool all = true;
  j["checks"] = nlohmann::ordered_json::array();
  for (auto& r : rs) {
    all = all && r.ok;
    j["checks"].push_back({{"id", r.id}, {"name", r.name}, {"status", r.ok ? "pass" : "fail"}, {"detail", r.detail}});
  }
  j["status"] = all ? "pass" : "fail";
  return j.dump(2) + "\n";
}

}  // namespace qh
