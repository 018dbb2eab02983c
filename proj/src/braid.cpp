#include "qh/braid.hpp"

#include "json.hpp"

#include <functional>
#include <map>
#include <mutex>

namespace qh {

namespace {

std::string gen_str(const Gen& g) {
  std::string s = (g.is_K ? "K_{" : "E_{") + std::to_string(g.i + 1) + "," + std::to_string(g.m) + "}";
  if (g.is_K && g.power != 1) s += "^" + std::to_string(g.power);
  return s;
}

ScalarRat vhalf(int k) { return ScalarRat::v_pow(k); }
ScalarRat qint() { return ScalarRat::v(1) - ScalarRat::v(-1); }

}  // namespace

GenExpr GenExpr::letter(const Gen& g) {
  GenExpr e;
  e.t_.push_back({ScalarRat(1), {g}});
  return e;
}

GenExpr GenExpr::scalar(const ScalarRat& c) {
  GenExpr e;
  if (!c.is_zero()) e.t_.push_back({c, {}});
  return e;
}

GenExpr GenExpr::operator+(const GenExpr& o) const {
  GenExpr r = *this;
  r.t_.insert(r.t_.end(), o.t_.begin(), o.t_.end());
  return r;
}

GenExpr GenExpr::operator-(const GenExpr& o) const { return *this + o * ScalarRat(-1); }

GenExpr GenExpr::operator*(const GenExpr& o) const {
  GenExpr r;
  for (auto& [c1, w1] : t_)
    for (auto& [c2, w2] : o.t_) {
      GenWord w = w1;
      w.insert(w.end(), w2.begin(), w2.end());
      r.t_.push_back({c1 * c2, w});
    }
  return r;
}

GenExpr GenExpr::operator*(const ScalarRat& c) const {
  GenExpr r;
  if (c.is_zero()) return r;
  for (auto& [x, w] : t_) r.t_.push_back({x * c, w});
  return r;
}

std::string GenExpr::str() const {
  if (t_.empty()) return "0";
  std::string s;
  for (auto& [c, w] : t_) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")";
    for (auto& g : w) s += gen_str(g);
  }
  return s;
}

GenExpr sigma_gen(const DynkinData& g, int i, bool inverse, const Gen& x) {
  int a = g.cartan[i][x.i];
  if (x.is_K) {
    if (a == 2) return GenExpr::K(i, x.m, -x.power);
    if (a == -1) return GenExpr::K(i, x.m, x.power) * GenExpr::K(x.i, x.m, x.power);
    return GenExpr::letter(x);
  }
  if (a == 2) {
    int m = inverse ? x.m - 1 : x.m + 1;
    int km = inverse ? x.m - 1 : x.m;
    return GenExpr::E(i, m) * GenExpr::K(i, km, -1);
  }
  if (a == -1) {
    GenExpr ei = GenExpr::E(i, x.m), ej = GenExpr::E(x.i, x.m);
    GenExpr first = inverse ? ej * ei : ei * ej, second = inverse ? ei * ej : ej * ei;
    ScalarRat d = ScalarRat(1) / qint();
    return first * (vhalf(1) * d) - second * (vhalf(-1) * d);
  }
  return GenExpr::letter(x);
}

GenExpr sigma(const DynkinData& g, int i, const GenExpr& x, bool inverse) {
  GenExpr r;
  for (auto& [c, w] : x.terms()) {
    GenExpr t = GenExpr::scalar(c);
    for (auto& l : w) t = t * sigma_gen(g, i, inverse, l);
    r = r + t;
  }
  return r;
}

GenExpr sigma_word(const DynkinData& g, const std::vector<std::pair<int, bool>>& word,
                   const GenExpr& x) {
  GenExpr r = x;
  for (auto it = word.rbegin(); it != word.rend(); ++it) r = sigma(g, it->first, r, it->second);
  return r;
}

SDHElement evaluate(const SDHAlgebra& A, const GenExpr& x) {
  SDHElement r;
  std::map<Gen, SDHElement> memo;
  for (auto& [c, w] : x.terms()) {
    SDHElement t = A.one() * c;
    for (auto& g : w) {
      auto it = memo.find(g);
      if (it == memo.end())
        it = memo.emplace(g, g.is_K ? A.Ki(g.i, g.m, g.power) : A.Ei(g.i, g.m)).first;
      t = A.mul(t, it->second);
    }
    r += t;
  }
  return r;
}

DHElement evaluate_dh(const SDHAlgebra& A, const GenExpr& x) {
  DHElement r;
  DHElement one;
  one.add({}, ScalarRat(1));
  for (auto& [c, w] : x.terms()) {
    DHElement t = one * c;
    for (auto& g : w)
      if (!g.is_K) t = A.dh_mul(t, A.pi_H(A.Ei(g.i, g.m)));
    r = r + t;
  }
  return r;
}

SDHElement sigma(const SDHAlgebra& A, int i, const GenExpr& x) {
  return evaluate(A, sigma(A.data().seq().dynkin(), i, x, false));
}

SDHElement sigma_inv(const SDHAlgebra& A, int i, const GenExpr& x) {
  return evaluate(A, sigma(A.data().seq().dynkin(), i, x, true));
}

std::vector<std::pair<std::string, GenExpr>> presentation_relations(const DynkinData& g, int m0,
                                                                    int m1) {
  std::vector<std::pair<std::string, GenExpr>> out;
  const int n = g.rank;
  auto name = [](const char* rel, int i, int j, int m, int l) {
    return std::string(rel) + " i=" + std::to_string(i + 1) + " j=" + std::to_string(j + 1) +
           " m=" + std::to_string(m) + " l=" + std::to_string(l);
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int a = g.cartan[i][j];
      for (int m = m0; m <= m1; ++m) {
        for (int l = m0; l <= m1; ++l) {
          auto K = GenExpr::K(i, m), E = GenExpr::E(j, l);
          out.push_back({name("K-central", i, j, m, l), K * E - E * K});
        }
        auto Ei = GenExpr::E(i, m), Ej = GenExpr::E(j, m);
        if (a == 0 && i < j) out.push_back({name("commute", i, j, m, m), Ei * Ej - Ej * Ei});
        if (a == -1)
          out.push_back({name("serre", i, j, m, m),
                         Ei * Ei * Ej - Ei * Ej * Ei * (ScalarRat::v(1) + ScalarRat::v(-1)) +
                             Ej * Ei * Ei});
        if (m + 1 <= m1) {
          auto lhs = GenExpr::E(i, m + 1) * Ej;
          auto rhs = Ej * GenExpr::E(i, m + 1) * ScalarRat::v(a);
          if (i == j) rhs = rhs + GenExpr::K(i, m) * (ScalarRat(1) - ScalarRat::v(2));
          out.push_back({name("adjacent-level", i, j, m, m + 1), lhs - rhs});
        }
        for (int r = m + 2; r <= m1; ++r) {
          int sgn = (r - m) % 2 == 0 ? 1 : -1;
          auto Ejr = GenExpr::E(j, r);
          out.push_back({name("distant-level", i, j, m, r), Ejr * Ei - Ei * Ejr * ScalarRat::v(-sgn * a)});
        }
      }
    }
  return out;
}

namespace {

template <class Task>
std::vector<BraidCheck> run_tasks(const std::vector<Task>& tasks, Exec ex) {
  std::vector<BraidCheck> out(tasks.size());
  if (ex == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (size_t t = 0; t < tasks.size(); ++t) out[t] = tasks[t]();
  } else {
    for (size_t t = 0; t < tasks.size(); ++t) out[t] = tasks[t]();
  }
  return out;
}

BraidCheck compare(const SDHAlgebra& A, std::string id, std::string inst, const SDHElement& l,
                   const SDHElement& r) {
  BraidCheck c{std::move(id), std::move(inst), l == r, "", ""};
  if (!c.ok) {
    c.lhs = A.str(l);
    c.rhs = A.str(r);
  }
  return c;
}

}  // namespace

std::vector<BraidCheck> check_presentation(const SDHAlgebra& A, int m0, int m1, Exec ex) {
  const auto& g = A.data().seq().dynkin();
  auto rels = presentation_relations(g, m0, m1);
  std::vector<std::function<BraidCheck()>> tasks;
  for (auto& [name, rel] : rels)
    tasks.push_back([&A, name, rel] {
      return compare(A, name.substr(0, 3), name, evaluate(A, rel), SDHElement());
    });
  return run_tasks(tasks, ex);
}

std::vector<BraidCheck> check_braid(const SDHAlgebra& A, int m0, int m1, Exec ex) {
  const auto& g = A.data().seq().dynkin();
  const int n = g.rank;
  std::vector<Gen> gens;
  for (int j = 0; j < n; ++j)
    for (int m = m0; m <= m1; ++m) {
      gens.push_back({false, j, m, 1});
      gens.push_back({true, j, m, 1});
    }
  std::vector<std::function<BraidCheck()>> tasks;
  auto sname = [](int i, bool inv) {
    return "s" + std::to_string(i + 1) + (inv ? "^-1" : "");
  };
  for (int i = 0; i < n; ++i)
    for (auto& x : gens) {
      GenExpr X = GenExpr::letter(x);
      std::string inst = sname(i, false) + " on " + gen_str(x);
      tasks.push_back([&A, &g, i, X, inst] {
        return compare(A, "inverse", inst, evaluate(A, sigma_word(g, {{i, false}, {i, true}}, X)),
                       evaluate(A, X));
      });
      tasks.push_back([&A, &g, i, X, inst] {
        return compare(A, "inverse", inst + " (left)",
                       evaluate(A, sigma_word(g, {{i, true}, {i, false}}, X)), evaluate(A, X));
      });
      tasks.push_back([&A, &g, i, X, inst] {
        GenExpr s = sigma(g, i, X);
        SDHElement y = evaluate(A, s);
        DHElement l = A.pi_H(y), r = evaluate_dh(A, s);
        BraidCheck c{"specialization", inst, l == r && A.homogeneous_degree(y).has_value(), "", ""};
        if (!c.ok) {
          c.lhs = A.str(l);
          c.rhs = A.str(r);
        }
        return c;
      });
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (auto& x : gens) {
        GenExpr X = GenExpr::letter(x);
        if (g.cartan[i][j] == -1) {
          std::string inst = sname(i, false) + sname(j, false) + sname(i, false) + " on " + gen_str(x);
          tasks.push_back([&A, &g, i, j, X, inst] {
            return compare(A, "braid", inst,
                           evaluate(A, sigma_word(g, {{i, false}, {j, false}, {i, false}}, X)),
                           evaluate(A, sigma_word(g, {{j, false}, {i, false}, {j, false}}, X)));
          });
        } else if (g.cartan[i][j] == 0) {
          std::string inst = sname(i, false) + sname(j, false) + " on " + gen_str(x);
          tasks.push_back([&A, &g, i, j, X, inst] {
            return compare(A, "commute", inst, evaluate(A, sigma_word(g, {{i, false}, {j, false}}, X)),
                           evaluate(A, sigma_word(g, {{j, false}, {i, false}}, X)));
          });
        }
      }
  for (auto& [name, rel] : presentation_relations(g, m0, m1))
    for (int k = 0; k < n; ++k)
      for (bool inv : {false, true}) {
        std::string inst = sname(k, inv) + " on " + name;
        tasks.push_back([&A, &g, k, inv, rel, inst] {
          return compare(A, "homomorphism", inst, evaluate(A, sigma(g, k, rel, inv)), SDHElement());
        });
      }
  return run_tasks(tasks, ex);
}

std::string braid_report_json(const std::vector<BraidCheck>& checks) {
  nlohmann::json j = nlohmann::json::array();
  for (auto& c : checks)
    j.push_back({{"identity", c.identity},
                 {"instance", c.instance},
                 {"status", c.ok ? "pass" : "fail"},
                 {"lhs", c.lhs},
                 {"rhs", c.rhs}});
  return j.dump(1);
}

}  // namespace qh
