#include "qh/sdhall.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace qh {

namespace {

bool all_zero(const IntVec& v) {
  return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

template <class Map, class Key>
void accumulate(Map& m, const Key& k, const ScalarRat& c) {
  if (c.is_zero()) return;
  auto it = m.find(k);
  if (it == m.end()) {
    m.emplace(k, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) m.erase(it);
}

std::string vec_str(const IntVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::string coef_prefix(const ScalarRat& c) {
  if (c.is_one()) return "";
  std::string s = c.str();
  if (c.is_laurent() && c.num().terms().size() == 1 && s.find(' ') == std::string::npos)
    return s + "*";
  return "(" + s + ")*";
}

}  // namespace

KMonomial k_add(const KMonomial& a, const KMonomial& b) {
  KMonomial r = a;
  for (auto& [l, v] : b) {
    auto it = r.find(l);
    if (it == r.end()) {
      if (!all_zero(v)) r.emplace(l, v);
      continue;
    }
    for (size_t i = 0; i < v.size(); ++i) it->second[i] += v[i];
    if (all_zero(it->second)) r.erase(it);
  }
  return r;
}

// ---- SDHElement ----

SDHElement SDHElement::word(const SDHWord& w, const ScalarRat& c) {
  SDHElement e;
  e.add(w, c);
  return e;
}

void SDHElement::add(const SDHWord& w, const ScalarRat& c) { accumulate(t_, w, c); }

SDHElement SDHElement::operator+(const SDHElement& o) const {
  SDHElement r = *this;
  for (auto& [w, c] : o.t_) r.add(w, c);
  return r;
}

SDHElement SDHElement::operator-(const SDHElement& o) const {
  SDHElement r = *this;
  for (auto& [w, c] : o.t_) r.add(w, -c);
  return r;
}

SDHElement SDHElement::operator*(const ScalarRat& c) const {
  SDHElement r;
  if (c.is_zero()) return r;
  for (auto& [w, x] : t_) r.t_.emplace(w, x * c);
  return r;
}

// ---- DHElement ----

void DHElement::add(const ModWord& w, const ScalarRat& c) { accumulate(t_, w, c); }

DHElement DHElement::operator+(const DHElement& o) const {
  DHElement r = *this;
  for (auto& [w, c] : o.t_) r.add(w, c);
  return r;
}

DHElement DHElement::operator-(const DHElement& o) const {
  DHElement r = *this;
  for (auto& [w, c] : o.t_) r.add(w, -c);
  return r;
}

DHElement DHElement::operator*(const ScalarRat& c) const {
  DHElement r;
  if (c.is_zero()) return r;
  for (auto& [w, x] : t_) r.t_.emplace(w, x * c);
  return r;
}

// ---- SDHAlgebra ----

SDHAlgebra::SDHAlgebra(const QuiverData& qd, int dim_budget)
    : qd_(qd), hall_(qd, dim_budget), dc_(qd) {}

SDHElement SDHAlgebra::one() const { return SDHElement::word({}); }

SDHElement SDHAlgebra::E(const IsoClass& M, int level) const {
  SDHWord w;
  if (!M.is_zero()) w.mod[level] = M;
  return SDHElement::word(w);
}

SDHElement SDHAlgebra::K(const IntVec& alpha, int level) const {
  return K(KMonomial{{level, dc_.proj_coords(alpha)}});
}

SDHElement SDHAlgebra::K(const KMonomial& k) const {
  SDHWord w;
  w.k = k_add({}, k);
  return SDHElement::word(w);
}

SDHElement SDHAlgebra::Ei(int i, int m) const {
  ScalarRat lam = ScalarRat::v_pow(1) * (ScalarRat::v(1) - ScalarRat::v(-1));
  return E(qd_.single(qd_.simple_root(i)), m) * lam;
}

SDHElement SDHAlgebra::Ki(int i, int m, int power) const {
  IntVec a(qd_.quiver().n, 0);
  a[i] = power;
  return K(a, m);
}

SDHElement SDHAlgebra::mul(const SDHElement& x, const SDHElement& y) const {
  SDHElement out;
  for (auto& [w1, c1] : x.terms())
    for (auto& [w2, c2] : y.terms()) {
      std::map<SDHWord, ScalarRat> cur;
      cur.emplace(SDHWord{w1.mod, k_add(w1.k, w2.k)}, c1 * c2);
      for (auto it = w2.mod.rbegin(); it != w2.mod.rend(); ++it) {
        std::map<SDHWord, ScalarRat> next;
        for (auto& [cw, cc] : cur)
          for (auto& [rw, rc] : mul_generator(cw.mod, it->second, it->first))
            accumulate(next, SDHWord{rw.mod, k_add(cw.k, rw.k)}, cc * rc);
        cur = std::move(next);
      }
      for (auto& [w, c] : cur) out.add(w, c);
    }
  return out;
}

SDHElement SDHAlgebra::mul(const std::vector<SDHElement>& xs) const {
  SDHElement r = one();
  for (auto& x : xs) r = mul(r, x);
  return r;
}

SDHElement SDHAlgebra::pow(const SDHElement& x, int k) const {
  if (k < 0) throw AlgebraError("pow: negative exponent");
  SDHElement r = one();
  for (int i = 0; i < k; ++i) r = mul(r, x);
  return r;
}

const std::map<SDHWord, ScalarRat>& SDHAlgebra::mul_generator(const ModWord& w,
                                                              const IsoClass& N, int j) const {
  auto key = std::tuple(w, N, j);
  {
    std::lock_guard lk(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return *it->second;
  }
  auto res = std::make_unique<std::map<SDHWord, ScalarRat>>(reduce(w, N, j));
  std::lock_guard lk(mu_);
  auto [it, inserted] = memo_.emplace(key, std::move(res));
  return *it->second;
}

size_t SDHAlgebra::memo_size() const {
  std::lock_guard lk(mu_);
  return memo_.size();
}

void SDHAlgebra::check_homogeneous(const GradingDegree& lhs, const SDHWord& rhs,
                                   const char* rule) const {
  if (degree(rhs) != lhs)
    throw ConventionError(std::string("homogeneity violated by the ") + rule + " rule: " +
                          lhs.str() + " vs " + degree(rhs).str() + " for " + str(rhs));
}

std::map<SDHWord, ScalarRat> SDHAlgebra::reduce(const ModWord& w, const IsoClass& N,
                                                int j) const {
  std::map<SDHWord, ScalarRat> out;
  if (N.is_zero()) {
    out.emplace(SDHWord{w, {}}, ScalarRat(1));
    return out;
  }
  if (w.empty() || j < w.begin()->first) {
    ModWord u = w;
    u[j] = N;
    out.emplace(SDHWord{u, {}}, ScalarRat(1));
    return out;
  }
  const int r = w.begin()->first;
  const IsoClass M = w.begin()->second;
  ModWord prefix = w;
  prefix.erase(prefix.begin());
  const GradingDegree lhs = dc_.degree_E(M, r) + dc_.degree_E(N, j);

  if (j == r) {
    // E_{M,r} E_{N,r} = v^{<N,M>} sum_L g^L_{M,N} E_{L,r}
    ScalarRat tw = ScalarRat::v(qd_.euler(N, M));
    for (auto& [L, g] : hall_.hall_product_terms(M, N)) {
      check_homogeneous(lhs, SDHWord{{{r, L}}, {}}, "same-level");
      ModWord u = prefix;
      u[r] = L;
      accumulate(out, SDHWord{u, {}}, tw * g);
    }
    return out;
  }

  if (j == r + 1) {
    // E_{M,r} E_{N,r+1} = v^{-<N,M>} sum v^{-<W,V>} gamma^{V,W}_{N,M} E_{V,r+1} E_{W,r} K_{[N]-[V],r}
    const IntVec dN = qd_.dim(N), dM = qd_.dim(M);
    const int n = qd_.quiver().n;
    const ScalarRat tw = ScalarRat::v(-qd_.euler(N, M));
    IntVec dV(n, 0);
    std::function<void(int)> rec = [&](int i) {
      if (i < n) {
        for (int x = 0; x <= dN[i]; ++x) {
          dV[i] = x;
          rec(i + 1);
        }
        dV[i] = 0;
        return;
      }
      IntVec dW(n), dNV(n);
      for (int a = 0; a < n; ++a) {
        dNV[a] = dN[a] - dV[a];
        dW[a] = dM[a] - dNV[a];
        if (dW[a] < 0) return;
      }
      const IntVec kv = dc_.proj_coords(dNV);
      for (auto& V : qd_.classes_of_dim(dV))
        for (auto& W : qd_.classes_of_dim(dW)) {
          ScalarRat g = hall_.gamma_v(N, M, V, W);
          if (g.is_zero()) continue;
          SDHWord rhs;
          if (!V.is_zero()) rhs.mod[r + 1] = V;
          if (!W.is_zero()) rhs.mod[r] = W;
          rhs.k = k_add({}, {{r, kv}});
          check_homogeneous(lhs, rhs, "adjacent-level");
          ScalarRat c = tw * ScalarRat::v(-qd_.euler(W, V)) * g;
          std::map<SDHWord, ScalarRat> single;
          const std::map<SDHWord, ScalarRat>* head = &single;
          if (V.is_zero())
            single.emplace(SDHWord{prefix, {}}, ScalarRat(1));
          else
            head = &mul_generator(prefix, V, r + 1);
          for (auto& [hw, hc] : *head) {
            SDHWord u = hw;
            if (!W.is_zero()) u.mod[r] = W;
            u.k = k_add(u.k, rhs.k);
            accumulate(out, u, c * hc);
          }
        }
    };
    rec(0);
    return out;
  }

  // j > r + 1: E_{M,r} E_{N,j} = v^{(-1)^{r-j}(M,N)} E_{N,j} E_{M,r}
  const int sgn = ((j - r) % 2 == 0) ? 1 : -1;
  const ScalarRat c = ScalarRat::v(sgn * qd_.quiver().sym(qd_.dim(M), qd_.dim(N)));
  for (auto& [hw, hc] : mul_generator(prefix, N, j)) {
    SDHWord u = hw;
    u.mod[r] = M;
    accumulate(out, u, c * hc);
  }
  return out;
}

DHElement SDHAlgebra::pi_H(const SDHElement& x) const {
  DHElement z;
  for (auto& [w, c] : x.terms()) z.add(w.mod, c);
  return z;
}

SDHElement SDHAlgebra::lift(const DHElement& z) const {
  SDHElement x;
  for (auto& [w, c] : z.terms()) x.add(SDHWord{w, {}}, c);
  return x;
}

DHElement SDHAlgebra::dh_mul(const DHElement& x, const DHElement& y) const {
  return pi_H(mul(lift(x), lift(y)));
}

GradingDegree SDHAlgebra::degree(const SDHWord& w) const {
  GradingDegree g = dc_.degree(w.k);
  for (auto& [l, M] : w.mod) g += dc_.degree_E(M, l);
  return g;
}

std::optional<GradingDegree> SDHAlgebra::homogeneous_degree(const SDHElement& x) const {
  if (x.is_zero()) return GradingDegree();
  std::optional<GradingDegree> d;
  for (auto& [w, c] : x.terms()) {
    GradingDegree g = degree(w);
    if (d && *d != g) return std::nullopt;
    d = g;
  }
  return d;
}

std::pair<SDHElement, SDHElement> SDHAlgebra::build_EV_KV(const DerivedObject& V) const {
  // shift-descending order is the Ext-vanishing order; one module per shift
  dc_.summands(V);
  SDHWord e, k;
  for (auto& [s, M] : V) {
    if (M.is_zero()) continue;
    e.mod[s] = M;
    k.k = k_add(k.k, {{s, dc_.proj_coords(qd_.dim(M))}});
  }
  return {SDHElement::word(e), SDHElement::word(k)};
}

SDHElement SDHAlgebra::K_for_degree(const GradingDegree& d) const {
  auto k = dc_.solve_K(d);
  if (!k) throw AlgebraError("no K-monomial has degree " + d.str());
  return K(*k);
}

IntVec SDHAlgebra::k_to_dim(const IntVec& proj) const {
  const Quiver& Q = qd_.quiver();
  IntVec d(Q.n, 0);
  for (int j = 0; j < Q.n; ++j) {
    IntVec p = Q.proj_dim(j);
    for (int i = 0; i < Q.n; ++i) d[i] += proj[j] * p[i];
  }
  return d;
}

std::string SDHAlgebra::str(const SDHWord& w) const {
  std::string s;
  for (auto it = w.mod.rbegin(); it != w.mod.rend(); ++it)
    s += "E_{" + qd_.label(it->second) + "," + std::to_string(it->first) + "}";
  for (auto it = w.k.rbegin(); it != w.k.rend(); ++it)
    s += "K_{" + vec_str(k_to_dim(it->second)) + "," + std::to_string(it->first) + "}";
  return s.empty() ? "1" : s;
}

std::string SDHAlgebra::str(const SDHElement& x) const {
  if (x.is_zero()) return "0";
  std::string s;
  for (auto& [w, c] : x.terms()) {
    if (!s.empty()) s += " + ";
    std::string ws = str(w);
    if (ws == "1") {
      s += c.is_laurent() ? c.str() : "(" + c.str() + ")";
    } else {
      s += coef_prefix(c) + ws;
    }
  }
  return s;
}

std::string SDHAlgebra::str(const DHElement& x) const { return str(lift(x)); }

// ---- semi-derived characters ----

SDHElement semi_derived_standard(const SDHAlgebra& A, const Monomial& m, const ScalarRat& am) {
  return A.build_EV_KV(A.derived().monomial_object(m)).first * am;
}

SDHElement semi_derived_char(const SDHAlgebra& A, const Monomial& m, const CharCoefficients& c) {
  const DerivedCat& dc = A.derived();
  DerivedObject Vm = dc.monomial_object(m);
  SDHElement out = A.build_EV_KV(Vm).first * c.leading;
  GradingDegree top = dc.degree(Vm);
  for (auto& [mp, a] : c.lower) {
    if (a.is_zero()) continue;
    if (!nakajima_less(A.data().seq().dynkin(), mp, m))
      throw AlgebraError("semi_derived_char: " + mp.str() + " is not below " + m.str());
    DerivedObject Vp = dc.monomial_object(mp);
    auto k = dc.solve_K(top - dc.degree(Vp));
    if (!k)
      throw AlgebraError("semi_derived_char: no K-factor for " + mp.str() + " below " + m.str());
    out += A.mul(A.build_EV_KV(Vp).first, A.K(*k)) * a;
  }
  return out;
}

}  // namespace qh
