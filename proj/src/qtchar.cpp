#include "qh/qtchar.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

#include "json.hpp"

namespace qh {

std::size_t default_monomial_budget() {
  if (const char* s = std::getenv("QH_MONOMIAL_BUDGET")) {
    long v = std::strtol(s, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return 500;
}

// ---------------- TorusElement

TorusElement TorusElement::comm(const Monomial& m, const ScalarRat& c) {
  TorusElement x;
  x.add(m, c);
  return x;
}

ScalarRat TorusElement::coeff(const Monomial& m) const {
  auto it = t_.find(m);
  return it == t_.end() ? ScalarRat() : it->second;
}

void TorusElement::add(const Monomial& m, const ScalarRat& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = t_.emplace(m, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

TorusElement TorusElement::operator+(const TorusElement& o) const {
  TorusElement r = *this;
  return r += o;
}

TorusElement& TorusElement::operator+=(const TorusElement& o) {
  for (auto& [m, c] : o.t_) add(m, c);
  return *this;
}

TorusElement TorusElement::operator-(const TorusElement& o) const {
  TorusElement r = *this;
  for (auto& [m, c] : o.t_) r.add(m, -c);
  return r;
}

TorusElement TorusElement::operator*(const ScalarRat& c) const {
  TorusElement r;
  if (c.is_zero()) return r;
  for (auto& [m, x] : t_) r.t_.emplace(m, x * c);
  return r;
}

TorusElement TorusElement::bar() const {
  TorusElement r;
  for (auto& [m, c] : t_) r.t_.emplace(m, c.bar());
  return r;
}

std::vector<Monomial> TorusElement::dominant() const {
  std::vector<Monomial> out;
  for (auto& [m, c] : t_)
    if (m.is_dominant()) out.push_back(m);
  return out;
}

std::map<Monomial, mpq_class> TorusElement::at_t_one() const {
  std::map<Monomial, mpq_class> out;
  for (auto& [m, c] : t_) {
    mpq_class x = c.at_one();
    if (x != 0) out[m] = x;
  }
  return out;
}

static std::string ylabel(const Monomial& m) { return m.str(); }

std::string TorusElement::str() const {
  if (t_.empty()) return "0";
  std::string out;
  for (auto& [m, c] : t_) {
    if (!out.empty()) out += " + ";
    if (!c.is_one()) out += "(" + c.str("t") + ")";
    out += "[" + ylabel(m) + "]";
  }
  return out;
}

std::string TorusElement::json() const {
  nlohmann::json j = nlohmann::json::object();
  for (auto& [m, c] : t_) j[ylabel(m)] = c.str("t");
  return j.dump();
}

// ---------------- QuantumTorus

TorusElement QuantumTorus::mul(const TorusElement& x, const TorusElement& y) const {
  TorusElement r;
  for (auto& [a, ca] : x.terms())
    for (auto& [b, cb] : y.terms()) r.add(a * b, ca * cb * ScalarRat::v_pow(N_.n_pairing(a, b)));
  return r;
}

TorusElement QuantumTorus::mul(const std::vector<TorusElement>& xs) const {
  TorusElement r = TorusElement::comm(Monomial());
  for (auto& x : xs) r = mul(r, x);
  return r;
}

TorusElement QuantumTorus::pow(const TorusElement& x, int k) const {
  TorusElement r = TorusElement::comm(Monomial());
  for (int j = 0; j < k; ++j) r = mul(r, x);
  return r;
}

// ---------------- characters

QTChar::QTChar(const AdmissibleSequence& s, std::size_t budget)
    : s_(s), T_(s.dynkin()), budget_(budget) {}

void QTChar::check_budget(std::size_t n, const char* what) const {
  if (n > budget_)
    throw BudgetError(std::string(what) + ": support exceeds " + std::to_string(budget_) +
                      " monomials");
}

// maximal runs p, p+2, ... of the support, peeled layer by layer
static std::vector<std::pair<int, int>> strings_of(std::map<int, int> count) {
  std::vector<std::pair<int, int>> out;
  while (!count.empty()) {
    int lo = count.begin()->first, prev = lo;
    std::vector<int> used;
    for (auto& [p, c] : count) {
      if (p != lo && p != prev + 2) {
        out.push_back({lo, prev});
        lo = p;
      }
      prev = p;
      used.push_back(p);
    }
    out.push_back({lo, prev});
    for (int p : used)
      if (--count[p] == 0) count.erase(p);
  }
  return out;
}

std::vector<std::tuple<Monomial, ScalarRat, int>> QTChar::sl2_character(const Monomial& m,
                                                                        int i) const {
  const auto& g = s_.dynkin();
  std::map<int, int> count;
  for (auto& [v, e] : m.entries())
    if (v.i == i) count[v.p] = e;
  Monomial ypart;
  for (auto& [p, e] : count) ypart = ypart * Monomial::Y(i, p, e);
  Monomial rest = m / ypart;

  // depth of each term is tracked through a map from A-product to depth
  std::map<Monomial, int> depth{{Monomial(), 0}};
  TorusElement prod = TorusElement::comm(rest);
  for (auto [a, b] : strings_of(count)) {
    Monomial y = kr_monomial(i, a, (b - a) / 2 + 1), down;
    TorusElement ch = TorusElement::comm(y);
    std::map<Monomial, int> next;
    for (int j = 1, r = b + 1; r >= a + 1; ++j, r -= 2) {
      down = down * a_monomial(g, i, r).inverse();
      ch.add(y * down, ScalarRat(1));
      for (auto& [d, k] : depth) next[d * down] = k + j;
    }
    for (auto& [d, k] : depth) next[d] = k;
    depth = std::move(next);
    prod = T_.mul(prod, ch);
  }
  ScalarRat top = prod.coeff(m);
  std::vector<std::tuple<Monomial, ScalarRat, int>> out;
  for (auto& [mm, c] : prod.terms()) out.push_back({mm, c / top, depth.at(mm / m)});
  return out;
}

TorusElement QTChar::F_t(const Monomial& m0) const {
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = f_memo_.find(m0);
    if (it != f_memo_.end()) return *it->second;
  }
  if (!m0.is_dominant()) throw AlgebraError("F_t: " + m0.str() + " is not dominant");
  const int n = s_.dynkin().rank;
  auto dominant_at = [](const Monomial& m, int i) {
    for (auto& [v, e] : m.entries())
      if (v.i == i && e < 0) return false;
    return true;
  };
  TorusElement F;
  std::vector<std::map<Monomial, ScalarRat>> contrib(n);
  std::map<int, std::set<Monomial>> queue;
  queue[0].insert(m0);
  std::size_t seen = 1;
  while (!queue.empty()) {
    auto node = queue.begin();
    int d = node->first;
    Monomial m = *node->second.begin();
    node->second.erase(node->second.begin());
    if (node->second.empty()) queue.erase(node);

    ScalarRat c(1);
    if (m != m0) {
      bool have = false;
      for (int i = 0; i < n; ++i) {
        if (dominant_at(m, i)) continue;
        auto it = contrib[i].find(m);
        ScalarRat ci = it == contrib[i].end() ? ScalarRat() : it->second;
        if (!have) {
          c = ci;
          have = true;
        } else if (ci != c) {
          throw AlgebraError("F_t(" + m0.str() + "): colorings disagree at " + m.str());
        }
      }
      if (!have) throw AlgebraError("F_t(" + m0.str() + "): second dominant monomial " + m.str());
    }
    if (c.is_zero()) continue;
    F.add(m, c);
    check_budget(F.size(), "F_t");
    for (int i = 0; i < n; ++i) {
      if (!dominant_at(m, i)) continue;
      auto it = contrib[i].find(m);
      ScalarRat lam = c - (it == contrib[i].end() ? ScalarRat() : it->second);
      if (lam.is_zero()) continue;
      for (auto& [mm, cc, k] : sl2_character(m, i)) {
        if (k == 0) continue;
        contrib[i][mm] += lam * cc;
        if (queue[d + k].insert(mm).second) ++seen;
        check_budget(seen, "F_t");
      }
    }
  }
  if (F.bar() != F) throw AlgebraError("F_t(" + m0.str() + ") is not bar-invariant");
  std::lock_guard<std::mutex> lk(mu_);
  f_memo_.emplace(m0, std::make_shared<const TorusElement>(F));
  return F;
}

std::vector<Var> standard_factors(const Monomial& m) {
  std::vector<Var> out;
  for (auto& [v, e] : m.entries()) {
    if (e < 0) throw AlgebraError("standard_factors: " + m.str() + " is not dominant");
    for (int k = 0; k < e; ++k) out.push_back(v);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Var& a, const Var& b) { return a.p != b.p ? a.p < b.p : a.i < b.i; });
  return out;
}

ScalarRat QTChar::standard_prefactor(const Monomial& m) const {
  TorusElement P = TorusElement::comm(Monomial());
  for (auto& v : standard_factors(m)) P = T_.mul(P, TorusElement::comm(Monomial::Y(v.i, v.p)));
  return ScalarRat(1) / P.coeff(m);
}

TorusElement QTChar::M_t(const Monomial& m) const {
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = m_memo_.find(m);
    if (it != m_memo_.end()) return *it->second;
  }
  TorusElement P = TorusElement::comm(Monomial());
  for (auto& v : standard_factors(m)) {
    P = T_.mul(P, F_t(v.i, v.p));
    check_budget(P.size(), "M_t");
  }
  P = P * standard_prefactor(m);
  if (!P.coeff(m).is_one()) throw AlgebraError("M_t: top coefficient is not 1");
  std::lock_guard<std::mutex> lk(mu_);
  m_memo_.emplace(m, std::make_shared<const TorusElement>(P));
  return P;
}

// a in tZ[t] with f + a bar-invariant; nullopt if the half-integer part is not symmetric
static std::optional<ScalarRat> kl_correction(const ScalarRat& f) {
  if (!f.is_laurent()) return std::nullopt;
  const HalfLaurent& h = f.num();
  HalfLaurent a;
  if (h.is_zero()) return ScalarRat(a);
  int top = std::max(h.max_exp(), -h.min_exp());
  for (int e = 1; e <= top; ++e) {
    mpq_class d = h.coeff(-e) - h.coeff(e);
    if (d == 0) continue;
    if (e % 2 != 0) return std::nullopt;
    a += HalfLaurent(d, e);
  }
  return ScalarRat(a);
}

LtResult QTChar::L_t(const Monomial& m) const {
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = l_memo_.find(m);
    if (it != l_memo_.end()) return *it->second;
  }
  const auto& g = s_.dynkin();
  LtResult res;
  res.L = M_t(m);
  // depth (number of A^{-1} factors) is a linear extension of the Nakajima order
  auto depth = [&](const Monomial& x) {
    auto r = nakajima_leq(g, x, m);
    if (!r.leq) throw AlgebraError("L_t: " + x.str() + " is not below " + m.str());
    int d = 0;
    for (auto& [k, e] : r.certificate) d += e;
    return d;
  };
  std::set<Monomial> done{m};
  for (;;) {
    std::optional<std::pair<int, Monomial>> best;
    for (auto& x : res.L.dominant()) {
      if (done.count(x)) continue;
      int d = depth(x);
      if (!best || d < best->first) best = {d, x};
    }
    if (!best) break;
    const Monomial& x = best->second;
    done.insert(x);
    auto a = kl_correction(res.L.coeff(x));
    if (!a) throw AlgebraError("L_t(" + m.str() + "): no correction in tZ[t] at " + x.str());
    if (a->is_zero()) continue;
    res.kl.push_back({x, *a});
    res.L += M_t(x) * *a;
    check_budget(res.L.size(), "L_t");
  }
  if (res.L.bar() != res.L) throw AlgebraError("L_t(" + m.str() + ") is not bar-invariant");
  std::lock_guard<std::mutex> lk(mu_);
  l_memo_.emplace(m, std::make_shared<const LtResult>(res));
  return res;
}

std::vector<std::pair<Monomial, ScalarRat>> QTChar::standard_expansion(TorusElement x) const {
  const auto& g = s_.dynkin();
  std::vector<std::pair<Monomial, ScalarRat>> out;
  while (!x.is_zero()) {
    auto dom = x.dominant();
    if (dom.empty()) throw AlgebraError("standard_expansion: leftover without dominant monomial");
    const Monomial* top = nullptr;
    for (auto& d : dom) {
      bool maximal = true;
      for (auto& e : dom)
        if (nakajima_less(g, d, e)) maximal = false;
      if (maximal) {
        top = &d;
        break;
      }
    }
    ScalarRat c = x.coeff(*top);
    out.push_back({*top, c});
    x = x - M_t(*top) * c;
  }
  return out;
}

// ---------------- t = 1 references

std::map<Monomial, long long> fm_classical(const DynkinData& g, const Monomial& m0,
                                           std::size_t budget) {
  const int n = g.rank;
  std::map<Monomial, long long> chi;
  std::vector<std::map<Monomial, long long>> col(n);
  // weight grading: number of A^{-1} factors, tracked explicitly
  std::map<Monomial, int> level{{m0, 0}};
  std::set<std::pair<int, Monomial>> todo{{0, m0}};
  while (!todo.empty()) {
    auto [lv, m] = *todo.begin();
    todo.erase(todo.begin());
    std::vector<int> idom;
    long long c = -1;
    for (int i = 0; i < n; ++i) {
      bool dom = true;
      for (auto& [v, e] : m.entries())
        if (v.i == i && e < 0) dom = false;
      if (dom) {
        idom.push_back(i);
      } else {
        long long ci = col[i].count(m) ? col[i][m] : 0;
        if (c >= 0 && ci != c) throw AlgebraError("fm_classical: inconsistent coloring");
        c = ci;
      }
    }
    if (m == m0) c = 1;
    if (c < 0) throw AlgebraError("fm_classical: extra dominant monomial " + m.str());
    if (c == 0) continue;
    chi[m] = c;
    if (chi.size() > budget) throw BudgetError("fm_classical: budget exceeded");
    for (int i : idom) {
      long long lam = c - (col[i].count(m) ? col[i][m] : 0);
      if (lam == 0) continue;
      if (lam < 0) throw AlgebraError("fm_classical: negative multiplicity");
      // sl2 character: expand each Y_{i,p} string of the peeled decomposition
      std::map<int, int> cnt;
      for (auto& [v, e] : m.entries())
        if (v.i == i) cnt[v.p] = e;
      std::map<Monomial, std::pair<long long, int>> terms{{Monomial(), {1, 0}}};
      for (auto [a, b] : strings_of(cnt)) {
        std::map<Monomial, std::pair<long long, int>> nx;
        Monomial down;
        std::vector<std::pair<Monomial, int>> steps{{Monomial(), 0}};
        for (int j = 1, r = b + 1; r >= a + 1; ++j, r -= 2) {
          down = down * a_monomial(g, i, r).inverse();
          steps.push_back({down, j});
        }
        for (auto& [t, cd] : terms)
          for (auto& [s, j] : steps) {
            auto& slot = nx[t * s];
            slot.first += cd.first;
            slot.second = cd.second + j;
          }
        terms = std::move(nx);
      }
      for (auto& [t, cd] : terms) {
        if (cd.second == 0) continue;
        Monomial mm = m * t;
        col[i][mm] += lam * cd.first;
        level.emplace(mm, lv + cd.second);
        todo.insert({lv + cd.second, mm});
      }
    }
  }
  return chi;
}

std::map<Monomial, long long> type_a_fundamental(int n, int i, int p) {
  // box j (1..n+1) at parameter a: Y_{j,a+j-1} Y_{j-1,a+j}^{-1}, 0-based vertex j-1
  auto box = [n](int j, int a) {
    Monomial b;
    if (j <= n) b = b * Monomial::Y(j - 1, a + j - 1);
    if (j >= 2) b = b * Monomial::Y(j - 2, a + j, -1);
    return b;
  };
  const int h = i + 1;  // column height, i 0-based
  std::map<Monomial, long long> out;
  std::vector<int> col(h);
  for (int r = 0; r < h; ++r) col[r] = r + 1;
  for (;;) {
    Monomial m;
    for (int r = 0; r < h; ++r) m = m * box(col[r], p + h - 2 * r - 1);
    out[m] += 1;
    int r = h - 1;
    while (r >= 0 && col[r] == n + 1 - (h - 1 - r)) --r;
    if (r < 0) break;
    ++col[r];
    for (int k = r + 1; k < h; ++k) col[k] = col[k - 1] + 1;
  }
  return out;
}

// ---------------- Hernandez-Leclerc map

ScalarRat hl_lambda() { return ScalarRat::v_pow(1) * (ScalarRat::v(1) - ScalarRat::v(-1)); }

DHElement phi_fundamental(const SDHAlgebra& A, int i, int p) {
  const DerivedCat& dc = A.derived();
  DHElement z;
  z.add(dc.object({dc.happel(i, p)}), hl_lambda());
  return z;
}

static DHElement dh_unit() {
  DHElement z;
  z.add(ModWord{}, ScalarRat(1));
  return z;
}

DHElement phi_standard(const SDHAlgebra& A, const QTChar& C, const Monomial& m) {
  DHElement z = dh_unit();
  for (auto& v : standard_factors(m)) z = A.dh_mul(z, phi_fundamental(A, v.i, v.p));
  return z * C.standard_prefactor(m);
}

DHElement phi(const SDHAlgebra& A, const QTChar& C, const TorusElement& x) {
  DHElement z;
  for (auto& [m, c] : C.standard_expansion(x)) z = z + phi_standard(A, C, m) * c;
  return z;
}

DHElement phi_simple(const SDHAlgebra& A, const QTChar& C, const Monomial& m) {
  LtResult L = C.L_t(m);
  DHElement z = phi_standard(A, C, m);
  for (auto& [mp, a] : L.kl) z = z + phi_standard(A, C, mp) * a;
  return z;
}

Monomial monomial_of(const SDHAlgebra& A, const ModWord& V) {
  const DerivedCat& dc = A.derived();
  Monomial m;
  for (auto& x : dc.summands(V)) {
    Var y = dc.happel_inverse(x);
    m = m * Monomial::Y(y.i, y.p);
  }
  return m;
}

CharCoefficients hl_coefficients(const SDHAlgebra& A, const QTChar& C, const Monomial& m) {
  const auto& g = C.seq().dynkin();
  DerivedObject Vm = A.derived().monomial_object(m);
  CharCoefficients out;
  DHElement Z = phi_simple(A, C, m);
  for (auto& [V, c] : Z.terms()) {
    if (V == Vm) {
      out.leading = c;
      continue;
    }
    Monomial mp = monomial_of(A, V);
    if (!nakajima_less(g, mp, m))
      throw AlgebraError("hl_coefficients: " + mp.str() + " is not below " + m.str());
    out.lower.push_back({mp, c});
  }
  return out;
}

CharCoefficients hl_coefficients_recipe(const SDHAlgebra& A, const QTChar& C,
                                        const Monomial& m) {
  auto lead = [&](const Monomial& x) {
    DHElement z = phi_standard(A, C, x);
    auto it = z.terms().find(A.derived().monomial_object(x));
    return it == z.terms().end() ? ScalarRat() : it->second;
  };
  CharCoefficients out;
  out.leading = lead(m);
  for (auto& [mp, a] : C.L_t(m).kl) out.lower.push_back({mp, a * lead(mp)});
  return out;
}

SDHElement semi_derived_L(const SDHAlgebra& A, const QTChar& C, const Monomial& m) {
  return semi_derived_char(A, m, hl_coefficients(A, C, m));
}

}  // namespace qh
