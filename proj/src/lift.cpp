#include "qh/lift.hpp"

#include <set>

#include "json.hpp"

namespace qh {

namespace {

// coefficients c with target = sum c_r xs[r], by elimination over the union of supports
template <class Key>
std::optional<std::vector<ScalarRat>> solve_combination(
    const std::map<Key, ScalarRat>& target, const std::vector<std::map<Key, ScalarRat>>& xs) {
  std::set<Key> keys;
  for (auto& [k, c] : target) keys.insert(k);
  for (auto& x : xs)
    for (auto& [k, c] : x) keys.insert(k);
  const size_t n = xs.size();
  std::vector<std::vector<ScalarRat>> rows;
  for (auto& key : keys) {
    std::vector<ScalarRat> row(n + 1);
    for (size_t r = 0; r < n; ++r) {
      auto it = xs[r].find(key);
      if (it != xs[r].end()) row[r] = it->second;
    }
    auto it = target.find(key);
    if (it != target.end()) row[n] = it->second;
    rows.push_back(std::move(row));
  }
  std::vector<int> pivot_col;
  size_t rank = 0;
  for (size_t c = 0; c < n && rank < rows.size(); ++c) {
    size_t piv = rank;
    while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    ScalarRat inv = ScalarRat(1) / rows[rank][c];
    for (auto& x : rows[rank]) x *= inv;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c].is_zero()) continue;
      ScalarRat f = rows[r][c];
      for (size_t j = c; j <= n; ++j) rows[r][j] -= f * rows[rank][j];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++rank;
  }
  for (size_t r = rank; r < rows.size(); ++r)
    if (!rows[r][n].is_zero()) return std::nullopt;
  if (rank < n) return std::nullopt;  // not unique
  std::vector<ScalarRat> out(n);
  for (size_t r = 0; r < rank; ++r) out[pivot_col[r]] = rows[r][n];
  return out;
}

std::optional<int> half_exponent(const ScalarRat& c) {
  if (!c.is_laurent()) return std::nullopt;
  const auto& t = c.num().terms();
  if (t.size() != 1 || t.begin()->second != 1) return std::nullopt;
  return t.begin()->first;
}

std::string names(const std::vector<Monomial>& ms) {
  std::string s;
  for (auto& m : ms) s += (s.empty() ? "" : "*") + std::string("L(") + m.str() + ")";
  return s.empty() ? "1" : s;
}

std::string kstr(const KMonomial& k) {
  if (k.empty()) return "1";
  std::string s;
  for (auto& [l, v] : k) {
    s += "K_{(";
    for (size_t j = 0; j < v.size(); ++j) s += (j ? "," : "") + std::to_string(v[j]);
    s += ")," + std::to_string(l) + "}";
  }
  return s;
}

TorusElement qt_product(const QTChar& C, const std::vector<Monomial>& ms) {
  TorusElement x = TorusElement::comm(Monomial());
  for (auto& m : ms) x = C.torus().mul(x, C.L_t(m).L);
  return x;
}

void finish_powers(LiftReport& r) {
  r.pure_powers = true;
  for (auto& c : r.coeffs) {
    r.half_exps.push_back(half_exponent(c));
    if (!r.half_exps.back()) r.pure_powers = false;
  }
}

}  // namespace

LiftReport verify_exchange_qt(const QTChar& C, const std::pair<Monomial, Monomial>& lhs,
                              const std::vector<std::vector<Monomial>>& rhs) {
  LiftReport r;
  r.lhs = names({lhs.first, lhs.second});
  TorusElement L = qt_product(C, {lhs.first, lhs.second});
  std::vector<std::map<Monomial, ScalarRat>> xs;
  for (auto& R : rhs) {
    xs.push_back(qt_product(C, R).terms());
    r.rhs += (r.rhs.empty() ? "" : " + ") + std::string("c*") + names(R);
  }
  auto sol = solve_combination(L.terms(), xs);
  if (!sol) {
    r.error = "no exact combination in the quantum torus";
    return r;
  }
  r.coeffs = *sol;
  r.ok = r.specializes = true;
  finish_powers(r);
  return r;
}

LiftReport verify_exchange_lift(const SDHAlgebra& A, const QTChar& C,
                                const std::pair<Monomial, Monomial>& lhs,
                                const std::vector<std::vector<Monomial>>& rhs) {
  LiftReport r;
  const DerivedCat& dc = A.derived();
  r.lhs = names({lhs.first, lhs.second});
  SDHElement L = A.mul(semi_derived_L(A, C, lhs.first), semi_derived_L(A, C, lhs.second));
  GradingDegree top = dc.degree(dc.monomial_object(lhs.first)) +
                      dc.degree(dc.monomial_object(lhs.second));
  std::vector<SDHElement> terms;
  for (auto& R : rhs) {
    GradingDegree d;
    SDHElement prod = A.one();
    for (auto& m : R) {
      d += dc.degree(dc.monomial_object(m));
      prod = A.mul(prod, semi_derived_L(A, C, m));
    }
    auto k = dc.solve_K(top - d);
    if (!k) {
      r.error = "no K-factor for " + names(R);
      return r;
    }
    r.kfactors.push_back(*k);
    terms.push_back(A.mul(A.K(*k), prod));
    r.rhs += (r.rhs.empty() ? "" : " + ") + std::string("c*") + kstr(*k) + "*" + names(R);
  }
  std::vector<std::map<SDHWord, ScalarRat>> xs;
  for (auto& t : terms) xs.push_back(t.terms());
  auto sol = solve_combination(L.terms(), xs);
  if (!sol) {
    // best effort diagnostics: solve on the K -> 1 image
    r.error = "no exact combination in the semi-derived Hall algebra";
    return r;
  }
  r.coeffs = *sol;
  r.ok = true;
  finish_powers(r);
  TorusElement Lq = qt_product(C, {lhs.first, lhs.second});
  TorusElement Rq;
  for (size_t j = 0; j < rhs.size(); ++j) Rq += qt_product(C, rhs[j]) * r.coeffs[j];
  r.specializes = Lq == Rq;
  return r;
}

static nlohmann::json report_json(const LiftReport& r) {
  nlohmann::json j;
  j["ok"] = r.ok;
  j["pure_powers"] = r.pure_powers;
  j["specializes"] = r.specializes;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["coefficients"] = nlohmann::json::array();
  for (size_t k = 0; k < r.coeffs.size(); ++k) {
    nlohmann::json c;
    c["value"] = r.coeffs[k].str("t");
    if (k < r.half_exps.size() && r.half_exps[k]) c["exponent"] = *r.half_exps[k] / 2.0;
    if (k < r.kfactors.size()) c["K"] = kstr(r.kfactors[k]);
    j["coefficients"].push_back(c);
  }
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

std::string LiftReport::json() const { return report_json(*this).dump(2); }

std::string TSystemReport::json() const {
  nlohmann::json j;
  j["i"] = i + 1;
  j["k"] = k;
  j["p"] = p;
  j["semi_derived"] = report_json(semi);
  j["quantum"] = report_json(quantum);
  if (semi.pure_powers && semi.half_exps.size() == 2) {
    j["a"] = *semi.half_exps[0] / 2.0;
    j["b"] = *semi.half_exps[1] / 2.0;
  }
  j["ok"] = ok();
  return j.dump(2);
}

TSystemReport verify_tsystem_lift(const SDHAlgebra& A, const QTChar& C, int i, int k, int p) {
  if (k < 1) throw AlgebraError("verify_tsystem_lift: k must be positive");
  TSystemReport t;
  t.i = i;
  t.k = k;
  t.p = p;
  auto W = [](int j, int kk, int pp) { return kr_monomial(j, pp, kk); };
  std::vector<Monomial> nb;
  for (int j : C.seq().dynkin().nbrs[i]) nb.push_back(W(j, k, p + 1));
  std::pair<Monomial, Monomial> lhs{W(i, k, p), W(i, k, p + 2)};
  t.semi = verify_exchange_lift(A, C, lhs, {{W(i, k - 1, p + 2), W(i, k + 1, p)}, nb});
  t.quantum = verify_exchange_qt(C, lhs, {{W(i, k + 1, p), W(i, k - 1, p + 2)}, nb});
  return t;
}

}  // namespace qh
