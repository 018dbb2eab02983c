#include "qh/derivedcat.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

#include "qh/scalars.hpp"

namespace qh {

// ---------------- grading

GradingDegree GradingDegree::at(int level, const IntVec& v) {
  GradingDegree g;
  g.add(level, v, 1);
  return g;
}

void GradingDegree::add(int level, const IntVec& v, int sign) {
  auto it = parts_.find(level);
  if (it == parts_.end()) {
    IntVec w(v.size());
    for (size_t i = 0; i < v.size(); ++i) w[i] = sign * v[i];
    if (std::any_of(w.begin(), w.end(), [](int x) { return x != 0; })) parts_[level] = w;
    return;
  }
  bool nz = false;
  for (size_t i = 0; i < v.size(); ++i) {
    it->second[i] += sign * v[i];
    nz |= it->second[i] != 0;
  }
  if (!nz) parts_.erase(it);
}

GradingDegree GradingDegree::operator+(const GradingDegree& o) const {
  GradingDegree r = *this;
  for (auto& [l, v] : o.parts_) r.add(l, v, 1);
  return r;
}

GradingDegree GradingDegree::operator-(const GradingDegree& o) const {
  GradingDegree r = *this;
  for (auto& [l, v] : o.parts_) r.add(l, v, -1);
  return r;
}

GradingDegree GradingDegree::operator-() const { return GradingDegree() - *this; }

std::string GradingDegree::str() const {
  if (parts_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [l, v] : parts_) {
    os << (first ? "" : " ") << l << ":(";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    first = false;
  }
  return os.str();
}

// ---------------- derived category

namespace {

IntMat int_inverse(const IntMat& m) {
  int n = static_cast<int>(m.size());
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = m[i][j];
    a[i][n + i] = 1;
  }
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) throw AlgebraError("singular integer matrix");
    std::swap(a[piv], a[c]);
    mpq_class iv = 1 / a[c][c];
    for (auto& x : a[c]) x *= iv;
    for (int r = 0; r < n; ++r)
      if (r != c && a[r][c] != 0) {
        mpq_class f = a[r][c];
        for (int k = 0; k < 2 * n; ++k) a[r][k] -= f * a[c][k];
      }
  }
  IntMat out(n, IntVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (a[i][n + j].get_den() != 1) throw AlgebraError("matrix is not unimodular");
      out[i][j] = static_cast<int>(a[i][n + j].get_num().get_si());
    }
  return out;
}

IntVec apply(const IntMat& m, const IntVec& v) {
  IntVec r(m.size(), 0);
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
  return r;
}

}  // namespace

DerivedCat::DerivedCat(const QuiverData& qd) : qd_(qd) {
  int n = rank();
  IntMat P(n, IntVec(n)), I(n, IntVec(n));
  for (int j = 0; j < n; ++j) {
    IntVec p = qd.quiver().proj_dim(j), q = qd.quiver().inj_dim(j);
    for (int i = 0; i < n; ++i) {
      P[i][j] = p[i];
      I[i][j] = q[i];
    }
  }
  pinv_ = int_inverse(P);
  // Phi [P_j] = -[I_j]
  phi_.assign(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) phi_[i][j] -= I[i][k] * pinv_[k][j];
}

IntVec DerivedCat::proj_coords(const IntVec& dim) const { return apply(pinv_, dim); }

IntVec DerivedCat::coxeter(const IntVec& dim) const { return apply(phi_, dim); }

IndecLabel DerivedCat::tau(const IndecLabel& x) const {
  for (int j = 0; j < rank(); ++j)
    if (qd_.proj_root(j) == x.root) return {qd_.inj_root(j), x.shift - 1};
  int r = qd_.root_index(coxeter(qd_.root(x.root)));
  if (r < 0) throw AlgebraError("tau: Coxeter image is not a positive root");
  return {r, x.shift};
}

IndecLabel DerivedCat::tau_inv(const IndecLabel& x) const {
  for (int j = 0; j < rank(); ++j)
    if (qd_.inj_root(j) == x.root) return {qd_.proj_root(j), x.shift + 1};
  for (int r = 0; r < qd_.num_roots(); ++r)
    if (coxeter(qd_.root(r)) == qd_.root(x.root)) return {r, x.shift};
  throw AlgebraError("tau_inv: no preimage");
}

IndecLabel DerivedCat::happel(int i, int p) const {
  const auto& eps = seq().eps();
  if (!seq().in_parity(i, p)) throw AlgebraError("happel: (i,p) violates parity");
  int k = (eps[i] - p) / 2;
  IndecLabel x{qd_.inj_root(i), 0};
  for (; k > 0; --k) x = tau(x);
  for (; k < 0; ++k) x = tau_inv(x);
  return x;
}

Var DerivedCat::happel_inverse(const IndecLabel& x) const {
  // walk the tau-orbit to an injective at shift 0: x = tau^{-steps}(I_j) = V(j, eps_j + 2 steps)
  auto inj0 = [&](const IndecLabel& z) {
    if (z.shift != 0) return -1;
    for (int j = 0; j < rank(); ++j)
      if (qd_.inj_root(j) == z.root) return j;
    return -1;
  };
  IndecLabel y = x;
  int steps = 0;
  for (int guard = 0; inj0(y) < 0; ++guard) {
    if (guard > 4 * qd_.num_roots() * (std::abs(x.shift) + 2))
      throw AlgebraError("happel_inverse: orbit search failed");
    if (y.shift > 0) {
      y = tau(y);
      ++steps;
    } else {
      y = tau_inv(y);
      --steps;
    }
  }
  int j = inj0(y);
  return {j, seq().eps()[j] + 2 * steps};
}

std::string DerivedCat::label(const IndecLabel& x) const {
  std::string s = qd_.label(x.root);
  if (x.shift) s += "[" + std::to_string(x.shift) + "]";
  return s;
}

IndecLabel DerivedCat::parse_indec(const std::string& s) const {
  static const std::regex re("^([^\\[]+)(\\[(-?\\d+)\\])?$");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw AlgebraError("bad object label '" + s + "'");
  IsoClass c = qd_.parse_label(m[1].str());
  int r = -1;
  for (int t = 0; t < qd_.num_roots(); ++t)
    if (c.mult[t] == 1) r = t;
  if (r < 0 || qd_.dim(c) != qd_.root(r)) throw AlgebraError("not indecomposable: " + s);
  return {r, m[2].matched ? std::stoi(m[3].str()) : 0};
}

std::pair<int, int> DerivedCat::hom_ext(const IndecLabel& x, const IndecLabel& y) const {
  auto hom_shift = [&](int d) {  // Hom(M, N[d])
    if (d == 0) return qd_.hom(x.root, y.root);
    if (d == 1) return qd_.ext(x.root, y.root);
    return 0;
  };
  return {hom_shift(y.shift - x.shift), hom_shift(y.shift + 1 - x.shift)};
}

std::pair<int, int> DerivedCat::hom_ext_fq(const IndecLabel& x, const IndecLabel& y, int q) const {
  RepCatalog cat(qd_, q);
  const Quiver& Q = qd_.quiver();
  const Rep &M = cat.indec(x.root), &N = cat.indec(y.root);
  auto hom_shift = [&](int d) {
    if (d == 0) return hom_dim(cat.field(), Q, M, N);
    if (d == 1) return hom_dim(cat.field(), Q, M, N) - Q.euler(M.dim, N.dim);
    return 0;
  };
  return {hom_shift(y.shift - x.shift), hom_shift(y.shift + 1 - x.shift)};
}

GradingDegree DerivedCat::degree_E(const IsoClass& M, int level) const {
  return GradingDegree::at(level, proj_coords(qd_.dim(M)));
}

GradingDegree DerivedCat::degree_K(const IntVec& alpha, int level) const {
  return GradingDegree::at(level, alpha) + GradingDegree::at(level + 1, alpha);
}

GradingDegree DerivedCat::degree(const DerivedObject& V) const {
  GradingDegree g;
  for (auto& [s, c] : V) g += degree_E(c, s);
  return g;
}

GradingDegree DerivedCat::degree(const KMonomial& k) const {
  GradingDegree g;
  for (auto& [l, a] : k) g += degree_K(a, l);
  return g;
}

std::optional<KMonomial> DerivedCat::solve_K(const GradingDegree& delta) const {
  KMonomial out;
  if (delta.is_zero()) return out;
  auto parts = delta.parts();
  int n = rank();
  int lo = parts.begin()->first, hi = parts.rbegin()->first;
  IntVec carry(n, 0);  // alpha_{l}
  for (int l = hi; l > lo; --l) {
    // delta_l = alpha_{l-1} + alpha_l
    IntVec d = parts.count(l) ? parts[l] : IntVec(n, 0);
    IntVec a(n);
    for (int i = 0; i < n; ++i) a[i] = d[i] - carry[i];
    if (std::any_of(a.begin(), a.end(), [](int x) { return x != 0; })) out[l - 1] = a;
    carry = a;
  }
  IntVec d = parts[lo];
  for (int i = 0; i < n; ++i)
    if (d[i] != carry[i]) return std::nullopt;
  return out;
}

std::vector<IndecLabel> DerivedCat::ext_sort(const std::vector<IndecLabel>& s) const {
  std::vector<IndecLabel> v = s;
  // shift descending, then word index descending
  std::sort(v.begin(), v.end(), [](const IndecLabel& a, const IndecLabel& b) {
    if (a.shift != b.shift) return a.shift > b.shift;
    return a.root > b.root;
  });
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j)
      if (hom_ext(v[j], v[i]).second != 0) throw AlgebraError("ext_sort: no admissible order");
  return v;
}

std::vector<IndecLabel> DerivedCat::summands(const DerivedObject& V) const {
  std::vector<IndecLabel> out;
  for (auto& [s, c] : V)
    for (int r = 0; r < qd_.num_roots(); ++r)
      for (int m = 0; m < c.mult[r]; ++m) out.push_back({r, s});
  return ext_sort(out);
}

DerivedObject DerivedCat::object(const std::vector<IndecLabel>& s) const {
  DerivedObject V;
  for (auto& x : s) {
    auto it = V.find(x.shift);
    if (it == V.end()) it = V.emplace(x.shift, qd_.single(x.root, 0)).first;
    it->second.mult[x.root] += 1;
  }
  return V;
}

DerivedObject DerivedCat::monomial_object(const Monomial& m) const {
  if (!m.is_dominant()) throw AlgebraError("monomial_object: monomial is not dominant");
  std::vector<IndecLabel> s;
  for (auto& [v, e] : m.entries())
    for (int k = 0; k < e; ++k) s.push_back(happel(v.i, v.p));
  return object(s);
}

std::string DerivedCat::label(const DerivedObject& V) const {
  auto s = summands(V);
  if (s.empty()) return "0";
  std::string out;
  for (auto& x : s) out += (out.empty() ? "" : "+") + label(x);
  return out;
}

std::string DerivedCat::repetition_dot(int p0, int p1) const {
  std::ostringstream os;
  os << "digraph repetition {\n";
  auto name = [](int i, int p) {
    return "\"(" + std::to_string(i + 1) + "," + std::to_string(p) + ")\"";
  };
  for (int i = 0; i < rank(); ++i)
    for (int p = p0; p <= p1; ++p)
      if (seq().in_parity(i, p))
        os << "  " << name(i, p) << " [label=\"" << label(happel(i, p)) << "\"];\n";
  for (int i = 0; i < rank(); ++i)
    for (int p = p0; p <= p1; ++p) {
      if (!seq().in_parity(i, p)) continue;
      if (p - 2 >= p0) os << "  " << name(i, p) << " -> " << name(i, p - 2) << ";\n";
      for (int j : seq().dynkin().nbrs[i])
        if (p + 1 <= p1) os << "  " << name(i, p) << " -> " << name(j, p + 1) << ";\n";
    }
  os << "}\n";
  return os.str();
}

}  // namespace qh
