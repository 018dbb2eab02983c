#include "qh/qcluster.hpp"

#include <algorithm>
#include <functional>
#include <regex>
#include <set>
#include <sstream>

#include "json.hpp"

namespace qh {

// ---------------- quantum torus

QLaurent QLaurent::monomial(const IntVec& a, const ScalarRat& c) {
  QLaurent x;
  x.add(a, c);
  return x;
}

void QLaurent::add(const IntVec& a, const ScalarRat& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = t_.try_emplace(a, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

QLaurent QLaurent::operator+(const QLaurent& o) const {
  QLaurent r = *this;
  for (auto& [a, c] : o.t_) r.add(a, c);
  return r;
}

QLaurent QLaurent::operator-(const QLaurent& o) const {
  QLaurent r = *this;
  for (auto& [a, c] : o.t_) r.add(a, -c);
  return r;
}

QLaurent QLaurent::operator*(const ScalarRat& c) const {
  QLaurent r;
  for (auto& [a, x] : t_) r.add(a, x * c);
  return r;
}

std::map<IntVec, mpq_class> QLaurent::at_t_one() const {
  std::map<IntVec, mpq_class> out;
  for (auto& [a, c] : t_) {
    if (!c.is_laurent()) throw AlgebraError("at_t_one: non-Laurent coefficient");
    mpq_class x = c.at_one();
    if (x != 0) out[a] = x;
  }
  return out;
}

std::string QLaurent::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << "(" << it->second.str("t") << ")X^(";
    for (size_t i = 0; i < it->first.size(); ++i) os << (i ? "," : "") << it->first[i];
    os << ")";
  }
  return os.str();
}

int QTorusN::form(const IntVec& a, const IntVec& b) const {
  int r = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      if (b[j]) r += a[i] * L_[i][j] * b[j];
  }
  return r;
}

static IntVec vadd(const IntVec& a, const IntVec& b, int sb = 1) {
  IntVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + sb * b[i];
  return r;
}

QLaurent QTorusN::mul(const QLaurent& x, const QLaurent& y) const {
  QLaurent r;
  for (auto& [a, c] : x.terms())
    for (auto& [b, d] : y.terms()) r.add(vadd(a, b), c * d * ScalarRat::v_pow(form(a, b)));
  return r;
}

std::optional<QLaurent> QTorusN::left_divide(const QLaurent& d, const QLaurent& p) const {
  if (d.is_zero()) throw AlgebraError("left_divide: zero divisor");
  QLaurent q;
  if (p.is_zero()) return q;
  const IntVec& dl = d.terms().rbegin()->first;
  const ScalarRat& dc = d.terms().rbegin()->second;
  IntVec floor = vadd(p.terms().begin()->first, d.terms().begin()->first, -1);
  QLaurent r = p;
  while (!r.is_zero()) {
    IntVec e = vadd(r.terms().rbegin()->first, dl, -1);
    if (e < floor) return std::nullopt;
    ScalarRat c = r.terms().rbegin()->second / (dc * ScalarRat::v_pow(form(dl, e)));
    QLaurent term = QLaurent::monomial(e, c);
    q = q + term;
    r = r - mul(d, term);
  }
  return q;
}

// ---------------- ice quivers

int IceQuiver::add_vertex(const SeedVertex& v) {
  v_.push_back(v);
  for (auto& row : B_) row.push_back(0);
  B_.emplace_back(v_.size(), 0);
  return size() - 1;
}

void IceQuiver::add_arrow(int x, int y, int mult) {
  if (x == y) throw AlgebraError("add_arrow: loop");
  B_[x][y] += mult;
  B_[y][x] -= mult;
}

std::vector<int> IceQuiver::mutable_vertices() const {
  std::vector<int> out;
  for (int u = 0; u < size(); ++u)
    if (!v_[u].frozen) out.push_back(u);
  return out;
}

int IceQuiver::find_label(const std::string& label) const {
  for (int u = 0; u < size(); ++u)
    if (v_[u].label == label) return u;
  return -1;
}

bool IceQuiver::valid() const {
  for (int x = 0; x < size(); ++x) {
    if (B_[x][x] != 0) return false;
    for (int y = 0; y < size(); ++y)
      if (B_[x][y] != -B_[y][x]) return false;
  }
  return true;
}

std::string color_name(VertexColor c) {
  switch (c) {
    case VertexColor::Green: return "green";
    case VertexColor::Red: return "red";
    case VertexColor::Neither: return "neither";
    case VertexColor::Both: return "both";
  }
  return "?";
}

// ---------------- seeds

namespace {

std::string k_label(int j, int z) {
  return "S~_{" + std::to_string(j + 1) + "," + std::to_string(z) + "}";
}

void init_bookkeeping(QuantumSeed& s, SeedOptions opt) {
  const int n = s.size();
  s.Lambda0 = s.Lambda;
  s.framed = s.Q.mutable_vertices();
  s.C.assign(s.framed.size(), IntVec(n, 0));
  for (size_t f = 0; f < s.framed.size(); ++f) s.C[f][s.framed[f]] = 1;
  s.g.assign(n, IntVec(n, 0));
  for (int u = 0; u < n; ++u) s.g[u][u] = 1;
  if (s.mono.size() != static_cast<size_t>(n)) s.mono.assign(n, Monomial());
  s.X.clear();
  if (opt.track_X)
    for (int u = 0; u < n; ++u) s.X.push_back(QLaurent::unit_var(n, u));
}

void check_square(const IntMat& M, int n, const char* what) {
  if (static_cast<int>(M.size()) != n) throw AlgebraError(std::string(what) + ": wrong size");
  for (auto& r : M)
    if (static_cast<int>(r.size()) != n) throw AlgebraError(std::string(what) + ": wrong size");
}

}  // namespace

QuantumSeed build_window_seed(const AdmissibleSequence& s, int a, int b, SeedOptions opt) {
  if (a > b) throw AlgebraError("build_window_seed: empty window");
  QuantumSeed seed;
  auto vs = s.window(a, b);
  std::map<int, int> pmax, pmin;
  for (auto& v : vs) {
    auto [it, fresh] = pmax.try_emplace(v.i, v.p);
    if (!fresh) it->second = std::max(it->second, v.p);
    auto [jt, fresh2] = pmin.try_emplace(v.i, v.p);
    if (!fresh2) jt->second = std::min(jt->second, v.p);
  }
  std::map<Var, int> index;
  for (auto& v : vs) {
    if (index.count(v)) throw AlgebraError("build_window_seed: repeated vertex");
    SeedVertex sv;
    sv.ip = v;
    sv.frozen = v.p == pmin[v.i];
    sv.label = "(" + std::to_string(v.i + 1) + "," + std::to_string(v.p) + ")";
    index[v] = seed.Q.add_vertex(sv);
    seed.mono.push_back(kr_monomial(v.i, v.p, (pmax[v.i] - v.p) / 2 + 1));
  }
  const auto& g = s.dynkin();
  for (auto& v : vs) {
    auto it = index.find({v.i, v.p - 2});
    if (it != index.end()) seed.Q.add_arrow(index[v], it->second);
    for (int j : g.nbrs[v.i]) {
      auto jt = index.find({j, v.p + 1});
      if (jt != index.end()) seed.Q.add_arrow(index[v], jt->second);
    }
  }
  InvQCartan N(g);
  const int n = seed.size();
  seed.Lambda.assign(n, IntVec(n, 0));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) seed.Lambda[x][y] = N.n_pairing(seed.mono[x], seed.mono[y]);
  init_bookkeeping(seed, opt);
  return seed;
}

void assign_labels(QuantumSeed& seed, const DerivedCat& dc) {
  const int n = seed.size();
  seed.deg.assign(n, GradingDegree());
  for (int u = 0; u < n; ++u) {
    auto& v = seed.Q.vertex(u);
    if (v.kind == VertexKind::K) {
      IntVec e(dc.rank(), 0);
      e[v.j] = 1;
      seed.deg[u] = dc.degree_K(dc.proj_coords(e), v.z);
    } else {
      v.label = dc.label(dc.happel(v.ip.i, v.ip.p));
      seed.deg[u] = dc.degree(dc.monomial_object(seed.mono[u]));
    }
  }
}

QuantumSeed extend_tilde(const QuantumSeed& seed, const DerivedCat& dc) {
  if (!seed.history.empty()) throw AlgebraError("extend_tilde: expects a root seed");
  QuantumSeed out;
  out.Q = seed.Q;
  out.mono = seed.mono;
  const int n0 = seed.size();
  const auto& qd = dc.data();
  for (int u = 0; u < n0; ++u) {
    const auto& v = seed.Q.vertex(u);
    if (v.frozen || v.kind == VertexKind::K) continue;
    IndecLabel V = dc.happel(v.ip.i, v.ip.p);
    for (int j = 0; j < dc.rank(); ++j) {
      if (V.root != qd.proj_root(j)) continue;
      SeedVertex K;
      K.kind = VertexKind::K;
      K.frozen = true;
      K.j = j;
      K.z = V.shift - 1;
      K.label = k_label(j, K.z);
      int w = out.Q.add_vertex(K);
      out.Q.add_arrow(w, u);
      out.mono.push_back(Monomial());
    }
  }
  const int n = out.size();
  out.Lambda.assign(n, IntVec(n, 0));
  for (int x = 0; x < n0; ++x)
    for (int y = 0; y < n0; ++y) out.Lambda[x][y] = seed.Lambda[x][y];
  init_bookkeeping(out, {seed.tracks_X()});
  assign_labels(out, dc);
  return out;
}

QuantumSeed seed_from_matrices(const IntMat& B, const IntMat& Lambda, const std::vector<bool>& frozen,
                               SeedOptions opt) {
  const int n = static_cast<int>(B.size());
  check_square(B, n, "seed_from_matrices");
  check_square(Lambda, n, "seed_from_matrices");
  if (static_cast<int>(frozen.size()) != n) throw AlgebraError("seed_from_matrices: frozen size");
  QuantumSeed s;
  for (int u = 0; u < n; ++u) {
    SeedVertex v;
    v.frozen = frozen[u];
    v.label = std::to_string(u + 1);
    s.Q.add_vertex(v);
  }
  s.Q.set_B(B);
  if (!s.Q.valid()) throw AlgebraError("seed_from_matrices: B not skew-symmetric");
  s.Lambda = Lambda;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (Lambda[x][y] != -Lambda[y][x]) throw AlgebraError("seed_from_matrices: Lambda not skew");
  init_bookkeeping(s, opt);
  return s;
}

std::optional<std::map<int, int>> compatibility(const QuantumSeed& seed) {
  const int n = seed.size();
  const IntMat& B = seed.Q.B();
  std::map<int, int> d;
  for (int j : seed.Q.mutable_vertices())
    for (int i = 0; i < n; ++i) {
      long s = 0;
      for (int k = 0; k < n; ++k) s += static_cast<long>(B[k][j]) * seed.Lambda[k][i];
      if (i == j) {
        if (s <= 0) return std::nullopt;
        d[j] = static_cast<int>(s);
      } else if (s != 0) {
        return std::nullopt;
      }
    }
  return d;
}

IntMat mutation_matrix(const IntMat& B, int k) {
  const int n = static_cast<int>(B.size());
  IntMat E(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i) E[i][i] = 1;
  for (int i = 0; i < n; ++i) E[i][k] = i == k ? -1 : std::max(0, -B[i][k]);
  return E;
}

IntMat mutate_B(const IntMat& B, int k) {
  const int n = static_cast<int>(B.size());
  IntMat R = B;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == k || j == k) {
        R[i][j] = -B[i][j];
      } else {
        int sg = (B[i][k] > 0) - (B[i][k] < 0);
        R[i][j] = B[i][j] + sg * std::max(0, B[i][k] * B[k][j]);
      }
    }
  return R;
}

IntMat mutate_Lambda(const IntMat& Lambda, const IntMat& B, int k) {
  const int n = static_cast<int>(Lambda.size());
  IntMat E = mutation_matrix(B, k);
  IntMat LE(n, IntVec(n, 0)), R(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m) LE[i][j] += Lambda[i][m] * E[m][j];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m) R[i][j] += E[m][i] * LE[m][j];
  return R;
}

VertexColor green_red(const QuantumSeed& seed, int k) {
  bool pos = false, neg = false;
  for (auto& row : seed.C) {
    pos |= row[k] > 0;
    neg |= row[k] < 0;
  }
  if (pos && neg) return VertexColor::Both;
  if (pos) return VertexColor::Green;
  if (neg) return VertexColor::Red;
  return VertexColor::Neither;
}

VertexColor green_red_K(const QuantumSeed& seed, int k) {
  bool in = false, out = false;
  for (int u = 0; u < seed.size(); ++u) {
    if (seed.Q.vertex(u).kind != VertexKind::K) continue;
    in |= seed.Q.b(u, k) > 0;
    out |= seed.Q.b(u, k) < 0;
  }
  if (in && out) return VertexColor::Both;
  if (in) return VertexColor::Green;
  if (out) return VertexColor::Red;
  return VertexColor::Neither;
}

namespace {

bool is_green(const QuantumSeed& seed, int k) {
  VertexColor c = green_red(seed, k);
  if (c == VertexColor::Green) return true;
  if (c == VertexColor::Red) return false;
  throw AlgebraError("vertex " + seed.Q.vertex(k).label + " is " + color_name(c));
}

// exponents of the two exchange monomials (k-th entry dropped): incoming, outgoing
std::pair<IntVec, IntVec> exchange_exponents(const IntMat& B, int k) {
  const int n = static_cast<int>(B.size());
  IntVec a(n, 0), b(n, 0);
  for (int u = 0; u < n; ++u) {
    if (u == k) continue;
    a[u] = std::max(0, B[u][k]);
    b[u] = std::max(0, -B[u][k]);
  }
  return {a, b};
}

// t-exponent (halves) of X_k X^{e_k + a'} = t^{c/2} * ordered product of X_u^{a'_u}
int exchange_half_exponent(const IntMat& L, int k, const IntVec& a) {
  const int n = static_cast<int>(a.size());
  int c = 0;
  for (int u = 0; u < n; ++u) c += L[k][u] * a[u];
  for (int u = 0; u < n; ++u)
    for (int w = u + 1; w < n; ++w) c -= a[u] * a[w] * L[u][w];
  return c;
}

QLaurent ordered_power_product(const QTorusN& T, const std::vector<QLaurent>& X, const IntVec& a) {
  QLaurent r = QLaurent::monomial(IntVec(T.rank(), 0));
  for (size_t u = 0; u < a.size(); ++u)
    for (int e = 0; e < a[u]; ++e) r = T.mul(r, X[u]);
  return r;
}

}  // namespace

Monomial tracked_monomial(const QuantumSeed& seed, int k) {
  bool green = is_green(seed, k);
  Monomial m = seed.mono[k].inverse();
  for (int u = 0; u < seed.size(); ++u) {
    int c = green ? seed.Q.b(k, u) : seed.Q.b(u, k);
    if (c > 0) m = m * seed.mono[u].pow(c);
  }
  return m;
}

Monomial monomial_from_g(const QuantumSeed& root, const IntVec& g) {
  Monomial m;
  for (int u = 0; u < root.size(); ++u)
    if (g[u]) m = m * root.mono[u].pow(g[u]);
  return m;
}

QuantumSeed mutate(const QuantumSeed& seed, int k) {
  const int n = seed.size();
  if (k < 0 || k >= n) throw AlgebraError("mutate: vertex out of range");
  if (seed.Q.vertex(k).frozen) throw AlgebraError("mutate: vertex " + seed.Q.vertex(k).label + " is frozen");
  if (!compatibility(seed)) throw AlgebraError("mutate: (B, Lambda) not compatible");
  const IntMat& B = seed.Q.B();
  QuantumSeed r = seed;
  r.history.push_back(k);
  r.Q.set_B(mutate_B(B, k));
  r.Lambda = mutate_Lambda(seed.Lambda, B, k);

  const bool green = is_green(seed, k);
  for (size_t f = 0; f < r.C.size(); ++f) {
    const int ck = seed.C[f][k], sg = (ck > 0) - (ck < 0);
    for (int u = 0; u < n; ++u)
      r.C[f][u] = u == k ? -ck : seed.C[f][u] + sg * std::max(0, ck * B[k][u]);
  }

  IntVec gk(n, 0);
  for (int i = 0; i < n; ++i) gk[i] = -seed.g[k][i];
  for (int u = 0; u < n; ++u) {
    int c = green ? B[k][u] : B[u][k];
    if (c > 0)
      for (int i = 0; i < n; ++i) gk[i] += c * seed.g[u][i];
  }
  r.g[k] = gk;
  r.mono[k] = tracked_monomial(seed, k);

  auto [a, b] = exchange_exponents(B, k);
  if (seed.graded()) {
    GradingDegree d;
    for (int u = 0; u < n; ++u)
      for (int e = 0; e < a[u]; ++e) d += seed.deg[u];
    r.deg[k] = d - seed.deg[k];
  }
  if (seed.tracks_X()) {
    QTorusN T(seed.Lambda0);
    auto part = [&](const IntVec& e) {
      int c = 0;
      for (int u = 0; u < n; ++u) c += seed.Lambda[k][u] * e[u];
      for (int u = 0; u < n; ++u)
        for (int w = u + 1; w < n; ++w) c -= e[u] * e[w] * seed.Lambda[u][w];
      return ordered_power_product(T, seed.X, e) * ScalarRat::v_pow(c);
    };
    QLaurent P = part(a) + part(b);
    auto q = T.left_divide(seed.X[k], P);
    if (!q) throw AlgebraError("mutate: exchange numerator not divisible by X_k (Laurent check)");
    r.X[k] = *q;
  }
  return r;
}

HomogeneityReport homogeneity_audit(const QuantumSeed& seed) {
  HomogeneityReport rep;
  if (!seed.graded()) throw AlgebraError("homogeneity_audit: seed has no degrees");
  for (int k : seed.Q.mutable_vertices()) {
    auto [a, b] = exchange_exponents(seed.Q.B(), k);
    GradingDegree da, db;
    for (int u = 0; u < seed.size(); ++u) {
      for (int e = 0; e < a[u]; ++e) da += seed.deg[u];
      for (int e = 0; e < b[u]; ++e) db += seed.deg[u];
    }
    if (!(da == db)) {
      rep.ok = false;
      rep.failures.push_back(seed.Q.vertex(k).label + ": in " + da.str() + " != out " + db.str());
    }
  }
  return rep;
}

// ---------------- framed oracle

FramedOracle::FramedOracle(const QuantumSeed& root) {
  n_ = root.size();
  auto muts = root.Q.mutable_vertices();
  nf_ = static_cast<int>(muts.size());
  const int N = n_ + nf_;
  B_.assign(N, IntVec(N, 0));
  for (int x = 0; x < n_; ++x)
    for (int y = 0; y < n_; ++y) B_[x][y] = root.Q.b(x, y);
  for (int f = 0; f < nf_; ++f) {
    B_[n_ + f][muts[f]] = 1;
    B_[muts[f]][n_ + f] = -1;
    IntVec d(n_, 0);
    for (int i = 0; i < n_; ++i) d[i] = -root.Q.b(i, muts[f]);
    ydeg_.push_back(d);
  }
  for (int u = 0; u < N; ++u) x_.push_back(QLaurent::unit_var(N, u));
}

void FramedOracle::mutate(int k) {
  const int N = n_ + nf_;
  QTorusN T(IntMat(N, IntVec(N, 0)));
  auto [a, b] = exchange_exponents(B_, k);
  QLaurent P = ordered_power_product(T, x_, a) + ordered_power_product(T, x_, b);
  auto q = T.left_divide(x_[k], P);
  if (!q) throw AlgebraError("FramedOracle: division failed");
  x_[k] = *q;
  B_ = mutate_B(B_, k);
}

IntVec FramedOracle::degree_of(const IntVec& e) const {
  IntVec d(n_, 0);
  for (int i = 0; i < n_; ++i) d[i] = e[i];
  for (int f = 0; f < nf_; ++f)
    for (int i = 0; i < n_; ++i) d[i] += e[n_ + f] * ydeg_[f][i];
  return d;
}

IntVec FramedOracle::g_vector(int u) const {
  if (!homogeneous(u)) throw AlgebraError("FramedOracle: inhomogeneous variable");
  return degree_of(x_[u].terms().begin()->first);
}

bool FramedOracle::homogeneous(int u) const {
  std::set<IntVec> ds;
  for (auto& [e, c] : x_[u].terms()) ds.insert(degree_of(e));
  return ds.size() == 1;
}

// ---------------- theta

namespace {

DHElement dh_one() {
  DHElement x;
  x.add({}, ScalarRat(1));
  return x;
}

std::string kmono_str(const KMonomial& k) {
  if (k.empty()) return "1";
  std::string s;
  for (auto& [l, v] : k) {
    s += "K_{(";
    for (size_t j = 0; j < v.size(); ++j) s += (j ? "," : "") + std::to_string(v[j]);
    s += ")," + std::to_string(l) + "}";
  }
  return s;
}

}  // namespace

ThetaStep theta_check(const SDHAlgebra& A, const QTChar& C, const QuantumSeed& seed, int k) {
  ThetaStep st;
  st.k = k;
  const DerivedCat& dc = A.derived();
  if (!seed.graded()) throw AlgebraError("theta_check: seed has no degrees");
  QuantumSeed next = mutate(seed, k);
  st.before = seed.mono[k];
  st.after = next.mono[k];
  auto [a, b] = exchange_exponents(seed.Q.B(), k);
  std::vector<std::vector<Monomial>> rhs;
  for (const IntVec* e : {&a, &b}) {
    std::vector<Monomial> ms;
    KMonomial K;
    for (int u = 0; u < seed.size(); ++u) {
      if (!(*e)[u]) continue;
      const auto& v = seed.Q.vertex(u);
      if (v.kind == VertexKind::K) {
        IntVec ej(dc.rank(), 0);
        ej[v.j] = (*e)[u];
        K = k_add(K, {{v.z, dc.proj_coords(ej)}});
      } else {
        for (int r = 0; r < (*e)[u]; ++r) ms.push_back(seed.mono[u]);
      }
    }
    rhs.push_back(ms);
    st.expected_K.push_back(K);
    st.cluster_coeffs.push_back(ScalarRat::v_pow(exchange_half_exponent(seed.Lambda, k, *e)));
  }
  try {
    st.lift = verify_exchange_lift(A, C, {st.before, st.after}, rhs);
  } catch (const std::exception& ex) {
    st.error = ex.what();
    return st;
  }
  if (!st.lift.ok) {
    st.error = st.lift.error;
    return st;
  }
  st.k_match = st.lift.kfactors == st.expected_K;
  st.coeff_match = st.lift.coeffs == st.cluster_coeffs;
  // pi^H of the semi-derived identity against Phi of the cluster identity
  DHElement lhs = A.pi_H(A.mul(semi_derived_L(A, C, st.before), semi_derived_L(A, C, st.after)));
  DHElement img;
  for (size_t r = 0; r < rhs.size(); ++r) {
    DHElement p = dh_one();
    for (auto& m : rhs[r]) p = A.dh_mul(p, phi_simple(A, C, m));
    img = img + p * st.cluster_coeffs[r];
  }
  st.square = lhs == img;
  st.degree_match = next.deg[k] == dc.degree(dc.monomial_object(st.after));
  st.ok = st.k_match && st.coeff_match && st.square && st.degree_match && st.lift.specializes;
  if (!st.ok && st.error.empty()) st.error = "theta mismatch";
  return st;
}

std::string ThetaStep::json() const {
  nlohmann::json j;
  j["k"] = k;
  j["ok"] = ok;
  j["before"] = before.str();
  j["after"] = after.str();
  j["K_match"] = k_match;
  j["coefficients_match"] = coeff_match;
  j["square"] = square;
  j["degree_match"] = degree_match;
  j["lift"] = nlohmann::json::parse(lift.json());
  j["expected_K"] = nlohmann::json::array();
  for (auto& K : expected_K) j["expected_K"].push_back(kmono_str(K));
  j["cluster_coefficients"] = nlohmann::json::array();
  for (auto& c : cluster_coeffs) j["cluster_coefficients"].push_back(c.str("t"));
  if (!error.empty()) j["error"] = error;
  return j.dump(2);
}

bool ThetaWalk::ok() const {
  if (!initial_ok) return false;
  for (auto& s : steps)
    if (!s.ok) return false;
  return true;
}

std::string ThetaWalk::json() const {
  nlohmann::json j;
  j["initial_ok"] = initial_ok;
  j["ok"] = ok();
  j["steps"] = nlohmann::json::array();
  for (auto& s : steps) j["steps"].push_back(nlohmann::json::parse(s.json()));
  return j.dump(2);
}

ThetaWalk theta_walk(const SDHAlgebra& A, const QTChar& C, const QuantumSeed& root,
                     const std::vector<int>& ks) {
  ThetaWalk w;
  const DerivedCat& dc = A.derived();
  w.initial_ok = root.graded();
  for (int u = 0; u < root.size() && w.initial_ok; ++u) {
    const auto& v = root.Q.vertex(u);
    if (v.kind == VertexKind::K) {
      IntVec e(dc.rank(), 0);
      e[v.j] = 1;
      w.initial_ok = root.deg[u] == dc.degree_K(dc.proj_coords(e), v.z);
    } else {
      w.initial_ok = root.deg[u] == A.homogeneous_degree(semi_derived_L(A, C, root.mono[u]));
    }
  }
  QuantumSeed s = root;
  for (int k : ks) {
    w.steps.push_back(theta_check(A, C, s, k));
    s = mutate(s, k);
  }
  return w;
}

// ---------------- chains

ChainSeed chain_seed(const AdmissibleSequence& s, const DerivedCat* dc, int root, const std::string& word,
                     SeedOptions opt) {
  ChainSeed cs;
  cs.chain = chain_from_expansion(s, root, word);
  const int lo = cs.chain.lo, hi = cs.chain.hi;
  cs.seed = build_window_seed(s, lo, hi, opt);
  if (dc) cs.seed = extend_tilde(cs.seed, *dc);
  const int len = hi - lo + 1;
  IntVec cur(len);
  cs.holder.resize(len);
  for (int t = 0; t < len; ++t) {
    cur[t] = hi - t;
    cs.holder[t] = cur[t] - lo;
  }
  const IntVec& target = cs.chain.added;
  // every prefix of cur stays an interval
  auto bubble = [&](int e, int t) {
    int u = static_cast<int>(std::find(cur.begin(), cur.end(), e) - cur.begin());
    for (int w = u; w > t; --w) {
      if (s.at(cur[w - 1]).i == s.at(cur[w]).i) {
        cs.seed = mutate(cs.seed, cs.holder[w - 1]);
        cs.mutations.push_back(cs.holder[w - 1]);
      } else {
        std::swap(cs.holder[w - 1], cs.holder[w]);
      }
      std::swap(cur[w - 1], cur[w]);
    }
  };
  // move the start down to the root: cur = root, root+1, .., hi, root-1, .., lo
  for (int e = hi - 1; e >= target[0]; --e) bubble(e, 0);
  for (int t = 1; t < len; ++t) bubble(target[t], t);
  cs.boxes_ok = true;
  for (int t = 0; t < len; ++t) {
    int u = cs.holder[t];
    auto& v = cs.seed.Q.vertex(u);
    v.ip = s.at(target[t]);
    if (dc) v.label = dc->label(dc->happel(v.ip.i, v.ip.p));
    cs.boxes_ok = cs.boxes_ok && cs.seed.mono[u] == ibox_monomial(s, cs.chain.boxes[t]);
  }
  return cs;
}

namespace {

std::vector<std::string> chain_keys(const ChainSeed& cs) {
  std::vector<std::string> key(cs.seed.size());
  for (size_t t = 0; t < cs.holder.size(); ++t) key[cs.holder[t]] = "c" + std::to_string(t + 1);
  for (int u = 0; u < cs.seed.size(); ++u)
    if (cs.seed.Q.vertex(u).kind == VertexKind::K) key[u] = cs.seed.Q.vertex(u).label;
  return key;
}

}  // namespace

std::map<std::pair<std::string, std::string>, int> chain_matrix(const ChainSeed& cs) {
  auto key = chain_keys(cs);
  std::map<std::pair<std::string, std::string>, int> out;
  for (int x = 0; x < cs.seed.size(); ++x)
    for (int y = 0; y < cs.seed.size(); ++y)
      if (cs.seed.Q.b(x, y)) out[{key[x], key[y]}] = cs.seed.Q.b(x, y);
  return out;
}

std::vector<std::string> chain_mutable_keys(const ChainSeed& cs) {
  auto key = chain_keys(cs);
  std::vector<std::string> out;
  for (int u : cs.seed.Q.mutable_vertices()) out.push_back(key[u]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> stabilization_diff(const ChainSeed& small, const ChainSeed& big) {
  auto ms = chain_matrix(small), mb = chain_matrix(big);
  auto cols = chain_mutable_keys(small);
  std::set<std::string> colset(cols.begin(), cols.end());
  std::set<std::string> rows;
  for (auto& [k, b] : ms) rows.insert(k.first);
  for (auto& [k, b] : mb) rows.insert(k.first);
  std::vector<std::string> diff;
  for (auto& r : rows)
    for (auto& c : colset) {
      auto is = ms.find({r, c});
      auto ib = mb.find({r, c});
      int bs = is == ms.end() ? 0 : is->second, bb = ib == mb.end() ? 0 : ib->second;
      if (bs != bb)
        diff.push_back("b(" + r + "," + c + "): " + std::to_string(bs) + " -> " + std::to_string(bb));
    }
  return diff;
}

// ---------------- serialization

namespace {

std::string node_id(const QuantumSeed& s, int u) {
  return (s.Q.vertex(u).kind == VertexKind::K ? "k" : "v") + std::to_string(u);
}

std::string quote(const std::string& x) {
  std::string r = "\"";
  for (char c : x) {
    if (c == '"' || c == '\\') r += '\\';
    r += c;
  }
  return r + "\"";
}

}  // namespace

std::string seed_dot(const QuantumSeed& seed, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  for (int u = 0; u < seed.size(); ++u) {
    const auto& v = seed.Q.vertex(u);
    os << "  " << node_id(seed, u) << " [label=" << quote(v.label);
    if (v.frozen) os << ", frozen=true, shape=box";
    if (v.kind == VertexKind::K) os << ", kind=K, color=blue";
    os << "];\n";
  }
  for (int x = 0; x < seed.size(); ++x)
    for (int y = 0; y < seed.size(); ++y) {
      int b = seed.Q.b(x, y);
      if (b <= 0) continue;
      os << "  " << node_id(seed, x) << " -> " << node_id(seed, y);
      if (b > 1) os << " [mult=" << b << "]";
      os << ";\n";
    }
  os << "}\n";
  return os.str();
}

std::string seed_json(const QuantumSeed& seed) {
  nlohmann::ordered_json j;
  j["vertices"] = nlohmann::ordered_json::array();
  for (int u = 0; u < seed.size(); ++u) {
    const auto& v = seed.Q.vertex(u);
    nlohmann::ordered_json x;
    x["id"] = node_id(seed, u);
    x["label"] = v.label;
    x["kind"] = v.kind == VertexKind::K ? "K" : "cluster";
    x["frozen"] = v.frozen;
    if (v.kind == VertexKind::K) {
      x["j"] = v.j + 1;
      x["z"] = v.z;
    } else {
      x["i"] = v.ip.i + 1;
      x["p"] = v.ip.p;
      x["monomial"] = seed.mono[u].str();
    }
    x["g"] = seed.g[u];
    if (seed.graded()) x["degree"] = seed.deg[u].str();
    if (!v.frozen) x["color"] = color_name(green_red(seed, u));
    j["vertices"].push_back(x);
  }
  j["B"] = seed.Q.B();
  j["Lambda"] = seed.Lambda;
  j["history"] = seed.history;
  return j.dump(2) + "\n";
}

DotGraph parse_dot(const std::string& text) {
  DotGraph g;
  static const std::regex edge_re(R"(^\s*(\w+)\s*->\s*(\w+)\s*(\[(.*)\])?\s*;?\s*$)");
  static const std::regex node_re(R"(^\s*(\w+)\s*\[(.*)\]\s*;?\s*$)");
  static const std::regex attr_re(R"((\w+)\s*=\s*(\"((?:[^\"\\]|\\.)*)\"|[^,\s\]]+))");
  auto attrs = [](const std::string& s) {
    std::map<std::string, std::string> out;
    for (auto it = std::sregex_iterator(s.begin(), s.end(), attr_re); it != std::sregex_iterator(); ++it) {
      std::string v = (*it)[3].matched ? (*it)[3].str() : (*it)[2].str();
      std::string u;
      for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] == '\\' && i + 1 < v.size()) ++i;
        u += v[i];
      }
      out[(*it)[1]] = u;
    }
    return out;
  };
  std::istringstream is(text);
  std::string line;
  std::smatch m;
  std::set<std::string> ids;
  while (std::getline(is, line)) {
    auto c = line.find("//");
    if (c != std::string::npos) line = line.substr(0, c);
    if (std::regex_match(line, m, edge_re)) {
      int mult = 1;
      if (m[4].matched) {
        auto a = attrs(m[4]);
        if (a.count("mult")) mult = std::stoi(a["mult"]);
      }
      g.edges[{m[1], m[2]}] += mult;
    } else if (std::regex_match(line, m, node_re)) {
      if (m[1] == "node" || m[1] == "edge" || m[1] == "graph") continue;
      auto a = attrs(m[2]);
      DotGraph::Node nd;
      nd.id = m[1];
      nd.label = a.count("label") ? a["label"] : nd.id;
      nd.frozen = a.count("frozen") && a["frozen"] == "true";
      nd.K = a.count("kind") && a["kind"] == "K";
      if (!ids.insert(nd.id).second) throw AlgebraError("parse_dot: duplicate node " + nd.id);
      g.nodes.push_back(nd);
    }
  }
  for (auto& [e, mult] : g.edges)
    if (!ids.count(e.first) || !ids.count(e.second))
      throw AlgebraError("parse_dot: edge with undeclared endpoint " + e.first + " -> " + e.second);
  return g;
}

DotGraph restrict_graph(const DotGraph& g, const std::vector<std::string>& labels) {
  std::set<std::string> keep(labels.begin(), labels.end()), ids;
  DotGraph r;
  for (auto& n : g.nodes)
    if (keep.count(n.label)) {
      r.nodes.push_back(n);
      ids.insert(n.id);
    }
  for (auto& [e, m] : g.edges)
    if (ids.count(e.first) && ids.count(e.second)) r.edges[e] = m;
  return r;
}

CompareResult compare_graphs(const DotGraph& art, const DotGraph& gold) {
  CompareResult res;
  using Key = std::pair<std::string, bool>;
  std::map<Key, std::vector<int>> ga, gg;
  for (size_t i = 0; i < art.nodes.size(); ++i) ga[{art.nodes[i].label, art.nodes[i].K}].push_back(i);
  for (size_t i = 0; i < gold.nodes.size(); ++i) gg[{gold.nodes[i].label, gold.nodes[i].K}].push_back(i);
  auto kname = [](const Key& k) { return (k.second ? "K-vertex " : "vertex ") + k.first; };
  for (auto& [k, v] : gg)
    if (!ga.count(k) || ga[k].size() != v.size())
      res.diff.push_back("golden has " + std::to_string(v.size()) + " " + kname(k) + ", artifact " +
                         std::to_string(ga.count(k) ? ga[k].size() : 0));
  for (auto& [k, v] : ga)
    if (!gg.count(k)) res.diff.push_back("artifact has extra " + kname(k));
  if (!res.diff.empty()) return res;

  std::map<std::string, int> aidx, gidx;
  for (size_t i = 0; i < art.nodes.size(); ++i) aidx[art.nodes[i].id] = i;
  for (size_t i = 0; i < gold.nodes.size(); ++i) gidx[gold.nodes[i].id] = i;
  const size_t n = gold.nodes.size();
  std::vector<std::vector<int>> ea(n, std::vector<int>(n, 0)), eg(n, std::vector<int>(n, 0));
  for (auto& [e, m] : art.edges) ea[aidx[e.first]][aidx[e.second]] += m;
  for (auto& [e, m] : gold.edges) eg[gidx[e.first]][gidx[e.second]] += m;

  // map golden node -> artifact node, backtracking inside label classes
  std::vector<int> order, map(n, -1);
  std::vector<const std::vector<int>*> cand(n);
  for (auto& [k, v] : gg)
    for (int i : v) {
      order.push_back(i);
      cand[i] = &ga[k];
    }
  std::vector<bool> used(art.nodes.size(), false);
  auto consistent = [&](size_t pos) {
    int gi = order[pos], ai = map[gi];
    for (size_t q = 0; q <= pos; ++q) {
      int gj = order[q], aj = map[gj];
      if (eg[gi][gj] != ea[ai][aj] || eg[gj][gi] != ea[aj][ai]) return false;
    }
    return true;
  };
  long budget = 2000000;
  std::function<bool(size_t)> search = [&](size_t pos) {
    if (pos == order.size()) return true;
    if (--budget < 0) return false;
    int gi = order[pos];
    for (int ai : *cand[gi]) {
      if (used[ai]) continue;
      map[gi] = ai;
      used[ai] = true;
      if (consistent(pos) && search(pos + 1)) return true;
      used[ai] = false;
      map[gi] = -1;
    }
    return false;
  };
  if (search(0)) {
    res.ok = true;
    return res;
  }
  // diff against the first label-respecting assignment
  std::fill(used.begin(), used.end(), false);
  for (int gi : order)
    for (int ai : *cand[gi])
      if (!used[ai]) {
        map[gi] = ai;
        used[ai] = true;
        break;
      }
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y) {
      int a = ea[map[x]][map[y]], g = eg[x][y];
      if (a == g) continue;
      std::string edge = gold.nodes[x].label + " -> " + gold.nodes[y].label;
      if (a < g)
        res.diff.push_back("missing edge " + edge + " (golden " + std::to_string(g) + ", artifact " +
                           std::to_string(a) + ")");
      else
        res.diff.push_back("extra edge " + edge + " (golden " + std::to_string(g) + ", artifact " +
                           std::to_string(a) + ")");
    }
  if (res.diff.empty()) res.diff.push_back("no isomorphism found within the search budget");
  return res;
}

CompareResult golden_compare(const std::string& artifact_dot, const std::string& golden_dot,
                             bool restrict_golden, bool restrict_artifact) {
  DotGraph a = parse_dot(artifact_dot), g = parse_dot(golden_dot);
  auto labels = [](const DotGraph& x) {
    std::vector<std::string> out;
    for (auto& n : x.nodes) out.push_back(n.label);
    return out;
  };
  if (restrict_golden) g = restrict_graph(g, labels(a));
  if (restrict_artifact) a = restrict_graph(a, labels(g));
  return compare_graphs(a, g);
}

}  // namespace qh
