#include "qh/quiver_rep.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "qh/scalars.hpp"

namespace qh {

Quiver Quiver::from_height(const DynkinData& g, const IntVec& eps) {
  Quiver Q;
  Q.n = g.rank;
  for (int i = 0; i < g.rank; ++i)
    for (int j : g.nbrs[i])
      if (i < j) Q.arrows.push_back(eps[i] > eps[j] ? std::pair(i, j) : std::pair(j, i));
  return Q;
}

int Quiver::euler(const IntVec& d, const IntVec& e) const {
  int s = 0;
  for (int i = 0; i < n; ++i) s += d[i] * e[i];
  for (auto [a, b] : arrows) s -= d[a] * e[b];
  return s;
}

IntVec Quiver::proj_dim(int j) const {
  // paths from j: propagate along arrows (acyclic)
  IntVec cnt(n, 0);
  cnt[j] = 1;
  for (int round = 0; round < n; ++round) {
    IntVec next(n, 0);
    next[j] = 1;
    for (auto [a, b] : arrows) next[b] += cnt[a];
    cnt = next;
  }
  return cnt;
}

IntVec Quiver::inj_dim(int j) const {
  IntVec cnt(n, 0);
  cnt[j] = 1;
  for (int round = 0; round < n; ++round) {
    IntVec next(n, 0);
    next[j] = 1;
    for (auto [a, b] : arrows) next[a] += cnt[b];
    cnt = next;
  }
  return cnt;
}

Quiver Quiver::reflected(int k) const {
  Quiver r = *this;
  for (auto& [a, b] : r.arrows)
    if (a == k || b == k) std::swap(a, b);
  return r;
}

int Rep::total() const {
  int s = 0;
  for (int x : dim) s += x;
  return s;
}

Rep zero_rep(const Quiver& Q) {
  Rep r;
  r.dim.assign(Q.n, 0);
  for (size_t a = 0; a < Q.arrows.size(); ++a) r.maps.emplace_back(0, 0);
  return r;
}

Rep simple_rep(const Quiver& Q, int i) {
  Rep r;
  r.dim.assign(Q.n, 0);
  r.dim[i] = 1;
  for (auto [a, b] : Q.arrows) r.maps.emplace_back(r.dim[b], r.dim[a]);
  return r;
}

Rep direct_sum(const Rep& x, const Rep& y) {
  Rep r;
  r.dim.resize(x.dim.size());
  for (size_t i = 0; i < x.dim.size(); ++i) r.dim[i] = x.dim[i] + y.dim[i];
  for (size_t a = 0; a < x.maps.size(); ++a) r.maps.push_back(block_diag(x.maps[a], y.maps[a]));
  return r;
}

bool is_rep(const Quiver& Q, const Rep& r) {
  if (static_cast<int>(r.dim.size()) != Q.n || r.maps.size() != Q.arrows.size()) return false;
  for (size_t a = 0; a < Q.arrows.size(); ++a) {
    auto [s, t] = Q.arrows[a];
    if (r.maps[a].rows != r.dim[t] || r.maps[a].cols != r.dim[s]) return false;
  }
  return true;
}

std::vector<int> hom_offsets(const Rep& X, const Rep& Y) {
  std::vector<int> off(X.dim.size() + 1, 0);
  for (size_t i = 0; i < X.dim.size(); ++i) off[i + 1] = off[i] + Y.dim[i] * X.dim[i];
  return off;
}

Mat hom_space(const GF& F, const Quiver& Q, const Rep& X, const Rep& Y) {
  auto off = hom_offsets(X, Y);
  int unknowns = off.back();
  int neq = 0;
  for (auto [s, t] : Q.arrows) neq += Y.dim[t] * X.dim[s];
  Mat A(neq, unknowns);
  int row = 0;
  for (size_t a = 0; a < Q.arrows.size(); ++a) {
    auto [s, t] = Q.arrows[a];
    const Mat& Ya = Y.maps[a];  // dimY_t x dimY_s
    const Mat& Xa = X.maps[a];  // dimX_t x dimX_s
    // (Ya phi_s - phi_t Xa)(r, c) = 0 for r < dimY_t, c < dimX_s
    for (int r = 0; r < Y.dim[t]; ++r)
      for (int c = 0; c < X.dim[s]; ++c, ++row) {
        for (int k = 0; k < Y.dim[s]; ++k)
          A(row, off[s] + k * X.dim[s] + c) = F.add(A(row, off[s] + k * X.dim[s] + c), Ya(r, k));
        for (int k = 0; k < X.dim[t]; ++k)
          A(row, off[t] + r * X.dim[t] + k) = F.sub(A(row, off[t] + r * X.dim[t] + k), Xa(k, c));
      }
  }
  return nullspace(F, A);
}

int hom_dim(const GF& F, const Quiver& Q, const Rep& X, const Rep& Y) {
  return hom_space(F, Q, X, Y).cols;
}

std::vector<Mat> unpack_morphism(const Rep& X, const Rep& Y, const std::vector<int>& vec) {
  auto off = hom_offsets(X, Y);
  std::vector<Mat> phi;
  for (size_t i = 0; i < X.dim.size(); ++i) {
    Mat m(Y.dim[i], X.dim[i]);
    for (int r = 0; r < Y.dim[i]; ++r)
      for (int c = 0; c < X.dim[i]; ++c) m(r, c) = vec[off[i] + r * X.dim[i] + c];
    phi.push_back(std::move(m));
  }
  return phi;
}

bool is_morphism(const GF& F, const Quiver& Q, const Rep& X, const Rep& Y,
                 const std::vector<Mat>& phi) {
  for (size_t a = 0; a < Q.arrows.size(); ++a) {
    auto [s, t] = Q.arrows[a];
    if (!(mat_mul(F, Y.maps[a], phi[s]) == mat_mul(F, phi[t], X.maps[a]))) return false;
  }
  return true;
}

Rep reflect_source(const GF& F, const Quiver& Q, int k, const Rep& V) {
  std::vector<int> out;  // arrows k -> j
  for (size_t a = 0; a < Q.arrows.size(); ++a) {
    if (Q.arrows[a].second == k) throw AlgebraError("reflect_source: vertex is not a source");
    if (Q.arrows[a].first == k) out.push_back(static_cast<int>(a));
  }
  int total = 0;
  std::vector<int> start;
  for (int a : out) {
    start.push_back(total);
    total += V.dim[Q.arrows[a].second];
  }
  Mat phi(total, V.dim[k]);
  for (size_t t = 0; t < out.size(); ++t) {
    const Mat& m = V.maps[out[t]];
    for (int r = 0; r < m.rows; ++r)
      for (int c = 0; c < m.cols; ++c) phi(start[t] + r, c) = m(r, c);
  }
  Mat im = colspace(F, phi), comp = complement(F, im);
  Mat U = hstack(im, comp);
  Mat Ui = inverse(F, U);
  int dk = comp.cols;
  Rep W = V;
  W.dim[k] = dk;
  for (size_t t = 0; t < out.size(); ++t) {
    int a = out[t], j = Q.arrows[a].second;
    Mat pj(dk, V.dim[j]);
    for (int r = 0; r < dk; ++r)
      for (int c = 0; c < V.dim[j]; ++c) pj(r, c) = Ui(im.cols + r, start[t] + c);
    W.maps[a] = pj;
  }
  return W;
}

bool IsoClass::is_zero() const {
  return std::all_of(mult.begin(), mult.end(), [](int x) { return x == 0; });
}

namespace {

std::vector<Rep> build_indecomposables(const GF& F, const AdmissibleSequence& s, const Quiver& Q) {
  const IntVec& w = s.word();
  std::vector<Quiver> Qs{Q};  // Qs[t] = sigma_{k_t}...sigma_{k_1} Q
  for (int k : w) Qs.push_back(Qs.back().reflected(k));
  std::vector<Rep> out;
  for (size_t t = 0; t < w.size(); ++t) {
    Rep X = simple_rep(Qs[t], w[t]);
    for (int u = static_cast<int>(t) - 1; u >= 0; --u) X = reflect_source(F, Qs[u + 1], w[u], X);
    out.push_back(std::move(X));
  }
  return out;
}

}  // namespace

QuiverData::QuiverData(const AdmissibleSequence& s)
    : seq_(s), Q_(Quiver::from_height(s.dynkin(), s.eps())) {
  roots_ = roots_of_word(s.dynkin(), s.word());
  const GF& F = GF::get(2);
  auto reps = build_indecomposables(F, s, Q_);
  int N = num_roots();
  for (int r = 0; r < N; ++r)
    if (reps[r].dim != roots_[r] || !is_rep(Q_, reps[r]))
      throw AlgebraError("indecomposable construction mismatch");
  hom_.assign(N, IntVec(N, 0));
  for (int r = 0; r < N; ++r)
    for (int t = 0; t < N; ++t) hom_[r][t] = hom_dim(F, Q_, reps[r], reps[t]);
  for (int r = 0; r < N; ++r) {
    if (hom_[r][r] != 1) throw AlgebraError("indecomposable with non-scalar endomorphisms");
    for (int t = 0; t < r; ++t)
      if (hom_[r][t] != 0) throw AlgebraError("Hom matrix is not triangular in word order");
  }
  proj_.assign(Q_.n, -1);
  inj_.assign(Q_.n, -1);
  simple_.assign(Q_.n, -1);
  for (int j = 0; j < Q_.n; ++j) {
    proj_[j] = root_index(Q_.proj_dim(j));
    inj_[j] = root_index(Q_.inj_dim(j));
    IntVec e(Q_.n, 0);
    e[j] = 1;
    simple_[j] = root_index(e);
  }
}

int QuiverData::root_index(const IntVec& dim) const {
  for (int r = 0; r < num_roots(); ++r)
    if (roots_[r] == dim) return r;
  return -1;
}

std::string QuiverData::label(int r) const {
  if (Q_.n == 1) return "S";
  for (int j = 0; j < Q_.n; ++j)
    if (proj_[j] == r) return "P_" + std::to_string(j + 1);
  for (int j = 0; j < Q_.n; ++j)
    if (inj_[j] == r) return "I_" + std::to_string(j + 1);
  for (int j = 0; j < Q_.n; ++j)
    if (simple_[j] == r) return "S_" + std::to_string(j + 1);
  std::string s = "M";
  for (int x : roots_[r]) s += std::to_string(x);
  return s;
}

std::string QuiverData::label(const IsoClass& c) const {
  std::string out;
  for (int r = 0; r < num_roots(); ++r) {
    if (!c.mult[r]) continue;
    if (!out.empty()) out += "+";
    out += label(r);
    if (c.mult[r] > 1) out += "^" + std::to_string(c.mult[r]);
  }
  return out.empty() ? "0" : out;
}

IsoClass QuiverData::parse_label(const std::string& s) const {
  IsoClass c{std::vector<int>(num_roots(), 0)};
  if (s == "0" || s.empty()) return c;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, '+')) {
    int m = 1;
    auto hat = part.find('^');
    if (hat != std::string::npos) {
      m = std::stoi(part.substr(hat + 1));
      part = part.substr(0, hat);
    }
    int found = -1;
    for (int r = 0; r < num_roots(); ++r)
      if (label(r) == part) found = r;
    if (found < 0) throw AlgebraError("unknown indecomposable label '" + part + "'");
    c.mult[found] += m;
  }
  return c;
}

IsoClass QuiverData::single(int r, int m) const {
  IsoClass c{std::vector<int>(num_roots(), 0)};
  c.mult[r] = m;
  return c;
}

IsoClass QuiverData::add(const IsoClass& a, const IsoClass& b) const {
  IsoClass c = a;
  for (int r = 0; r < num_roots(); ++r) c.mult[r] += b.mult[r];
  return c;
}

IntVec QuiverData::dim(const IsoClass& c) const {
  IntVec d(Q_.n, 0);
  for (int r = 0; r < num_roots(); ++r)
    for (int i = 0; i < Q_.n; ++i) d[i] += c.mult[r] * roots_[r][i];
  return d;
}

int QuiverData::dim_hom(const IsoClass& a, const IsoClass& b) const {
  int s = 0;
  for (int r = 0; r < num_roots(); ++r)
    if (a.mult[r])
      for (int t = 0; t < num_roots(); ++t) s += a.mult[r] * b.mult[t] * hom_[r][t];
  return s;
}

int QuiverData::dim_ext(const IsoClass& a, const IsoClass& b) const {
  return dim_hom(a, b) - euler(a, b);
}

std::vector<IsoClass> QuiverData::classes_of_dim(const IntVec& d) const {
  std::vector<IsoClass> out;
  IsoClass cur{std::vector<int>(num_roots(), 0)};
  IntVec rest = d;
  std::function<void(int)> rec = [&](int r) {
    if (std::all_of(rest.begin(), rest.end(), [](int x) { return x == 0; })) {
      out.push_back(cur);
      return;
    }
    if (r == num_roots()) return;
    rec(r + 1);
    int added = 0;
    while (true) {
      bool fits = true;
      for (int i = 0; i < Q_.n; ++i) fits &= rest[i] >= roots_[r][i];
      if (!fits) break;
      for (int i = 0; i < Q_.n; ++i) rest[i] -= roots_[r][i];
      ++added;
      cur.mult[r] = added;
      rec(r + 1);
    }
    for (int i = 0; i < Q_.n; ++i) rest[i] += added * roots_[r][i];
    cur.mult[r] = 0;
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IsoClass> QuiverData::classes_up_to(int total) const {
  std::vector<IsoClass> out;
  IntVec d(Q_.n, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == Q_.n) {
      auto v = classes_of_dim(d);
      out.insert(out.end(), v.begin(), v.end());
      return;
    }
    for (int x = 0; x <= left; ++x) {
      d[i] = x;
      rec(i + 1, left - x);
    }
    d[i] = 0;
  };
  rec(0, total);
  return out;
}

RepCatalog::RepCatalog(const QuiverData& qd, int q) : qd_(qd), F_(GF::get(q)) {
  indec_ = build_indecomposables(F_, qd.seq(), qd.quiver());
  int N = qd.num_roots();
  // H is unitriangular (upper) in word order: invert over Z by back substitution
  hinv_num_.assign(N, std::vector<long long>(N, 0));
  for (int c = 0; c < N; ++c) {
    for (int r = N - 1; r >= 0; --r) {
      long long v = r == c ? 1 : 0;
      for (int t = r + 1; t < N; ++t) v -= static_cast<long long>(qd.hom(r, t)) * hinv_num_[t][c];
      hinv_num_[r][c] = v;
    }
  }
}

Rep RepCatalog::realize(const IsoClass& c) const {
  Rep M = zero_rep(qd_.quiver());
  for (int r = 0; r < qd_.num_roots(); ++r)
    for (int m = 0; m < c.mult[r]; ++m) M = direct_sum(M, indec_[r]);
  return M;
}

IsoClass RepCatalog::classify(const Rep& M) const {
  int N = qd_.num_roots();
  std::vector<long long> h(N);
  for (int r = 0; r < N; ++r) h[r] = hom_dim(F_, qd_.quiver(), indec_[r], M);
  IsoClass c{std::vector<int>(N, 0)};
  for (int r = 0; r < N; ++r) {
    long long v = 0;
    for (int t = 0; t < N; ++t) v += hinv_num_[r][t] * h[t];
    if (v < 0) throw AlgebraError("classify: negative multiplicity");
    c.mult[r] = static_cast<int>(v);
  }
  if (qd_.dim(c) != M.dim) throw AlgebraError("classify: dimension mismatch");
  return c;
}

}  // namespace qh
