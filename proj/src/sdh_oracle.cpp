#include "qh/sdh_oracle.hpp"

#include <omp.h>

#include <algorithm>
#include <functional>

namespace qh {

namespace {

Mat zeros(int r, int c) { return Mat(r, c); }

std::vector<Mat> zero_maps(const Rep& a, const Rep& b) {
  std::vector<Mat> m;
  for (size_t v = 0; v < a.dim.size(); ++v) m.push_back(zeros(b.dim[v], a.dim[v]));
  return m;
}

// vectorize a morphism src -> tgt in the hom_offsets layout
std::vector<int> flatten(const std::vector<Mat>& phi) {
  std::vector<int> out;
  for (auto& m : phi) out.insert(out.end(), m.d.begin(), m.d.end());
  return out;
}

std::vector<Mat> compose(const GF& F, const std::vector<Mat>& a, const std::vector<Mat>& b) {
  std::vector<Mat> r;
  for (size_t v = 0; v < a.size(); ++v) r.push_back(mat_mul(F, a[v], b[v]));
  return r;
}

std::vector<Mat> combine(const GF& F, const std::vector<std::vector<Mat>>& basis,
                         const std::vector<int>& coef, const std::vector<Mat>& shape) {
  std::vector<Mat> r = shape;
  for (auto& m : r) std::fill(m.d.begin(), m.d.end(), 0);
  for (size_t k = 0; k < basis.size(); ++k) {
    if (!coef[k]) continue;
    for (size_t v = 0; v < r.size(); ++v) r[v] = mat_add(F, r[v], mat_scale(F, basis[k][v], coef[k]));
  }
  return r;
}

Mat columns_to_mat(const std::vector<std::vector<int>>& cols, int rows) {
  Mat m(rows, static_cast<int>(cols.size()));
  for (size_t c = 0; c < cols.size(); ++c)
    for (int r = 0; r < rows; ++r) m(r, static_cast<int>(c)) = cols[c][r];
  return m;
}

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

Rep sum_of_projectives(const RepCatalog& cat, const QuiverData& qd, const IntVec& mult) {
  Rep r = zero_rep(qd.quiver());
  for (int j = 0; j < qd.quiver().n; ++j)
    for (int k = 0; k < mult[j]; ++k) r = qh::direct_sum(r, cat.indec(qd.proj_root(j)));
  return r;
}

}  // namespace

int Complex::total_dim() const {
  int s = 0;
  for (auto& t : terms) s += t.total();
  return s;
}

void oracle_add(OracleElement& x, const SDHWord& w, const QSqrt& c) {
  if (c.is_zero()) return;
  auto it = x.find(w);
  if (it == x.end()) {
    x.emplace(w, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) x.erase(it);
}

SDHOracle::SDHOracle(const SDHAlgebra& A, int q, int dim_budget)
    : A_(A), qd_(A.data()), q_(q), budget_(dim_budget), cat_(A.hall().catalog(q)),
      F_(cat_.field()) {}

IntVec SDHOracle::top(const IsoClass& H) const {
  IntVec t(qd_.quiver().n);
  for (int j = 0; j < qd_.quiver().n; ++j) t[j] = qd_.dim_hom(H, qd_.single(qd_.simple_root(j)));
  return t;
}

Complex SDHOracle::pad(const Complex& c, int lo, int hi) const {
  Complex r;
  r.lo = lo;
  const int n = qd_.quiver().n;
  for (int deg = lo; deg <= hi; ++deg) {
    if (!c.terms.empty() && deg >= c.lo && deg <= c.hi()) {
      r.terms.push_back(c.terms[deg - c.lo]);
      r.proj.push_back(c.proj[deg - c.lo]);
    } else {
      r.terms.push_back(zero_rep(qd_.quiver()));
      r.proj.push_back(IntVec(n, 0));
    }
  }
  for (int deg = lo; deg < hi; ++deg) {
    if (!c.terms.empty() && deg >= c.lo && deg < c.hi())
      r.d.push_back(c.d[deg - c.lo]);
    else
      r.d.push_back(zero_maps(r.terms[deg - lo], r.terms[deg - lo + 1]));
  }
  return r;
}

Complex SDHOracle::direct_sum(const Complex& a, const Complex& b) {
  if (a.terms.empty()) return b;
  if (b.terms.empty()) return a;
  // both padded to a common range by the caller's oracle; here pad locally
  int lo = std::min(a.lo, b.lo), hi = std::max(a.hi(), b.hi());
  auto grow = [&](const Complex& c) {
    Complex r;
    r.lo = lo;
    const size_t nv = c.terms[0].dim.size();
    auto zrep = [&] {
      Rep z;
      z.dim.assign(nv, 0);
      // arrows count taken from an existing term
      z.maps.assign(c.terms[0].maps.size(), Mat());
      return z;
    };
    for (int deg = lo; deg <= hi; ++deg) {
      if (deg >= c.lo && deg <= c.hi()) {
        r.terms.push_back(c.terms[deg - c.lo]);
        r.proj.push_back(c.proj[deg - c.lo]);
      } else {
        r.terms.push_back(zrep());
        r.proj.push_back(IntVec(c.proj[0].size(), 0));
      }
    }
    for (int deg = lo; deg < hi; ++deg) {
      if (deg >= c.lo && deg < c.hi())
        r.d.push_back(c.d[deg - c.lo]);
      else
        r.d.push_back(zero_maps(r.terms[deg - lo], r.terms[deg - lo + 1]));
    }
    return r;
  };
  Complex x = grow(a), y = grow(b), r;
  r.lo = lo;
  for (size_t k = 0; k < x.terms.size(); ++k) {
    r.terms.push_back(qh::direct_sum(x.terms[k], y.terms[k]));
    IntVec p = x.proj[k];
    for (size_t j = 0; j < p.size(); ++j) p[j] += y.proj[k][j];
    r.proj.push_back(p);
  }
  for (size_t k = 0; k < x.d.size(); ++k) {
    std::vector<Mat> m;
    for (size_t v = 0; v < x.d[k].size(); ++v) m.push_back(block_diag(x.d[k][v], y.d[k][v]));
    r.d.push_back(m);
  }
  return r;
}

Complex SDHOracle::resolution(const IsoClass& M, int level) const {
  const Quiver& Q = qd_.quiver();
  Rep Mr = cat_.realize(M);
  IntVec t(Q.n, 0);
  std::vector<Mat> pi(Q.n);
  for (int v = 0; v < Q.n; ++v) pi[v] = zeros(Mr.dim[v], 0);
  Rep Qr = zero_rep(Q);
  for (int j = 0; j < Q.n; ++j) {
    Mat img = zeros(Mr.dim[j], 0);
    for (size_t a = 0; a < Q.arrows.size(); ++a)
      if (Q.arrows[a].second == j) img = hstack(img, Mr.maps[a]);
    Mat gens = complement(F_, colspace(F_, img));
    t[j] = gens.cols;
    const Rep& Pj = cat_.indec(qd_.proj_root(j));
    Mat H = hom_space(F_, Q, Pj, Mr);
    auto off = hom_offsets(Pj, Mr);
    // value at the top of P_j (one-dimensional at j)
    Mat top_vals(Mr.dim[j], H.cols);
    for (int c = 0; c < H.cols; ++c)
      for (int r = 0; r < Mr.dim[j]; ++r) top_vals(r, c) = H(off[j] + r, c);
    for (int g = 0; g < gens.cols; ++g) {
      Mat m(Mr.dim[j], 1), x;
      for (int r = 0; r < Mr.dim[j]; ++r) m(r, 0) = gens(r, g);
      if (!solve(F_, top_vals, m, x)) throw AlgebraError("resolution: no map from P_j");
      std::vector<int> vec(H.rows, 0);
      for (int c = 0; c < H.cols; ++c)
        for (int r = 0; r < H.rows; ++r) vec[r] = F_.add(vec[r], F_.mul(x(c, 0), H(r, c)));
      auto phi = unpack_morphism(Pj, Mr, vec);
      for (int v = 0; v < Q.n; ++v) pi[v] = hstack(pi[v], phi[v]);
      Qr = qh::direct_sum(Qr, Pj);
    }
  }
  std::vector<Mat> U(Q.n);
  for (int v = 0; v < Q.n; ++v) U[v] = nullspace(F_, pi[v]);
  Rep Pr = restrict_rep(F_, Q, Qr, U);
  IntVec pc = A_.derived().proj_coords(qd_.dim(M)), p(Q.n);
  for (int j = 0; j < Q.n; ++j) p[j] = t[j] - pc[j];
  Complex c;
  c.lo = -level - 1;
  c.terms = {Pr, Qr};
  c.proj = {p, t};
  c.d = {U};
  return c;
}

Complex SDHOracle::contractible(const IntVec& proj, int level) const {
  Rep P = sum_of_projectives(cat_, qd_, proj);
  Complex c;
  c.lo = -level - 1;
  c.terms = {P, P};
  c.proj = {proj, proj};
  std::vector<Mat> id;
  for (int v = 0; v < qd_.quiver().n; ++v) id.push_back(Mat::identity(P.dim[v]));
  c.d = {id};
  return c;
}

Complex SDHOracle::realize(const SDHWord& key) const {
  Complex c;
  for (auto& [l, M] : key.mod) c = direct_sum(c, resolution(M, l));
  for (auto& [l, k] : key.k) {
    if (std::any_of(k.begin(), k.end(), [](int x) { return x < 0; }))
      throw AlgebraError("realize: negative contractible multiplicity");
    c = direct_sum(c, contractible(k, l));
  }
  if (c.terms.empty()) c = pad(c, 0, 0);
  if (c.total_dim() > budget_) throw BudgetError("oracle: complex exceeds dimension budget");
  return c;
}

bool SDHOracle::is_complex(const Complex& c) const {
  const Quiver& Q = qd_.quiver();
  for (size_t k = 0; k < c.d.size(); ++k) {
    if (!is_morphism(F_, Q, c.terms[k], c.terms[k + 1], c.d[k])) return false;
    if (k + 1 < c.d.size())
      for (int v = 0; v < Q.n; ++v)
        if (!mat_mul(F_, c.d[k + 1][v], c.d[k][v]).is_zero()) return false;
  }
  return true;
}

SDHWord SDHOracle::classify(const Complex& c) const {
  const Quiver& Q = qd_.quiver();
  const int n = Q.n;
  SDHWord key;
  std::vector<IsoClass> H;
  for (int deg = c.lo; deg <= c.hi(); ++deg) {
    int k = deg - c.lo;
    const Rep& T = c.terms[k];
    std::vector<Mat> Kb(n), coords(n);
    for (int v = 0; v < n; ++v) {
      Kb[v] = deg < c.hi() ? nullspace(F_, c.d[k][v]) : Mat::identity(T.dim[v]);
      if (deg > c.lo) {
        Mat I = colspace(F_, c.d[k - 1][v]);
        if (!solve(F_, Kb[v], I, coords[v])) throw AlgebraError("classify: d^2 != 0");
      } else {
        coords[v] = zeros(Kb[v].cols, 0);
      }
    }
    Rep Kr = restrict_rep(F_, Q, T, Kb);
    IsoClass h = cat_.classify(quotient_rep(F_, Q, Kr, coords));
    H.push_back(h);
    if (!h.is_zero()) key.mod[-deg] = h;
  }
  // contractible part: term^deg = Q_{H^deg} + P_{H^{deg+1}} + k_deg + k_{deg+1}
  IntVec kcur(n, 0);
  for (int deg = c.lo; deg <= c.hi(); ++deg) {
    int k = deg - c.lo;
    IntVec minimal = top(H[k]);
    if (k + 1 < static_cast<int>(H.size())) {
      IntVec t1 = top(H[k + 1]), pc = A_.derived().proj_coords(qd_.dim(H[k + 1]));
      for (int j = 0; j < n; ++j) minimal[j] += t1[j] - pc[j];
    }
    IntVec knext(n);
    for (int j = 0; j < n; ++j) {
      knext[j] = c.proj[k][j] - minimal[j] - kcur[j];
      if (knext[j] < 0) throw AlgebraError("classify: inconsistent term multiplicities");
    }
    // knext = K summand with terms in degrees deg, deg+1 (level -deg-1)
    if (std::any_of(knext.begin(), knext.end(), [](int x) { return x != 0; })) {
      if (deg == c.hi()) throw AlgebraError("classify: contractible part leaves the range");
      key.k[-deg - 1] = knext;
    }
    kcur = knext;
  }
  return key;
}

int SDHOracle::hom_dim(const Complex& X0, const Complex& Y0) const {
  const Quiver& Q = qd_.quiver();
  int lo = std::min(X0.lo, Y0.lo), hi = std::max(X0.hi(), Y0.hi());
  Complex X = pad(X0, lo, hi), Y = pad(Y0, lo, hi);
  const int L = hi - lo + 1;
  std::vector<std::vector<std::vector<Mat>>> basis(L);
  for (int k = 0; k < L; ++k) {
    Mat H = hom_space(F_, Q, X.terms[k], Y.terms[k]);
    for (int c = 0; c < H.cols; ++c) {
      std::vector<int> vec(H.rows);
      for (int r = 0; r < H.rows; ++r) vec[r] = H(r, c);
      basis[k].push_back(unpack_morphism(X.terms[k], Y.terms[k], vec));
    }
  }
  // constraint k: dY^k s^k - s^{k+1} dX^k = 0
  std::vector<int> roff(L, 0);
  int rows = 0;
  for (int k = 0; k + 1 < L; ++k) {
    roff[k] = rows;
    rows += static_cast<int>(hom_offsets(X.terms[k], Y.terms[k + 1]).back());
  }
  std::vector<std::vector<int>> cols;
  for (int k = 0; k < L; ++k)
    for (auto& s : basis[k]) {
      std::vector<int> col(rows, 0);
      if (k + 1 < L) {
        auto f = flatten(compose(F_, Y.d[k], s));
        for (size_t i = 0; i < f.size(); ++i) col[roff[k] + i] = F_.add(col[roff[k] + i], f[i]);
      }
      if (k > 0) {
        auto f = flatten(compose(F_, s, X.d[k - 1]));
        for (size_t i = 0; i < f.size(); ++i)
          col[roff[k - 1] + i] = F_.sub(col[roff[k - 1] + i], f[i]);
      }
      cols.push_back(col);
    }
  if (cols.empty()) return 0;
  return nullspace(F_, columns_to_mat(cols, rows)).cols;
}

long long SDHOracle::aut_size(const Complex& X0) const {
  const Quiver& Q = qd_.quiver();
  Complex X = X0;
  const int L = static_cast<int>(X.terms.size());
  // chain endomorphisms: rebuild the constraint system and enumerate its kernel
  std::vector<std::vector<std::vector<Mat>>> basis(L);
  std::vector<std::pair<int, int>> which;
  for (int k = 0; k < L; ++k) {
    Mat H = hom_space(F_, Q, X.terms[k], X.terms[k]);
    for (int c = 0; c < H.cols; ++c) {
      std::vector<int> vec(H.rows);
      for (int r = 0; r < H.rows; ++r) vec[r] = H(r, c);
      basis[k].push_back(unpack_morphism(X.terms[k], X.terms[k], vec));
      which.push_back({k, c});
    }
  }
  std::vector<int> roff(L, 0);
  int rows = 0;
  for (int k = 0; k + 1 < L; ++k) {
    roff[k] = rows;
    rows += static_cast<int>(hom_offsets(X.terms[k], X.terms[k + 1]).back());
  }
  std::vector<std::vector<int>> cols;
  for (int k = 0; k < L; ++k)
    for (auto& s : basis[k]) {
      std::vector<int> col(rows, 0);
      if (k + 1 < L) {
        auto f = flatten(compose(F_, X.d[k], s));
        for (size_t i = 0; i < f.size(); ++i) col[roff[k] + i] = F_.add(col[roff[k] + i], f[i]);
      }
      if (k > 0) {
        auto f = flatten(compose(F_, s, X.d[k - 1]));
        for (size_t i = 0; i < f.size(); ++i)
          col[roff[k - 1] + i] = F_.sub(col[roff[k - 1] + i], f[i]);
      }
      cols.push_back(col);
    }
  Mat N = cols.empty() ? Mat(0, 0) : nullspace(F_, columns_to_mat(cols, rows));
  if (N.cols > 14) throw BudgetError("aut_size: endomorphism space too large");
  long total = ipow(q_, N.cols);
  long long count = 0;
#pragma omp parallel for reduction(+ : count) schedule(dynamic, 16)
  for (long idx = 0; idx < total; ++idx) {
    std::vector<int> coef(N.cols), full(N.rows, 0);
    vec_from_index(q_, idx, coef);
    for (int c = 0; c < N.cols; ++c)
      if (coef[c])
        for (int r = 0; r < N.rows; ++r) full[r] = F_.add(full[r], F_.mul(coef[c], N(r, c)));
    bool iso = true;
    size_t pos = 0;
    for (int k = 0; k < L && iso; ++k) {
      std::vector<int> sub(full.begin() + pos, full.begin() + pos + basis[k].size());
      pos += basis[k].size();
      auto m = combine(F_, basis[k], sub, zero_maps(X.terms[k], X.terms[k]));
      for (auto& b : m)
        if (rank(F_, b) != b.rows) iso = false;
    }
    if (iso) ++count;
  }
  return count;
}

int SDHOracle::hom_D(const SDHWord& X, const SDHWord& Y, int j) const {
  int s = 0;
  for (auto& [lx, M] : X.mod)
    for (auto& [ly, N] : Y.mod) {
      int t = ly + j;
      if (t == lx) s += qd_.dim_hom(M, N);
      if (t == lx + 1) s += qd_.dim_ext(M, N);
    }
  return s;
}

QSqrt SDHOracle::twist(const SDHWord& X, const SDHWord& Y) const {
  // 1/|Hom_D(Y,X)| * prod_{i>0} |Hom_D(Y,X[-i])|^{(-1)^{i-1}} * v^{sum_j (-1)^j dim Hom_D(X,Y[j])}
  int e = -2 * hom_D(Y, X, 0);
  for (int i = 1; i <= 40; ++i) e += ((i % 2) ? 2 : -2) * hom_D(Y, X, -i);
  for (int j = -40; j <= 40; ++j) e += ((j % 2 == 0) ? 1 : -1) * hom_D(Y, X, j);
  return QSqrt::sqrt_pow(q_, e);
}

std::map<SDHWord, mpq_class> SDHOracle::extension_weights(const SDHWord& Xk,
                                                          const SDHWord& Yk) const {
  auto key = std::pair(Xk, Yk);
  {
    std::lock_guard lk(mu_);
    auto it = ext_memo_.find(key);
    if (it != ext_memo_.end()) return it->second;
  }
  const Quiver& Q = qd_.quiver();
  Complex X0 = realize(Xk), Y0 = realize(Yk);
  if (X0.total_dim() + Y0.total_dim() > budget_)
    throw BudgetError("oracle: product exceeds dimension budget");
  int lo = std::min(X0.lo, Y0.lo), hi = std::max(X0.hi(), Y0.hi());
  Complex X = pad(X0, lo, hi), Y = pad(Y0, lo, hi);
  const int L = hi - lo + 1;
  // h^k : Y^k -> X^{k+1}, k = 0..L-2
  std::vector<std::vector<std::vector<Mat>>> basis(L > 1 ? L - 1 : 0);
  for (int k = 0; k + 1 < L; ++k) {
    Mat H = hom_space(F_, Q, Y.terms[k], X.terms[k + 1]);
    for (int c = 0; c < H.cols; ++c) {
      std::vector<int> vec(H.rows);
      for (int r = 0; r < H.rows; ++r) vec[r] = H(r, c);
      basis[k].push_back(unpack_morphism(Y.terms[k], X.terms[k + 1], vec));
    }
  }
  // cocycle: dX^{k+1} h^k + h^{k+1} dY^k = 0 : Y^k -> X^{k+2}
  std::vector<int> roff(L, 0);
  int rows = 0;
  for (int k = 0; k + 2 < L; ++k) {
    roff[k] = rows;
    rows += static_cast<int>(hom_offsets(Y.terms[k], X.terms[k + 2]).back());
  }
  std::vector<std::vector<int>> cols;
  std::vector<int> col_deg;
  for (int k = 0; k + 1 < L; ++k)
    for (auto& h : basis[k]) {
      std::vector<int> col(rows, 0);
      if (k + 2 < L) {
        auto f = flatten(compose(F_, X.d[k + 1], h));
        for (size_t i = 0; i < f.size(); ++i) col[roff[k] + i] = F_.add(col[roff[k] + i], f[i]);
      }
      if (k > 0) {
        auto f = flatten(compose(F_, h, Y.d[k - 1]));
        for (size_t i = 0; i < f.size(); ++i)
          col[roff[k - 1] + i] = F_.add(col[roff[k - 1] + i], f[i]);
      }
      cols.push_back(col);
      col_deg.push_back(k);
    }
  Mat Z = cols.empty() ? Mat(0, 0) : nullspace(F_, columns_to_mat(cols, rows));
  if (ipow(q_, Z.cols) > 2000000) throw BudgetError("oracle: cocycle space too large");
  int homgr = 0;
  for (int k = 0; k < L; ++k) homgr += qh::hom_dim(F_, Q, Y.terms[k], X.terms[k]);

  const long total = ipow(q_, Z.cols);
  std::vector<std::map<SDHWord, long long>> local(omp_get_max_threads());
  auto one = [&](long idx, std::map<SDHWord, long long>& acc) {
    std::vector<int> coef(Z.cols), full(Z.rows, 0);
    vec_from_index(q_, idx, coef);
    for (int c = 0; c < Z.cols; ++c)
      if (coef[c])
        for (int r = 0; r < Z.rows; ++r) full[r] = F_.add(full[r], F_.mul(coef[c], Z(r, c)));
    Complex B;
    B.lo = lo;
    for (int k = 0; k < L; ++k) {
      B.terms.push_back(qh::direct_sum(X.terms[k], Y.terms[k]));
      IntVec p = X.proj[k];
      for (size_t j = 0; j < p.size(); ++j) p[j] += Y.proj[k][j];
      B.proj.push_back(p);
    }
    size_t pos = 0;
    for (int k = 0; k + 1 < L; ++k) {
      std::vector<int> sub(full.begin() + pos, full.begin() + pos + basis[k].size());
      pos += basis[k].size();
      auto h = combine(F_, basis[k], sub, zero_maps(Y.terms[k], X.terms[k + 1]));
      std::vector<Mat> dB;
      for (int v = 0; v < Q.n; ++v) {
        Mat top = hstack(X.d[k][v], h[v]);
        Mat bot = hstack(zeros(Y.terms[k + 1].dim[v], X.terms[k].dim[v]), Y.d[k][v]);
        dB.push_back(vstack(top, bot));
      }
      B.d.push_back(dB);
    }
    acc[classify(B)] += 1;
  };
#pragma omp parallel
  {
    auto& acc = local[omp_get_thread_num()];
#pragma omp for schedule(dynamic, 16)
    for (long idx = 0; idx < total; ++idx) one(idx, acc);
  }
  std::map<SDHWord, long long> counts;
  for (auto& m : local)
    for (auto& [k, c] : m) counts[k] += c;
  std::map<SDHWord, mpq_class> out;
  mpq_class den(static_cast<long>(ipow(q_, homgr)));
  for (auto& [k, c] : counts) out[k] = mpq_class(static_cast<long>(c)) / den;
  std::lock_guard lk(mu_);
  ext_memo_.emplace(key, out);
  return out;
}

OracleElement SDHOracle::complex_product(const SDHWord& X, const SDHWord& Y) const {
  auto key = std::pair(X, Y);
  {
    std::lock_guard lk(mu_);
    auto it = prod_memo_.find(key);
    if (it != prod_memo_.end()) return it->second;
  }
  auto w = extension_weights(X, Y);
  int hF = hom_dim(realize(Y), realize(X));
  QSqrt tw = twist(X, Y) * QSqrt(q_, mpq_class(static_cast<long>(ipow(q_, hF))));
  OracleElement out;
  for (auto& [B, c] : w) oracle_add(out, B, tw * QSqrt(q_, c));
  std::lock_guard lk(mu_);
  prod_memo_.emplace(key, out);
  return out;
}

long long SDHOracle::subcomplex_count(const SDHWord& Bk, const SDHWord& Xk,
                                      const SDHWord& Yk) const {
  const Quiver& Q = qd_.quiver();
  Complex B0 = realize(Bk), X0 = realize(Xk);
  int lo = std::min(B0.lo, X0.lo), hi = std::max(B0.hi(), X0.hi());
  Complex B = pad(B0, lo, hi), X = pad(X0, lo, hi);
  const int L = hi - lo + 1;
  std::vector<std::vector<std::vector<Mat>>> choices(L);
  for (int k = 0; k < L; ++k)
    for_each_subrep(F_, Q, B.terms[k], X.terms[k].dim,
                    [&](const std::vector<Mat>& U) { choices[k].push_back(U); });
  auto proj_of = [&](const Rep& r) {
    IsoClass c = cat_.classify(r);
    IntVec p(Q.n, 0);
    int tot = 0;
    for (int j = 0; j < Q.n; ++j) {
      p[j] = c.mult[qd_.proj_root(j)];
      tot += p[j];
    }
    int all = 0;
    for (int m : c.mult) all += m;
    return std::pair(p, tot == all);
  };
  long long count = 0;
  std::vector<int> pick(L, 0);
  std::function<void(int)> rec = [&](int k) {
    if (k == L) {
      Complex S, T;
      S.lo = T.lo = lo;
      std::vector<Mat> Cc(0);
      std::vector<std::vector<Mat>> comp(L), invs(L);
      for (int i = 0; i < L; ++i) {
        const auto& U = choices[i][pick[i]];
        Rep sub = restrict_rep(F_, Q, B.terms[i], U);
        Rep quo = quotient_rep(F_, Q, B.terms[i], U);
        auto [ps, oks] = proj_of(sub);
        auto [pq, okq] = proj_of(quo);
        if (!okq || !oks) return;
        S.terms.push_back(sub);
        S.proj.push_back(ps);
        T.terms.push_back(quo);
        T.proj.push_back(pq);
        for (int v = 0; v < Q.n; ++v) {
          comp[i].push_back(complement(F_, U[v]));
          invs[i].push_back(inverse(F_, hstack(U[v], comp[i][v])));
        }
      }
      for (int i = 0; i + 1 < L; ++i) {
        std::vector<Mat> ds, dt;
        const auto& U0 = choices[i][pick[i]];
        const auto& U1 = choices[i + 1][pick[i + 1]];
        for (int v = 0; v < Q.n; ++v) {
          Mat x;
          if (!solve(F_, U1[v], mat_mul(F_, B.d[i][v], U0[v]), x)) return;
          ds.push_back(x);
          Mat img = mat_mul(F_, invs[i + 1][v], mat_mul(F_, B.d[i][v], comp[i][v]));
          Mat y(comp[i + 1][v].cols, comp[i][v].cols);
          for (int r = 0; r < y.rows; ++r)
            for (int c = 0; c < y.cols; ++c) y(r, c) = img(U1[v].cols + r, c);
          dt.push_back(y);
        }
        S.d.push_back(ds);
        T.d.push_back(dt);
      }
      if (classify(S) == Xk && classify(T) == Yk) ++count;
      return;
    }
    for (size_t c = 0; c < choices[k].size(); ++c) {
      pick[k] = static_cast<int>(c);
      rec(k + 1);
    }
  };
  rec(0);
  return count;
}

OracleElement SDHOracle::mul(const OracleElement& x, const OracleElement& y) const {
  OracleElement out;
  for (auto& [kx, cx] : x)
    for (auto& [ky, cy] : y) {
      KMonomial base = k_add(kx.k, ky.k);
      for (auto& [B, cb] : complex_product(SDHWord{kx.mod, {}}, SDHWord{ky.mod, {}}))
        oracle_add(out, SDHWord{B.mod, k_add(B.k, base)}, cx * cy * cb);
    }
  return out;
}

OracleElement SDHOracle::generator_E(const IsoClass& M, int level) const {
  OracleElement e;
  SDHWord w;
  if (M.is_zero()) {
    e.emplace(w, QSqrt(q_, 1));
    return e;
  }
  w.mod[level] = M;
  IntVec t = top(M), pc = A_.derived().proj_coords(qd_.dim(M)), p(t.size());
  for (size_t j = 0; j < t.size(); ++j) p[j] = -(t[j] - pc[j]);
  w.k = k_add({}, {{level, p}});
  e.emplace(w, QSqrt(q_, mpq_class(1) / mpq_class(static_cast<long>(A_.hall().aut_size(M, q_)))));
  return e;
}

OracleElement SDHOracle::generator_K(const IntVec& proj, int level) const {
  OracleElement e;
  e.emplace(SDHWord{{}, k_add({}, {{level, proj}})}, QSqrt(q_, 1));
  return e;
}

OracleElement SDHOracle::image(const SDHWord& w) const {
  OracleElement r;
  r.emplace(SDHWord{}, QSqrt(q_, 1));
  for (auto it = w.mod.rbegin(); it != w.mod.rend(); ++it)
    r = mul(r, generator_E(it->second, it->first));
  for (auto& [l, k] : w.k) r = mul(r, generator_K(k, l));
  return r;
}

OracleElement SDHOracle::image(const SDHElement& x) const {
  OracleElement r;
  for (auto& [w, c] : x.terms()) {
    QSqrt cq = c.at_sqrt(q_);
    for (auto& [k, v] : image(w)) oracle_add(r, k, cq * v);
  }
  return r;
}

std::string SDHOracle::str(const OracleElement& x) const {
  if (x.empty()) return "0";
  std::string s;
  for (auto& [w, c] : x) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")*[" + A_.str(w) + "]";
  }
  return s;
}

OracleReport brute_product_oracle(const SDHAlgebra& A, const SDHOracle& O, const SDHElement& x,
                                  const SDHElement& y) {
  OracleReport r;
  OracleElement lhs = O.image(A.mul(x, y));
  OracleElement rhs = O.mul(O.image(x), O.image(y));
  r.ok = lhs == rhs;
  r.engine = O.str(lhs);
  r.oracle = O.str(rhs);
  return r;
}

}  // namespace qh
