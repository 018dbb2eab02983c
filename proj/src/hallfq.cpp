#include "qh/hallfq.hpp"

#include <omp.h>

#include <algorithm>
#include <numeric>

namespace qh {

// ---------------- subspaces

void for_each_subspace(const GF& F, int c, int k, const std::function<void(const Mat&)>& fn) {
  if (k < 0 || k > c) return;
  // choose pivot rows of the column-echelon basis, then fill free entries
  std::vector<int> piv(k);
  std::iota(piv.begin(), piv.end(), 0);
  while (true) {
    // free positions: (row r, col j) with r > piv[j] and r not a pivot row
    std::vector<std::pair<int, int>> freep;
    std::vector<bool> is_piv(c, false);
    for (int j = 0; j < k; ++j) is_piv[piv[j]] = true;
    for (int j = 0; j < k; ++j)
      for (int r = piv[j] + 1; r < c; ++r)
        if (!is_piv[r]) freep.push_back({r, j});
    long total = 1;
    for (size_t t = 0; t < freep.size(); ++t) total *= F.q();
    std::vector<int> vals(freep.size());
    for (long idx = 0; idx < total; ++idx) {
      vec_from_index(F.q(), idx, vals);
      Mat B(c, k);
      for (int j = 0; j < k; ++j) B(piv[j], j) = 1;
      for (size_t t = 0; t < freep.size(); ++t) B(freep[t].first, freep[t].second) = vals[t];
      fn(B);
    }
    // next pivot combination
    int j = k - 1;
    while (j >= 0 && piv[j] == c - k + j) --j;
    if (j < 0) break;
    ++piv[j];
    for (int t = j + 1; t < k; ++t) piv[t] = piv[t - 1] + 1;
  }
}

std::vector<Mat> all_subspaces(const GF& F, int c, int k) {
  std::vector<Mat> out;
  for_each_subspace(F, c, k, [&](const Mat& B) { out.push_back(B); });
  return out;
}

long long gaussian_binomial(int q, int n, int k) {
  if (k < 0 || k > n) return 0;
  long long num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    long long a = 1, b = 1;
    for (int t = 0; t < n - i; ++t) a *= q;
    for (int t = 0; t < i + 1; ++t) b *= q;
    num *= a - 1;
    den *= b - 1;
  }
  return num / den;
}

long long gl_order(int q, int m) {
  long long r = 1, qm = 1;
  for (int i = 0; i < m; ++i) qm *= q;
  long long qk = 1;
  for (int k = 0; k < m; ++k) {
    r *= qm - qk;
    qk *= q;
  }
  return r;
}

// ---------------- sub/quotient representations

Rep restrict_rep(const GF& F, const Quiver& Q, const Rep& L, const std::vector<Mat>& U) {
  Rep R;
  for (auto& b : U) R.dim.push_back(b.cols);
  for (size_t a = 0; a < Q.arrows.size(); ++a) {
    auto [s, t] = Q.arrows[a];
    Mat img = mat_mul(F, L.maps[a], U[s]);
    Mat x;
    if (!solve(F, U[t], img, x)) throw AlgebraError("restrict_rep: subspace is not stable");
    R.maps.push_back(x);
  }
  return R;
}

Rep quotient_rep(const GF& F, const Quiver& Q, const Rep& L, const std::vector<Mat>& U) {
  Rep R;
  std::vector<Mat> C, inv;
  for (size_t i = 0; i < U.size(); ++i) {
    Mat c = complement(F, U[i]);
    R.dim.push_back(c.cols);
    inv.push_back(inverse(F, hstack(U[i], c)));
    C.push_back(c);
  }
  for (size_t a = 0; a < Q.arrows.size(); ++a) {
    auto [s, t] = Q.arrows[a];
    Mat img = mat_mul(F, inv[t], mat_mul(F, L.maps[a], C[s]));
    Mat x(R.dim[t], R.dim[s]);
    for (int r = 0; r < R.dim[t]; ++r)
      for (int c = 0; c < R.dim[s]; ++c) x(r, c) = img(U[t].cols + r, c);
    R.maps.push_back(x);
  }
  return R;
}

// ---------------- polynomials in q

ScalarRat qpoly_to_v(const QPoly& p) {
  HalfLaurent h;
  for (size_t k = 0; k < p.size(); ++k)
    if (p[k] != 0) h += HalfLaurent(p[k], 4 * static_cast<int>(k));
  return ScalarRat(h);
}

mpq_class qpoly_eval(const QPoly& p, const mpq_class& q) {
  mpq_class r = 0;
  for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k) r = r * q + p[k];
  return r;
}

QPoly lagrange(const std::vector<long>& xs, const std::vector<mpq_class>& ys) {
  QPoly out;
  for (size_t i = 0; i < xs.size(); ++i) {
    QPoly basis{mpq_class(1)};
    mpq_class den = 1;
    for (size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      basis = poly_mul(basis, QPoly{mpq_class(-xs[j]), mpq_class(1)});
      den *= xs[i] - xs[j];
    }
    mpq_class f = ys[i] / den;
    if (out.size() < basis.size()) out.resize(basis.size(), mpq_class(0));
    for (size_t k = 0; k < basis.size(); ++k) out[k] += f * basis[k];
  }
  poly_trim(out);
  return out;
}

namespace {

const std::vector<long> kPrimePowers{2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31};

QPoly q_power(int k) {
  QPoly p(k + 1, mpq_class(0));
  p[k] = 1;
  return p;
}

// Iterate over arrow-stable subspace tuples U of L with dim vector d; fn(U).
// Vertices are processed so that all targets of arrows out of a vertex come first.
struct SubrepEnumerator {
  const GF& F;
  const Quiver& Q;
  const Rep& L;
  IntVec d;
  std::vector<int> order;

  SubrepEnumerator(const GF& F_, const Quiver& Q_, const Rep& L_, IntVec d_)
      : F(F_), Q(Q_), L(L_), d(std::move(d_)) {
    std::vector<bool> done(Q.n, false);
    while (static_cast<int>(order.size()) < Q.n)
      for (int i = 0; i < Q.n; ++i) {
        if (done[i]) continue;
        bool ready = true;
        for (auto [s, t] : Q.arrows)
          if (s == i && !done[t]) ready = false;
        if (ready) {
          done[i] = true;
          order.push_back(i);
        }
      }
  }

  // admissible space at vertex i given the already chosen targets
  Mat constraint(int i, const std::vector<Mat>& U) const {
    Mat basis = Mat::identity(L.dim[i]);
    for (size_t a = 0; a < Q.arrows.size(); ++a) {
      auto [s, t] = Q.arrows[a];
      if (s != i) continue;
      // vectors x (in current basis coords) with L_a basis x in span U_t
      Mat img = mat_mul(F, L.maps[a], basis);
      Mat comp = complement(F, U[t]);
      Mat inv = inverse(F, hstack(U[t], comp));
      Mat proj = mat_mul(F, inv, img);
      Mat tail(comp.cols, basis.cols);
      for (int r = 0; r < comp.cols; ++r)
        for (int c = 0; c < basis.cols; ++c) tail(r, c) = proj(U[t].cols + r, c);
      basis = mat_mul(F, basis, nullspace(F, tail));
    }
    return basis;
  }

  void run_from(size_t pos, std::vector<Mat>& U, const std::function<void(const std::vector<Mat>&)>& fn) const {
    if (pos == order.size()) {
      fn(U);
      return;
    }
    int i = order[pos];
    Mat C = constraint(i, U);
    for_each_subspace(F, C.cols, d[i], [&](const Mat& B) {
      U[i] = mat_mul(F, C, B);
      run_from(pos + 1, U, fn);
    });
  }

  // first-level choices, for splitting work across threads
  std::vector<Mat> first_choices() const {
    std::vector<Mat> U(Q.n);
    int i = order[0];
    Mat C = constraint(i, U);
    std::vector<Mat> out;
    for_each_subspace(F, C.cols, d[i], [&](const Mat& B) { out.push_back(mat_mul(F, C, B)); });
    return out;
  }
};

}  // namespace

void for_each_subrep(const GF& F, const Quiver& Q, const Rep& L, const IntVec& d,
                     const std::function<void(const std::vector<Mat>&)>& fn) {
  SubrepEnumerator en(F, Q, L, d);
  std::vector<Mat> U(Q.n);
  en.run_from(0, U, fn);
}

// ---------------- HallContext

HallContext::HallContext(const QuiverData& qd, int dim_budget) : qd_(qd), budget_(dim_budget) {}

const RepCatalog& HallContext::catalog(int q) const {
  std::lock_guard lk(mu_);
  auto& slot = cats_[q];
  if (!slot) slot = std::make_unique<RepCatalog>(qd_, q);
  return *slot;
}

void HallContext::check_budget(const IntVec& d) const {
  int s = 0;
  for (int x : d) s += x;
  if (s > budget_)
    throw BudgetError("total dimension " + std::to_string(s) + " exceeds budget " +
                      std::to_string(budget_));
}

long long HallContext::hall_number(const IsoClass& M, const IsoClass& N, const IsoClass& L, int q,
                                   Exec ex) const {
  IntVec dM = qd_.dim(M), dN = qd_.dim(N), dL = qd_.dim(L);
  check_budget(dL);
  for (size_t i = 0; i < dL.size(); ++i)
    if (dM[i] + dN[i] != dL[i]) return 0;
  const RepCatalog& cat = catalog(q);
  const GF& F = cat.field();
  const Quiver& Q = qd_.quiver();
  Rep Lr = cat.realize(L);
  SubrepEnumerator en(F, Q, Lr, dM);
  auto firsts = en.first_choices();
  long long count = 0;
  auto work = [&](const Mat& first) {
    long long c = 0;
    std::vector<Mat> U(Q.n);
    U[en.order[0]] = first;
    en.run_from(1, U, [&](const std::vector<Mat>& S) {
      if (cat.classify(restrict_rep(F, Q, Lr, S)) == M &&
          cat.classify(quotient_rep(F, Q, Lr, S)) == N)
        ++c;
    });
    return c;
  };
  const long n = static_cast<long>(firsts.size());
  if (ex == Exec::Parallel) {
#pragma omp parallel for reduction(+ : count) schedule(dynamic)
    for (long k = 0; k < n; ++k) count += work(firsts[k]);
  } else {
    for (long k = 0; k < n; ++k) count += work(firsts[k]);
  }
  return count;
}

long long HallContext::aut_size(const IsoClass& M, int q) const {
  long long r = 1;
  int e = qd_.dim_end(M);
  for (int m : M.mult) {
    e -= m * m;
    r *= gl_order(q, m);
  }
  for (int k = 0; k < e; ++k) r *= q;
  return r;
}

long long HallContext::aut_size_enum(const IsoClass& M, int q) const {
  const RepCatalog& cat = catalog(q);
  const GF& F = cat.field();
  Rep R = cat.realize(M);
  Mat H = hom_space(F, qd_.quiver(), R, R);
  if (H.cols > 12) throw BudgetError("aut_size_enum: End(M) too large to enumerate");
  long total = 1;
  for (int k = 0; k < H.cols; ++k) total *= q;
  long long count = 0;
  std::vector<int> coef(H.cols), vec(H.rows);
  for (long idx = 0; idx < total; ++idx) {
    vec_from_index(q, idx, coef);
    std::fill(vec.begin(), vec.end(), 0);
    for (int c = 0; c < H.cols; ++c)
      if (coef[c])
        for (int r = 0; r < H.rows; ++r) vec[r] = F.add(vec[r], F.mul(coef[c], H(r, c)));
    auto phi = unpack_morphism(R, R, vec);
    bool inv = true;
    for (auto& m : phi) inv &= rank(F, m) == m.rows;
    count += inv;
  }
  return count;
}

mpq_class HallContext::four_term_gamma(const IsoClass& N, const IsoClass& M, const IsoClass& V,
                                       const IsoClass& W, int q, Exec ex) const {
  check_budget(qd_.dim(qd_.add(N, M)));
  const RepCatalog& cat = catalog(q);
  const GF& F = cat.field();
  const Quiver& Q = qd_.quiver();
  Rep Nr = cat.realize(N), Mr = cat.realize(M);
  Mat H = hom_space(F, Q, Nr, Mr);
  if (H.cols > 14) throw BudgetError("four_term_gamma: Hom(N,M) too large to enumerate");
  long total = 1;
  for (int k = 0; k < H.cols; ++k) total *= q;
  long long autV = aut_size(V, q), autW = aut_size(W, q);
  auto one = [&](long idx) -> long long {
    std::vector<int> coef(H.cols), vec(H.rows, 0);
    vec_from_index(q, idx, coef);
    for (int c = 0; c < H.cols; ++c)
      if (coef[c])
        for (int r = 0; r < H.rows; ++r) vec[r] = F.add(vec[r], F.mul(coef[c], H(r, c)));
    auto g = unpack_morphism(Nr, Mr, vec);
    std::vector<Mat> K(Q.n), I(Q.n);
    for (int i = 0; i < Q.n; ++i) {
      K[i] = nullspace(F, g[i]);
      I[i] = colspace(F, g[i]);
    }
    if (cat.classify(restrict_rep(F, Q, Nr, K)) != V) return 0;
    if (cat.classify(quotient_rep(F, Q, Mr, I)) != W) return 0;
    return autV * autW;
  };
  long long count = 0;
  if (ex == Exec::Parallel) {
#pragma omp parallel for reduction(+ : count) schedule(dynamic, 16)
    for (long idx = 0; idx < total; ++idx) count += one(idx);
  } else {
    for (long idx = 0; idx < total; ++idx) count += one(idx);
  }
  return mpq_class(static_cast<long>(count)) /
         (mpq_class(static_cast<long>(aut_size(M, q))) * static_cast<long>(aut_size(N, q)));
}

long long HallContext::ext_count(const IsoClass& N, const IsoClass& M, const IsoClass& L, int q,
                                 Exec ex) const {
  const RepCatalog& cat = catalog(q);
  const GF& F = cat.field();
  const Quiver& Q = qd_.quiver();
  Rep Nr = cat.realize(N), Mr = cat.realize(M);
  // delta: (phi_i : N_i -> M_i) -> (M_a phi_s - phi_t N_a)_a ; Ext^1 = coker
  auto off = hom_offsets(Nr, Mr);
  std::vector<int> aoff{0};
  for (auto [s, t] : Q.arrows) aoff.push_back(aoff.back() + Mr.dim[t] * Nr.dim[s]);
  Mat D(aoff.back(), off.back());
  for (size_t a = 0; a < Q.arrows.size(); ++a) {
    auto [s, t] = Q.arrows[a];
    for (int r = 0; r < Mr.dim[t]; ++r)
      for (int c = 0; c < Nr.dim[s]; ++c) {
        int row = aoff[a] + r * Nr.dim[s] + c;
        for (int k = 0; k < Mr.dim[s]; ++k)
          D(row, off[s] + k * Nr.dim[s] + c) =
              F.add(D(row, off[s] + k * Nr.dim[s] + c), Mr.maps[a](r, k));
        for (int k = 0; k < Nr.dim[t]; ++k)
          D(row, off[t] + r * Nr.dim[t] + k) =
              F.sub(D(row, off[t] + r * Nr.dim[t] + k), Nr.maps[a](k, c));
      }
  }
  Mat comp = complement(F, colspace(F, D));
  int e = comp.cols;
  if (e != qd_.dim_ext(N, M)) throw AlgebraError("ext_count: Ext dimension mismatch");
  long total = 1;
  for (int k = 0; k < e; ++k) total *= q;
  auto one = [&](long idx) -> long long {
    std::vector<int> coef(e), vec(comp.rows, 0);
    vec_from_index(q, idx, coef);
    for (int c = 0; c < e; ++c)
      if (coef[c])
        for (int r = 0; r < comp.rows; ++r) vec[r] = F.add(vec[r], F.mul(coef[c], comp(r, c)));
    Rep Lr;
    for (int i = 0; i < Q.n; ++i) Lr.dim.push_back(Mr.dim[i] + Nr.dim[i]);
    for (size_t a = 0; a < Q.arrows.size(); ++a) {
      auto [s, t] = Q.arrows[a];
      Mat m = block_diag(Mr.maps[a], Nr.maps[a]);
      for (int r = 0; r < Mr.dim[t]; ++r)
        for (int c = 0; c < Nr.dim[s]; ++c) m(r, Mr.dim[s] + c) = vec[aoff[a] + r * Nr.dim[s] + c];
      Lr.maps.push_back(m);
    }
    return cat.classify(Lr) == L ? 1 : 0;
  };
  long long count = 0;
  if (ex == Exec::Parallel) {
#pragma omp parallel for reduction(+ : count) schedule(dynamic, 16)
    for (long idx = 0; idx < total; ++idx) count += one(idx);
  } else {
    for (long idx = 0; idx < total; ++idx) count += one(idx);
  }
  return count;
}

QPoly HallContext::aut_poly(const IsoClass& M) const {
  QPoly p{mpq_class(1)};
  int e = qd_.dim_end(M);
  for (int m : M.mult) {
    e -= m * m;
    // |GL_m| = prod_{k<m} (q^m - q^k)
    for (int k = 0; k < m; ++k) {
      QPoly f = q_power(m);
      f[k] -= 1;
      p = poly_mul(p, f);
    }
  }
  return poly_mul(p, q_power(e));
}

QPoly HallContext::ext_poly(const IsoClass& N, const IsoClass& M, const IsoClass& L) const {
  auto key = std::tuple(N, M, L);
  {
    std::lock_guard lk(mu_);
    auto it = ext_memo_.find(key);
    if (it != ext_memo_.end()) return it->second;
  }
  QPoly out;
  IntVec dN = qd_.dim(N), dM = qd_.dim(M), dL = qd_.dim(L);
  bool dims_ok = true;
  for (size_t i = 0; i < dL.size(); ++i) dims_ok &= dN[i] + dM[i] == dL[i];
  int e = qd_.dim_ext(N, M);
  if (!dims_ok) {
    out = {};
  } else if (e == 0) {
    out = (qd_.add(M, N) == L) ? QPoly{mpq_class(1)} : QPoly{};
  } else {
    check_budget(dL);
    std::vector<long> xs;
    std::vector<mpq_class> ys;
    for (int k = 0; k <= e; ++k) {
      xs.push_back(kPrimePowers[k]);
      ys.emplace_back(static_cast<long>(ext_count(N, M, L, static_cast<int>(kPrimePowers[k]))));
    }
    out = lagrange(xs, ys);
    long hold = kPrimePowers[e + 1];
    if (qpoly_eval(out, hold) != static_cast<long>(ext_count(N, M, L, static_cast<int>(hold))))
      throw AlgebraError("ext_poly: held-out validation failed");
  }
  std::lock_guard lk(mu_);
  ext_memo_.emplace(key, out);
  return out;
}

QPoly HallContext::hall_polynomial(const IsoClass& M, const IsoClass& N, const IsoClass& L) const {
  QPoly num = poly_mul(ext_poly(N, M, L), aut_poly(L));
  if (num.empty()) return {};
  QPoly den = poly_mul(poly_mul(aut_poly(M), aut_poly(N)), q_power(qd_.dim_hom(N, M)));
  QPoly quo, rem;
  poly_divmod(num, den, quo, rem);
  if (!rem.empty()) throw AlgebraError("hall_polynomial: Riedtmann quotient is not a polynomial");
  return quo;
}

ScalarRat HallContext::hall_v(const IsoClass& M, const IsoClass& N, const IsoClass& L) const {
  auto key = std::tuple(M, N, L);
  {
    std::lock_guard lk(mu_);
    auto it = hall_memo_.find(key);
    if (it != hall_memo_.end()) return it->second;
  }
  ScalarRat r = qpoly_to_v(hall_polynomial(M, N, L));
  std::lock_guard lk(mu_);
  hall_memo_.emplace(key, r);
  return r;
}

ScalarRat HallContext::aut_v(const IsoClass& M) const { return qpoly_to_v(aut_poly(M)); }

ScalarRat HallContext::gamma_v(const IsoClass& N, const IsoClass& M, const IsoClass& V,
                               const IsoClass& W) const {
  auto key = std::tuple(N, M, V, W);
  {
    std::lock_guard lk(mu_);
    auto it = gamma_memo_.find(key);
    if (it != gamma_memo_.end()) return it->second;
  }
  // factor g through its image I: 0 -> V -> N -> I -> 0 and 0 -> I -> M -> W -> 0
  IntVec dN = qd_.dim(N), dV = qd_.dim(V), dM = qd_.dim(M), dW = qd_.dim(W), dI(dN.size());
  ScalarRat sum(0);
  bool ok = true;
  for (size_t i = 0; i < dN.size(); ++i) {
    dI[i] = dN[i] - dV[i];
    ok &= dI[i] >= 0 && dM[i] - dW[i] == dI[i];
  }
  if (ok) {
    for (auto& I : qd_.classes_of_dim(dI)) {
      ScalarRat a = hall_v(V, I, N);
      if (a.is_zero()) continue;
      ScalarRat b = hall_v(I, W, M);
      if (b.is_zero()) continue;
      sum += a * b * aut_v(I);
    }
    sum = sum * aut_v(V) * aut_v(W) / (aut_v(M) * aut_v(N));
  }
  std::lock_guard lk(mu_);
  gamma_memo_.emplace(key, sum);
  return sum;
}

std::vector<std::pair<IsoClass, ScalarRat>> HallContext::hall_product_terms(
    const IsoClass& M, const IsoClass& N) const {
  std::vector<std::pair<IsoClass, ScalarRat>> out;
  for (auto& L : qd_.classes_of_dim(qd_.dim(qd_.add(M, N)))) {
    ScalarRat g = hall_v(M, N, L);
    if (!g.is_zero()) out.push_back({L, g});
  }
  return out;
}

}  // namespace qh
