#include "qh/gf.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "qh/scalars.hpp"

namespace qh {

bool GF::is_prime_power(int q, int* pp, int* kk) {
  if (q < 2) return false;
  int p = 2;
  while (q % p) ++p;
  int k = 0, r = q;
  while (r % p == 0) {
    r /= p;
    ++k;
  }
  if (r != 1) return false;
  if (pp) *pp = p;
  if (kk) *kk = k;
  return true;
}

const GF& GF::get(int q) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GF>> cache;
  std::lock_guard lk(mu);
  auto& slot = cache[q];
  if (!slot) slot.reset(new GF(q));
  return *slot;
}

namespace {

// multiply polynomials with base-p digit encoding modulo a monic modulus of degree k
std::vector<int> digits(int x, int p, int k) {
  std::vector<int> d(k);
  for (int i = 0; i < k; ++i) {
    d[i] = x % p;
    x /= p;
  }
  return d;
}

int undigits(const std::vector<int>& d, int p) {
  int x = 0;
  for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) x = x * p + d[i];
  return x;
}

std::vector<int> polymulmod(const std::vector<int>& a, const std::vector<int>& b,
                            const std::vector<int>& mod, int p) {
  int k = static_cast<int>(a.size());
  std::vector<int> r(2 * k, 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  // mod is monic of degree k: x^k = -sum mod[i] x^i
  for (int e = 2 * k - 1; e >= k; --e) {
    int c = r[e];
    if (!c) continue;
    r[e] = 0;
    for (int i = 0; i < k; ++i) r[e - k + i] = ((r[e - k + i] - c * mod[i]) % p + p) % p;
  }
  r.resize(k);
  return r;
}

bool irreducible(const std::vector<int>& mod, int p) {
  // brute force: no root-free factorization check needed at desk scale; test all monic divisors
  int k = static_cast<int>(mod.size());
  std::vector<int> full = mod;
  full.push_back(1);
  for (int dg = 1; dg <= k / 2; ++dg) {
    int count = 1;
    for (int i = 0; i < dg; ++i) count *= p;
    for (int c = 0; c < count; ++c) {
      std::vector<int> div = digits(c, p, dg);
      div.push_back(1);
      // long division
      std::vector<int> r = full;
      for (int e = k; e >= dg; --e) {
        int f = r[e];
        if (!f) continue;
        for (int i = 0; i <= dg; ++i) r[e - dg + i] = ((r[e - dg + i] - f * div[i]) % p + p) % p;
      }
      bool zero = true;
      for (int i = 0; i < dg; ++i) zero &= r[i] == 0;
      if (zero) return false;
    }
  }
  return true;
}

}  // namespace

GF::GF(int q) : q_(q) {
  if (!is_prime_power(q, &p_, &k_)) throw AlgebraError("F_q needs a prime power q");
  add_.resize(q * q);
  mul_.resize(q * q);
  neg_.resize(q);
  inv_.assign(q, 0);
  std::vector<int> mod(k_, 0);
  if (k_ > 1) {
    int count = 1;
    for (int i = 0; i < k_; ++i) count *= p_;
    for (int c = 0; c < count; ++c) {
      mod = digits(c, p_, k_);
      if (irreducible(mod, p_)) break;
    }
  }
  for (int a = 0; a < q; ++a) {
    auto da = digits(a, p_, k_);
    std::vector<int> dn(k_);
    for (int i = 0; i < k_; ++i) dn[i] = (p_ - da[i]) % p_;
    neg_[a] = undigits(dn, p_);
    for (int b = 0; b < q; ++b) {
      auto db = digits(b, p_, k_);
      std::vector<int> s(k_);
      for (int i = 0; i < k_; ++i) s[i] = (da[i] + db[i]) % p_;
      add_[a * q + b] = undigits(s, p_);
      mul_[a * q + b] = k_ == 1 ? (a * b) % p_ : undigits(polymulmod(da, db, mod, p_), p_);
    }
  }
  for (int a = 1; a < q; ++a)
    for (int b = 1; b < q; ++b)
      if (mul_[a * q + b] == 1) inv_[a] = b;
}

int GF::inv(int a) const {
  if (a == 0) throw AlgebraError("F_q: inverse of 0");
  return inv_[a];
}

int GF::from_int(long x) const { return static_cast<int>(((x % p_) + p_) % p_); }

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool Mat::is_zero() const {
  for (int x : d)
    if (x) return false;
  return true;
}

Mat mat_mul(const GF& F, const Mat& a, const Mat& b) {
  if (a.cols != b.rows) throw AlgebraError("mat_mul: shape mismatch");
  Mat r(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      int x = a(i, k);
      if (!x) continue;
      for (int j = 0; j < b.cols; ++j) r(i, j) = F.add(r(i, j), F.mul(x, b(k, j)));
    }
  return r;
}

Mat mat_add(const GF& F, const Mat& a, const Mat& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw AlgebraError("mat_add: shape mismatch");
  Mat r = a;
  for (size_t i = 0; i < r.d.size(); ++i) r.d[i] = F.add(a.d[i], b.d[i]);
  return r;
}

Mat mat_sub(const GF& F, const Mat& a, const Mat& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw AlgebraError("mat_sub: shape mismatch");
  Mat r = a;
  for (size_t i = 0; i < r.d.size(); ++i) r.d[i] = F.sub(a.d[i], b.d[i]);
  return r;
}

Mat mat_scale(const GF& F, const Mat& a, int s) {
  Mat r = a;
  for (auto& x : r.d) x = F.mul(x, s);
  return r;
}

Mat hstack(const Mat& a, const Mat& b) {
  if (a.rows != b.rows) throw AlgebraError("hstack: shape mismatch");
  Mat r(a.rows, a.cols + b.cols);
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < a.cols; ++j) r(i, j) = a(i, j);
    for (int j = 0; j < b.cols; ++j) r(i, a.cols + j) = b(i, j);
  }
  return r;
}

Mat vstack(const Mat& a, const Mat& b) {
  if (a.cols != b.cols) throw AlgebraError("vstack: shape mismatch");
  Mat r(a.rows + b.rows, a.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) r(i, j) = a(i, j);
  for (int i = 0; i < b.rows; ++i)
    for (int j = 0; j < b.cols; ++j) r(a.rows + i, j) = b(i, j);
  return r;
}

Mat block_diag(const Mat& a, const Mat& b) {
  Mat r(a.rows + b.rows, a.cols + b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) r(i, j) = a(i, j);
  for (int i = 0; i < b.rows; ++i)
    for (int j = 0; j < b.cols; ++j) r(a.rows + i, a.cols + j) = b(i, j);
  return r;
}

std::vector<int> rref(const GF& F, Mat& a) {
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < a.cols && r < a.rows; ++c) {
    int sel = -1;
    for (int i = r; i < a.rows; ++i)
      if (a(i, c)) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != r)
      for (int j = 0; j < a.cols; ++j) std::swap(a(sel, j), a(r, j));
    int iv = F.inv(a(r, c));
    for (int j = 0; j < a.cols; ++j) a(r, j) = F.mul(a(r, j), iv);
    for (int i = 0; i < a.rows; ++i) {
      if (i == r || !a(i, c)) continue;
      int f = a(i, c);
      for (int j = 0; j < a.cols; ++j) a(i, j) = F.sub(a(i, j), F.mul(f, a(r, j)));
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

int rank(const GF& F, Mat a) { return static_cast<int>(rref(F, a).size()); }

Mat nullspace(const GF& F, const Mat& a) {
  Mat r = a;
  auto piv = rref(F, r);
  std::vector<bool> is_piv(a.cols, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<int> free;
  for (int c = 0; c < a.cols; ++c)
    if (!is_piv[c]) free.push_back(c);
  Mat ns(a.cols, static_cast<int>(free.size()));
  for (size_t k = 0; k < free.size(); ++k) {
    ns(free[k], static_cast<int>(k)) = 1;
    for (size_t t = 0; t < piv.size(); ++t)
      ns(piv[t], static_cast<int>(k)) = F.neg(r(static_cast<int>(t), free[k]));
  }
  return ns;
}

Mat colspace(const GF& F, const Mat& a) {
  Mat r = a;
  auto piv = rref(F, r);
  Mat out(a.rows, static_cast<int>(piv.size()));
  for (size_t k = 0; k < piv.size(); ++k)
    for (int i = 0; i < a.rows; ++i) out(i, static_cast<int>(k)) = a(i, piv[k]);
  return out;
}

Mat complement(const GF& F, const Mat& a) {
  Mat full = hstack(a, Mat::identity(a.rows));
  Mat r = full;
  auto piv = rref(F, r);
  std::vector<int> extra;
  for (int c : piv)
    if (c >= a.cols) extra.push_back(c - a.cols);
  Mat out(a.rows, static_cast<int>(extra.size()));
  for (size_t k = 0; k < extra.size(); ++k) out(extra[k], static_cast<int>(k)) = 1;
  return out;
}

bool solve(const GF& F, const Mat& a, const Mat& b, Mat& x) {
  Mat aug = hstack(a, b);
  auto piv = rref(F, aug);
  for (int c : piv)
    if (c >= a.cols) return false;
  x = Mat(a.cols, b.cols);
  for (size_t t = 0; t < piv.size(); ++t)
    for (int j = 0; j < b.cols; ++j) x(piv[t], j) = aug(static_cast<int>(t), a.cols + j);
  return true;
}

Mat inverse(const GF& F, const Mat& a) {
  if (a.rows != a.cols) throw AlgebraError("inverse: not square");
  Mat x;
  if (!solve(F, a, Mat::identity(a.rows), x) || rank(F, a) != a.rows)
    throw AlgebraError("inverse: singular matrix");
  return x;
}

std::string mat_str(const Mat& a) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < a.rows; ++i) {
    os << (i ? ";" : "");
    for (int j = 0; j < a.cols; ++j) os << (j ? " " : "") << a(i, j);
  }
  os << "]";
  return os.str();
}

void vec_from_index(int q, long idx, std::vector<int>& v) {
  for (auto& x : v) {
    x = static_cast<int>(idx % q);
    idx /= q;
  }
}

}  // namespace qh
