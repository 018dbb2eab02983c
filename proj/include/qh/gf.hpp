#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qh {

// Finite field F_q, q a prime power, elements encoded 0..q-1 (base-p digits of a polynomial).
class GF {
 public:
  static const GF& get(int q);  // cached; thread-safe
  static bool is_prime_power(int q, int* p = nullptr, int* k = nullptr);

  int q() const { return q_; }
  int p() const { return p_; }
  int add(int a, int b) const { return add_[a * q_ + b]; }
  int sub(int a, int b) const { return add_[a * q_ + neg_[b]]; }
  int mul(int a, int b) const { return mul_[a * q_ + b]; }
  int neg(int a) const { return neg_[a]; }
  int inv(int a) const;
  int from_int(long x) const;  // image of an integer in the prime field

 private:
  explicit GF(int q);
  int q_, p_, k_;
  std::vector<int> add_, mul_, neg_, inv_;
};

struct Mat {
  int rows = 0, cols = 0;
  std::vector<int> d;
  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), d(static_cast<size_t>(r) * c, 0) {}
  static Mat identity(int n);
  int& operator()(int i, int j) { return d[static_cast<size_t>(i) * cols + j]; }
  int operator()(int i, int j) const { return d[static_cast<size_t>(i) * cols + j]; }
  bool operator==(const Mat&) const = default;
  bool is_zero() const;
};

Mat mat_mul(const GF& F, const Mat& a, const Mat& b);
Mat mat_add(const GF& F, const Mat& a, const Mat& b);
Mat mat_sub(const GF& F, const Mat& a, const Mat& b);
Mat mat_scale(const GF& F, const Mat& a, int s);
Mat hstack(const Mat& a, const Mat& b);
Mat vstack(const Mat& a, const Mat& b);
Mat block_diag(const Mat& a, const Mat& b);

// Row-reduce in place; returns pivot columns.
std::vector<int> rref(const GF& F, Mat& a);
int rank(const GF& F, Mat a);
// Basis of {x : a x = 0} as columns of the returned matrix (cols x k).
Mat nullspace(const GF& F, const Mat& a);
// Columns of a basis of the column space (subset of the columns of a).
Mat colspace(const GF& F, const Mat& a);
// Columns completing the columns of a (assumed independent) to a basis of F^n.
Mat complement(const GF& F, const Mat& a);
// Solve a x = b for one x; false if inconsistent.
bool solve(const GF& F, const Mat& a, const Mat& b, Mat& x);
Mat inverse(const GF& F, const Mat& a);  // throws if singular
std::string mat_str(const Mat& a);

// Enumerate all vectors of F_q^n (lexicographic digits).
void vec_from_index(int q, long idx, std::vector<int>& v);

}  // namespace qh
