#pragma once

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qh {

struct AlgebraError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense polynomial over Q in x = v^{1/2}; index = power.
using Poly = std::vector<mpq_class>;

void poly_trim(Poly& p);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
// a = q*b + r
void poly_divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
Poly poly_gcd(Poly a, Poly b);  // monic, gcd(0,0) = 0

// Laurent polynomial in v^{1/2}; exponents count half powers of v.
class HalfLaurent {
 public:
  HalfLaurent() = default;
  explicit HalfLaurent(const mpq_class& c, int half_exp = 0);

  static HalfLaurent v_pow(int half_exp) { return HalfLaurent(1, half_exp); }

  const std::map<int, mpq_class>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  int min_exp() const { return terms_.begin()->first; }
  int max_exp() const { return terms_.rbegin()->first; }
  mpq_class coeff(int half_exp) const;

  HalfLaurent operator+(const HalfLaurent& o) const;
  HalfLaurent operator-(const HalfLaurent& o) const;
  HalfLaurent operator-() const;
  HalfLaurent operator*(const HalfLaurent& o) const;
  HalfLaurent& operator+=(const HalfLaurent& o);
  HalfLaurent scaled(const mpq_class& c) const;
  HalfLaurent shifted(int half_exp) const;
  HalfLaurent bar() const;

  bool operator==(const HalfLaurent& o) const { return terms_ == o.terms_; }
  bool operator<(const HalfLaurent& o) const;

  // x^{-min_exp} * this as a dense polynomial
  Poly to_poly(int& shift) const;
  static HalfLaurent from_poly(const Poly& p, int shift);

  std::string str(const char* var = "v") const;

 private:
  std::map<int, mpq_class> terms_;
  void add_term(int e, const mpq_class& c);
};

// a + b*sqrt(q), used to compare formal structure constants with counts at v = sqrt(q).
class QSqrt {
 public:
  QSqrt() : q_(0) {}
  QSqrt(long q, const mpq_class& a, const mpq_class& b = 0);
  long q() const { return q_; }
  const mpq_class& a() const { return a_; }
  const mpq_class& b() const { return b_; }
  QSqrt operator+(const QSqrt& o) const;
  QSqrt operator-(const QSqrt& o) const;
  QSqrt operator*(const QSqrt& o) const;
  QSqrt inverse() const;
  QSqrt operator/(const QSqrt& o) const { return *this * o.inverse(); }
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool operator==(const QSqrt& o) const { return a_ == o.a_ && b_ == o.b_; }
  static QSqrt sqrt_pow(long q, int k);  // (sqrt q)^k
  std::string str() const;

 private:
  long q_;
  long root_ = -1;  // integer sqrt when q is a square
  mpq_class a_, b_;
  void check(const QSqrt& o) const;
  void fold();
};

// Element of Q(v^{1/2}) in normalized form num/den:
// den is a monic polynomial in v^{1/2} with nonzero constant term, coprime to num.
class ScalarRat {
 public:
  ScalarRat() : den_(1) {}
  ScalarRat(long c) : num_(mpq_class(c)), den_(1) {}  // NOLINT
  ScalarRat(const mpq_class& c) : num_(c), den_(1) {}  // NOLINT
  ScalarRat(const HalfLaurent& n) : num_(n), den_(1) {}  // NOLINT
  ScalarRat(const HalfLaurent& n, const HalfLaurent& d);

  static ScalarRat v_pow(int half_exp) { return ScalarRat(HalfLaurent::v_pow(half_exp)); }
  static ScalarRat v(int k) { return v_pow(2 * k); }  // v^k
  static ScalarRat parse(const std::string& s);

  const HalfLaurent& num() const { return num_; }
  const HalfLaurent& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_laurent() const { return den_.is_one(); }

  ScalarRat operator+(const ScalarRat& o) const;
  ScalarRat operator-(const ScalarRat& o) const;
  ScalarRat operator-() const;
  ScalarRat operator*(const ScalarRat& o) const;
  ScalarRat operator/(const ScalarRat& o) const;
  ScalarRat& operator+=(const ScalarRat& o) { return *this = *this + o; }
  ScalarRat& operator-=(const ScalarRat& o) { return *this = *this - o; }
  ScalarRat& operator*=(const ScalarRat& o) { return *this = *this * o; }
  ScalarRat pow(int k) const;
  ScalarRat bar() const;

  bool operator==(const ScalarRat& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const ScalarRat& o) const { return !(*this == o); }

  // Evaluate at v^{1/2} = x.
  mpq_class specialize(const mpq_class& x) const;
  mpq_class at_one() const { return specialize(1); }
  // Evaluate at v = sqrt(q); requires integral v-powers.
  QSqrt at_sqrt(long q) const;

  std::string str(const char* var = "v") const;

 private:
  HalfLaurent num_, den_;
  void normalize();
};

}  // namespace qh
