#include "qh/scalars.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace qh {

void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  poly_trim(r);
  return r;
}

Poly poly_sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  poly_trim(r);
  return r;
}

void poly_divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.empty()) throw AlgebraError("polynomial division by zero");
  r = a;
  poly_trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, mpq_class(0));
  const mpq_class& lb = b.back();
  while (!r.empty() && r.size() >= b.size()) {
    size_t shift = r.size() - b.size();
    mpq_class c = r.back() / lb;
    q[shift] = c;
    for (size_t j = 0; j < b.size(); ++j) r[shift + j] -= c * b[j];
    poly_trim(r);
  }
  poly_trim(q);
}

Poly poly_gcd(Poly a, Poly b) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    Poly q, r;
    poly_divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    mpq_class lc = a.back();
    for (auto& c : a) c /= lc;
  }
  return a;
}

// ---------------- HalfLaurent

HalfLaurent::HalfLaurent(const mpq_class& c, int half_exp) {
  if (c != 0) terms_.emplace(half_exp, c);
}

bool HalfLaurent::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1;
}

mpq_class HalfLaurent::coeff(int e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

void HalfLaurent::add_term(int e, const mpq_class& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

HalfLaurent HalfLaurent::operator+(const HalfLaurent& o) const {
  HalfLaurent r = *this;
  r += o;
  return r;
}

HalfLaurent& HalfLaurent::operator+=(const HalfLaurent& o) {
  for (auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

HalfLaurent HalfLaurent::operator-() const {
  HalfLaurent r = *this;
  for (auto& kv : r.terms_) kv.second = -kv.second;
  return r;
}

HalfLaurent HalfLaurent::operator-(const HalfLaurent& o) const { return *this + (-o); }

HalfLaurent HalfLaurent::operator*(const HalfLaurent& o) const {
  HalfLaurent r;
  for (auto& [e1, c1] : terms_)
    for (auto& [e2, c2] : o.terms_) r.add_term(e1 + e2, c1 * c2);
  return r;
}

HalfLaurent HalfLaurent::scaled(const mpq_class& c) const {
  if (c == 0) return {};
  HalfLaurent r = *this;
  for (auto& kv : r.terms_) kv.second *= c;
  return r;
}

HalfLaurent HalfLaurent::shifted(int k) const {
  HalfLaurent r;
  for (auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e + k, c);
  return r;
}

HalfLaurent HalfLaurent::bar() const {
  HalfLaurent r;
  for (auto& [e, c] : terms_) r.terms_.emplace(-e, c);
  return r;
}

bool HalfLaurent::operator<(const HalfLaurent& o) const {
  return std::lexicographical_compare(
      terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(), [](auto& x, auto& y) {
        if (x.first != y.first) return x.first < y.first;
        return x.second < y.second;
      });
}

Poly HalfLaurent::to_poly(int& shift) const {
  if (terms_.empty()) {
    shift = 0;
    return {};
  }
  shift = min_exp();
  Poly p(max_exp() - shift + 1, mpq_class(0));
  for (auto& [e, c] : terms_) p[e - shift] = c;
  return p;
}

HalfLaurent HalfLaurent::from_poly(const Poly& p, int shift) {
  HalfLaurent r;
  for (size_t i = 0; i < p.size(); ++i)
    if (p[i] != 0) r.terms_.emplace(static_cast<int>(i) + shift, p[i]);
  return r;
}

namespace {

std::string exp_str(int e) {
  if (e % 2 == 0) return std::to_string(e / 2);
  return "(" + std::to_string(e) + "/2)";
}

}  // namespace

std::string HalfLaurent::str(const char* var) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    mpq_class c = it->second;
    int e = it->first;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (e == 0) {
      os << c.get_str();
      continue;
    }
    if (c != 1) os << c.get_str() << "*";
    os << var;
    if (e != 2) os << "^" << exp_str(e);
  }
  return os.str();
}

// ---------------- QSqrt

QSqrt::QSqrt(long q, const mpq_class& a, const mpq_class& b) : q_(q), a_(a), b_(b) {
  long r = static_cast<long>(std::llround(std::sqrt(static_cast<double>(q))));
  if (r * r == q) root_ = r;
  fold();
}

void QSqrt::fold() {
  if (root_ >= 0 && b_ != 0) {
    a_ += b_ * root_;
    b_ = 0;
  }
}

void QSqrt::check(const QSqrt& o) const {
  if (q_ != o.q_) throw AlgebraError("QSqrt: mismatched radicands");
}

QSqrt QSqrt::operator+(const QSqrt& o) const {
  check(o);
  return QSqrt(q_, a_ + o.a_, b_ + o.b_);
}

QSqrt QSqrt::operator-(const QSqrt& o) const {
  check(o);
  return QSqrt(q_, a_ - o.a_, b_ - o.b_);
}

QSqrt QSqrt::operator*(const QSqrt& o) const {
  check(o);
  return QSqrt(q_, a_ * o.a_ + b_ * o.b_ * q_, a_ * o.b_ + b_ * o.a_);
}

QSqrt QSqrt::inverse() const {
  mpq_class n = a_ * a_ - b_ * b_ * q_;
  if (n == 0) throw AlgebraError("QSqrt: division by zero");
  return QSqrt(q_, a_ / n, -b_ / n);
}

QSqrt QSqrt::sqrt_pow(long q, int k) {
  QSqrt base(q, 0, 1), r(q, 1, 0);
  if (k < 0) {
    base = base.inverse();
    k = -k;
  }
  while (k--) r = r * base;
  return r;
}

std::string QSqrt::str() const {
  std::string s = a_.get_str();
  if (b_ != 0) s += " + " + b_.get_str() + "*sqrt(" + std::to_string(q_) + ")";
  return s;
}

// ---------------- ScalarRat

ScalarRat::ScalarRat(const HalfLaurent& n, const HalfLaurent& d) : num_(n), den_(d) {
  if (den_.is_zero()) throw AlgebraError("division by zero");
  normalize();
}

void ScalarRat::normalize() {
  if (num_.is_zero()) {
    den_ = HalfLaurent(1);
    return;
  }
  if (den_.is_one()) return;
  int sn, sd;
  Poly n = num_.to_poly(sn), d = den_.to_poly(sd);
  Poly g = poly_gcd(n, d);
  if (g.size() > 1) {
    Poly q, r;
    poly_divmod(n, g, q, r);
    n = q;
    poly_divmod(d, g, q, r);
    d = q;
  }
  mpq_class lc = d.back();
  for (auto& c : n) c /= lc;
  for (auto& c : d) c /= lc;
  num_ = HalfLaurent::from_poly(n, sn - sd);
  den_ = HalfLaurent::from_poly(d, 0);
}

ScalarRat ScalarRat::operator+(const ScalarRat& o) const {
  if (den_ == o.den_) {
    ScalarRat r;
    r.num_ = num_ + o.num_;
    r.den_ = den_;
    r.normalize();
    return r;
  }
  return ScalarRat(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

ScalarRat ScalarRat::operator-() const {
  ScalarRat r = *this;
  r.num_ = -r.num_;
  return r;
}

ScalarRat ScalarRat::operator-(const ScalarRat& o) const { return *this + (-o); }

ScalarRat ScalarRat::operator*(const ScalarRat& o) const {
  if (den_.is_one() && o.den_.is_one()) return ScalarRat(num_ * o.num_);
  return ScalarRat(num_ * o.num_, den_ * o.den_);
}

ScalarRat ScalarRat::operator/(const ScalarRat& o) const {
  if (o.is_zero()) throw AlgebraError("division by zero");
  return ScalarRat(num_ * o.den_, den_ * o.num_);
}

ScalarRat ScalarRat::pow(int k) const {
  ScalarRat base = k < 0 ? ScalarRat(1) / *this : *this;
  ScalarRat r(1);
  for (int i = 0; i < std::abs(k); ++i) r *= base;
  return r;
}

ScalarRat ScalarRat::bar() const { return ScalarRat(num_.bar(), den_.bar()); }

namespace {

mpq_class eval(const HalfLaurent& h, const mpq_class& x) {
  mpq_class s = 0;
  for (auto& [e, c] : h.terms()) {
    if (e != 0 && x == 0) throw AlgebraError("specialize: pole at 0");
    mpq_class p = 1;
    mpq_class b = e < 0 ? mpq_class(1 / x) : x;
    for (int i = 0; i < std::abs(e); ++i) p *= b;
    s += c * p;
  }
  return s;
}

QSqrt eval_sqrt(const HalfLaurent& h, long q) {
  QSqrt s(q, 0);
  for (auto& [e, c] : h.terms()) {
    if (e % 2 != 0) throw AlgebraError("at_sqrt: half-integral power of v");
    s = s + QSqrt::sqrt_pow(q, e / 2) * QSqrt(q, c);
  }
  return s;
}

}  // namespace

mpq_class ScalarRat::specialize(const mpq_class& x) const {
  mpq_class d = eval(den_, x);
  if (d == 0) throw AlgebraError("specialize: pole at " + x.get_str());
  return eval(num_, x) / d;
}

QSqrt ScalarRat::at_sqrt(long q) const { return eval_sqrt(num_, q) / eval_sqrt(den_, q); }

std::string ScalarRat::str(const char* var) const {
  if (den_.is_one()) return num_.str(var);
  return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
}

// ---------------- parser
// expr := term (('+'|'-') term)*
// term := unary (('*'|'/') unary)*
// unary := '-' unary | power
// power := atom ('^' exponent)?
// atom := number | 'v' | 't' | '(' expr ')'
// exponent := ['-'] int | '(' ['-'] int ['/' int] ')'

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  ScalarRat parse() {
    ScalarRat r = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return r;
  }

 private:
  const std::string& s_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw AlgebraError("scalar parse error at " + std::to_string(pos_) + ": " + what + " in '" +
                       s_ + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  long integer() {
    skip();
    size_t st = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (st == pos_) fail("expected integer");
    return std::stol(s_.substr(st, pos_ - st));
  }

  ScalarRat expr() {
    ScalarRat r = term();
    for (;;) {
      if (eat('+'))
        r += term();
      else if (eat('-'))
        r -= term();
      else
        return r;
    }
  }
  ScalarRat term() {
    ScalarRat r = unary();
    for (;;) {
      if (eat('*'))
        r *= unary();
      else if (eat('/'))
        r = r / unary();
      else
        return r;
    }
  }
  ScalarRat unary() {
    if (eat('-')) return -unary();
    return power();
  }
  // returns exponent in half units
  int exponent() {
    if (eat('(')) {
      bool neg = eat('-');
      long n = integer();
      long d = 1;
      if (eat('/')) d = integer();
      if (!eat(')')) fail("expected ')'");
      if (d != 1 && d != 2) fail("exponent denominator must be 1 or 2");
      long half = d == 1 ? 2 * n : n;
      return static_cast<int>(neg ? -half : half);
    }
    bool neg = eat('-');
    long n = integer();
    return static_cast<int>(neg ? -2 * n : 2 * n);
  }
  ScalarRat power() {
    skip();
    if (pos_ < s_.size() && (s_[pos_] == 'v' || s_[pos_] == 't')) {
      ++pos_;
      int e = 2;
      if (eat('^')) e = exponent();
      return ScalarRat::v_pow(e);
    }
    ScalarRat base;
    if (eat('(')) {
      base = expr();
      if (!eat(')')) fail("expected ')'");
    } else {
      base = ScalarRat(mpq_class(integer()));
    }
    if (eat('^')) {
      int e = exponent();
      if (e % 2 != 0) fail("half power of a non-variable");
      base = base.pow(e / 2);
    }
    return base;
  }
};

}  // namespace

ScalarRat ScalarRat::parse(const std::string& s) { return Parser(s).parse(); }

}  // namespace qh
