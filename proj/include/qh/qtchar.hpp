#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "qh/cartan.hpp"
#include "qh/qcartan.hpp"
#include "qh/scalars.hpp"
#include "qh/sdhall.hpp"

namespace qh {

// Monomial budget, overridable through QH_MONOMIAL_BUDGET.
std::size_t default_monomial_budget();

// Element of the quantum torus in the commutative-monomial basis; t^{1/2} is stored as v^{1/2}.
class TorusElement {
 public:
  TorusElement() = default;
  static TorusElement comm(const Monomial& m, const ScalarRat& c = ScalarRat(1));
  const std::map<Monomial, ScalarRat>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }
  ScalarRat coeff(const Monomial& m) const;
  void add(const Monomial& m, const ScalarRat& c);
  TorusElement operator+(const TorusElement& o) const;
  TorusElement operator-(const TorusElement& o) const;
  TorusElement operator*(const ScalarRat& c) const;
  TorusElement& operator+=(const TorusElement& o);
  bool operator==(const TorusElement& o) const { return t_ == o.t_; }
  TorusElement bar() const;
  std::vector<Monomial> dominant() const;
  std::map<Monomial, mpq_class> at_t_one() const;
  std::string str() const;
  std::string json() const;

 private:
  std::map<Monomial, ScalarRat> t_;
};

class QuantumTorus {
 public:
  explicit QuantumTorus(const DynkinData& g) : N_(g) {}
  const InvQCartan& N() const { return N_; }
  const DynkinData& dynkin() const { return N_.dynkin(); }
  TorusElement mul(const TorusElement& x, const TorusElement& y) const;
  TorusElement mul(const std::vector<TorusElement>& xs) const;
  TorusElement pow(const TorusElement& x, int k) const;

 private:
  InvQCartan N_;
};

struct LtResult {
  TorusElement L;
  std::vector<std::pair<Monomial, ScalarRat>> kl;  // (m', a_{m,m'}(t)), processing order
};

// (q,t)-characters over an admissible sequence; results memoized.
class QTChar {
 public:
  explicit QTChar(const AdmissibleSequence& s, std::size_t budget = default_monomial_budget());
  const QuantumTorus& torus() const { return T_; }
  const AdmissibleSequence& seq() const { return s_; }
  std::size_t budget() const { return budget_; }

  // t-deformed Frenkel-Mukhin algorithm from comm(m); throws on a second dominant monomial
  TorusElement F_t(const Monomial& m) const;
  TorusElement F_t(int i, int p) const { return F_t(Monomial::Y(i, p)); }
  // t^c with comm(m) = t^c * (ordered product of the Y's, p increasing)
  ScalarRat standard_prefactor(const Monomial& m) const;
  TorusElement M_t(const Monomial& m) const;
  LtResult L_t(const Monomial& m) const;
  // x = sum c_m M_t(m); throws if x is not in the span of standard characters
  std::vector<std::pair<Monomial, ScalarRat>> standard_expansion(TorusElement x) const;

 private:
  AdmissibleSequence s_;
  QuantumTorus T_;
  std::size_t budget_;
  mutable std::mutex mu_;
  mutable std::map<Monomial, std::shared_ptr<const TorusElement>> f_memo_, m_memo_;
  mutable std::map<Monomial, std::shared_ptr<const LtResult>> l_memo_;

  // sl2 simple character at color i of an i-dominant monomial: (monomial, coeff, depth)
  std::vector<std::tuple<Monomial, ScalarRat, int>> sl2_character(const Monomial& m, int i) const;
  void check_budget(std::size_t n, const char* what) const;
};

// Ordered factors of the standard character: (i,p) with p increasing, repeated by exponent.
std::vector<Var> standard_factors(const Monomial& m);

// Independent t = 1 references.
std::map<Monomial, long long> fm_classical(const DynkinData& g, const Monomial& m,
                                           std::size_t budget = default_monomial_budget());
// Column-tableau formula for fundamentals of type A.
std::map<Monomial, long long> type_a_fundamental(int n, int i, int p);

// Image in the twisted derived Hall algebra: Phi(F_t(Y_{i,p})) = v^{1/2}(v - v^{-1}) Z_{V(i,p)}.
ScalarRat hl_lambda();
DHElement phi_fundamental(const SDHAlgebra& A, int i, int p);
DHElement phi_standard(const SDHAlgebra& A, const QTChar& C, const Monomial& m);
DHElement phi(const SDHAlgebra& A, const QTChar& C, const TorusElement& x);
DHElement phi_simple(const SDHAlgebra& A, const QTChar& C, const Monomial& m);
Monomial monomial_of(const SDHAlgebra& A, const ModWord& V);

// a(m), a(m,m') read off the full Z-basis expansion of Phi(L_t(m)).
CharCoefficients hl_coefficients(const SDHAlgebra& A, const QTChar& C, const Monomial& m);
// Variant a(m,m') = a_{m,m'}(v) a(m') with a(m') the coefficient of Z_{V(m')} in Phi(M_t(m')).
CharCoefficients hl_coefficients_recipe(const SDHAlgebra& A, const QTChar& C, const Monomial& m);

// L_v(m) in the semi-derived Hall algebra.
SDHElement semi_derived_L(const SDHAlgebra& A, const QTChar& C, const Monomial& m);

}  // namespace qh
