#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qh/derivedcat.hpp"
#include "qh/hallfq.hpp"
#include "qh/scalars.hpp"

namespace qh {

// Raised when a relation application breaks homogeneity.
struct ConventionError : AlgebraError {
  using AlgebraError::AlgebraError;
};

// Normal-form basis word E_{M_s,s} ... E_{M_r,r} K_{a_s,s} ... K_{a_r,r} (levels descending).
// K exponents are stored in projective coordinates.
struct SDHWord {
  std::map<int, IsoClass> mod;
  KMonomial k;
  auto operator<=>(const SDHWord&) const = default;
};

using ModWord = std::map<int, IsoClass>;

class SDHElement {
 public:
  SDHElement() = default;
  static SDHElement word(const SDHWord& w, const ScalarRat& c = ScalarRat(1));
  const std::map<SDHWord, ScalarRat>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  void add(const SDHWord& w, const ScalarRat& c);
  SDHElement operator+(const SDHElement& o) const;
  SDHElement operator-(const SDHElement& o) const;
  SDHElement operator*(const ScalarRat& c) const;
  SDHElement& operator+=(const SDHElement& o) { return *this = *this + o; }
  bool operator==(const SDHElement& o) const { return t_ == o.t_; }

 private:
  std::map<SDHWord, ScalarRat> t_;
};

// Element of the twisted derived Hall algebra in the Z_V basis (V = level -> class).
class DHElement {
 public:
  const std::map<ModWord, ScalarRat>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  void add(const ModWord& w, const ScalarRat& c);
  DHElement operator+(const DHElement& o) const;
  DHElement operator-(const DHElement& o) const;
  DHElement operator*(const ScalarRat& c) const;
  bool operator==(const DHElement& o) const { return t_ == o.t_; }

 private:
  std::map<ModWord, ScalarRat> t_;
};

class SDHAlgebra {
 public:
  explicit SDHAlgebra(const QuiverData& qd, int dim_budget = 6);
  const QuiverData& data() const { return qd_; }
  const HallContext& hall() const { return hall_; }
  const DerivedCat& derived() const { return dc_; }

  SDHElement one() const;
  SDHElement E(const IsoClass& M, int level) const;
  // K_{alpha,level}; alpha is a dimension vector (class in K(mod))
  SDHElement K(const IntVec& alpha, int level) const;
  SDHElement K(const KMonomial& k) const;  // projective coordinates
  // rescaled simple generators E_{i,m} = v^{1/2}(v - v^{-1}) E_{S_i,m}, K_{i,m} = K_{S_i,m}
  SDHElement Ei(int i, int m) const;
  SDHElement Ki(int i, int m, int power = 1) const;

  SDHElement mul(const SDHElement& x, const SDHElement& y) const;
  SDHElement mul(const std::vector<SDHElement>& xs) const;
  SDHElement pow(const SDHElement& x, int k) const;

  DHElement pi_H(const SDHElement& x) const;
  SDHElement lift(const DHElement& z) const;  // K parts empty
  DHElement dh_mul(const DHElement& x, const DHElement& y) const;

  GradingDegree degree(const SDHWord& w) const;
  // degree if all terms agree, nullopt otherwise (zero element: empty degree)
  std::optional<GradingDegree> homogeneous_degree(const SDHElement& x) const;

  // E_V, K_V for an object of D^b(Q)
  std::pair<SDHElement, SDHElement> build_EV_KV(const DerivedObject& V) const;
  // unique K-monomial element with the given degree; throws if none exists
  SDHElement K_for_degree(const GradingDegree& d) const;

  IntVec k_to_dim(const IntVec& proj) const;  // projective coordinates -> dimension vector
  std::string str(const SDHWord& w) const;
  std::string str(const SDHElement& x) const;
  std::string str(const DHElement& x) const;

  // word x E_{N,j} in normal form (K parts only from the reduction); memoized
  const std::map<SDHWord, ScalarRat>& mul_generator(const ModWord& w, const IsoClass& N,
                                                    int j) const;
  size_t memo_size() const;

 private:
  const QuiverData& qd_;
  HallContext hall_;
  DerivedCat dc_;
  mutable std::mutex mu_;
  mutable std::map<std::tuple<ModWord, IsoClass, int>,
                   std::unique_ptr<std::map<SDHWord, ScalarRat>>>
      memo_;

  std::map<SDHWord, ScalarRat> reduce(const ModWord& w, const IsoClass& N, int j) const;
  void check_homogeneous(const GradingDegree& lhs, const SDHWord& rhs, const char* rule) const;
};

// Semi-derived (q,t)-characters from Hernandez-Leclerc coefficient data.
struct CharCoefficients {
  ScalarRat leading;                                   // a(m)
  std::vector<std::pair<Monomial, ScalarRat>> lower;  // (m', a(m,m'))
};
SDHElement semi_derived_standard(const SDHAlgebra& A, const Monomial& m, const ScalarRat& am);
SDHElement semi_derived_char(const SDHAlgebra& A, const Monomial& m, const CharCoefficients& c);

// Add K-exponent vectors (projective coordinates), dropping zeros.
KMonomial k_add(const KMonomial& a, const KMonomial& b);

}  // namespace qh
