#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qh/cartan.hpp"
#include "qh/quiver_rep.hpp"

namespace qh {

// Indecomposable object M[shift] of D^b(Q), M given by its positive-root index.
struct IndecLabel {
  int root = 0;
  int shift = 0;
  auto operator<=>(const IndecLabel&) const = default;
};

// Object of D^b(Q): shift -> iso-class of the module part placed there.
using DerivedObject = std::map<int, IsoClass>;

// level -> class in K(P) (projective basis); zero vectors never stored
class GradingDegree {
 public:
  GradingDegree() = default;
  static GradingDegree at(int level, const IntVec& v);
  const std::map<int, IntVec>& parts() const { return parts_; }
  bool is_zero() const { return parts_.empty(); }
  GradingDegree operator+(const GradingDegree& o) const;
  GradingDegree operator-(const GradingDegree& o) const;
  GradingDegree operator-() const;
  GradingDegree& operator+=(const GradingDegree& o) { return *this = *this + o; }
  bool operator==(const GradingDegree&) const = default;
  std::string str() const;

 private:
  std::map<int, IntVec> parts_;
  void add(int level, const IntVec& v, int sign);
};

// K-monomial: level -> exponent vector in K(P) for K_{alpha,level}
using KMonomial = std::map<int, IntVec>;

class DerivedCat {
 public:
  explicit DerivedCat(const QuiverData& qd);
  const QuiverData& data() const { return qd_; }
  const AdmissibleSequence& seq() const { return qd_.seq(); }
  int rank() const { return qd_.quiver().n; }

  // dimension vector -> coordinates in the basis [P_1],...,[P_n]
  IntVec proj_coords(const IntVec& dim) const;
  IntVec coxeter(const IntVec& dim) const;  // dim tau M for M non-projective

  IndecLabel tau(const IndecLabel& x) const;
  IndecLabel tau_inv(const IndecLabel& x) const;
  IndecLabel happel(int i, int p) const;
  Var happel_inverse(const IndecLabel& x) const;
  std::string label(const IndecLabel& x) const;
  IndecLabel parse_indec(const std::string& s) const;

  // (dim Hom(X,Y), dim Hom(X,Y[1]))
  std::pair<int, int> hom_ext(const IndecLabel& x, const IndecLabel& y) const;
  // Same computed from explicit F_q realizations.
  std::pair<int, int> hom_ext_fq(const IndecLabel& x, const IndecLabel& y, int q) const;

  GradingDegree degree_E(const IsoClass& M, int level) const;
  GradingDegree degree_K(const IntVec& alpha, int level) const;
  GradingDegree degree(const DerivedObject& V) const;
  // unique K-monomial with the given degree, if any
  std::optional<KMonomial> solve_K(const GradingDegree& delta) const;
  GradingDegree degree(const KMonomial& k) const;

  std::vector<IndecLabel> ext_sort(const std::vector<IndecLabel>& summands) const;
  std::vector<IndecLabel> summands(const DerivedObject& V) const;
  DerivedObject object(const std::vector<IndecLabel>& summands) const;
  DerivedObject monomial_object(const Monomial& m) const;
  std::string label(const DerivedObject& V) const;

  // repetition-quiver window p in [p0, p1] with Happel labels
  std::string repetition_dot(int p0, int p1) const;

 private:
  const QuiverData& qd_;
  IntMat pinv_;  // inverse of the matrix with columns dim P_j
  IntMat phi_;   // Coxeter transformation on dimension vectors
};

}  // namespace qh
