#pragma once

#include <string>
#include <vector>

#include "qh/hallfq.hpp"
#include "qh/sdhall.hpp"

namespace qh {

// Letter of a word in the generators E_{i,m}, K_{i,m}^power.
struct Gen {
  bool is_K = false;
  int i = 0, m = 0, power = 1;
  auto operator<=>(const Gen&) const = default;
};
using GenWord = std::vector<Gen>;

// Noncommutative polynomial in the generators.
class GenExpr {
 public:
  GenExpr() = default;
  static GenExpr letter(const Gen& g);
  static GenExpr scalar(const ScalarRat& c);
  static GenExpr E(int i, int m) { return letter({false, i, m, 1}); }
  static GenExpr K(int i, int m, int p = 1) { return letter({true, i, m, p}); }

  const std::vector<std::pair<ScalarRat, GenWord>>& terms() const { return t_; }
  GenExpr operator+(const GenExpr& o) const;
  GenExpr operator-(const GenExpr& o) const;
  GenExpr operator*(const GenExpr& o) const;
  GenExpr operator*(const ScalarRat& c) const;
  std::string str() const;

 private:
  std::vector<std::pair<ScalarRat, GenWord>> t_;
};

// sigma_i (inverse = false) or sigma_i^{-1} on one generator
GenExpr sigma_gen(const DynkinData& g, int i, bool inverse, const Gen& x);
// substitute sigma_i^{+-1} into every letter
GenExpr sigma(const DynkinData& g, int i, const GenExpr& x, bool inverse = false);
// word applied right to left: word = {(i1,inv1),(i2,inv2)} means s_i1 s_i2 (x)
GenExpr sigma_word(const DynkinData& g, const std::vector<std::pair<int, bool>>& word,
                   const GenExpr& x);

SDHElement evaluate(const SDHAlgebra& A, const GenExpr& x);
DHElement evaluate_dh(const SDHAlgebra& A, const GenExpr& x);  // K -> 1
// sigma_i on an element given as a generator expression, evaluated in the algebra
SDHElement sigma(const SDHAlgebra& A, int i, const GenExpr& x);
SDHElement sigma_inv(const SDHAlgebra& A, int i, const GenExpr& x);

// defining relations (K central, commutation, Serre, adjacent and distant levels), instances with all levels in [m0, m1]; each as (name, lhs - rhs)
std::vector<std::pair<std::string, GenExpr>> presentation_relations(const DynkinData& g, int m0,
                                                                    int m1);

struct BraidCheck {
  std::string identity, instance;
  bool ok = false;
  std::string lhs, rhs;
};

std::vector<BraidCheck> check_presentation(const SDHAlgebra& A, int m0, int m1,
                                           Exec ex = Exec::Parallel);
std::vector<BraidCheck> check_braid(const SDHAlgebra& A, int m0, int m1,
                                    Exec ex = Exec::Parallel);
std::string braid_report_json(const std::vector<BraidCheck>& checks);

}  // namespace qh
