#pragma once

#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "qh/sdhall.hpp"

namespace qh {

// Bounded cochain complex of projective representations over F_q.
// terms[k] sits in degree lo + k; d[k] : terms[k] -> terms[k+1] (one matrix per vertex).
struct Complex {
  int lo = 0;
  std::vector<Rep> terms;
  std::vector<std::vector<Mat>> d;
  std::vector<IntVec> proj;  // multiplicity of P_j in each term
  int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
  int total_dim() const;
};

// Element of the localized Hall algebra of C^b(P) at v = sqrt(q).
// Key (mod, k) stands for [K]^k [C_mod]: C_mod the minimal complex with homology mod
// (level l = homology in degree -l), k net multiplicities of K_P[l] (may be negative).
using OracleElement = std::map<SDHWord, QSqrt>;

class SDHOracle {
 public:
  SDHOracle(const SDHAlgebra& A, int q, int dim_budget = 8);
  int q() const { return q_; }

  // concrete complexes
  Complex resolution(const IsoClass& M, int level) const;   // C_M[level]
  Complex contractible(const IntVec& proj, int level) const;  // K_P[level]
  Complex realize(const SDHWord& key) const;  // C_mod (+) K_k, k >= 0
  static Complex direct_sum(const Complex& a, const Complex& b);
  bool is_complex(const Complex& c) const;
  // iso class of a complex: homology by level and contractible summands by level
  SDHWord classify(const Complex& c) const;

  // chain-map counts
  int hom_dim(const Complex& X, const Complex& Y) const;  // dim Hom_{C^b(P)}(X, Y)
  long long aut_size(const Complex& X) const;             // enumeration
  // dim Hom_{D^b}(X, Y[j]) from homology classes
  int hom_D(const SDHWord& X, const SDHWord& Y, int j) const;

  // twisted Hall product of two actual complexes (X sub, Y quotient), full classes
  OracleElement complex_product(const SDHWord& X, const SDHWord& Y) const;
  // #{admissible subcomplexes U of B with U ~ X, B/U ~ Y} (exhaustive)
  long long subcomplex_count(const SDHWord& B, const SDHWord& X, const SDHWord& Y) const;
  // untwisted |Ext^1(Y,X)_B| / |Hom(Y,X)| for every B, from cocycle enumeration
  std::map<SDHWord, mpq_class> extension_weights(const SDHWord& X, const SDHWord& Y) const;

  // localized algebra
  OracleElement mul(const OracleElement& x, const OracleElement& y) const;
  OracleElement generator_E(const IsoClass& M, int level) const;
  OracleElement generator_K(const IntVec& proj, int level) const;
  OracleElement image(const SDHWord& w) const;  // ordered product of the word's factors
  OracleElement image(const SDHElement& x) const;

  std::string str(const OracleElement& x) const;

 private:
  const SDHAlgebra& A_;
  const QuiverData& qd_;
  int q_;
  int budget_;
  const RepCatalog& cat_;
  const GF& F_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<SDHWord, SDHWord>, OracleElement> prod_memo_;
  mutable std::map<std::pair<SDHWord, SDHWord>, std::map<SDHWord, mpq_class>> ext_memo_;

  Complex pad(const Complex& c, int lo, int hi) const;
  IntVec top(const IsoClass& H) const;
  QSqrt twist(const SDHWord& X, const SDHWord& Y) const;
};

void oracle_add(OracleElement& x, const SDHWord& w, const QSqrt& c);

struct OracleReport {
  bool ok = false;
  std::string engine, oracle;
};

// Engine product x*y at v = sqrt(q) against the oracle product of the images.
OracleReport brute_product_oracle(const SDHAlgebra& A, const SDHOracle& O, const SDHElement& x,
                                  const SDHElement& y);

}  // namespace qh
