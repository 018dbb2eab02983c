#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "qh/quiver_rep.hpp"
#include "qh/scalars.hpp"

namespace qh {

struct BudgetError : AlgebraError {
  using AlgebraError::AlgebraError;
};

enum class Exec { Serial, Parallel };

// k-dimensional subspaces of F_q^c, as c x k column bases (reduced echelon form)
void for_each_subspace(const GF& F, int c, int k, const std::function<void(const Mat&)>& fn);
std::vector<Mat> all_subspaces(const GF& F, int c, int k);
long long gaussian_binomial(int q, int n, int k);
long long gl_order(int q, int m);

// Arrow-stable subspace tuples of L with dimension vector d (column bases per vertex).
void for_each_subrep(const GF& F, const Quiver& Q, const Rep& L, const IntVec& d,
                     const std::function<void(const std::vector<Mat>&)>& fn);

// Restriction of L to an arrow-stable subspace tuple (bases U[i]) and the quotient.
Rep restrict_rep(const GF& F, const Quiver& Q, const Rep& L, const std::vector<Mat>& U);
Rep quotient_rep(const GF& F, const Quiver& Q, const Rep& L, const std::vector<Mat>& U);

// Polynomial in q with rational coefficients, index = power of q.
using QPoly = std::vector<mpq_class>;
ScalarRat qpoly_to_v(const QPoly& p);  // substitute q = v^2
mpq_class qpoly_eval(const QPoly& p, const mpq_class& q);
QPoly lagrange(const std::vector<long>& xs, const std::vector<mpq_class>& ys);

// Finite-field Hall data for one Dynkin quiver; memoized, safe for concurrent use.
class HallContext {
 public:
  explicit HallContext(const QuiverData& qd, int dim_budget = 6);
  const QuiverData& data() const { return qd_; }
  int dim_budget() const { return budget_; }
  const RepCatalog& catalog(int q) const;

  // exhaustive counts
  long long hall_number(const IsoClass& M, const IsoClass& N, const IsoClass& L, int q,
                        Exec ex = Exec::Parallel) const;
  long long aut_size(const IsoClass& M, int q) const;       // Krull-Schmidt formula
  long long aut_size_enum(const IsoClass& M, int q) const;  // enumeration of End(M)
  mpq_class four_term_gamma(const IsoClass& N, const IsoClass& M, const IsoClass& V,
                            const IsoClass& W, int q, Exec ex = Exec::Parallel) const;
  // |{eta in Ext^1(N,M) : middle term of eta is L}|
  long long ext_count(const IsoClass& N, const IsoClass& M, const IsoClass& L, int q,
                      Exec ex = Exec::Parallel) const;

  // polynomials in q
  QPoly aut_poly(const IsoClass& M) const;
  QPoly ext_poly(const IsoClass& N, const IsoClass& M, const IsoClass& L) const;
  // g^L_{M,N}(q) via the Riedtmann formula; throws if the result is not a polynomial
  QPoly hall_polynomial(const IsoClass& M, const IsoClass& N, const IsoClass& L) const;

  // structure constants in v (q = v^2), memoized
  ScalarRat hall_v(const IsoClass& M, const IsoClass& N, const IsoClass& L) const;
  ScalarRat aut_v(const IsoClass& M) const;
  ScalarRat gamma_v(const IsoClass& N, const IsoClass& M, const IsoClass& V,
                    const IsoClass& W) const;
  // all L with g^L_{M,N} != 0
  std::vector<std::pair<IsoClass, ScalarRat>> hall_product_terms(const IsoClass& M,
                                                                 const IsoClass& N) const;

 private:
  const QuiverData& qd_;
  int budget_;
  mutable std::mutex mu_;
  mutable std::map<int, std::unique_ptr<RepCatalog>> cats_;
  mutable std::map<std::tuple<IsoClass, IsoClass, IsoClass>, ScalarRat> hall_memo_;
  mutable std::map<std::tuple<IsoClass, IsoClass, IsoClass, IsoClass>, ScalarRat> gamma_memo_;
  mutable std::map<std::tuple<IsoClass, IsoClass, IsoClass>, QPoly> ext_memo_;

  void check_budget(const IntVec& d) const;
};

}  // namespace qh
