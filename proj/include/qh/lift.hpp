#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qh/qtchar.hpp"
#include "qh/sdhall.hpp"

namespace qh {

// Exchange relation L(m1) L(m2) = sum_r c_r K_r prod_{m in R_r} L(m) checked in the
// semi-derived Hall algebra, with K_r solved from degrees and c_r solved exactly.
struct LiftReport {
  bool ok = false;           // exact identity with the solved coefficients
  bool pure_powers = false;  // every c_r = t^{a_r}, a_r in (1/2)Z
  bool specializes = false;  // same coefficients give the identity of (q,t)-characters
  std::vector<ScalarRat> coeffs;
  std::vector<std::optional<int>> half_exps;  // 2 a_r
  std::vector<KMonomial> kfactors;
  std::string lhs, rhs, error;
  std::string json() const;
};

LiftReport verify_exchange_lift(const SDHAlgebra& A, const QTChar& C,
                                const std::pair<Monomial, Monomial>& lhs,
                                const std::vector<std::vector<Monomial>>& rhs);

// Same check on the (q,t)-character side only.
LiftReport verify_exchange_qt(const QTChar& C, const std::pair<Monomial, Monomial>& lhs,
                              const std::vector<std::vector<Monomial>>& rhs);

struct TSystemReport {
  int i = 0, k = 0, p = 0;
  LiftReport semi;     // W_{k,p}W_{k,p+2} = t^a W_{k-1,p+2}W_{k+1,p} + t^b K prod_j W^j_{k,p+1}
  LiftReport quantum;  // W_{k,p}W_{k,p+2} = t^a W_{k+1,p}W_{k-1,p+2} + t^b prod_j W^j_{k,p+1}
  bool ok() const { return semi.ok && semi.pure_powers && semi.specializes; }
  std::string json() const;
};

TSystemReport verify_tsystem_lift(const SDHAlgebra& A, const QTChar& C, int i, int k, int p);

}  // namespace qh
