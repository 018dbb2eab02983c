#pragma once

#include <mutex>
#include <vector>

#include "qh/cartan.hpp"

namespace qh {

// Coefficients a_ij(m) of the inverse quantum Cartan matrix ((q+q^-1)I - J)^{-1} = sum_m a(m) q^m.
class InvQCartan {
 public:
  explicit InvQCartan(const DynkinData& g, int trunc = 16);
  InvQCartan(const InvQCartan& o);

  const DynkinData& dynkin() const { return g_; }
  int trunc() const;
  int a(int i, int j, int m) const;  // auto-extends; 0 for m <= 0
  // checks A(q) * table = Id up to q^trunc
  bool verify() const;

  int n_form(int i, int p, int j, int s) const;
  int n_form(const Var& x, const Var& y) const { return n_form(x.i, x.p, y.i, y.p); }
  int n_pairing(const Monomial& m1, const Monomial& m2) const;

 private:
  DynkinData g_;
  mutable std::mutex mu_;
  mutable std::vector<IntMat> table_;  // table_[m], m = 0..trunc
  void extend_locked(int m) const;
};

}  // namespace qh
