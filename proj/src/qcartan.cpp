#include "qh/qcartan.hpp"

namespace qh {

InvQCartan::InvQCartan(const DynkinData& g, int trunc) : g_(g) {
  table_.push_back(IntMat(g.rank, IntVec(g.rank, 0)));
  extend_locked(trunc);
}

InvQCartan::InvQCartan(const InvQCartan& o) : g_(o.g_) {
  std::lock_guard lk(o.mu_);
  table_ = o.table_;
}

void InvQCartan::extend_locked(int m) const {
  int n = g_.rank;
  while (static_cast<int>(table_.size()) <= m) {
    int k = static_cast<int>(table_.size());
    // a(k) = delta_{k,1} I + J a(k-1) - a(k-2)
    IntMat next(n, IntVec(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int v = (k == 1 && i == j) ? 1 : 0;
        for (int l : g_.nbrs[i]) v += table_[k - 1][l][j];
        if (k >= 2) v -= table_[k - 2][i][j];
        next[i][j] = v;
      }
    table_.push_back(std::move(next));
  }
}

int InvQCartan::trunc() const {
  std::lock_guard lk(mu_);
  return static_cast<int>(table_.size()) - 1;
}

int InvQCartan::a(int i, int j, int m) const {
  if (m <= 0) return 0;
  std::lock_guard lk(mu_);
  extend_locked(m);
  return table_[m][i][j];
}

bool InvQCartan::verify() const {
  int M = trunc(), n = g_.rank;
  // coefficient of q^k in ((q + q^-1) I - J) * Atilde, for 0 <= k < M
  for (int k = 0; k < M; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int c = a(i, j, k - 1) + a(i, j, k + 1);
        for (int l : g_.nbrs[i]) c -= a(l, j, k);
        if (c != (k == 0 && i == j ? 1 : 0)) return false;
      }
  return true;
}

int InvQCartan::n_form(int i, int p, int j, int s) const {
  if (p < s) return a(i, j, s - p + 1) - a(i, j, s - p - 1);
  if (p > s) return a(i, j, p - s - 1) - a(i, j, p - s + 1);
  return 0;
}

int InvQCartan::n_pairing(const Monomial& m1, const Monomial& m2) const {
  int r = 0;
  for (auto& [x, u] : m1.entries())
    for (auto& [y, w] : m2.entries()) r += u * w * n_form(x, y);
  return r;
}

}  // namespace qh
