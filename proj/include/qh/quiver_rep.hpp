#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qh/cartan.hpp"
#include "qh/gf.hpp"

namespace qh {

struct Quiver {
  int n = 0;
  std::vector<std::pair<int, int>> arrows;  // (source, target)

  // arrow i -> j whenever i ~ j and eps_i > eps_j
  static Quiver from_height(const DynkinData& g, const IntVec& eps);
  int euler(const IntVec& d, const IntVec& e) const;  // <d,e>
  int sym(const IntVec& d, const IntVec& e) const { return euler(d, e) + euler(e, d); }
  IntVec proj_dim(int j) const;  // paths starting at j
  IntVec inj_dim(int j) const;   // paths ending at j
  Quiver reflected(int k) const;
};

struct Rep {
  IntVec dim;
  std::vector<Mat> maps;  // maps[a] : dim[src] -> dim[tgt], a dim[tgt] x dim[src] matrix
  int total() const;
};

Rep zero_rep(const Quiver& Q);
Rep simple_rep(const Quiver& Q, int i);
Rep direct_sum(const Rep& a, const Rep& b);
bool is_rep(const Quiver& Q, const Rep& r);

// Offsets of the unknown blocks phi_i (dimY_i x dimX_i, row-major) in a vectorized morphism.
std::vector<int> hom_offsets(const Rep& X, const Rep& Y);
// Columns span Hom(X, Y) inside the vectorized morphism space.
Mat hom_space(const GF& F, const Quiver& Q, const Rep& X, const Rep& Y);
int hom_dim(const GF& F, const Quiver& Q, const Rep& X, const Rep& Y);
// Unpack column c of a hom_space basis (or an arbitrary vector) into vertex matrices.
std::vector<Mat> unpack_morphism(const Rep& X, const Rep& Y, const std::vector<int>& vec);
bool is_morphism(const GF& F, const Quiver& Q, const Rep& X, const Rep& Y,
                 const std::vector<Mat>& phi);

// BGP reflection at a source k of Q: cokernel construction, result lives on Q.reflected(k).
Rep reflect_source(const GF& F, const Quiver& Q, int k, const Rep& V);

// Iso-class: multiplicity of each indecomposable (indexed by positive root).
struct IsoClass {
  std::vector<int> mult;
  auto operator<=>(const IsoClass&) const = default;
  bool is_zero() const;
};

// Indecomposables of the Dynkin quiver Q_eps and their Hom data; field-independent part.
class QuiverData {
 public:
  explicit QuiverData(const AdmissibleSequence& s);
  const AdmissibleSequence& seq() const { return seq_; }
  const Quiver& quiver() const { return Q_; }
  int num_roots() const { return static_cast<int>(roots_.size()); }
  const IntVec& root(int r) const { return roots_[r]; }
  int root_index(const IntVec& dim) const;  // -1 if not a root
  int proj_root(int j) const { return proj_[j]; }
  int inj_root(int j) const { return inj_[j]; }
  int simple_root(int j) const { return simple_[j]; }
  int hom(int r, int s) const { return hom_[r][s]; }  // dim Hom(X_r, X_s)
  int ext(int r, int s) const { return hom_[r][s] - Q_.euler(roots_[r], roots_[s]); }
  std::string label(int r) const;
  std::string label(const IsoClass& c) const;
  IsoClass parse_label(const std::string& s) const;
  IsoClass single(int r, int m = 1) const;
  IsoClass add(const IsoClass& a, const IsoClass& b) const;
  IntVec dim(const IsoClass& c) const;
  int euler(const IsoClass& a, const IsoClass& b) const { return Q_.euler(dim(a), dim(b)); }
  int dim_hom(const IsoClass& a, const IsoClass& b) const;
  int dim_ext(const IsoClass& a, const IsoClass& b) const;
  int dim_end(const IsoClass& a) const { return dim_hom(a, a); }
  // Iso-classes of the given dimension vector (Kostant partitions).
  std::vector<IsoClass> classes_of_dim(const IntVec& d) const;
  std::vector<IsoClass> classes_up_to(int total) const;

 private:
  AdmissibleSequence seq_;
  Quiver Q_;
  std::vector<IntVec> roots_;
  IntVec proj_, inj_, simple_;
  IntMat hom_;
};

// Concrete F_q realizations of the indecomposables of QuiverData.
class RepCatalog {
 public:
  RepCatalog(const QuiverData& qd, int q);
  const QuiverData& data() const { return qd_; }
  const GF& field() const { return F_; }
  int q() const { return F_.q(); }
  const Rep& indec(int r) const { return indec_[r]; }
  Rep realize(const IsoClass& c) const;
  IsoClass classify(const Rep& M) const;

 private:
  const QuiverData& qd_;
  const GF& F_;
  std::vector<Rep> indec_;
  std::vector<std::vector<long long>> hinv_num_;  // H^{-1} scaled: unitriangular so integral
};

}  // namespace qh
