#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qh/cartan.hpp"
#include "qh/derivedcat.hpp"
#include "qh/lift.hpp"
#include "qh/qtchar.hpp"
#include "qh/scalars.hpp"
#include "qh/sdhall.hpp"

namespace qh {

// Laurent polynomial in a quantum torus X^a X^b = t^{a^T L b / 2} X^{a+b}; t^{1/2} = v^{1/2}.
class QLaurent {
 public:
  QLaurent() = default;
  static QLaurent monomial(const IntVec& a, const ScalarRat& c = ScalarRat(1));
  static QLaurent unit_var(int n, int i) {
    IntVec a(n, 0);
    a[i] = 1;
    return monomial(a);
  }
  const std::map<IntVec, ScalarRat>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  void add(const IntVec& a, const ScalarRat& c);
  QLaurent operator+(const QLaurent& o) const;
  QLaurent operator-(const QLaurent& o) const;
  QLaurent operator*(const ScalarRat& c) const;
  bool operator==(const QLaurent& o) const { return t_ == o.t_; }
  // t^{1/2} -> 1; every coefficient must be Laurent
  std::map<IntVec, mpq_class> at_t_one() const;
  std::string str() const;

 private:
  std::map<IntVec, ScalarRat> t_;
};

class QTorusN {
 public:
  explicit QTorusN(IntMat lambda) : L_(std::move(lambda)) {}
  int rank() const { return static_cast<int>(L_.size()); }
  const IntMat& lambda() const { return L_; }
  int form(const IntVec& a, const IntVec& b) const;  // a^T L b
  QLaurent mul(const QLaurent& x, const QLaurent& y) const;
  // q with d*q = p exactly; nullopt if d does not divide p on the left
  std::optional<QLaurent> left_divide(const QLaurent& d, const QLaurent& p) const;

 private:
  IntMat L_;
};

enum class VertexKind { Cluster, K };

struct SeedVertex {
  VertexKind kind = VertexKind::Cluster;
  bool frozen = false;
  Var ip;             // cluster vertex: (i,p) of the window
  int j = 0, z = 0;   // K-vertex S~_{j,z}
  std::string label;  // V(i,p) label or "S~_{j,z}" (1-based j)
};

class IceQuiver {
 public:
  int size() const { return static_cast<int>(v_.size()); }
  const SeedVertex& vertex(int u) const { return v_[u]; }
  SeedVertex& vertex(int u) { return v_[u]; }
  const IntMat& B() const { return B_; }
  int b(int x, int y) const { return B_[x][y]; }  // #(x->y) - #(y->x)
  int add_vertex(const SeedVertex& v);
  void add_arrow(int x, int y, int mult = 1);
  void set_B(IntMat B) { B_ = std::move(B); }
  bool mutable_at(int u) const { return !v_[u].frozen; }
  std::vector<int> mutable_vertices() const;
  int find_label(const std::string& label) const;  // -1 if absent
  // no loops, skew-symmetric
  bool valid() const;

 private:
  std::vector<SeedVertex> v_;
  IntMat B_;
};

enum class VertexColor { Green, Red, Neither, Both };
std::string color_name(VertexColor c);

struct QuantumSeed {
  IceQuiver Q;
  IntMat Lambda;
  IntMat Lambda0;                      // root Lambda: the torus the X live in
  IntMat C;                            // C[f][u] = b_{f',u}, framing vertex f' of the f-th mutable vertex
  std::vector<int> framed;             // mutable vertex carrying framing row f
  std::vector<IntVec> g;               // g-vectors in Z^{vertices}
  std::vector<Monomial> mono;          // dominant monomial of the variable (1 on K-vertices)
  std::vector<GradingDegree> deg;      // empty unless graded
  std::vector<QLaurent> X;             // variables in the initial torus; empty unless tracked
  std::vector<int> history;            // mutation sequence from the root

  int size() const { return Q.size(); }
  bool graded() const { return !deg.empty(); }
  bool tracks_X() const { return !X.empty(); }
};

struct SeedOptions {
  bool track_X = true;
};

// Q^{[a,b],s}: vertices s.at(a..b), repetition arrows, frozen = lowest p per column,
// Lambda = N(m_u, m_v) on column KR monomials.
QuantumSeed build_window_seed(const AdmissibleSequence& s, int a, int b, SeedOptions opt = {});
// Happel labels, S~_{j,z} -> (i,p) for mutable V(i,p) = P_j[z+1], zero-extended Lambda, degrees.
QuantumSeed extend_tilde(const QuantumSeed& seed, const DerivedCat& dc);
// Labels and degrees only (no K-vertices).
void assign_labels(QuantumSeed& seed, const DerivedCat& dc);

QuantumSeed seed_from_matrices(const IntMat& B, const IntMat& Lambda, const std::vector<bool>& frozen,
                               SeedOptions opt = {});

// d_j with sum_k b_kj lambda_ki = d_j delta_ij; nullopt if not compatible
std::optional<std::map<int, int>> compatibility(const QuantumSeed& seed);

// E_k (column k: e_kk = -1, e_ik = max(0, -b_ik))
IntMat mutation_matrix(const IntMat& B, int k);
IntMat mutate_B(const IntMat& B, int k);
IntMat mutate_Lambda(const IntMat& Lambda, const IntMat& B, int k);

QuantumSeed mutate(const QuantumSeed& seed, int k);

VertexColor green_red(const QuantumSeed& seed, int k);     // framing
VertexColor green_red_K(const QuantumSeed& seed, int k);   // arrows to K-vertices only

// m_k(e') by the green/red product rule
Monomial tracked_monomial(const QuantumSeed& seed, int k);
// m from g-vector: prod m_{u}(e_0)^{g_u}
Monomial monomial_from_g(const QuantumSeed& root, const IntVec& g);

struct HomogeneityReport {
  bool ok = true;
  std::vector<std::string> failures;
};
HomogeneityReport homogeneity_audit(const QuantumSeed& seed);

// g-vectors recomputed as Z^J-degrees of variables with principal coefficients in the framed quiver
class FramedOracle {
 public:
  explicit FramedOracle(const QuantumSeed& root);
  void mutate(int k);
  IntVec g_vector(int u) const;
  bool homogeneous(int u) const;

 private:
  int n_ = 0, nf_ = 0;
  IntMat B_;                  // (n + nf) square
  std::vector<IntVec> ydeg_;  // degree of framing variable f
  std::vector<QLaurent> x_;   // commutative Laurent polys in n + nf variables
  IntVec degree_of(const IntVec& expo) const;
};

// Exchange relation of a mutation at k of `seed`, seen through theta
struct ThetaStep {
  int k = -1;
  bool ok = false;
  LiftReport lift;
  std::vector<KMonomial> expected_K;  // products of K_{S_j,z} over the K-vertices of each term
  std::vector<ScalarRat> cluster_coeffs;
  bool k_match = false, coeff_match = false, square = false, degree_match = false;
  Monomial before, after;
  std::string error;
  std::string json() const;
};
ThetaStep theta_check(const SDHAlgebra& A, const QTChar& C, const QuantumSeed& seed, int k);

struct ThetaWalk {
  std::vector<ThetaStep> steps;
  bool initial_ok = false;  // X_u -> L_v(m_u) degrees at the root
  bool ok() const;
  std::string json() const;
};
ThetaWalk theta_walk(const SDHAlgebra& A, const QTChar& C, const QuantumSeed& root,
                     const std::vector<int>& ks);

// Chains of i-boxes
struct ChainSeed {
  QuantumSeed seed;
  IBoxChain chain;
  std::vector<int> holder;  // holder[t]: vertex carrying the box of step t
  std::vector<int> mutations;
  bool boxes_ok = false;  // every holder's monomial equals its box monomial
};
// Seed of the chain from the canonical window seed by adjacent step swaps.
ChainSeed chain_seed(const AdmissibleSequence& s, const DerivedCat* dc, int root, const std::string& word,
                     SeedOptions opt = {});
// Nonzero entries of B~ keyed by "c<step>" for chain vertices and the label for K-vertices.
std::map<std::pair<std::string, std::string>, int> chain_matrix(const ChainSeed& cs);
std::vector<std::string> chain_mutable_keys(const ChainSeed& cs);
// Entries of `big` in the columns of the mutable vertices of `small` that differ from `small`.
std::vector<std::string> stabilization_diff(const ChainSeed& small, const ChainSeed& big);

// Serialization
std::string seed_dot(const QuantumSeed& seed, const std::string& name = "Q");
std::string seed_json(const QuantumSeed& seed);

struct DotGraph {
  struct Node {
    std::string id, label;
    bool frozen = false, K = false;
  };
  std::vector<Node> nodes;
  std::map<std::pair<std::string, std::string>, int> edges;  // by node id
};
DotGraph parse_dot(const std::string& text);
DotGraph restrict_graph(const DotGraph& g, const std::vector<std::string>& labels);

struct CompareResult {
  bool ok = false;
  std::vector<std::string> diff;
};
// label-preserving isomorphism (backtracking over repeated labels); kinds and multiplicities must agree
CompareResult compare_graphs(const DotGraph& artifact, const DotGraph& golden);
CompareResult golden_compare(const std::string& artifact_dot, const std::string& golden_dot,
                             bool restrict_golden = false, bool restrict_artifact = false);

}  // namespace qh
