#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qh {

using IntVec = std::vector<int>;
using IntMat = std::vector<IntVec>;

// Simply-laced Dynkin data. Vertices are 0-based internally, printed 1-based.
struct DynkinData {
  char type = 'A';
  int rank = 0;
  IntMat cartan;
  std::vector<IntVec> nbrs;
  int num_pos_roots = 0;
  int coxeter = 0;
  IntVec star;

  static DynkinData make(char type, int rank);
  static DynkinData parse(const std::string& name);  // "A3", "D4", "E6"
  std::string name() const { return std::string(1, type) + std::to_string(rank); }
  bool adjacent(int i, int j) const { return cartan[i][j] == -1; }
  // apply simple reflection s_i to a vector in the root basis
  IntVec reflect(int i, IntVec beta) const;
  int pairing(const IntVec& a, const IntVec& b) const;  // symmetric (a,b)
};

// Height function values; parity function = eps mod 2.
bool valid_height(const DynkinData& g, const IntVec& eps);
bool is_sink(const DynkinData& g, const IntVec& eps, int i);

// Reduced word of w0 adapted to eps (letters 0-based).
IntVec adapted_word(const DynkinData& g, const IntVec& eps);
bool is_adapted(const DynkinData& g, const IntVec& eps, const IntVec& word);
bool is_reduced(const DynkinData& g, const IntVec& word);
// positive roots beta_t = s_{i_1}...s_{i_{t-1}}(alpha_{i_t})
std::vector<IntVec> roots_of_word(const DynkinData& g, const IntVec& word);

struct Var {
  int i = 0, p = 0;
  auto operator<=>(const Var&) const = default;
};

class AdmissibleSequence {
 public:
  AdmissibleSequence(DynkinData g, IntVec eps, IntVec word = {});
  const DynkinData& dynkin() const { return g_; }
  const IntVec& eps() const { return eps_; }
  const IntVec& word() const { return word_; }
  int length() const { return static_cast<int>(word_.size()); }
  Var at(int k) const;
  std::vector<Var> window(int a, int b) const;
  bool in_parity(int i, int p) const;

 private:
  DynkinData g_;
  IntVec eps_, word_;
  std::vector<Var> base_;  // k = 1..l
};

class Monomial {
 public:
  using Entry = std::pair<Var, int>;
  Monomial() = default;
  static Monomial Y(int i, int p, int e = 1);
  static Monomial from_map(const std::map<Var, int>& m);

  const std::vector<Entry>& entries() const { return u_; }
  int exp(const Var& v) const;
  bool is_unit() const { return u_.empty(); }
  bool is_dominant() const;
  Monomial operator*(const Monomial& o) const;
  Monomial inverse() const;
  Monomial pow(int k) const;
  Monomial operator/(const Monomial& o) const { return *this * o.inverse(); }
  int min_p() const;
  int max_p() const;

  auto operator<=>(const Monomial&) const = default;
  std::string str(const char* sym = "Y") const;  // Y_{1,0}Y_{1,2}^-1 ; "1" for unit
  static Monomial parse(const std::string& s);

 private:
  std::vector<Entry> u_;  // sorted, nonzero exponents
};

Monomial a_monomial(const DynkinData& g, int i, int p);
Monomial a_monomial(const AdmissibleSequence& s, int i, int p);  // parity checked
Monomial kr_monomial(int i, int p, int k);

struct NakajimaResult {
  bool solvable = false;           // m2/m1 is a product of A's
  bool leq = false;                // all certificate exponents >= 0
  std::map<Var, int> certificate;  // keyed by A-index (i,s): m2/m1 = prod A_{i,s}^{c}
};
NakajimaResult nakajima_leq(const DynkinData& g, const Monomial& m1, const Monomial& m2);
inline bool nakajima_less(const DynkinData& g, const Monomial& m1, const Monomial& m2) {
  return m1 != m2 && nakajima_leq(g, m1, m2).leq;
}

struct IBox {
  int a = 0, b = 0;
  int index = 0;
  int card = 0;
  bool operator==(const IBox&) const = default;
  std::string str() const;
};

struct IBoxChain {
  int root = 0;
  std::string word;
  std::vector<IBox> boxes;
  IntVec added;  // position added at each step (root first)
  int lo = 0, hi = 0;
};

IBox make_ibox(const AdmissibleSequence& s, int a, int b);
IBoxChain chain_from_expansion(const AdmissibleSequence& s, int root, const std::string& word,
                               std::optional<std::pair<int, int>> window = std::nullopt);
IBoxChain canonical_chain(const AdmissibleSequence& s, int a, int b);
bool chain_is_valid(const AdmissibleSequence& s, const IBoxChain& c);
Monomial ibox_monomial(const AdmissibleSequence& s, const IBox& box);

}  // namespace qh
