#include "qh/cartan.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

#include "qh/scalars.hpp"

namespace qh {

DynkinData DynkinData::make(char type, int n) {
  DynkinData g;
  g.type = type;
  g.rank = n;
  std::vector<std::pair<int, int>> edges;
  switch (type) {
    case 'A':
      if (n < 1) throw AlgebraError("A_n needs n >= 1");
      for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
      break;
    case 'D':
      if (n < 4) throw AlgebraError("D_n needs n >= 4");
      for (int i = 0; i + 2 < n - 1; ++i) edges.push_back({i, i + 1});
      edges.push_back({n - 3, n - 2});
      edges.push_back({n - 3, n - 1});
      break;
    case 'E':
      if (n < 6 || n > 8) throw AlgebraError("E_n needs 6 <= n <= 8");
      edges = {{0, 2}, {2, 3}, {1, 3}, {3, 4}};
      for (int i = 4; i + 1 < n; ++i) edges.push_back({i, i + 1});
      break;
    default:
      throw AlgebraError(std::string("unsupported Dynkin type ") + type);
  }
  g.cartan.assign(n, IntVec(n, 0));
  g.nbrs.assign(n, {});
  for (int i = 0; i < n; ++i) g.cartan[i][i] = 2;
  for (auto [i, j] : edges) {
    g.cartan[i][j] = g.cartan[j][i] = -1;
    g.nbrs[i].push_back(j);
    g.nbrs[j].push_back(i);
  }
  for (auto& v : g.nbrs) std::sort(v.begin(), v.end());

  // count positive roots by closing the simple roots under reflections
  std::vector<IntVec> roots;
  for (int i = 0; i < n; ++i) {
    IntVec e(n, 0);
    e[i] = 1;
    roots.push_back(e);
  }
  for (size_t k = 0; k < roots.size(); ++k)
    for (int i = 0; i < n; ++i) {
      IntVec r = g.reflect(i, roots[k]);
      if (std::all_of(r.begin(), r.end(), [](int x) { return x >= 0; }) &&
          std::find(roots.begin(), roots.end(), r) == roots.end())
        roots.push_back(r);
    }
  g.num_pos_roots = static_cast<int>(roots.size());
  g.coxeter = 2 * g.num_pos_roots / n;

  g.star.resize(n);
  for (int i = 0; i < n; ++i) g.star[i] = i;
  if (type == 'A') {
    for (int i = 0; i < n; ++i) g.star[i] = n - 1 - i;
  } else if (type == 'D' && n % 2 == 1) {
    std::swap(g.star[n - 2], g.star[n - 1]);
  } else if (type == 'E' && n == 6) {
    g.star = {5, 1, 4, 3, 2, 0};
  }
  return g;
}

DynkinData DynkinData::parse(const std::string& name) {
  static const std::regex re("^\\s*([ADE])_?(\\d+)\\s*$");
  std::smatch m;
  if (!std::regex_match(name, m, re)) throw AlgebraError("bad Dynkin type '" + name + "'");
  return make(m[1].str()[0], std::stoi(m[2].str()));
}

IntVec DynkinData::reflect(int i, IntVec beta) const {
  int c = 0;
  for (int j = 0; j < rank; ++j) c += cartan[i][j] * beta[j];
  beta[i] -= c;
  return beta;
}

int DynkinData::pairing(const IntVec& a, const IntVec& b) const {
  int s = 0;
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) s += a[i] * cartan[i][j] * b[j];
  return s;
}

bool valid_height(const DynkinData& g, const IntVec& eps) {
  if (static_cast<int>(eps.size()) != g.rank) return false;
  for (int i = 0; i < g.rank; ++i)
    for (int j : g.nbrs[i])
      if (std::abs(eps[i] - eps[j]) != 1) return false;
  return true;
}

bool is_sink(const DynkinData& g, const IntVec& eps, int i) {
  for (int j : g.nbrs[i])
    if (eps[j] < eps[i]) return false;
  return true;
}

IntVec adapted_word(const DynkinData& g, const IntVec& eps0) {
  if (!valid_height(g, eps0)) throw AlgebraError("invalid height function");
  // vertex i is used (eps_{i*} - eps_i + h)/2 times
  IntVec eps = eps0, w, quota(g.rank);
  for (int i = 0; i < g.rank; ++i) quota[i] = (eps0[g.star[i]] - eps0[i] + g.coxeter) / 2;
  while (static_cast<int>(w.size()) < g.num_pos_roots) {
    IntVec batch;
    for (int i = 0; i < g.rank; ++i)
      if (quota[i] > 0 && is_sink(g, eps, i)) batch.push_back(i);
    if (batch.empty()) throw AlgebraError("adapted_word: no admissible sink");
    for (int i : batch) {
      w.push_back(i);
      eps[i] += 2;
      --quota[i];
    }
  }
  return w;
}

bool is_adapted(const DynkinData& g, const IntVec& eps0, const IntVec& word) {
  IntVec eps = eps0;
  for (int i : word) {
    if (!is_sink(g, eps, i)) return false;
    eps[i] += 2;
  }
  return true;
}

std::vector<IntVec> roots_of_word(const DynkinData& g, const IntVec& word) {
  std::vector<IntVec> out;
  for (size_t t = 0; t < word.size(); ++t) {
    IntVec b(g.rank, 0);
    b[word[t]] = 1;
    for (int s = static_cast<int>(t) - 1; s >= 0; --s) b = g.reflect(word[s], b);
    out.push_back(b);
  }
  return out;
}

bool is_reduced(const DynkinData& g, const IntVec& word) {
  for (auto& b : roots_of_word(g, word))
    if (std::any_of(b.begin(), b.end(), [](int x) { return x < 0; })) return false;
  return true;
}

// ---------------- admissible sequence

AdmissibleSequence::AdmissibleSequence(DynkinData g, IntVec eps, IntVec word)
    : g_(std::move(g)), eps_(std::move(eps)), word_(std::move(word)) {
  if (!valid_height(g_, eps_)) throw AlgebraError("invalid height function");
  if (word_.empty()) word_ = adapted_word(g_, eps_);
  if (static_cast<int>(word_.size()) != g_.num_pos_roots || !is_reduced(g_, word_) ||
      !is_adapted(g_, eps_, word_))
    throw AlgebraError("word is not a reduced expression of w0 adapted to the height function");
  IntVec run = eps_;
  for (int i : word_) {
    base_.push_back({i, run[i]});
    run[i] += 2;
  }
}

Var AdmissibleSequence::at(int k) const {
  int l = length();
  if (k >= 1) {
    int q = (k - 1) / l, r = (k - 1) % l;
    Var v = base_[r];
    for (int t = 0; t < q; ++t) v.i = g_.star[v.i];
    v.p += q * g_.coxeter;
    return v;
  }
  // walk down from k = 0
  IntVec eta = eps_;
  Var v;
  for (int j = 0; j >= k; --j) {
    int ik = g_.star[at(j + l).i];
    eta[ik] -= 2;
    v = {ik, eta[ik]};
  }
  return v;
}

std::vector<Var> AdmissibleSequence::window(int a, int b) const {
  std::vector<Var> out;
  for (int k = a; k <= b; ++k) out.push_back(at(k));
  return out;
}

bool AdmissibleSequence::in_parity(int i, int p) const {
  return ((p - eps_[i]) % 2 + 2) % 2 == 0;
}

// ---------------- monomials

Monomial Monomial::Y(int i, int p, int e) {
  Monomial m;
  if (e != 0) m.u_.push_back({{i, p}, e});
  return m;
}

Monomial Monomial::from_map(const std::map<Var, int>& mp) {
  Monomial m;
  for (auto& [v, e] : mp)
    if (e != 0) m.u_.push_back({v, e});
  return m;
}

int Monomial::exp(const Var& v) const {
  auto it = std::lower_bound(u_.begin(), u_.end(), v,
                             [](const Entry& e, const Var& x) { return e.first < x; });
  return it != u_.end() && it->first == v ? it->second : 0;
}

bool Monomial::is_dominant() const {
  return std::all_of(u_.begin(), u_.end(), [](const Entry& e) { return e.second > 0; });
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.u_.reserve(u_.size() + o.u_.size());
  size_t i = 0, j = 0;
  while (i < u_.size() || j < o.u_.size()) {
    if (j == o.u_.size() || (i < u_.size() && u_[i].first < o.u_[j].first)) {
      r.u_.push_back(u_[i++]);
    } else if (i == u_.size() || o.u_[j].first < u_[i].first) {
      r.u_.push_back(o.u_[j++]);
    } else {
      int e = u_[i].second + o.u_[j].second;
      if (e != 0) r.u_.push_back({u_[i].first, e});
      ++i;
      ++j;
    }
  }
  return r;
}

Monomial Monomial::inverse() const {
  Monomial r = *this;
  for (auto& e : r.u_) e.second = -e.second;
  return r;
}

Monomial Monomial::pow(int k) const {
  if (k == 0) return {};
  Monomial r = *this;
  for (auto& e : r.u_) e.second *= k;
  return r;
}

int Monomial::min_p() const {
  int m = u_.front().first.p;
  for (auto& e : u_) m = std::min(m, e.first.p);
  return m;
}

int Monomial::max_p() const {
  int m = u_.front().first.p;
  for (auto& e : u_) m = std::max(m, e.first.p);
  return m;
}

std::string Monomial::str(const char* sym) const {
  if (u_.empty()) return "1";
  std::ostringstream os;
  // order by p then i for readability
  std::vector<Entry> v = u_;
  std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) {
    return std::pair(a.first.p, a.first.i) < std::pair(b.first.p, b.first.i);
  });
  for (auto& [var, e] : v) {
    os << sym << "_{" << var.i + 1 << "," << var.p << "}";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

Monomial Monomial::parse(const std::string& s) {
  static const std::regex tok("[YyZz]_\\{(\\d+),(-?\\d+)\\}(\\^(-?\\d+))?");
  if (s == "1" || s.empty()) return {};
  std::map<Var, int> mp;
  size_t pos = 0;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), tok); it != std::sregex_iterator();
       ++it) {
    if (static_cast<size_t>(it->position()) != pos) throw AlgebraError("bad monomial '" + s + "'");
    pos = it->position() + it->length();
    int e = (*it)[4].matched ? std::stoi((*it)[4].str()) : 1;
    mp[{std::stoi((*it)[1].str()) - 1, std::stoi((*it)[2].str())}] += e;
  }
  if (pos != s.size()) throw AlgebraError("bad monomial '" + s + "'");
  return from_map(mp);
}

Monomial a_monomial(const DynkinData& g, int i, int p) {
  std::map<Var, int> mp;
  mp[{i, p - 1}] += 1;
  mp[{i, p + 1}] += 1;
  for (int j : g.nbrs[i]) mp[{j, p}] -= 1;
  return Monomial::from_map(mp);
}

Monomial a_monomial(const AdmissibleSequence& s, int i, int p) {
  if (!s.in_parity(i, p - 1)) throw AlgebraError("A_{i,p}: (i,p-1) violates parity");
  return a_monomial(s.dynkin(), i, p);
}

Monomial kr_monomial(int i, int p, int k) {
  if (k < 0) throw AlgebraError("kr_monomial: negative length");
  std::map<Var, int> mp;
  for (int t = 0; t < k; ++t) mp[{i, p + 2 * t}] = 1;
  return Monomial::from_map(mp);
}

NakajimaResult nakajima_leq(const DynkinData& g, const Monomial& m1, const Monomial& m2) {
  NakajimaResult res;
  Monomial r = m2 / m1;
  if (r.is_unit()) {
    res.solvable = res.leq = true;
    return res;
  }
  int floor_s = r.min_p() + 1;
  while (!r.is_unit()) {
    Var top = r.entries().front().first;
    int e = r.entries().front().second;
    for (auto& [v, x] : r.entries())
      if (v.p > top.p) {
        top = v;
        e = x;
      }
    int s = top.p - 1;
    if (s < floor_s) return res;
    res.certificate[{top.i, s}] += e;
    r = r / a_monomial(g, top.i, s).pow(e);
  }
  res.solvable = true;
  res.leq = std::all_of(res.certificate.begin(), res.certificate.end(),
                        [](auto& kv) { return kv.second >= 0; });
  return res;
}

// ---------------- i-boxes

std::string IBox::str() const {
  std::ostringstream os;
  if (a == b)
    os << "[" << a << "]";
  else
    os << "[" << a << "," << b << "]";
  os << "_" << index + 1;
  return os.str();
}

IBox make_ibox(const AdmissibleSequence& s, int a, int b) {
  Var va = s.at(a), vb = s.at(b);
  if (va.i != vb.i || a > b) throw AlgebraError("not an i-box");
  int card = 0;
  for (int k = a; k <= b; ++k)
    if (s.at(k).i == va.i) ++card;
  return {a, b, va.i, card};
}

namespace {

IBox box_after_left(const AdmissibleSequence& s, int a, int b) {
  int i = s.at(a).i, last = a;
  for (int k = a; k <= b; ++k)
    if (s.at(k).i == i) last = k;
  return make_ibox(s, a, last);
}

IBox box_after_right(const AdmissibleSequence& s, int a, int b) {
  int i = s.at(b).i, first = b;
  for (int k = b; k >= a; --k)
    if (s.at(k).i == i) first = k;
  return make_ibox(s, first, b);
}

}  // namespace

IBoxChain chain_from_expansion(const AdmissibleSequence& s, int root, const std::string& word,
                               std::optional<std::pair<int, int>> window) {
  IBoxChain c;
  c.root = root;
  c.word = word;
  c.lo = c.hi = root;
  auto inside = [&](int k) { return !window || (k >= window->first && k <= window->second); };
  if (!inside(root)) throw AlgebraError("chain root outside window");
  c.boxes.push_back(make_ibox(s, root, root));
  c.added.push_back(root);
  for (char ch : word) {
    if (ch == 'L' || ch == 'l') {
      --c.lo;
      if (!inside(c.lo)) throw AlgebraError("expansion leaves the window");
      c.boxes.push_back(box_after_left(s, c.lo, c.hi));
      c.added.push_back(c.lo);
    } else if (ch == 'R' || ch == 'r') {
      ++c.hi;
      if (!inside(c.hi)) throw AlgebraError("expansion leaves the window");
      c.boxes.push_back(box_after_right(s, c.lo, c.hi));
      c.added.push_back(c.hi);
    } else {
      throw AlgebraError(std::string("bad expansion letter ") + ch);
    }
  }
  return c;
}

IBoxChain canonical_chain(const AdmissibleSequence& s, int a, int b) {
  if (a > b) throw AlgebraError("empty window");
  return chain_from_expansion(s, b, std::string(b - a, 'L'), std::pair(a, b));
}

bool chain_is_valid(const AdmissibleSequence& s, const IBoxChain& c) {
  if (c.boxes.size() != c.added.size() || c.boxes.empty() || c.added[0] != c.root) return false;
  int lo = c.root, hi = c.root;
  for (size_t t = 0; t < c.boxes.size(); ++t) {
    int e = c.added[t];
    if (t > 0) {
      if (e == lo - 1)
        lo = e;
      else if (e == hi + 1)
        hi = e;
      else
        return false;
    }
    if (hi - lo != static_cast<int>(t)) return false;
    // largest box of its index inside [lo,hi], and it contains the new position
    const IBox& bx = c.boxes[t];
    if (bx.index != s.at(e).i) return false;
    int first = hi + 1, last = lo - 1, card = 0;
    for (int k = lo; k <= hi; ++k)
      if (s.at(k).i == bx.index) {
        first = std::min(first, k);
        last = std::max(last, k);
        ++card;
      }
    if (bx.a != first || bx.b != last || bx.card != card) return false;
  }
  return true;
}

Monomial ibox_monomial(const AdmissibleSequence& s, const IBox& box) {
  return kr_monomial(box.index, s.at(box.a).p, box.card);
}

}  // namespace qh
