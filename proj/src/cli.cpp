#include "qh/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qh/braid.hpp"
#include "qh/lift.hpp"
#include "qh/qcluster.hpp"
#include "qh/verify.hpp"

namespace qh {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IOError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

IntVec default_eps(const DynkinData& g) {
  if (g.type == 'A' && g.rank == 1) return {0};
  if (g.type == 'A' && g.rank == 2) return {0, 1};
  if (g.type == 'A' && g.rank == 3) return {1, 0, 1};
  if (g.type == 'A' && g.rank == 4) return {0, -1, 0, -1};
  // bipartite; fine for any tree
  IntVec e(g.rank, -1), stack{0};
  e[0] = 0;
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    for (int j : g.nbrs[i])
      if (e[j] < 0) {
        e[j] = 1 - e[i];
        stack.push_back(j);
      }
  }
  return e;
}

IntVec parse_ints(const std::string& s) {
  IntVec out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      size_t pos = 0;
      out.push_back(std::stoi(tok, &pos));
      if (pos != tok.size()) throw UsageError("");
    } catch (const std::exception&) {
      throw UsageError("not an integer: '" + tok + "'");
    }
  }
  return out;
}

std::pair<int, int> parse_range(const std::string& s, const char* what) {
  auto c = s.find(':', 1);
  if (c == std::string::npos) throw UsageError(std::string(what) + " must be a:b, got '" + s + "'");
  auto a = parse_ints(s.substr(0, c)), b = parse_ints(s.substr(c + 1));
  if (a.size() != 1 || b.size() != 1 || a[0] > b[0])
    throw UsageError(std::string(what) + " must be a:b with a <= b, got '" + s + "'");
  return {a[0], b[0]};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IOError("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct Common {
  std::string type, eps, word;
  std::size_t budget = 0;
};

struct Ctx {
  AdmissibleSequence s;
  QuiverData qd;
  SDHAlgebra A;
  QTChar C;
  explicit Ctx(AdmissibleSequence seq, std::size_t budget)
      : s(std::move(seq)), qd(s), A(qd), C(s, budget) {}
  const DerivedCat& dc() const { return A.derived(); }
};

std::unique_ptr<Ctx> make_ctx(const Common& c) {
  if (c.type.empty()) throw UsageError("--type is required");
  DynkinData g;
  try {
    g = DynkinData::parse(c.type);
  } catch (const std::exception& e) {
    throw UsageError(std::string("--type: ") + e.what());
  }
  IntVec eps = c.eps.empty() ? default_eps(g) : parse_ints(c.eps);
  if (static_cast<int>(eps.size()) != g.rank) throw UsageError("--eps needs " + std::to_string(g.rank) + " entries");
  IntVec word;
  if (!c.word.empty() && c.word != "auto") {
    for (int i : parse_ints(c.word)) word.push_back(i - 1);
  }
  std::size_t budget = c.budget ? c.budget : default_monomial_budget();
  AdmissibleSequence s(g, eps, word);
  return std::make_unique<Ctx>(std::move(s), budget);
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--type", c.type, "Dynkin type, e.g. A3")->required();
  sub->add_option("--eps", c.eps, "height function, comma separated (default per type)");
  sub->add_option("--reduced-word", c.word, "adapted reduced word, 1-based, comma separated, or auto");
  sub->add_option("--budget", c.budget, "monomial budget (default from QH_MONOMIAL_BUDGET or 500)");
}

int vertex_ref(const QuantumSeed& s, const std::string& tok) {
  char* end = nullptr;
  long v = std::strtol(tok.c_str(), &end, 10);
  if (!tok.empty() && *end == '\0') {
    if (v < 0 || v >= s.size()) throw UsageError("vertex index out of range: " + tok);
    return static_cast<int>(v);
  }
  int u = s.Q.find_label(tok);
  if (u < 0) throw UsageError("no vertex labelled '" + tok + "'");
  return u;
}

std::vector<int> vertex_list(const QuantumSeed& s, const std::string& list) {
  std::vector<int> out;
  std::stringstream ss(list);
  std::string tok;
  while (std::getline(ss, tok, ';'))
    if (!tok.empty()) out.push_back(vertex_ref(s, tok));
  return out;
}

std::string error_json(const std::string& kind, const std::string& msg) {
  nlohmann::ordered_json j;
  j["error"] = {{"kind", kind}, {"message", msg}};
  return j.dump() + "\n";
}

// E1@0 / K2@-1 tokens, 1-based index
SDHElement parse_product(const SDHAlgebra& A, const std::string& list) {
  SDHElement x = A.one();
  std::stringstream ss(list);
  std::string tok;
  const int n = A.data().quiver().n;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    auto at = tok.find('@');
    if (tok.size() < 4 || (tok[0] != 'E' && tok[0] != 'K') || at == std::string::npos)
      throw UsageError("generator must look like E1@0 or K2@-1, got '" + tok + "'");
    auto i = parse_ints(tok.substr(1, at - 1)), m = parse_ints(tok.substr(at + 1));
    if (i.size() != 1 || m.size() != 1 || i[0] < 1 || i[0] > n) throw UsageError("bad generator '" + tok + "'");
    x = A.mul(x, tok[0] == 'E' ? A.Ei(i[0] - 1, m[0]) : A.Ki(i[0] - 1, m[0]));
  }
  return x;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semi-derived Hall algebras, (q,t)-characters and quantum cluster seeds"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Common common;

  auto* seq = app.add_subcommand("seq", "admissible sequence on a window (JSON)");
  add_common(seq, common);
  std::string window;
  seq->add_option("--window", window, "a:b")->required();

  auto* seed = app.add_subcommand("seed", "window or chain seed, optionally extended and mutated (DOT or JSON)");
  add_common(seed, common);
  seed->add_option("--window", window, "a:b");
  bool tilde = false, dot = false, json = false;
  std::string mutate_list, chain_word, name = "Q";
  int chain_root = 0;
  seed->add_flag("--tilde", tilde, "add K-vertices and Happel labels");
  seed->add_flag("--dot", dot, "DOT output (default)");
  seed->add_flag("--json", json, "JSON output");
  seed->add_option("--mutate", mutate_list, "vertices to mutate in order: indices or labels, ';' separated");
  auto* root_opt = seed->add_option("--chain-root", chain_root, "chain of i-boxes: root position");
  seed->add_option("--chain-word", chain_word, "chain of i-boxes: L/R expansion word")->needs(root_opt);
  seed->add_option("--name", name, "graph name");

  auto* chr = app.add_subcommand("char", "F_t, M_t or L_t of a monomial (JSON)");
  add_common(chr, common);
  std::string monomial, kind = "L";
  chr->add_option("--monomial", monomial, "e.g. Y_{1,0}Y_{1,2}")->required();
  chr->add_option("--kind", kind, "F, M or L")->check(CLI::IsMember({"F", "M", "L"}));

  auto* sdh = app.add_subcommand("sdh", "products of generators and L_v(m) in the semi-derived Hall algebra");
  add_common(sdh, common);
  std::string product;
  auto* om = sdh->add_option("--monomial", monomial, "L_v of this dominant monomial");
  auto* op = sdh->add_option("--product", product, "generators E<i>@<m>, K<i>@<m>, comma separated");
  om->excludes(op);

  auto* braid = app.add_subcommand("braid", "braid group action check suite (JSON)");
  add_common(braid, common);
  std::string levels = "-2:2";
  bool presentation = false;
  braid->add_option("--levels", levels, "generator levels a:b");
  braid->add_flag("--presentation", presentation, "audit the defining relations only");

  auto* ts = app.add_subcommand("tsystem", "T-system lift for one KR instance (JSON)");
  add_common(ts, common);
  int ti = 1, tk = 1, tp = 0;
  ts->add_option("--i", ti, "node, 1-based");
  ts->add_option("--k", tk, "KR length")->required();
  ts->add_option("--p", tp, "spectral parameter")->required();

  auto* th = app.add_subcommand("theta", "commuting-square audit along a mutation walk (JSON)");
  add_common(th, common);
  th->add_option("--window", window, "a:b")->required();
  th->add_option("--mutate", mutate_list, "vertices: indices or labels, ';' separated (default: every mutable vertex once)");

  auto* va = app.add_subcommand("verify-all", "run every acceptance check (JSON)");
  std::string only, golden_dir;
  bool serial = false;
  va->add_option("--only", only, "comma separated check ids");
  va->add_option("--golden-dir", golden_dir, "directory with golden files");
  va->add_flag("--serial", serial, "serial kernels");

  auto* gc = app.add_subcommand("golden-compare", "compare a DOT artifact with a golden DOT file");
  std::string artifact, golden;
  bool restrict_golden = false, restrict_artifact = false;
  gc->add_option("--artifact", artifact, "DOT file")->required();
  gc->add_option("--golden", golden, "DOT file")->required();
  gc->add_flag("--restrict-golden", restrict_golden, "drop golden vertices the artifact lacks");
  gc->add_flag("--restrict-artifact", restrict_artifact, "drop artifact vertices the golden lacks");

  std::vector<std::string> store{"qhall"};
  store.insert(store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << error_json("usage", e.what());
    return kUsage;
  }

  try {
    if (*seq) {
      auto ctx = make_ctx(common);
      auto [a, b] = parse_range(window, "--window");
      nlohmann::ordered_json j = nlohmann::ordered_json::array();
      for (int k = a; k <= b; ++k) {
        auto v = ctx->s.at(k);
        j.push_back({{"k", k}, {"i", v.i + 1}, {"p", v.p}, {"V", ctx->dc().label(ctx->dc().happel(v.i, v.p))}});
      }
      out << j.dump(2) << "\n";
      return kOk;
    }
    if (*seed) {
      if (dot && json) throw UsageError("--dot and --json are exclusive");
      auto ctx = make_ctx(common);
      QuantumSeed s;
      if (!chain_word.empty() || seed->count("--chain-root")) {
        if (!window.empty()) throw UsageError("--window and --chain-root are exclusive");
        auto cs = chain_seed(ctx->s, tilde ? &ctx->dc() : nullptr, chain_root, chain_word, {false});
        if (!cs.boxes_ok) throw AlgebraError("chain seed: box monomials not reached");
        s = cs.seed;
      } else {
        if (window.empty()) throw UsageError("--window or --chain-root is required");
        auto [a, b] = parse_range(window, "--window");
        s = build_window_seed(ctx->s, a, b, {!tilde});
        if (tilde) s = extend_tilde(s, ctx->dc());
      }
      for (int k : vertex_list(s, mutate_list)) s = mutate(s, k);
      out << (json ? seed_json(s) : seed_dot(s, name));
      return kOk;
    }
    if (*chr) {
      auto ctx = make_ctx(common);
      Monomial m;
      try {
        m = Monomial::parse(monomial);
      } catch (const std::exception& e) {
        throw UsageError(std::string("--monomial: ") + e.what());
      }
      TorusElement x = kind == "F" ? ctx->C.F_t(m) : kind == "M" ? ctx->C.M_t(m) : ctx->C.L_t(m).L;
      out << x.json() << "\n";
      return kOk;
    }
    if (*sdh) {
      auto ctx = make_ctx(common);
      SDHElement x;
      if (!monomial.empty()) {
        x = semi_derived_L(ctx->A, ctx->C, Monomial::parse(monomial));
      } else if (!product.empty()) {
        x = parse_product(ctx->A, product);
      } else {
        throw UsageError("--monomial or --product is required");
      }
      nlohmann::ordered_json j;
      j["element"] = ctx->A.str(x);
      auto d = ctx->A.homogeneous_degree(x);
      j["degree"] = d ? nlohmann::ordered_json(d->str()) : nlohmann::ordered_json(nullptr);
      j["pi_H"] = ctx->A.str(ctx->A.pi_H(x));
      out << j.dump(2) << "\n";
      return kOk;
    }
    if (*braid) {
      auto ctx = make_ctx(common);
      auto [a, b] = parse_range(levels, "--levels");
      auto cs = presentation ? check_presentation(ctx->A, a, b) : check_braid(ctx->A, a, b);
      bool ok = true;
      for (auto& c : cs) ok = ok && c.ok;
      out << braid_report_json(cs) << "\n";
      return ok ? kOk : kCheckFailed;
    }
    if (*ts) {
      auto ctx = make_ctx(common);
      if (ti < 1 || ti > ctx->s.dynkin().rank) throw UsageError("--i out of range");
      if (tk < 1) throw UsageError("--k must be positive");
      auto r = verify_tsystem_lift(ctx->A, ctx->C, ti - 1, tk, tp);
      out << r.json() << "\n";
      return r.ok() ? kOk : kCheckFailed;
    }
    if (*th) {
      auto ctx = make_ctx(common);
      auto [a, b] = parse_range(window, "--window");
      auto root = extend_tilde(build_window_seed(ctx->s, a, b, {false}), ctx->dc());
      auto ks = mutate_list.empty() ? root.Q.mutable_vertices() : vertex_list(root, mutate_list);
      auto w = theta_walk(ctx->A, ctx->C, root, ks);
      out << w.json() << "\n";
      return w.ok() ? kOk : kCheckFailed;
    }
    if (*va) {
      VerifyOptions opt;
      opt.exec = serial ? Exec::Serial : Exec::Parallel;
      opt.golden_dir = golden_dir;
      auto ids = only.empty() ? check_ids() : parse_ints(only);
      for (int id : ids)
        if (id < 1 || id > static_cast<int>(check_ids().size())) throw UsageError("unknown check id " + std::to_string(id));
      auto rs = run_checks(ids, opt);
      out << checks_json(rs);
      for (auto& r : rs)
        if (!r.ok) return kCheckFailed;
      return kOk;
    }
    if (*gc) {
      auto r = golden_compare(slurp(artifact), slurp(golden), restrict_golden, restrict_artifact);
      nlohmann::ordered_json j;
      j["status"] = r.ok ? "pass" : "fail";
      j["diff"] = r.diff;
      out << j.dump(2) << "\n";
      return r.ok ? kOk : kCheckFailed;
    }
  } catch (const UsageError& e) {
    err << error_json("usage", e.what());
    return kUsage;
  } catch (const IOError& e) {
    err << error_json("io", e.what());
    return kIO;
  } catch (const BudgetError& e) {
    err << error_json("budget", e.what());
    return kBudget;
  } catch (const std::exception& e) {
    err << error_json("algebra", e.what());
    return kAlgebra;
  }
  return kUsage;
}

}  // namespace qh
