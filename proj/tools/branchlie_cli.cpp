/*
  branchlie_cli.cpp

  Command-line front end.  Subcommands:

    classify   verdict on "exactly two composition factors" for the
               restriction of L(λ) from Spin(2n+1) to Spin(2n)
    decompose  brute-force composition factors of that restriction by
               character peeling
    char       dominant character table of V(λ) or L(λ) as TSV
    mult       multiplicity of a single weight in V(λ) and L(λ)
    maxvec     closed-form maximal-vector space of a distinguished family
    verify     runs one of the verification suites
               (chevalley | table2 | appendix | branching)
    table      classification table over a rank range and prime list

  Output is machine-readable (JSON tagged with a schema version, or TSV with
  a fixed header), buffered, and deterministic for identical inputs.  The
  environment variable BRANCHLIE_THREADS caps worker threads in the suite
  runner.  Exit codes: 0 ok, 1 verification failures or internal errors,
  2 usage errors, 3 budget exceeded.
*/
#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "branchlie/branching.hpp"
#include "branchlie/chevalley.hpp"
#include "branchlie/enveloping.hpp"
#include "branchlie/maxvec.hpp"
#include "branchlie/rootsystem.hpp"
#include "branchlie/weylmod.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace branchlie;

constexpr const char* kSchema = "branchlie/1";

// ---------------------------------------------------------------------------
// small helpers

std::vector<long long> parse_ll_list(const std::string& s, const char* what) {
  std::vector<long long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw std::invalid_argument(std::string("empty entry in ") + what);
    std::size_t pos = 0;
    long long v = std::stoll(item, &pos);
    if (pos != item.size())
      throw std::invalid_argument(std::string("malformed entry '") + item + "' in " + what);
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument(std::string(what) + " must be non-empty");
  return out;
}

Weight parse_weight(const std::string& s, int rank, const char* what) {
  std::vector<long long> v = parse_ll_list(s, what);
  if (static_cast<int>(v.size()) != rank)
    throw std::invalid_argument(std::string(what) + " must have exactly " +
                                std::to_string(rank) + " comma-separated entries");
  Weight w;
  for (long long c : v) {
    if (c < INT32_MIN || c > INT32_MAX)
      throw std::invalid_argument(std::string(what) + " entry out of range");
    w.push_back(static_cast<int>(c));
  }
  return w;
}

std::string weight_csv(const Weight& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(w[i]);
  }
  return s;
}

bool is_prime_ll(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<long long> parse_primes(const std::string& s) {
  std::vector<long long> ps = parse_ll_list(s, "--primes");
  for (long long p : ps)
    if (!is_prime_ll(p))
      throw std::invalid_argument("--primes entries must be prime; got " + std::to_string(p));
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  return ps;
}

// "3" or "3..5" -> [lo, hi]
std::pair<int, int> parse_rank_range(const std::string& s) {
  auto dots = s.find("..");
  auto to_int = [](const std::string& t) {
    std::size_t pos = 0;
    int v = std::stoi(t, &pos);
    if (pos != t.size()) throw std::invalid_argument("malformed rank '" + t + "'");
    return v;
  };
  if (dots == std::string::npos) {
    int r = to_int(s);
    return {r, r};
  }
  int lo = to_int(s.substr(0, dots));
  int hi = to_int(s.substr(dots + 2));
  if (lo > hi) throw std::invalid_argument("empty rank range " + s);
  return {lo, hi};
}

json int_json(const Int& v) {
  if (v.fits_slong_p()) return static_cast<long long>(v.get_si());
  return v.get_str();
}

json weight_json(const Weight& w) {
  json a = json::array();
  for (int c : w) a.push_back(c);
  return a;
}

void emit(const json& out) { std::cout << out.dump(2) << "\n"; }

unsigned worker_threads() {
  if (const char* env = std::getenv("BRANCHLIE_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Runs fn(0..n-1) on up to BRANCHLIE_THREADS workers.  fn must not throw;
// callers record per-instance errors in their result slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  unsigned workers = std::min<std::size_t>(worker_threads(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) fn(i);
    });
  for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------------------
// classify

int run_classify(int rank, long long p, const std::string& lambda_str, bool general,
                 const std::string& mode_str) {
  Weight lam = parse_weight(lambda_str, rank, "--lambda");
  BranchingVerdict v;
  if (general) {
    v = classify_general(rank, p, lam, mode_from_string(mode_str));
  } else {
    if (p > 0)
      for (int c : lam)
        if (c >= p)
          throw std::invalid_argument(
              "highest weight is not p-restricted; pass --general for the digit-based classification");
    v = classify_p_restricted(rank, p, lam);
  }
  json out;
  out["schema"] = kSchema;
  out["command"] = "classify";
  out["rank"] = rank;
  out["p"] = p;
  out["lambda"] = weight_json(lam);
  out["general"] = general;
  if (general) out["mode"] = mode_str;
  out["outcome"] = to_string(v.outcome);
  out["fired_condition"] = v.fired_label();
  out["completely_reducible"] = v.completely_reducible;
  json factors = json::array();
  for (const FactorNote& f : v.factors) {
    json e;
    e["coords"] = weight_json(f.omega);
    e["note"] = f.note;
    factors.push_back(e);
  }
  out["factors"] = factors;
  out["trace"] = v.trace;
  emit(out);
  return 0;
}

// ---------------------------------------------------------------------------
// decompose

int run_decompose(int rank, long long p, const std::string& lambda_str, long long budget_ms,
                  int height, long long monomial_cap, long long lattice_cap) {
  Weight lam = parse_weight(lambda_str, rank, "--lambda");
  Budget budget{height, monomial_cap, lattice_cap};
  FactorList fl = brute_force_decompose(rank, p, lam, budget, budget_ms);
  json out;
  out["schema"] = kSchema;
  out["command"] = "decompose";
  out["rank"] = rank;
  out["p"] = p;
  out["lambda"] = weight_json(lam);
  out["module_dim"] = int_json(fl.module_dim);
  json factors = json::array();
  for (const FactorEntry& f : fl.factors) {
    json e;
    e["coords"] = weight_json(f.omega);
    e["multiplicity"] = f.multiplicity;
    e["dim"] = int_json(f.dim);
    factors.push_back(e);
  }
  out["factors"] = factors;
  out["factor_count"] = fl.factor_count();
  out["complete"] = fl.complete;
  out["note"] = fl.note;
  emit(out);
  return fl.complete ? 0 : 3;
}

// ---------------------------------------------------------------------------
// char

int run_char(const std::string& type_str, int rank, const std::string& lambda_str, long long p,
             const std::string& kind_str, int height, long long monomial_cap,
             long long lattice_cap) {
  LieType type = lie_type_from_string(type_str);
  Weight lam = parse_weight(lambda_str, rank, "--lambda");
  Budget budget{height, monomial_cap, lattice_cap};
  const StructureConstantTable& table = shared_structure_constants(type, rank);
  const RootSystem& rs = table.roots();

  CharacterTable t;
  if (kind_str == "weyl" || p == 0) {
    t = char_weyl(rs, lam);
  } else if (kind_str == "irreducible") {
    bool restricted = true;
    for (int c : lam)
      if (c >= p) restricted = false;
    t = restricted ? char_irreducible(table, lam, p, budget)
                   : char_irreducible_general(table, lam, p, budget);
  } else {
    throw std::invalid_argument("--kind must be weyl or irreducible");
  }

  std::ostringstream os;
  os << "mu\tmult\n";
  for (const auto& [mu, m] : t.entries) os << weight_csv(mu) << "\t" << m << "\n";
  os << "# dimension\t" << t.dimension.get_str() << "\n";
  std::cout << os.str();
  return 0;
}

// ---------------------------------------------------------------------------
// mult

int run_mult(const std::string& type_str, int rank, const std::string& lambda_str,
             const std::string& delta_str, long long p, int height, long long monomial_cap,
             long long lattice_cap) {
  LieType type = lie_type_from_string(type_str);
  Weight lam = parse_weight(lambda_str, rank, "--lambda");
  Weight delta = parse_weight(delta_str, rank, "--mu-delta");
  for (int c : delta)
    if (c < 0) throw std::invalid_argument("--mu-delta entries must be nonnegative");
  Budget budget{height, monomial_cap, lattice_cap};
  const StructureConstantTable& table = shared_structure_constants(type, rank);
  const RootSystem& rs = table.roots();

  Weight drop = rs.weight_of_rootvec(delta);
  Weight mu(lam.size());
  for (std::size_t i = 0; i < lam.size(); ++i) mu[i] = lam[i] - drop[i];

  Int weyl = freudenthal_mult(rs, lam, mu);
  Int irr;
  if (p == 0) {
    irr = weyl;
  } else {
    if (!is_prime_ll(p)) throw std::invalid_argument("--p must be 0 or a prime");
    if (type == LieType::B && p == 2)
      throw std::invalid_argument("type-B weight multiplicities in characteristic 2 are not supported");
    bool restricted = true;
    for (int c : lam)
      if (c >= p) restricted = false;
    if (restricted) {
      WeylModule wm(table, lam, budget);
      irr = Int(wm.irreducible_dim_mu(mu, p));
    } else {
      CharacterTable t = char_irreducible_general(table, lam, p, budget);
      irr = Int(t.mult(rs, mu));
    }
  }

  json out;
  out["schema"] = kSchema;
  out["command"] = "mult";
  out["type"] = to_string(type);
  out["rank"] = rank;
  out["p"] = p;
  out["lambda"] = weight_json(lam);
  out["mu"] = weight_json(mu);
  out["mu_delta"] = weight_json(delta);
  out["weyl_mult"] = int_json(weyl);
  out["irreducible_mult"] = int_json(irr);
  emit(out);
  return 0;
}

// ---------------------------------------------------------------------------
// maxvec

int run_maxvec(const std::string& case_str, int n, int k, long long a, long long b, long long p,
               int height, long long monomial_cap, long long lattice_cap) {
  CaseParams cp;
  cp.tag = case_tag_from_string(case_str);
  cp.rank = n;
  cp.k = k;
  cp.a = a;
  cp.b = b;
  validate_case(cp);
  if (p != 0 && !is_prime_ll(p)) throw std::invalid_argument("--p must be 0 or a prime");
  Budget budget{height, monomial_cap, lattice_cap};

  MaxVecSolution sol = case_solution(cp, p, budget);

  json out;
  out["schema"] = kSchema;
  out["command"] = "maxvec";
  out["case"] = to_string(cp.tag);
  out["rank"] = cp.rank;
  if (cp.tag == CaseTag::B_li || cp.tag == CaseTag::B_a_l1_lk) out["k"] = cp.k;
  out["a"] = cp.a;
  if (cp.tag == CaseTag::A_row) out["b"] = cp.b;
  out["p"] = p;
  out["lambda"] = weight_json(case_lambda(cp));
  out["mu"] = weight_json(case_mu(cp));
  out["quotient_ambient"] = sol.quotient_ambient;
  out["dim"] = sol.dim;
  out["divisibility_holds"] = case_divisibility(cp, p);
  json basis = json::array();
  if (p > 0) {
    for (const auto& vec : sol.vectors_p) {
      json row = json::array();
      for (long long c : vec) row.push_back(c);
      basis.push_back(row);
    }
  } else {
    for (const auto& vec : sol.vectors_q) {
      json row = json::array();
      for (const Rat& c : vec) row.push_back(c.get_str());
      basis.push_back(row);
    }
  }
  out["basis"] = basis;
  json labels = json::array();
  for (const Generator& g : sol.basis.gens) labels.push_back(g.label);
  out["basis_labels"] = labels;
  json pattern = json::array();
  for (long long c : case_solution_pattern(cp, p)) pattern.push_back(c);
  out["solution_pattern"] = pattern;
  emit(out);
  return 0;
}

// ---------------------------------------------------------------------------
// table

// Ascending lexicographic enumeration of nonzero weights with coords < p.
bool next_weight(Weight& w, long long p) {
  for (int i = static_cast<int>(w.size()) - 1; i >= 0; --i) {
    if (w[i] + 1 < p) {
      ++w[i];
      return true;
    }
    w[i] = 0;
  }
  return false;
}

int run_table(const std::string& rank_str, const std::string& primes_str,
              const std::string& out_format) {
  auto [rank_lo, rank_hi] = parse_rank_range(rank_str);
  if (rank_lo < 3) throw std::invalid_argument("table needs rank >= 3");
  std::vector<long long> primes = parse_primes(primes_str);
  if (out_format != "tsv" && out_format != "json")
    throw std::invalid_argument("--out must be tsv or json");

  struct Row {
    int n;
    long long p;
    Weight lambda;
    std::string verdict;
    std::string condition;
    bool two = false;
    Weight omega;
    Weight omega_prime;
  };
  std::vector<Row> rows;
  for (int n = rank_lo; n <= rank_hi; ++n) {
    for (long long p : primes) {
      Weight w(n, 0);
      while (next_weight(w, p)) {
        Row r;
        r.n = n;
        r.p = p;
        r.lambda = w;
        BranchingVerdict v = classify_p_restricted(n, p, w);
        r.verdict = to_string(v.outcome);
        r.condition = v.fired_label();
        if (v.outcome == Outcome::TwoFactors) {
          r.two = true;
          r.omega = v.factors.at(0).omega;
          r.omega_prime = v.factors.at(1).omega;
        }
        rows.push_back(std::move(r));
      }
    }
  }

  if (out_format == "tsv") {
    std::ostringstream os;
    os << "n\tp\tlambda\tverdict\tcondition\tomega\tomega_prime\n";
    for (const Row& r : rows) {
      os << r.n << "\t" << r.p << "\t" << weight_csv(r.lambda) << "\t" << r.verdict << "\t"
         << r.condition << "\t" << (r.two ? weight_csv(r.omega) : "-") << "\t"
         << (r.two ? weight_csv(r.omega_prime) : "-") << "\n";
    }
    std::cout << os.str();
  } else {
    json out;
    out["schema"] = kSchema;
    out["command"] = "table";
    json jrows = json::array();
    for (const Row& r : rows) {
      json e;
      e["n"] = r.n;
      e["p"] = r.p;
      e["lambda"] = weight_json(r.lambda);
      e["verdict"] = r.verdict;
      e["condition"] = r.condition;
      e["omega"] = r.two ? weight_json(r.omega) : json();
      e["omega_prime"] = r.two ? weight_json(r.omega_prime) : json();
      jrows.push_back(e);
    }
    out["rows"] = jrows;
    emit(out);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify suites

struct SuiteResult {
  json instances = json::array();
  long long checked = 0;
  long long skipped = 0;
  long long failures = 0;
};

SuiteResult suite_chevalley(int rank_max) {
  SuiteResult res;
  struct Sys {
    LieType type;
    int rank;
  };
  std::vector<Sys> systems;
  for (int l = 2; l <= rank_max; ++l) systems.push_back({LieType::A, l});
  for (int n = 3; n <= rank_max; ++n) systems.push_back({LieType::B, n});
  for (int n = 3; n <= rank_max; ++n) systems.push_back({LieType::D, n});
  for (const Sys& s : systems) {
    const StructureConstantTable& t = shared_structure_constants(s.type, s.rank);
    RelationReport rep = verify_chevalley_relations(t);
    json e;
    e["type"] = to_string(s.type);
    e["rank"] = s.rank;
    e["string_checked"] = rep.string_checked;
    e["pairs_checked"] = rep.pairs_checked;
    e["triples_checked"] = rep.triples_checked;
    e["quadruples_checked"] = rep.quadruples_checked;
    e["violations"] = rep.violation_count;
    json vio = json::array();
    for (const std::string& v : rep.violations) vio.push_back(v);
    e["violation_samples"] = vio;
    bool ok = rep.ok();
    e["ok"] = ok;
    res.instances.push_back(e);
    ++res.checked;
    if (!ok) ++res.failures;
  }
  return res;
}

SuiteResult suite_table2(int rank_max) {
  SuiteResult res;
  struct Inst {
    std::string row;
    LieType type;
    int rank;
    Weight lambda;
    Weight mu;
    long long expected;
  };
  std::vector<Inst> insts;

  // a s_1 + b s_l in type A_2, one step below with r copies of the first
  // simple root removed: multiplicity 2.
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b)
      for (int r = 1; r <= a; ++r)
        insts.push_back({"A2_two", LieType::A, 2, {a, b}, {a - 2 * r + 1, b + r - 2}, 2});
  // same shape in A_n (n >= 3): multiplicity n.
  for (int n = 3; n <= rank_max; ++n)
    for (int a = 1; a <= 4; ++a)
      for (int b = 1; b <= 4; ++b)
        for (int r = 1; r <= a; ++r) {
          Weight lam(n, 0), mu(n, 0);
          lam[0] = a;
          lam[n - 1] = b;
          mu[0] = a - 2 * r + 1;
          mu[1] = r - 1;
          mu[n - 1] = b - 1;
          insts.push_back({"An_n", LieType::A, n, lam, mu, n});
        }
  for (int n = 3; n <= rank_max; ++n) {
    // B_n, a l_1 one string step down: multiplicity 1.
    for (int a = 1; a <= 4; ++a) {
      Weight lam(n, 0), mu(n, 0);
      lam[0] = a;
      mu[0] = a - 1;
      insts.push_back({"Bn_one", LieType::B, n, lam, mu, 1});
    }
    // B_n, c l_1 two string steps down: multiplicity n.
    for (int c = 2; c <= 4; ++c) {
      Weight lam(n, 0), mu(n, 0);
      lam[0] = c;
      mu[0] = c - 2;
      insts.push_back({"Bn_n", LieType::B, n, lam, mu, n});
    }
    // B_n, l_2 at zero weight: multiplicity n.
    {
      Weight lam(n, 0), mu(n, 0);
      lam[1] = 1;
      insts.push_back({"Bn_zero", LieType::B, n, lam, mu, n});
    }
    // B_n, a l_1 + l_i dropping to (a-1) l_1 + l_{i-1}: i(n-i+2)-1.
    for (int a = 1; a <= 4; ++a)
      for (int i = 2; i <= n - 1; ++i) {
        Weight lam(n, 0), mu(n, 0);
        lam[0] = a;
        lam[i - 1] = 1;
        mu[0] = a - 1;
        mu[i - 2] += 1;
        insts.push_back({"Bn_ai", LieType::B, n, lam, mu,
                         static_cast<long long>(i) * (n - i + 2) - 1});
      }
  }

  std::map<std::pair<std::pair<int, int>, Weight>, std::unique_ptr<WeylModule>> modules;
  for (const Inst& in : insts) {
    const StructureConstantTable& table =
        shared_structure_constants(in.type, in.rank);
    Int fre = freudenthal_mult(table.roots(), in.lambda, in.mu);
    auto key = std::make_pair(std::make_pair(static_cast<int>(in.type), in.rank), in.lambda);
    auto it = modules.find(key);
    if (it == modules.end())
      it = modules.emplace(key, std::make_unique<WeylModule>(table, in.lambda)).first;
    int gram = it->second->weyl_mult(in.mu);

    bool ok = fre == Int(static_cast<long>(in.expected)) && gram == in.expected;
    json e;
    e["row"] = in.row;
    e["type"] = to_string(in.type);
    e["rank"] = in.rank;
    e["lambda"] = weight_json(in.lambda);
    e["mu"] = weight_json(in.mu);
    e["expected"] = in.expected;
    e["freudenthal"] = int_json(fre);
    e["gram_rank"] = gram;
    e["ok"] = ok;
    res.instances.push_back(e);
    ++res.checked;
    if (!ok) ++res.failures;
  }
  return res;
}

SuiteResult suite_appendix(int rank_max, const std::vector<long long>& primes) {
  SuiteResult res;
  struct Inst {
    CaseParams cp;
    long long p;
  };
  std::vector<Inst> insts;
  for (int l = 2; l <= rank_max; ++l)
    for (int a = 1; a <= 4; ++a)
      for (int b = 1; b <= 4; ++b)
        for (long long p : primes)
          insts.push_back({{CaseTag::A_row, l, 0, a, b}, p});
  for (int n = 3; n <= rank_max; ++n)
    for (int a = 2; a <= 4; ++a)
      for (long long p : primes) insts.push_back({{CaseTag::B_a_l1, n, 0, a, 0}, p});
  for (int n = 3; n <= rank_max; ++n)
    for (int i = 2; i <= n - 1; ++i)
      for (long long p : primes) insts.push_back({{CaseTag::B_li, n, i, 0, 0}, p});
  // Quotient families only where the quotient exists (p divides a+k).
  for (int n = 3; n <= rank_max; ++n)
    for (int a = 1; a <= 4; ++a)
      for (long long p : primes)
        if ((a + 2) % p == 0) insts.push_back({{CaseTag::B_a_l1_l2, n, 0, a, 0}, p});
  for (int n = 4; n <= rank_max; ++n)
    for (int k = 3; k <= n - 1; ++k)
      for (int a = 1; a <= 4; ++a)
        for (long long p : primes)
          if ((a + k) % p == 0) insts.push_back({{CaseTag::B_a_l1_lk, n, k, a, 0}, p});

  std::vector<json> records(insts.size());
  std::vector<char> fail(insts.size(), 0);
  parallel_for(insts.size(), [&](std::size_t idx) {
    const Inst& in = insts[idx];
    json e;
    e["case"] = to_string(in.cp.tag);
    e["rank"] = in.cp.rank;
    if (in.cp.k) e["k"] = in.cp.k;
    e["a"] = in.cp.a;
    if (in.cp.tag == CaseTag::A_row) e["b"] = in.cp.b;
    e["p"] = in.p;
    try {
      bool divisible = case_divisibility(in.cp, in.p);
      MaxVecSolution sol = case_solution(in.cp, in.p);
      int expected_dim = divisible ? 1 : 0;
      bool dim_ok = sol.dim == expected_dim;
      bool ray_ok = true;
      if (sol.dim == 1)
        ray_ok = proportional_mod_p(sol.vectors_p.at(0),
                                    case_solution_pattern(in.cp, in.p), in.p);
      e["divisibility_holds"] = divisible;
      e["dim"] = sol.dim;
      e["solution_on_stated_ray"] = sol.dim == 1 ? json(ray_ok) : json();
      bool ok = dim_ok && ray_ok;
      // The four-way audit compares against L(λ), so it is only defined for
      // p-restricted highest weights; the dim/ray checks cover the rest.
      Weight lam = case_lambda(in.cp);
      bool restricted = std::all_of(lam.begin(), lam.end(),
                                    [&](int c) { return c < in.p; });
      if (restricted) {
        EquivalenceAudit audit = equivalence_audit(in.cp, in.p);
        ok = ok && audit.agree() && audit.divisible == divisible;
        e["audit"] = {{"factor_at_mu", audit.factor_at_mu},
                      {"dependent", audit.dependent},
                      {"member", audit.member},
                      {"divisible", audit.divisible},
                      {"agree", audit.agree()}};
      } else {
        e["audit"] = json();
      }
      e["ok"] = ok;
      if (!ok) fail[idx] = 1;
    } catch (const std::exception& ex) {
      e["error"] = ex.what();
      e["ok"] = false;
      fail[idx] = 1;
    }
    records[idx] = std::move(e);
  });
  for (std::size_t i = 0; i < records.size(); ++i) {
    res.instances.push_back(std::move(records[i]));
    ++res.checked;
    if (fail[i]) ++res.failures;
  }
  return res;
}

SuiteResult suite_branching(int rank_max, const std::vector<long long>& primes, int max_coeff,
                            const Budget& budget, long long time_ms) {
  SuiteResult res;
  struct Inst {
    int n;
    long long p;
    Weight lambda;
  };
  std::vector<Inst> insts;
  for (int n = 3; n <= rank_max; ++n)
    for (long long p : primes) {
      long long bound = std::min<long long>(p, max_coeff > 0 ? max_coeff + 1 : p);
      Weight w(n, 0);
      while (next_weight(w, bound)) insts.push_back({n, p, w});
    }

  enum class Status { ok, mismatch, skipped, error };
  std::vector<json> records(insts.size());
  std::vector<Status> status(insts.size(), Status::ok);
  parallel_for(insts.size(), [&](std::size_t idx) {
    const Inst& in = insts[idx];
    json e;
    e["n"] = in.n;
    e["p"] = in.p;
    e["lambda"] = weight_json(in.lambda);
    try {
      BranchingVerdict v = classify_p_restricted(in.n, in.p, in.lambda);
      e["verdict"] = to_string(v.outcome);
      e["condition"] = v.fired_label();
      FactorList fl = brute_force_decompose(in.n, in.p, in.lambda, budget, time_ms);
      if (!fl.complete) {
        e["status"] = "skipped";
        e["note"] = fl.note;
        status[idx] = Status::skipped;
      } else {
        bool two = fl.factor_count() == 2;
        bool agree = two == (v.outcome == Outcome::TwoFactors);
        if (agree && two) {
          std::multiset<Weight> got;
          for (const FactorEntry& f : fl.factors)
            for (int m = 0; m < f.multiplicity; ++m) got.insert(f.omega);
          std::multiset<Weight> want{v.factors.at(0).omega, v.factors.at(1).omega};
          agree = got == want;
        }
        json factors = json::array();
        for (const FactorEntry& f : fl.factors) {
          json fe;
          fe["coords"] = weight_json(f.omega);
          fe["multiplicity"] = f.multiplicity;
          fe["dim"] = int_json(f.dim);
          factors.push_back(fe);
        }
        e["oracle_factors"] = factors;
        e["factor_count"] = fl.factor_count();
        e["status"] = agree ? "ok" : "mismatch";
        status[idx] = agree ? Status::ok : Status::mismatch;
      }
    } catch (const BudgetExceeded& ex) {
      e["status"] = "skipped";
      e["note"] = ex.what();
      status[idx] = Status::skipped;
    } catch (const std::exception& ex) {
      e["status"] = "error";
      e["note"] = ex.what();
      status[idx] = Status::error;
    }
    records[idx] = std::move(e);
  });
  for (std::size_t i = 0; i < records.size(); ++i) {
    res.instances.push_back(std::move(records[i]));
    switch (status[i]) {
      case Status::ok:
        ++res.checked;
        break;
      case Status::skipped:
        ++res.skipped;
        break;
      case Status::mismatch:
      case Status::error:
        ++res.checked;
        ++res.failures;
        break;
    }
  }
  return res;
}

int run_verify(const std::string& suite, int rank_max, const std::string& primes_str,
               int max_coeff, int height, long long monomial_cap, long long lattice_cap,
               long long time_ms) {
  Budget budget{height, monomial_cap, lattice_cap};
  SuiteResult res;
  std::vector<long long> primes;
  if (suite == "chevalley") {
    if (rank_max == 0) rank_max = 4;
    res = suite_chevalley(rank_max);
  } else if (suite == "table2") {
    if (rank_max == 0) rank_max = 4;
    res = suite_table2(rank_max);
  } else if (suite == "appendix") {
    if (rank_max == 0) rank_max = 4;
    primes = primes_str.empty() ? std::vector<long long>{3, 5, 7, 11} : parse_primes(primes_str);
    res = suite_appendix(rank_max, primes);
  } else if (suite == "branching") {
    if (rank_max == 0) rank_max = 3;
    primes = primes_str.empty() ? std::vector<long long>{3, 5, 7} : parse_primes(primes_str);
    res = suite_branching(rank_max, primes, max_coeff, budget, time_ms);
  } else {
    throw std::invalid_argument("unknown suite: " + suite +
                                " (expected chevalley, table2, appendix, or branching)");
  }

  json out;
  out["schema"] = kSchema;
  out["command"] = "verify";
  out["suite"] = suite;
  out["rank_max"] = rank_max;
  if (!primes.empty()) {
    json jp = json::array();
    for (long long p : primes) jp.push_back(p);
    out["primes"] = jp;
  }
  out["instances"] = res.instances;
  out["checked"] = res.checked;
  if (suite == "branching") out["skipped"] = res.skipped;
  out["failures"] = res.failures;
  out["ok"] = res.failures == 0;
  emit(out);
  return res.failures == 0 ? 0 : 1;
}

}  // namespace

// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
  CLI::App app{"exact computations for restricting Spin(2n+1)-modules to Spin(2n)"};
  app.require_subcommand(1);

  // classify
  int cl_rank = 0;
  long long cl_p = 0;
  std::string cl_lambda, cl_mode = "proof";
  bool cl_general = false;
  CLI::App* classify = app.add_subcommand(
      "classify", "decide whether the restriction has exactly two composition factors");
  classify->add_option("--rank", cl_rank, "rank n of the ambient B_n system (>= 3)")->required();
  classify->add_option("--p", cl_p, "characteristic (0 or a prime)")->required();
  classify->add_option("--lambda", cl_lambda, "highest weight a_1,...,a_n")->required();
  classify->add_flag("--general", cl_general,
                     "allow non-restricted weights via the base-p digit classification");
  classify->add_option("--mode", cl_mode, "p=2 digit handling: proof or literal")
      ->check(CLI::IsMember({"proof", "literal"}));

  // decompose
  int de_rank = 0, de_height = 24;
  long long de_p = 0, de_budget_ms = 120000, de_moncap = 40000, de_latcap = 1500;
  std::string de_lambda;
  CLI::App* decompose = app.add_subcommand(
      "decompose", "brute-force composition factors of the restriction by character peeling");
  decompose->add_option("--rank", de_rank, "rank n of the ambient B_n system (>= 3)")->required();
  decompose->add_option("--p", de_p, "characteristic (0 or a prime)")->required();
  decompose->add_option("--lambda", de_lambda, "highest weight a_1,...,a_n")->required();
  decompose->add_option("--budget-ms", de_budget_ms, "time budget in milliseconds (0 = none)");
  decompose->add_option("--height", de_height, "weight-drop height cap");
  decompose->add_option("--monomial-cap", de_moncap, "monomial count cap per weight space");
  decompose->add_option("--lattice-cap", de_latcap, "lattice dimension cap per weight space");

  // char
  std::string ch_type, ch_lambda, ch_kind = "irreducible";
  int ch_rank = 0, ch_height = 24;
  long long ch_p = 0, ch_moncap = 40000, ch_latcap = 1500;
  CLI::App* chr = app.add_subcommand("char", "dominant character table as TSV");
  chr->add_option("--type", ch_type, "Lie type: A, B, or D")->required();
  chr->add_option("--rank", ch_rank, "rank")->required();
  chr->add_option("--lambda", ch_lambda, "highest weight")->required();
  chr->add_option("--p", ch_p, "characteristic (0 or a prime)");
  chr->add_option("--kind", ch_kind, "weyl or irreducible")
      ->check(CLI::IsMember({"weyl", "irreducible"}));
  chr->add_option("--height", ch_height, "weight-drop height cap");
  chr->add_option("--monomial-cap", ch_moncap, "monomial count cap per weight space");
  chr->add_option("--lattice-cap", ch_latcap, "lattice dimension cap per weight space");

  // mult
  std::string mu_type, mu_lambda, mu_delta;
  int mu_rank = 0, mu_height = 24;
  long long mu_p = 0, mu_moncap = 40000, mu_latcap = 1500;
  CLI::App* mult = app.add_subcommand(
      "mult", "multiplicity of one weight in the Weyl module and its irreducible quotient");
  mult->add_option("--type", mu_type, "Lie type: A, B, or D")->required();
  mult->add_option("--rank", mu_rank, "rank")->required();
  mult->add_option("--lambda", mu_lambda, "highest weight")->required();
  mult->add_option("--mu-delta", mu_delta, "lambda - mu in simple-root coordinates")->required();
  mult->add_option("--p", mu_p, "characteristic (0 or a prime)");
  mult->add_option("--height", mu_height, "weight-drop height cap");
  mult->add_option("--monomial-cap", mu_moncap, "monomial count cap per weight space");
  mult->add_option("--lattice-cap", mu_latcap, "lattice dimension cap per weight space");

  // maxvec
  std::string mv_case;
  int mv_n = 0, mv_k = 0, mv_height = 24;
  long long mv_a = 0, mv_b = 0, mv_p = 0, mv_moncap = 40000, mv_latcap = 1500;
  CLI::App* maxvec = app.add_subcommand(
      "maxvec", "maximal-vector space of a closed-form family weight space");
  maxvec->add_option("--case", mv_case,
                     "family: A_row, B_al1, B_li, B_al1l2, B_al1lk (unicode names accepted)")
      ->required();
  maxvec->add_option("--n", mv_n, "rank")->required();
  maxvec->add_option("--k", mv_k, "inner fundamental-weight index (B_li, B_al1lk)");
  maxvec->add_option("--a", mv_a, "coefficient a");
  maxvec->add_option("--b", mv_b, "coefficient b (A_row)");
  maxvec->add_option("--p", mv_p, "characteristic (0 or a prime)")->required();
  maxvec->add_option("--height", mv_height, "weight-drop height cap");
  maxvec->add_option("--monomial-cap", mv_moncap, "monomial count cap per weight space");
  maxvec->add_option("--lattice-cap", mv_latcap, "lattice dimension cap per weight space");

  // table
  std::string tb_rank, tb_primes, tb_out = "tsv";
  CLI::App* table = app.add_subcommand(
      "table", "classification table over a rank range and prime list");
  table->add_option("--rank", tb_rank, "rank or range, e.g. 3 or 3..4")->required();
  table->add_option("--primes", tb_primes, "comma-separated primes")->required();
  table->add_option("--out", tb_out, "output format: tsv or json")
      ->check(CLI::IsMember({"tsv", "json"}));

  // verify
  std::string vf_suite, vf_primes;
  int vf_rank_max = 0, vf_max_coeff = 0, vf_height = 24;
  long long vf_moncap = 40000, vf_latcap = 1500, vf_time_ms = 30000;
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", vf_suite, "chevalley, table2, appendix, or branching")
      ->required();
  verify->add_option("--rank-max", vf_rank_max, "largest rank to include (0 = suite default)");
  verify->add_option("--primes", vf_primes, "comma-separated primes (suite default if empty)");
  verify->add_option("--max-coeff", vf_max_coeff,
                     "cap each weight coefficient (branching suite; 0 = p-1)");
  verify->add_option("--height", vf_height, "weight-drop height cap (branching suite)");
  verify->add_option("--monomial-cap", vf_moncap, "monomial count cap (branching suite)");
  verify->add_option("--lattice-cap", vf_latcap, "lattice dimension cap (branching suite)");
  verify->add_option("--time-ms", vf_time_ms,
                     "per-instance time budget in ms (branching suite; 0 = none)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto guarded = [](const std::function<int()>& f) -> int {
    try {
      return f();
    } catch (const BudgetExceeded& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 3;
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
  };

  if (classify->parsed())
    return guarded([&] { return run_classify(cl_rank, cl_p, cl_lambda, cl_general, cl_mode); });
  if (decompose->parsed())
    return guarded([&] {
      return run_decompose(de_rank, de_p, de_lambda, de_budget_ms, de_height, de_moncap,
                           de_latcap);
    });
  if (chr->parsed())
    return guarded([&] {
      return run_char(ch_type, ch_rank, ch_lambda, ch_p, ch_kind, ch_height, ch_moncap,
                      ch_latcap);
    });
  if (mult->parsed())
    return guarded([&] {
      return run_mult(mu_type, mu_rank, mu_lambda, mu_delta, mu_p, mu_height, mu_moncap,
                      mu_latcap);
    });
  if (maxvec->parsed())
    return guarded([&] {
      return run_maxvec(mv_case, mv_n, mv_k, mv_a, mv_b, mv_p, mv_height, mv_moncap, mv_latcap);
    });
  if (table->parsed()) return guarded([&] { return run_table(tb_rank, tb_primes, tb_out); });
  if (verify->parsed())
    return guarded([&] {
      return run_verify(vf_suite, vf_rank_max, vf_primes, vf_max_coeff, vf_height, vf_moncap,
                        vf_latcap, vf_time_ms);
    });
  return 2;
}
