/*
  maxvec.cpp

  Closed-form weight-space bases, maximal-vector solvers, and quotient
  spaces. See maxvec.hpp for the families and conventions.

  Everything here funnels through two coordinate systems supplied by the
  straightening engine: pivot-monomial coordinates over Q, and
  minimal-lattice coordinates (integral, reducible mod p). A module element
  is zero exactly when its coordinates vanish; the raw PBW combination is
  not a zero test.
*/
#include "branchlie/maxvec.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "branchlie/chevalley.hpp"
#include "branchlie/weylmod.hpp"

namespace branchlie {

namespace {

Weight w_sub(const Weight& a, const Weight& b) {
  Weight r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Weight w_add(const Weight& a, const Weight& b) {
  Weight r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

// Integer coefficients of λ − μ on the simple roots; throws when μ does not
// sit below λ in the root lattice.
std::vector<long long> drop_coords(const RootSystem& rs, const Weight& lambda,
                                   const Weight& mu) {
  auto q = rs.root_coords_of_weight(w_sub(lambda, mu));
  std::vector<long long> d;
  d.reserve(q.size());
  for (const Rat& c : q) {
    if (!is_integer(c))
      throw std::invalid_argument("weight is not below the highest weight in the root lattice");
    d.push_back(to_int(c).get_si());
  }
  return d;
}

int weyl_mult_of(const RootSystem& rs, const Weight& lambda, const Weight& mu) {
  if (!rs.dominates(lambda, mu)) return 0;
  Int m = freudenthal_mult(rs, lambda, mu);
  return static_cast<int>(m.get_si());
}

// Coordinates of x in the minimal-lattice basis at weight w (exact; the
// lattice is the integral span of the divided-power monomial images, so any
// element built by lowering operators has integer coordinates).
std::vector<Int> lattice_coords(WeylModule& wm, const Weight& w,
                                const ModuleElement& x,
                                std::map<Weight, QMat>& inv_cache) {
  auto it = inv_cache.find(w);
  if (it == inv_cache.end()) {
    QMat lpm = wm.lattice_pivot_matrix(w);
    auto inv = inverse_q(lpm);
    if (!inv) throw std::logic_error("lattice pivot matrix is singular");
    it = inv_cache.emplace(w, std::move(*inv)).first;
  }
  const QMat& inv = it->second;
  std::vector<Rat> v = wm.pivot_coordinates(w, x);
  int r = inv.rows();
  // Row vector u with u · (lattice rows in pivot basis) = v.
  std::vector<Int> u(static_cast<size_t>(r));
  for (int j = 0; j < r; ++j) {
    Rat s(0);
    for (int i = 0; i < r; ++i) s += v[static_cast<size_t>(i)] * inv(i, j);
    u[static_cast<size_t>(j)] = to_int(s);
  }
  return u;
}

std::vector<long long> lattice_coords_p(WeylModule& wm, const Weight& w,
                                        const ModuleElement& x, long long p,
                                        std::map<Weight, QMat>& inv_cache) {
  std::vector<Int> u = lattice_coords(wm, w, x, inv_cache);
  std::vector<long long> r(u.size());
  for (size_t i = 0; i < u.size(); ++i) r[i] = mod_p(u[i], p);
  return r;
}

// α_{j+1} as a weight (0-based j).
Weight simple_root_weight(const RootSystem& rs, int j) {
  RootVec v(static_cast<size_t>(rs.rank()), 0);
  v[static_cast<size_t>(j)] = 1;
  return rs.weight_of_rootvec(v);
}

ModuleElement apply_factors(WeylModule& wm, const std::vector<int>& factors) {
  ModuleElement x = wm.highest();
  for (auto it = factors.rbegin(); it != factors.rend(); ++it)
    x = wm.apply_f(*it, 1, x);
  return x;
}

// "f(i,j)" for the chain root α_i+⋯+α_j, "F(r,s)" for the doubled tail;
// repeated factors grouped into a power.
std::string root_symbol(const RootSystem& rs, int idx) {
  const Root& rt = rs.positive(idx);
  int n = rs.rank();
  int lo = -1, hi = -1;
  bool chain = true, doubled = false;
  for (int t = 0; t < n; ++t) {
    int c = rt.c[static_cast<size_t>(t)];
    if (c != 0) {
      if (lo < 0) lo = t;
      hi = t;
      if (c == 2) doubled = true;
      if (c > 2) chain = false;
    }
  }
  std::ostringstream os;
  if (chain && !doubled) {
    os << "f(" << lo + 1 << "," << hi + 1 << ")";
    return os.str();
  }
  if (doubled && hi == n - 1) {
    // locate the first doubled coefficient
    int s = -1;
    for (int t = lo; t < n; ++t)
      if (rt.c[static_cast<size_t>(t)] == 2) { s = t; break; }
    os << "F(" << lo + 1 << "," << s + 1 << ")";
    return os.str();
  }
  os << "root[" << idx << "]";
  return os.str();
}

std::string label_for(const RootSystem& rs, const std::vector<int>& factors) {
  std::ostringstream os;
  size_t i = 0;
  bool first = true;
  while (i < factors.size()) {
    size_t j = i;
    while (j < factors.size() && factors[j] == factors[i]) ++j;
    if (!first) os << " ";
    os << root_symbol(rs, factors[i]);
    if (j - i > 1) os << "^" << j - i;
    first = false;
    i = j;
  }
  os << " v";
  return os.str();
}

Generator make_gen(WeylModule& wm, std::vector<int> factors) {
  ModuleElement x = apply_factors(wm, factors);
  std::string label = label_for(wm.roots(), factors);
  return Generator{std::move(label), std::move(factors), std::move(x)};
}

long long nonneg_mod(long long v, long long p) {
  long long r = v % p;
  return r < 0 ? r + p : r;
}

bool is_quotient_family(CaseTag t) {
  return t == CaseTag::B_a_l1_l2 || t == CaseTag::B_a_l1_lk;
}

// k in the killed vector f_{1,k}v − Σ f_{1,r}f_{r+1,k}v.
int killed_index(const CaseParams& cp) {
  return cp.tag == CaseTag::B_a_l1_l2 ? 2 : cp.k;
}

void check_module_matches(const WeylModule& wm, const CaseParams& cp) {
  if (wm.roots().type() != case_lie_type(cp) || wm.roots().rank() != cp.rank ||
      wm.lambda() != case_lambda(cp))
    throw std::invalid_argument("module does not match the case parameters");
}

// Display list of the quotient weight space for the aλ_1+λ_k families.
std::vector<std::vector<int>> quotient_factor_lists(const RootSystem& rs,
                                                    const CaseParams& cp) {
  int n = cp.rank;
  std::vector<std::vector<int>> out;
  if (cp.tag == CaseTag::B_a_l1_l2) {
    out.push_back({doubled_tail_root_index(rs, 1, 2)});
    for (int j = 2; j <= n - 1; ++j)
      out.push_back({chain_root_index(rs, 2, j), doubled_tail_root_index(rs, 1, j + 1)});
    out.push_back({chain_root_index(rs, 2, n), chain_root_index(rs, 1, n)});
    return out;
  }
  int k = cp.k;
  out.push_back({doubled_tail_root_index(rs, 1, k)});
  for (int i = 1; i <= k - 2; ++i)
    out.push_back({chain_root_index(rs, 1, i), doubled_tail_root_index(rs, i + 1, k)});
  for (int i = 1; i <= k - 2; ++i)
    out.push_back({chain_root_index(rs, 1, i), chain_root_index(rs, i + 1, k - 1),
                   chain_root_index(rs, k, k), doubled_tail_root_index(rs, k, k + 1)});
  for (int i = 1; i <= k - 2; ++i)
    for (int j = k; j <= n - 1; ++j)
      out.push_back({chain_root_index(rs, 1, i), chain_root_index(rs, k, j),
                     doubled_tail_root_index(rs, i + 1, j + 1)});
  for (int j = k; j <= n - 1; ++j)
    out.push_back({chain_root_index(rs, k, j), doubled_tail_root_index(rs, 1, j + 1)});
  out.push_back({chain_root_index(rs, k, n), chain_root_index(rs, 1, n)});
  return out;
}

}  // namespace

std::string to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::generic: return "generic";
    case CaseTag::A_row: return "A_row";
    case CaseTag::B_a_l1: return "B_aλ1";
    case CaseTag::B_li: return "B_λi";
    case CaseTag::B_a_l1_l2: return "B_aλ1λ2";
    case CaseTag::B_a_l1_lk: return "B_aλ1λk";
    case CaseTag::quotient: return "quotient";
  }
  throw std::logic_error("unknown case tag");
}

CaseTag case_tag_from_string(const std::string& s) {
  if (s == "generic") return CaseTag::generic;
  if (s == "A_row") return CaseTag::A_row;
  if (s == "B_aλ1" || s == "B_al1") return CaseTag::B_a_l1;
  if (s == "B_λi" || s == "B_li") return CaseTag::B_li;
  if (s == "B_aλ1λ2" || s == "B_al1l2") return CaseTag::B_a_l1_l2;
  if (s == "B_aλ1λk" || s == "B_al1lk") return CaseTag::B_a_l1_lk;
  if (s == "quotient") return CaseTag::quotient;
  throw std::invalid_argument("unknown case tag: " + s);
}

void validate_case(const CaseParams& cp) {
  switch (cp.tag) {
    case CaseTag::A_row:
      if (cp.rank < 2) throw std::invalid_argument("A_row needs rank >= 2");
      if (cp.a < 1 || cp.b < 1)
        throw std::invalid_argument("A_row needs a >= 1 and b >= 1");
      return;
    case CaseTag::B_a_l1:
      if (cp.rank < 3) throw std::invalid_argument("type B cases need rank >= 3");
      if (cp.a < 2) throw std::invalid_argument("aλ1 case needs a >= 2");
      return;
    case CaseTag::B_li:
      if (cp.rank < 3) throw std::invalid_argument("type B cases need rank >= 3");
      if (cp.k <= 1 || cp.k >= cp.rank)
        throw std::invalid_argument("λi case needs 1 < i < n");
      return;
    case CaseTag::B_a_l1_l2:
      if (cp.rank < 3) throw std::invalid_argument("type B cases need rank >= 3");
      if (cp.a < 1) throw std::invalid_argument("aλ1+λ2 case needs a >= 1");
      return;
    case CaseTag::B_a_l1_lk:
      if (cp.rank < 4)
        throw std::invalid_argument("aλ1+λk case needs rank >= 4");
      if (cp.k <= 2 || cp.k >= cp.rank)
        throw std::invalid_argument("aλ1+λk case needs 2 < k < n");
      if (cp.a < 1) throw std::invalid_argument("aλ1+λk case needs a >= 1");
      return;
    case CaseTag::generic:
    case CaseTag::quotient:
      throw std::invalid_argument("no closed-form family for this tag");
  }
}

LieType case_lie_type(const CaseParams& cp) {
  return cp.tag == CaseTag::A_row ? LieType::A : LieType::B;
}

Weight case_lambda(const CaseParams& cp) {
  validate_case(cp);
  Weight w(static_cast<size_t>(cp.rank), 0);
  switch (cp.tag) {
    case CaseTag::A_row:
      w[0] = static_cast<int>(cp.a);
      w[static_cast<size_t>(cp.rank - 1)] += static_cast<int>(cp.b);
      break;
    case CaseTag::B_a_l1:
      w[0] = static_cast<int>(cp.a);
      break;
    case CaseTag::B_li:
      w[static_cast<size_t>(cp.k - 1)] = 1;
      break;
    case CaseTag::B_a_l1_l2:
      w[0] = static_cast<int>(cp.a);
      w[1] = 1;
      break;
    case CaseTag::B_a_l1_lk:
      w[0] = static_cast<int>(cp.a);
      w[static_cast<size_t>(cp.k - 1)] = 1;
      break;
    default:
      break;
  }
  return w;
}

Weight case_mu(const CaseParams& cp) {
  validate_case(cp);
  RootSystem rs = RootSystem::build(case_lie_type(cp), cp.rank);
  RootVec d(static_cast<size_t>(cp.rank), 0);
  switch (cp.tag) {
    case CaseTag::A_row:
      for (auto& c : d) c = 1;
      break;
    case CaseTag::B_a_l1:
      for (auto& c : d) c = 2;
      break;
    case CaseTag::B_li:
    case CaseTag::B_a_l1_l2:
    case CaseTag::B_a_l1_lk: {
      int m = cp.tag == CaseTag::B_a_l1_l2 ? 2 : cp.k;
      for (int t = 0; t < cp.rank; ++t) d[static_cast<size_t>(t)] = t < m - 1 ? 1 : 2;
      break;
    }
    default:
      break;
  }
  return w_sub(case_lambda(cp), rs.weight_of_rootvec(d));
}

bool case_divisibility(const CaseParams& cp, long long p) {
  validate_case(cp);
  if (p <= 0) return false;
  long long v = 0;
  switch (cp.tag) {
    case CaseTag::A_row: v = cp.a + cp.b + cp.rank - 1; break;
    case CaseTag::B_a_l1: v = 2 * (cp.a + cp.rank) - 3; break;
    case CaseTag::B_li: return false;
    case CaseTag::B_a_l1_l2: v = 2 * cp.rank - 3; break;
    case CaseTag::B_a_l1_lk: v = 2 * (cp.rank - cp.k) + 1; break;
    default: return false;
  }
  return v % p == 0;
}

std::vector<long long> case_solution_pattern(const CaseParams& cp, long long p) {
  validate_case(cp);
  if (p <= 0 || cp.tag == CaseTag::B_li) return {};
  std::vector<long long> s;
  switch (cp.tag) {
    case CaseTag::A_row:
      s.assign(static_cast<size_t>(cp.rank), 1);
      s.back() = nonneg_mod(-cp.b, p);
      break;
    case CaseTag::B_a_l1:
    case CaseTag::B_a_l1_l2:
      s.assign(static_cast<size_t>(cp.rank), nonneg_mod(4, p));
      s.back() = 1;
      break;
    case CaseTag::B_a_l1_lk: {
      long long n = cp.rank, k = cp.k;
      s.push_back(nonneg_mod(4, p));
      for (int i = 0; i < k - 2; ++i) s.push_back(nonneg_mod(n - k - 1, p));
      for (int i = 0; i < k - 2; ++i) s.push_back(nonneg_mod(k - n, p));
      for (int i = 0; i < (k - 2) * (n - k); ++i) s.push_back(nonneg_mod(-2, p));
      for (int i = 0; i < n - k; ++i) s.push_back(nonneg_mod(4, p));
      s.push_back(1);
      break;
    }
    default:
      break;
  }
  return s;
}

int chain_root_index(const RootSystem& rs, int i, int j) {
  if (i < 1 || i > j || j > rs.rank())
    throw std::invalid_argument("chain root needs 1 <= i <= j <= rank");
  RootVec v(static_cast<size_t>(rs.rank()), 0);
  for (int t = i; t <= j; ++t) v[static_cast<size_t>(t - 1)] = 1;
  int idx = rs.index_of(v);
  if (idx < 0) throw std::logic_error("chain root missing from the system");
  return idx;
}

int doubled_tail_root_index(const RootSystem& rs, int r, int s) {
  if (rs.type() != LieType::B)
    throw std::invalid_argument("doubled-tail roots exist only in type B");
  int n = rs.rank();
  if (r < 1 || r >= s || s > n)
    throw std::invalid_argument("doubled-tail root needs 1 <= r < s <= n");
  RootVec v(static_cast<size_t>(n), 0);
  for (int t = r; t < s; ++t) v[static_cast<size_t>(t - 1)] = 1;
  for (int t = s; t <= n; ++t) v[static_cast<size_t>(t - 1)] = 2;
  int idx = rs.index_of(v);
  if (idx < 0) throw std::logic_error("doubled-tail root missing from the system");
  return idx;
}

std::vector<int> supported_positive_roots(const RootSystem& rs,
                                          const Weight& lambda) {
  std::vector<int> out;
  for (int idx = 0; idx < rs.num_positive(); ++idx) {
    Weight w = w_sub(lambda, rs.weight_of_rootvec(rs.positive(idx).c));
    if (rs.dominates(lambda, rs.dominant_rep(w))) out.push_back(idx);
  }
  return out;
}

GeneratorList generating_monomials(WeylModule& wm, const Weight& mu,
                                   bool restricted, long long p) {
  const RootSystem& rs = wm.roots();
  const Weight& lambda = wm.lambda();
  std::vector<long long> d = drop_coords(rs, lambda, mu);
  if (restricted && p > 0) {
    for (long long c : d)
      if (c >= p)
        throw std::invalid_argument(
            "restricted spanning needs every coefficient of λ−μ below p");
  }
  std::vector<int> supported = supported_positive_roots(rs, lambda);
  std::set<int> supp(supported.begin(), supported.end());

  GeneratorList out;
  out.tag = CaseTag::generic;
  out.lambda = lambda;
  out.mu = mu;
  out.excluded_roots = rs.num_positive() - static_cast<int>(supported.size());

  for (const PBWMonomial& m : wm.monomials_of_weight(mu)) {
    if (restricted) {
      bool ok = true;
      for (const auto& [idx, k] : m.factors)
        if (!supp.count(idx)) { ok = false; break; }
      if (!ok) continue;
    }
    ModuleElement x{lambda, {}};
    add_term(x.terms, m, Rat(1));
    out.gens.push_back(Generator{to_string(m), {}, std::move(x)});
  }

  if (restricted) {
    // The filtered list must still span the weight space.
    int r = static_cast<int>(wm.pivot_monomials(mu).size());
    int m = out.size();
    if (p == 0) {
      QMat c(m, r);
      for (int i = 0; i < m; ++i) {
        auto v = wm.pivot_coordinates(mu, out.gens[static_cast<size_t>(i)].element);
        for (int j = 0; j < r; ++j) c(i, j) = v[static_cast<size_t>(j)];
      }
      if (rank_q(c) != r)
        throw std::logic_error("restricted monomials fail to span over Q");
    } else {
      std::map<Weight, QMat> cache;
      ZMat c(m, r);
      for (int i = 0; i < m; ++i) {
        auto u = lattice_coords(wm, mu, out.gens[static_cast<size_t>(i)].element, cache);
        for (int j = 0; j < r; ++j) c(i, j) = u[static_cast<size_t>(j)];
      }
      if (rank_p(c, p) != r)
        throw std::logic_error("restricted monomials fail to span mod p");
    }
  }
  return out;
}

GeneratorList case_basis(WeylModule& wm, const CaseParams& cp) {
  validate_case(cp);
  check_module_matches(wm, cp);
  const RootSystem& rs = wm.roots();
  int n = cp.rank;

  std::vector<std::vector<int>> lists;
  switch (cp.tag) {
    case CaseTag::A_row:
      for (int r = 1; r <= n - 1; ++r)
        lists.push_back({chain_root_index(rs, 1, r), chain_root_index(rs, r + 1, n)});
      lists.push_back({chain_root_index(rs, 1, n)});
      break;
    case CaseTag::B_a_l1:
      for (int j = 1; j <= n - 1; ++j)
        lists.push_back({chain_root_index(rs, 1, j), doubled_tail_root_index(rs, 1, j + 1)});
      lists.push_back({chain_root_index(rs, 1, n), chain_root_index(rs, 1, n)});
      break;
    case CaseTag::B_li: {
      int i = cp.k;
      lists.push_back({doubled_tail_root_index(rs, 1, i)});
      lists.push_back({chain_root_index(rs, 1, i - 1), chain_root_index(rs, i, i),
                       doubled_tail_root_index(rs, i, i + 1)});
      for (int j = i; j <= n - 1; ++j)
        lists.push_back({chain_root_index(rs, i, j), doubled_tail_root_index(rs, 1, j + 1)});
      break;
    }
    case CaseTag::B_a_l1_l2:
      lists.push_back({doubled_tail_root_index(rs, 1, 2)});
      lists.push_back({chain_root_index(rs, 1, 1), chain_root_index(rs, 2, 2),
                       doubled_tail_root_index(rs, 2, 3)});
      for (int j = 2; j <= n - 1; ++j)
        lists.push_back({chain_root_index(rs, 1, j), doubled_tail_root_index(rs, 2, j + 1)});
      for (int j = 2; j <= n - 1; ++j)
        lists.push_back({chain_root_index(rs, 2, j), doubled_tail_root_index(rs, 1, j + 1)});
      lists.push_back({chain_root_index(rs, 2, n), chain_root_index(rs, 1, n)});
      break;
    case CaseTag::B_a_l1_lk: {
      int k = cp.k;
      lists.push_back({doubled_tail_root_index(rs, 1, k)});
      lists.push_back({chain_root_index(rs, 1, k - 1), chain_root_index(rs, k, k),
                       doubled_tail_root_index(rs, k, k + 1)});
      for (int i = 1; i <= k - 2; ++i)
        lists.push_back({chain_root_index(rs, 1, i), doubled_tail_root_index(rs, i + 1, k)});
      for (int j = k; j <= n - 1; ++j)
        lists.push_back({chain_root_index(rs, 1, j), doubled_tail_root_index(rs, k, j + 1)});
      for (int i = 1; i <= k - 2; ++i)
        lists.push_back({chain_root_index(rs, 1, i), chain_root_index(rs, i + 1, k - 1),
                         chain_root_index(rs, k, k), doubled_tail_root_index(rs, k, k + 1)});
      for (int i = 1; i <= k - 2; ++i)
        for (int j = k; j <= n - 1; ++j)
          lists.push_back({chain_root_index(rs, 1, i), chain_root_index(rs, k, j),
                           doubled_tail_root_index(rs, i + 1, j + 1)});
      for (int j = k; j <= n - 1; ++j)
        lists.push_back({chain_root_index(rs, k, j), doubled_tail_root_index(rs, 1, j + 1)});
      lists.push_back({chain_root_index(rs, k, n), chain_root_index(rs, 1, n)});
      break;
    }
    default:
      throw std::invalid_argument("no closed-form basis for this tag");
  }

  GeneratorList out;
  out.tag = cp.tag;
  out.lambda = case_lambda(cp);
  out.mu = case_mu(cp);
  for (auto& f : lists) out.gens.push_back(make_gen(wm, std::move(f)));

  // Certify: cardinality equals the weight multiplicity (independent
  // recursion), and the list is linearly independent over Q.
  int m = out.size();
  if (freudenthal_mult(rs, out.lambda, out.mu) != m)
    throw std::logic_error("display list has the wrong cardinality");
  QMat c(m, m);
  for (int i = 0; i < m; ++i) {
    auto v = wm.pivot_coordinates(out.mu, out.gens[static_cast<size_t>(i)].element);
    if (static_cast<int>(v.size()) != m)
      throw std::logic_error("weight-space dimension mismatch");
    for (int j = 0; j < m; ++j) c(i, j) = v[static_cast<size_t>(j)];
  }
  if (rank_q(c) != m)
    throw std::logic_error("display list is not linearly independent over Q");
  return out;
}

ModuleElement case_killed_vector(WeylModule& wm, const CaseParams& cp) {
  validate_case(cp);
  if (!is_quotient_family(cp.tag))
    throw std::invalid_argument("only the aλ1+λk families use a killed vector");
  check_module_matches(wm, cp);
  const RootSystem& rs = wm.roots();
  int k = killed_index(cp);
  ModuleElement u = apply_factors(wm, {chain_root_index(rs, 1, k)});
  for (int r = 1; r <= k - 1; ++r) {
    ModuleElement y = apply_factors(
        wm, {chain_root_index(rs, 1, r), chain_root_index(rs, r + 1, k)});
    add_scaled(u.terms, y.terms, Rat(-1));
  }
  return u;
}

// ---------------------------------------------------------------------------
// QuotientSpace

QuotientSpace::QuotientSpace(WeylModule& wm, ModuleElement u_plus, Weight mu,
                             long long p,
                             std::optional<GeneratorList> display_basis)
    : wm_(&wm), u_plus_(std::move(u_plus)), mu_(std::move(mu)), p_(p) {
  if (p_ <= 1) throw std::invalid_argument("quotient spaces need a prime p");
  const RootSystem& rs = wm_->roots();
  nu_ = wm_->weight_of(u_plus_);

  // The killed vector must be nonzero and maximal mod p.
  bool nonzero = false;
  for (long long c : lattice_coords_p(*wm_, nu_, u_plus_, p_, inv_cache_))
    if (c != 0) nonzero = true;
  if (!nonzero)
    throw std::invalid_argument("killed vector vanishes mod p");
  for (int j = 0; j < rs.rank(); ++j) {
    ModuleElement y = wm_->apply_e(rs.simple_index(j), 1, u_plus_);
    Weight w = w_add(nu_, simple_root_weight(rs, j));
    if (weyl_mult_of(rs, wm_->lambda(), w) == 0) continue;
    for (long long c : lattice_coords_p(*wm_, w, y, p_, inv_cache_))
      if (c != 0)
        throw std::invalid_argument("killed vector is not maximal mod p");
  }

  int mv = weyl_mult_of(rs, wm_->lambda(), mu_);
  const FpSpace& sub = component(mu_);
  int d = mv - sub.dim();

  FpSpace cert = sub;
  if (display_basis) {
    if (display_basis->mu != mu_ || display_basis->lambda != wm_->lambda())
      throw std::invalid_argument("display basis is for a different weight space");
    if (display_basis->size() != d)
      throw std::logic_error("display basis has the wrong cardinality for the quotient");
    basis_ = std::move(*display_basis);
    basis_.tag = CaseTag::quotient;
    for (const Generator& g : basis_.gens) {
      auto c = lattice_coords_p(*wm_, mu_, g.element, p_, inv_cache_);
      if (!cert.add(c))
        throw std::logic_error("display basis is dependent modulo the submodule");
      reduced_basis_.push_back(sub.reduce(c));
    }
  } else {
    // Fall back to lattice vectors that survive as a complement.
    basis_.tag = CaseTag::quotient;
    basis_.lambda = wm_->lambda();
    basis_.mu = mu_;
    WeightSpaceLattice lat = wm_->lattice_basis(mu_);
    for (int t = 0; t < lat.rank() && cert.dim() < mv; ++t) {
      std::vector<long long> c(static_cast<size_t>(mv), 0);
      c[static_cast<size_t>(t)] = 1;
      if (!cert.add(c)) continue;
      ModuleElement x{wm_->lambda(), {}};
      for (size_t col = 0; col < lat.monomials.size(); ++col) {
        const Int& z = lat.basis(t, static_cast<int>(col));
        if (z != 0) add_term(x.terms, lat.monomials[col], Rat(z));
      }
      basis_.gens.push_back(
          Generator{"lattice[" + std::to_string(t) + "]", {}, std::move(x)});
      reduced_basis_.push_back(sub.reduce(c));
    }
    if (basis_.size() != d)
      throw std::logic_error("failed to complete a quotient basis from the lattice");
  }
  if (cert.dim() != mv)
    throw std::logic_error("quotient basis certification left a gap");
}

const FpSpace& QuotientSpace::component(const Weight& w) {
  auto it = components_.find(w);
  if (it != components_.end()) return it->second;

  const RootSystem& rs = wm_->roots();
  int mv = weyl_mult_of(rs, wm_->lambda(), w);
  FpSpace sp(p_, mv);
  if (mv > 0) {
    // Monomials whose drop carries ν to w, applied to u⁺ with divided powers.
    std::vector<long long> dn = drop_coords(rs, wm_->lambda(), nu_);
    std::vector<long long> dw = drop_coords(rs, wm_->lambda(), w);
    bool reachable = true;
    RootVec d(static_cast<size_t>(rs.rank()));
    for (size_t t = 0; t < d.size(); ++t) {
      long long c = dw[t] - dn[t];
      if (c < 0) { reachable = false; break; }
      d[t] = static_cast<int>(c);
    }
    if (reachable) {
      Weight shifted = w_sub(wm_->lambda(), rs.weight_of_rootvec(d));
      for (const PBWMonomial& m : wm_->monomials_of_weight(shifted)) {
        ModuleElement x = u_plus_;
        for (auto it2 = m.factors.rbegin(); it2 != m.factors.rend(); ++it2)
          x = wm_->apply_f(it2->first, it2->second, x);
        sp.add(lattice_coords_p(*wm_, w, x, p_, inv_cache_));
      }
    }
  }
  return components_.emplace(w, std::move(sp)).first->second;
}

int QuotientSpace::submodule_dim(const Weight& w) { return component(w).dim(); }

std::vector<long long> QuotientSpace::reduce_at(const Weight& w,
                                                const ModuleElement& x) {
  const RootSystem& rs = wm_->roots();
  if (weyl_mult_of(rs, wm_->lambda(), w) == 0) return {};
  auto c = lattice_coords_p(*wm_, w, x, p_, inv_cache_);
  return component(w).reduce(std::move(c));
}

bool QuotientSpace::vanishes(const ModuleElement& x) {
  if (x.is_zero()) return true;
  Weight w = wm_->weight_of(x);
  for (long long c : reduce_at(w, x))
    if (c != 0) return false;
  return true;
}

bool QuotientSpace::equal_classes(const ModuleElement& x,
                                 const ModuleElement& y) {
  if (x.is_zero()) return vanishes(y);
  if (y.is_zero()) return vanishes(x);
  if (wm_->weight_of(x) != wm_->weight_of(y))
    throw std::invalid_argument("cannot compare classes of different weights");
  ModuleElement d = x;
  add_scaled(d.terms, y.terms, Rat(-1));
  return vanishes(d);
}

std::vector<long long> QuotientSpace::coordinates(const ModuleElement& x) {
  if (!x.is_zero() && wm_->weight_of(x) != mu_)
    throw std::invalid_argument("element is outside the quotient weight space");
  int mv = component(mu_).cols();
  std::vector<long long> rx(static_cast<size_t>(mv), 0);
  if (!x.is_zero())
    rx = component(mu_).reduce(lattice_coords_p(*wm_, mu_, x, p_, inv_cache_));
  int m = basis_.size();
  ZMat a(mv, m);
  for (int i = 0; i < m; ++i)
    for (int r = 0; r < mv; ++r)
      a(r, i) = Int(static_cast<long>(
          reduced_basis_[static_cast<size_t>(i)][static_cast<size_t>(r)]));
  std::vector<Int> b(static_cast<size_t>(mv));
  for (int r = 0; r < mv; ++r)
    b[static_cast<size_t>(r)] = Int(static_cast<long>(rx[static_cast<size_t>(r)]));
  auto sol = solve_p(a, b, p_);
  if (!sol)
    throw std::logic_error("quotient coordinates failed; basis does not span");
  return *sol;
}

// ---------------------------------------------------------------------------
// Maximal-vector solvers

MaxVecSolution maximal_vector_space(WeylModule& wm, const GeneratorList& basis,
                                    long long p) {
  const RootSystem& rs = wm.roots();
  const Weight& mu = basis.mu;
  if (basis.lambda != wm.lambda())
    throw std::invalid_argument("basis belongs to a different module");
  int m = basis.size();
  if (m == 0) throw std::invalid_argument("empty coordinate basis");

  MaxVecSolution out;
  out.p = p;
  out.basis = basis;

  std::map<Weight, QMat> cache;

  // The coordinate list must be a basis of the whole weight space.
  {
    auto probe = wm.pivot_coordinates(mu, basis.gens[0].element);
    if (static_cast<int>(probe.size()) != m)
      throw std::invalid_argument("coordinate list does not span the weight space");
  }
  if (p == 0) {
    QMat c(m, m);
    for (int i = 0; i < m; ++i) {
      auto v = wm.pivot_coordinates(mu, basis.gens[static_cast<size_t>(i)].element);
      for (int j = 0; j < m; ++j) c(i, j) = v[static_cast<size_t>(j)];
    }
    if (rank_q(c) != m)
      throw std::invalid_argument("coordinate list is not a basis over Q");
  } else {
    ZMat c(m, m);
    for (int i = 0; i < m; ++i) {
      auto u = lattice_coords(wm, mu, basis.gens[static_cast<size_t>(i)].element, cache);
      for (int j = 0; j < m; ++j) c(i, j) = u[static_cast<size_t>(j)];
    }
    if (rank_p(c, p) != m)
      throw std::invalid_argument("coordinate list is not a basis mod p");
  }

  // Raising images of each basis element, one block of constraint rows per
  // simple root.
  std::vector<std::vector<Rat>> qrows;
  std::vector<std::vector<long long>> prows;
  for (int j = 0; j < rs.rank(); ++j) {
    Weight w = w_add(mu, simple_root_weight(rs, j));
    if (weyl_mult_of(rs, wm.lambda(), w) == 0) continue;
    int sidx = rs.simple_index(j);
    std::vector<std::vector<Rat>> qcols;
    std::vector<std::vector<Int>> zcols;
    int rdim = 0;
    for (int i = 0; i < m; ++i) {
      ModuleElement y = wm.apply_e(sidx, 1, basis.gens[static_cast<size_t>(i)].element);
      if (p == 0) {
        qcols.push_back(wm.pivot_coordinates(w, y));
        rdim = static_cast<int>(qcols.back().size());
      } else {
        zcols.push_back(lattice_coords(wm, w, y, cache));
        rdim = static_cast<int>(zcols.back().size());
      }
    }
    for (int t = 0; t < rdim; ++t) {
      if (p == 0) {
        std::vector<Rat> row(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) row[static_cast<size_t>(i)] = qcols[static_cast<size_t>(i)][static_cast<size_t>(t)];
        qrows.push_back(std::move(row));
      } else {
        std::vector<long long> row(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i)
          row[static_cast<size_t>(i)] = mod_p(zcols[static_cast<size_t>(i)][static_cast<size_t>(t)], p);
        prows.push_back(std::move(row));
      }
    }
  }

  if (p == 0) {
    QMat a(static_cast<int>(qrows.size()), m);
    for (size_t r = 0; r < qrows.size(); ++r)
      for (int i = 0; i < m; ++i) a(static_cast<int>(r), i) = qrows[r][static_cast<size_t>(i)];
    out.vectors_q = kernel_q(a);
    out.dim = static_cast<int>(out.vectors_q.size());
  } else {
    ZMat a(static_cast<int>(prows.size()), m);
    for (size_t r = 0; r < prows.size(); ++r)
      for (int i = 0; i < m; ++i)
        a(static_cast<int>(r), i) = Int(static_cast<long>(prows[r][static_cast<size_t>(i)]));
    out.vectors_p = kernel_p(a, p);
    out.dim = static_cast<int>(out.vectors_p.size());
  }

  // Re-verify each solution by applying every raising operator to the
  // reconstructed element.
  auto check_zero = [&](const ModuleElement& y, const Weight& w) {
    if (weyl_mult_of(rs, wm.lambda(), w) == 0) return true;
    if (p == 0) {
      for (const Rat& c : wm.pivot_coordinates(w, y))
        if (c != 0) return false;
    } else {
      for (long long c : lattice_coords_p(wm, w, y, p, cache))
        if (c != 0) return false;
    }
    return true;
  };
  int nsol = out.dim;
  for (int s = 0; s < nsol; ++s) {
    ModuleElement v{wm.lambda(), {}};
    for (int i = 0; i < m; ++i) {
      Rat c = p == 0 ? out.vectors_q[static_cast<size_t>(s)][static_cast<size_t>(i)]
                     : Rat(static_cast<long>(out.vectors_p[static_cast<size_t>(s)][static_cast<size_t>(i)]));
      if (c != 0) add_scaled(v.terms, basis.gens[static_cast<size_t>(i)].element.terms, c);
    }
    for (int j = 0; j < rs.rank(); ++j) {
      Weight w = w_add(mu, simple_root_weight(rs, j));
      ModuleElement y = wm.apply_e(rs.simple_index(j), 1, v);
      if (!check_zero(y, w))
        throw std::logic_error("solver produced a vector that is not maximal");
    }
  }
  return out;
}

MaxVecSolution maximal_vector_space(WeylModule& wm, const Weight& mu,
                                    long long p) {
  GeneratorList basis;
  basis.tag = CaseTag::generic;
  basis.lambda = wm.lambda();
  basis.mu = mu;
  if (p == 0) {
    for (const PBWMonomial& m : wm.pivot_monomials(mu)) {
      ModuleElement x{wm.lambda(), {}};
      add_term(x.terms, m, Rat(1));
      basis.gens.push_back(Generator{to_string(m), {}, std::move(x)});
    }
  } else {
    WeightSpaceLattice lat = wm.lattice_basis(mu);
    for (int t = 0; t < lat.rank(); ++t) {
      ModuleElement x{wm.lambda(), {}};
      for (size_t col = 0; col < lat.monomials.size(); ++col) {
        const Int& z = lat.basis(t, static_cast<int>(col));
        if (z != 0) add_term(x.terms, lat.monomials[col], Rat(z));
      }
      basis.gens.push_back(
          Generator{"lattice[" + std::to_string(t) + "]", {}, std::move(x)});
    }
  }
  return maximal_vector_space(wm, basis, p);
}

MaxVecSolution maximal_vector_space(QuotientSpace& qs) {
  WeylModule& wm = qs.module();
  const RootSystem& rs = wm.roots();
  const GeneratorList& basis = qs.basis();
  const Weight& mu = qs.mu();
  long long p = qs.p();
  int m = basis.size();

  MaxVecSolution out;
  out.p = p;
  out.quotient_ambient = true;
  out.basis = basis;

  std::vector<std::vector<long long>> rows;
  for (int j = 0; j < rs.rank(); ++j) {
    Weight w = w_add(mu, simple_root_weight(rs, j));
    if (weyl_mult_of(rs, wm.lambda(), w) == 0) continue;
    int sidx = rs.simple_index(j);
    std::vector<std::vector<long long>> cols;
    int rdim = 0;
    for (int i = 0; i < m; ++i) {
      ModuleElement y = wm.apply_e(sidx, 1, basis.gens[static_cast<size_t>(i)].element);
      cols.push_back(qs.reduce_at(w, y));
      rdim = static_cast<int>(cols.back().size());
    }
    for (int t = 0; t < rdim; ++t) {
      std::vector<long long> row(static_cast<size_t>(m));
      for (int i = 0; i < m; ++i) row[static_cast<size_t>(i)] = cols[static_cast<size_t>(i)][static_cast<size_t>(t)];
      rows.push_back(std::move(row));
    }
  }

  ZMat a(static_cast<int>(rows.size()), m);
  for (size_t r = 0; r < rows.size(); ++r)
    for (int i = 0; i < m; ++i)
      a(static_cast<int>(r), i) = Int(static_cast<long>(rows[r][static_cast<size_t>(i)]));
  out.vectors_p = kernel_p(a, p);
  out.dim = static_cast<int>(out.vectors_p.size());

  for (const auto& sol : out.vectors_p) {
    ModuleElement v{wm.lambda(), {}};
    for (int i = 0; i < m; ++i)
      if (sol[static_cast<size_t>(i)] != 0)
        add_scaled(v.terms, basis.gens[static_cast<size_t>(i)].element.terms,
                   Rat(static_cast<long>(sol[static_cast<size_t>(i)])));
    for (int j = 0; j < rs.rank(); ++j) {
      ModuleElement y = wm.apply_e(rs.simple_index(j), 1, v);
      if (!qs.vanishes(y))
        throw std::logic_error("quotient solver produced a vector that is not maximal");
    }
  }
  return out;
}

QuotientSpace case_quotient(WeylModule& wm, const CaseParams& cp, long long p) {
  validate_case(cp);
  if (!is_quotient_family(cp.tag))
    throw std::invalid_argument("this family is solved in the Weyl module itself");
  check_module_matches(wm, cp);
  int k = killed_index(cp);
  if (p <= 0 || (cp.a + k) % p != 0)
    throw std::invalid_argument(
        "the quotient construction needs p | a+k so the killed vector is maximal");

  ModuleElement u = case_killed_vector(wm, cp);
  GeneratorList display;
  display.tag = CaseTag::quotient;
  display.lambda = case_lambda(cp);
  display.mu = case_mu(cp);
  for (auto& f : quotient_factor_lists(wm.roots(), cp))
    display.gens.push_back(make_gen(wm, std::move(f)));
  return QuotientSpace(wm, std::move(u), case_mu(cp), p, std::move(display));
}

MaxVecSolution case_solution(const CaseParams& cp, long long p, Budget budget) {
  validate_case(cp);
  if (p < 0) throw std::invalid_argument("p must be 0 or a prime");
  if (case_lie_type(cp) == LieType::B && p == 2)
    throw std::invalid_argument("type-B closed forms need p odd");

  const StructureConstantTable& table = shared_structure_constants(case_lie_type(cp), cp.rank);
  WeylModule wm(table, case_lambda(cp), budget);
  if (is_quotient_family(cp.tag)) {
    QuotientSpace qs = case_quotient(wm, cp, p);
    return maximal_vector_space(qs);
  }
  GeneratorList basis = case_basis(wm, cp);
  return maximal_vector_space(wm, basis, p);
}

// ---------------------------------------------------------------------------
// Membership and audits

Membership subspace_membership(WeylModule& wm, const ModuleElement& target,
                               const std::vector<ModuleElement>& span_elems,
                               long long p) {
  const RootSystem& rs = wm.roots();
  if (p <= 1) throw std::invalid_argument("membership needs a prime p");
  if (rs.type() != LieType::A && p == 2)
    throw std::invalid_argument("p = 2 is only meaningful in type A here");
  for (int c : wm.lambda())
    if (c >= p)
      throw std::invalid_argument("membership in the irreducible quotient needs a p-restricted highest weight");
  if (target.is_zero())
    throw std::invalid_argument("membership target must be nonzero");

  Weight mu = wm.weight_of(target);
  for (const ModuleElement& s : span_elems)
    if (s.is_zero() || wm.weight_of(s) != mu)
      throw std::invalid_argument("span elements must share the target's weight");

  WeightSpaceLattice lat = wm.lattice_basis(mu);
  int r = lat.rank();
  std::map<Weight, QMat> cache;

  // Pair with the Gram matrix: x ↦ ⟨x, basis⟩ mod p kills exactly the
  // radical, so membership is decided in the irreducible quotient L(λ).
  auto paired = [&](const ModuleElement& x) {
    std::vector<Int> u = lattice_coords(wm, mu, x, cache);
    std::vector<Int> g(static_cast<size_t>(r), Int(0));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) g[static_cast<size_t>(i)] += lat.gram(i, j) * u[static_cast<size_t>(j)];
    return g;
  };

  int t = static_cast<int>(span_elems.size());
  ZMat a(r, t);
  for (int i = 0; i < t; ++i) {
    auto g = paired(span_elems[static_cast<size_t>(i)]);
    for (int row = 0; row < r; ++row) a(row, i) = g[static_cast<size_t>(row)];
  }
  std::vector<Int> b = paired(target);

  Membership out;
  auto sol = solve_p(a, b, p);
  if (sol) {
    out.member = true;
    out.coords = *sol;
  }
  return out;
}

EquivalenceAudit equivalence_audit(const CaseParams& cp, long long p,
                                   Budget budget) {
  validate_case(cp);
  if (p <= 1) throw std::invalid_argument("audits need a prime p");
  if (case_lie_type(cp) == LieType::B && p == 2)
    throw std::invalid_argument("type-B closed forms need p odd");
  Weight lambda = case_lambda(cp);
  for (int c : lambda)
    if (c >= p)
      throw std::invalid_argument("audits compare against L(λ) and need a p-restricted highest weight");

  const StructureConstantTable& table = shared_structure_constants(case_lie_type(cp), cp.rank);
  WeylModule wm(table, lambda, budget);
  Weight mu = case_mu(cp);

  EquivalenceAudit out;
  out.params = cp;
  out.p = p;
  out.divisible = case_divisibility(cp, p);
  out.irreducible_dim = wm.irreducible_dim_mu(mu, p);

  const GeneratorList* listp = nullptr;
  GeneratorList ambient_list;
  if (is_quotient_family(cp.tag)) {
    QuotientSpace qs = case_quotient(wm, cp, p);
    out.ambient_dim = qs.dim();
    ambient_list = qs.basis();
    listp = &ambient_list;
  } else {
    ambient_list = case_basis(wm, cp);
    out.ambient_dim = ambient_list.size();
    listp = &ambient_list;
  }
  out.factor_at_mu = out.irreducible_dim < out.ambient_dim;

  // Linear dependence of the displayed generators inside L(λ)_μ.
  {
    WeightSpaceLattice lat = wm.lattice_basis(mu);
    int r = lat.rank();
    std::map<Weight, QMat> cache;
    int t = listp->size();
    ZMat a(r, t);
    for (int i = 0; i < t; ++i) {
      std::vector<Int> u =
          lattice_coords(wm, mu, listp->gens[static_cast<size_t>(i)].element, cache);
      for (int row = 0; row < r; ++row) {
        Int g(0);
        for (int j = 0; j < r; ++j) g += lat.gram(row, j) * u[static_cast<size_t>(j)];
        a(row, i) = g;
      }
    }
    out.dependent = rank_p(a, p) < t;
  }

  // Distinguished membership: the last displayed generator against the rest.
  {
    std::vector<ModuleElement> span;
    for (int i = 0; i + 1 < listp->size(); ++i)
      span.push_back(listp->gens[static_cast<size_t>(i)].element);
    out.member = subspace_membership(wm, listp->gens.back().element, span, p).member;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Identity checks

namespace {

bool equal_in_module_q(WeylModule& wm, const ModuleElement& x,
                       const ModuleElement& y) {
  ModuleElement d = x;
  add_scaled(d.terms, y.terms, Rat(-1));
  if (d.is_zero()) return true;
  Weight w = wm.weight_of(d);
  for (const Rat& c : wm.pivot_coordinates(w, d))
    if (c != 0) return false;
  return true;
}

// Smallest a ≥ 1 together with an odd prime p | a+k (the smallest odd
// divisor > 1 of a number is prime).
std::pair<long long, long long> quotient_params_for(int k) {
  for (long long a = 1;; ++a) {
    long long v = a + k;
    for (long long q = 3; q <= v; q += 2)
      if (v % q == 0) return {a, q};
  }
}

}  // namespace

std::vector<IdentityCheck> identity_checks(int n, Budget budget) {
  if (n < 3) throw std::invalid_argument("identity checks need type B of rank >= 3");
  std::vector<IdentityCheck> out;
  const StructureConstantTable& table = shared_structure_constants(LieType::B, n);
  const RootSystem& rs = table.roots();

  {
    Weight l1(static_cast<size_t>(n), 0);
    l1[0] = 1;
    WeylModule wm(table, l1, budget);
    ModuleElement rhs = apply_factors(
        wm, {chain_root_index(rs, 1, 1), doubled_tail_root_index(rs, 1, 2)});
    for (int j = 1; j <= n - 1; ++j) {
      ModuleElement lhs = apply_factors(
          wm, {chain_root_index(rs, 1, j), doubled_tail_root_index(rs, 1, j + 1)});
      std::ostringstream name;
      name << "V(l1): f(1," << j << ")F(1," << j + 1 << ")v == f(1,1)F(1,2)v";
      out.push_back({name.str(), equal_in_module_q(wm, lhs, rhs)});
    }
    ModuleElement sq = apply_factors(
        wm, {chain_root_index(rs, 1, n), chain_root_index(rs, 1, n)});
    ModuleElement rhs2 = rhs;
    for (auto& kv : rhs2.terms) kv.second *= 2;
    out.push_back({"V(l1): (f(1," + std::to_string(n) + "))^2 v == 2 f(1,1)F(1,2)v",
                   equal_in_module_q(wm, sq, rhs2)});
  }

  {
    // Quotient of V(aλ_1+λ_2) with p | a+2: f(1,r)v == f(1,1)f(2,r)v there.
    CaseParams cp{CaseTag::B_a_l1_l2, n, 0, 1, 0};
    long long p = 3;
    WeylModule wm(table, case_lambda(cp), budget);
    QuotientSpace qs(wm, case_killed_vector(wm, cp),
                     case_mu(cp), p);
    for (int r = 3; r <= n; ++r) {
      ModuleElement lhs = apply_factors(wm, {chain_root_index(rs, 1, r)});
      ModuleElement rhs = apply_factors(
          wm, {chain_root_index(rs, 1, 1), chain_root_index(rs, 2, r)});
      std::ostringstream name;
      name << "V(l1+l2)/<Gu+> mod 3: f(1," << r << ")v == f(1,1)f(2," << r << ")v";
      out.push_back({name.str(), qs.equal_classes(lhs, rhs)});
    }
  }

  for (int k = 3; k <= n - 1; ++k) {
    auto [a, p] = quotient_params_for(k);
    CaseParams cp{CaseTag::B_a_l1_lk, n, k, a, 0};
    WeylModule wm(table, case_lambda(cp), budget);
    QuotientSpace qs(wm, case_killed_vector(wm, cp), case_mu(cp), p);
    std::string where = "V(" + std::to_string(a) + "l1+l" + std::to_string(k) +
                        ")/<Gu+> mod " + std::to_string(p) + ": ";
    {
      ModuleElement lhs = apply_factors(
          wm, {chain_root_index(rs, k, n), chain_root_index(rs, 2, n)});
      ModuleElement rhs = apply_factors(wm, {doubled_tail_root_index(rs, 2, k)});
      ModuleElement r2 = apply_factors(
          wm, {chain_root_index(rs, 2, k - 1), chain_root_index(rs, k, k),
               doubled_tail_root_index(rs, k, k + 1)});
      for (auto& kv : rhs.terms) kv.second = -kv.second;
      add_scaled(rhs.terms, r2.terms, Rat(-1));
      out.push_back({where + "f(k,n)f(2,n)v == -F(2,k)v - f(2,k-1)f(k,k)F(k,k+1)v",
                     qs.equal_classes(lhs, rhs)});
    }
    {
      ModuleElement lhs = apply_factors(
          wm, {chain_root_index(rs, k, n - 1), chain_root_index(rs, 1, n)});
      ModuleElement rhs = apply_factors(
          wm, {chain_root_index(rs, 1, n - 1), chain_root_index(rs, k, n)});
      for (int r = 1; r <= k - 2; ++r) {
        ModuleElement t3 = apply_factors(
            wm, {chain_root_index(rs, 1, r), chain_root_index(rs, r + 1, n - 1),
                 chain_root_index(rs, k, n)});
        add_scaled(rhs.terms, t3.terms, Rat(-1));
      }
      out.push_back({where + "f(k,n-1)f(1,n)v == f(1,n-1)f(k,n)v - sum_r f(1,r)f(r+1,n-1)f(k,n)v",
                     qs.equal_classes(lhs, rhs)});
    }
    for (int r = 1; r <= k - 2; ++r) {
      ModuleElement lhs = apply_factors(
          wm, {chain_root_index(rs, k, n - 1), chain_root_index(rs, r + 1, n)});
      ModuleElement rhs = apply_factors(
          wm, {chain_root_index(rs, r + 1, n - 1), chain_root_index(rs, k, n)});
      for (auto& kv : rhs.terms) kv.second = -kv.second;
      std::ostringstream name;
      name << where << "f(k,n-1)f(" << r + 1 << ",n)v == -f(" << r + 1
           << ",n-1)f(k,n)v";
      out.push_back({name.str(), qs.equal_classes(lhs, rhs)});
    }
  }
  return out;
}

bool proportional_mod_p(const std::vector<long long>& x,
                        const std::vector<long long>& y, long long p) {
  if (x.size() != y.size()) return false;
  auto nz = [p](const std::vector<long long>& v) {
    for (size_t i = 0; i < v.size(); ++i)
      if (nonneg_mod(v[i], p) != 0) return static_cast<long long>(i);
    return static_cast<long long>(-1);
  };
  long long ix = nz(x), iy = nz(y);
  if (ix != iy) return false;
  if (ix < 0) return true;
  // y = r·x with r = y[ix]/x[ix]
  long long inv = 1, base = nonneg_mod(x[static_cast<size_t>(ix)], p), e = p - 2;
  auto mulmod = [p](long long u, long long v) {
    return static_cast<long long>(static_cast<__int128>(u) * v % p);
  };
  while (e > 0) {
    if (e & 1) inv = mulmod(inv, base);
    base = mulmod(base, base);
    e >>= 1;
  }
  long long r = mulmod(nonneg_mod(y[static_cast<size_t>(ix)], p), inv);
  for (size_t i = 0; i < x.size(); ++i)
    if (mulmod(nonneg_mod(x[i], p), r) != nonneg_mod(y[i], p)) return false;
  return true;
}

}  // namespace branchlie
