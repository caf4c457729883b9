#include "branchlie/weylmod.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>

namespace branchlie {

namespace {

bool zero_or_prime(long long p) {
  if (p == 0) return true;
  if (p < 2) return false;
  Int z(static_cast<long>(p));
  return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

bool restricted(const Weight& lambda, long long p) {
  return std::all_of(lambda.begin(), lambda.end(),
                     [&](int a) { return a < p; });
}

void check_dominant(const RootSystem& rs, const Weight& lambda) {
  if (static_cast<int>(lambda.size()) != rs.rank())
    throw std::invalid_argument("weight has the wrong rank");
  if (!rs.is_dominant(lambda))
    throw std::invalid_argument("weight is not dominant");
}

int to_small(const Int& v) {
  if (!mpz_fits_sint_p(v.get_mpz_t()))
    throw std::overflow_error("multiplicity does not fit in an int");
  return static_cast<int>(mpz_get_si(v.get_mpz_t()));
}

// Structure constants for freshly built systems, shared across calls that
// need a Levi's table.  The maps hand out references to node-stable storage.
const StructureConstantTable& cached_table(LieType t, int rank) {
  static std::mutex mtx;
  static std::map<std::pair<LieType, int>, RootSystem> systems;
  static std::map<std::pair<LieType, int>, StructureConstantTable> tables;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_pair(t, rank);
  auto it = tables.find(key);
  if (it == tables.end()) {
    systems[key] = RootSystem::build(t, rank);
    it = tables
             .emplace(key, propagate_structure_constants(
                               systems[key], extraspecial_pairs(systems[key])))
             .first;
  }
  return it->second;
}

}  // namespace

FreudenthalTable::FreudenthalTable(const RootSystem& rs, Weight lambda)
    : rs_(&rs), lambda_(std::move(lambda)) {
  check_dominant(rs, lambda_);
}

Int FreudenthalTable::mult(const Weight& mu) {
  if (!rs_->dominates(lambda_, mu))
    throw std::invalid_argument("weight is not below the highest weight");
  Weight dom = rs_->dominant_rep(mu);
  return mult_dominant(dom);
}

Int FreudenthalTable::mult_dominant(const Weight& mu) {
  assert(rs_->is_dominant(mu));
  if (mu == lambda_) return 1;
  auto it = memo_.find(mu);
  if (it != memo_.end()) return it->second;
  DominanceDelta dd = rs_->dominance_delta(lambda_, mu);
  if (!dd.holds()) {
    memo_[mu] = 0;
    return 0;
  }
  int rank = rs_->rank();
  // denominator 2(lambda+rho,lambda+rho) - 2(mu+rho,mu+rho), written as
  // 2(lambda+mu+2rho, lambda-mu) to stay integral
  Weight s(rank);
  for (int j = 0; j < rank; ++j) s[j] = lambda_[j] + mu[j] + 2;
  Int d2 = 0;
  for (int j = 0; j < rank; ++j)
    if (dd.delta[j] != 0)
      d2 += Int(dd.delta[j]) *
            Int(static_cast<long>(rs_->ip2_weight_root(s, rs_->simple_index(j))));
  if (d2 <= 0)
    throw std::logic_error("Freudenthal denominator is not positive");
  Int acc = 0;
  for (int idx = 0; idx < rs_->num_positive(); ++idx) {
    const Root& al = rs_->positive(idx);
    long long tmax = -1;
    for (int j = 0; j < rank; ++j)
      if (al.c[j] != 0) {
        long long q = dd.delta[j] / al.c[j];
        if (tmax < 0 || q < tmax) tmax = q;
      }
    if (tmax <= 0) continue;
    long long pm = rs_->pairing(mu, idx);
    Weight alw = rs_->weight_of_rootvec(al.c);
    Weight nu = mu;
    for (long long t = 1; t <= tmax; ++t) {
      for (int j = 0; j < rank; ++j) nu[j] += alw[j];
      Int m = mult_dominant(rs_->dominant_rep(nu));
      if (m != 0) acc += Int(static_cast<long>((pm + 2 * t) * al.norm2)) * m;
    }
  }
  Int num = 2 * acc;
  Int q = num / d2;
  if (q * d2 != num)
    throw std::logic_error("Freudenthal division is not exact");
  memo_[mu] = q;
  return q;
}

Int freudenthal_mult(const RootSystem& rs, const Weight& lambda, const Weight& mu) {
  FreudenthalTable ft(rs, lambda);
  return ft.mult(mu);
}

Int weyl_dim(const RootSystem& rs, const Weight& lambda) {
  check_dominant(rs, lambda);
  Weight lr(lambda);
  for (int& a : lr) a += 1;
  Weight rho = rs.rho();
  Rat prod(1);
  for (int idx = 0; idx < rs.num_positive(); ++idx)
    prod *= frac(Int(rs.pairing(lr, idx)), Int(rs.pairing(rho, idx)));
  return to_int(prod);
}

bool SaturatedWeightSet::contains(const RootSystem& rs, const Weight& mu) const {
  Weight dom = rs.dominant_rep(mu);
  return std::find(dominant.begin(), dominant.end(), dom) != dominant.end();
}

long long SaturatedWeightSet::total_size() const {
  long long s = 0;
  for (long long o : orbit_sizes) s += o;
  return s;
}

SaturatedWeightSet weight_set_saturated(const RootSystem& rs, const Weight& lambda) {
  check_dominant(rs, lambda);
  int rank = rs.rank();
  std::vector<Rat> rc = rs.root_coords_of_weight(lambda);
  std::vector<long long> bound(rank);
  long long cells = 1;
  for (int j = 0; j < rank; ++j) {
    Int f;
    mpz_fdiv_q(f.get_mpz_t(), rc[j].get_num_mpz_t(), rc[j].get_den_mpz_t());
    if (f < 0) throw std::logic_error("dominant weight with negative root coordinates");
    bound[j] = mpz_get_si(f.get_mpz_t());
    cells *= bound[j] + 1;
    if (cells > 5'000'000)
      throw BudgetExceeded("saturated weight set exceeds the enumeration cap");
  }
  std::vector<std::pair<long long, Weight>> found;  // (drop height, mu)
  RootVec c(rank, 0);
  for (;;) {
    Weight mu = lambda;
    Weight drop = rs.weight_of_rootvec(c);
    bool dom = true;
    long long height = 0;
    for (int j = 0; j < rank; ++j) {
      mu[j] -= drop[j];
      if (mu[j] < 0) dom = false;
      height += c[j];
    }
    if (dom) found.emplace_back(height, mu);
    int j = 0;
    while (j < rank && c[j] == bound[j]) c[j++] = 0;
    if (j == rank) break;
    ++c[j];
  }
  std::sort(found.begin(), found.end());
  SaturatedWeightSet out;
  out.lambda = lambda;
  for (auto& [h, mu] : found) {
    out.dominant.push_back(mu);
    out.orbit_sizes.push_back(
        static_cast<long long>(rs.weyl_orbit(mu).size()));
  }
  return out;
}

int CharacterTable::mult(const RootSystem& rs, const Weight& mu) const {
  auto it = entries.find(rs.dominant_rep(mu));
  return it == entries.end() ? 0 : it->second;
}

CharacterTable char_weyl(const RootSystem& rs, const Weight& lambda) {
  SaturatedWeightSet sat = weight_set_saturated(rs, lambda);
  FreudenthalTable ft(rs, lambda);
  CharacterTable out;
  out.lambda = lambda;
  out.p = 0;
  out.kind = CharKind::weyl;
  for (size_t i = 0; i < sat.dominant.size(); ++i) {
    Int m = ft.mult(sat.dominant[i]);
    if (m == 0) throw std::logic_error("dominant weight below lambda with multiplicity zero");
    out.entries[sat.dominant[i]] = to_small(m);
    out.dimension += Int(static_cast<long>(sat.orbit_sizes[i])) * m;
  }
  if (out.dimension != weyl_dim(rs, lambda))
    throw std::logic_error("character total disagrees with the degree formula");
  return out;
}

CharacterTable char_irreducible(const StructureConstantTable& t, const Weight& lambda,
                                long long p, Budget budget,
                                bool allow_char2_typeB) {
  const RootSystem& rs = t.roots();
  check_dominant(rs, lambda);
  if (!zero_or_prime(p))
    throw std::invalid_argument("p must be zero or a prime");
  if (p == 2 && rs.type() == LieType::B && !allow_char2_typeB)
    throw std::invalid_argument(
        "type B in characteristic 2 requires an explicit opt-in");
  if (p == 0) {
    CharacterTable out = char_weyl(rs, lambda);
    out.kind = CharKind::irreducible;
    return out;
  }
  if (!restricted(lambda, p))
    throw std::invalid_argument("highest weight is not p-restricted");
  SaturatedWeightSet sat = weight_set_saturated(rs, lambda);
  WeylModule wm(t, lambda, budget);
  CharacterTable out;
  out.lambda = lambda;
  out.p = p;
  out.kind = CharKind::irreducible;
  for (size_t i = 0; i < sat.dominant.size(); ++i) {
    int r;
    try {
      r = wm.irreducible_dim_mu(sat.dominant[i], p);
    } catch (const BudgetExceeded& e) {
      throw BudgetExceeded(std::string(e.what()) +
                           "; character table left incomplete");
    }
    if (r != 0) {
      out.entries[sat.dominant[i]] = r;
      out.dimension += Int(static_cast<long>(sat.orbit_sizes[i])) * Int(r);
    }
  }
  if (out.entries.find(lambda) == out.entries.end() ||
      out.entries[lambda] != 1)
    throw std::logic_error("highest weight multiplicity is not one");
  return out;
}

std::vector<Weight> steinberg_digits(const Weight& lambda, long long p) {
  if (p < 2 || !zero_or_prime(p))
    throw std::invalid_argument("p must be a prime");
  for (int a : lambda)
    if (a < 0) throw std::invalid_argument("weight is not dominant");
  std::vector<Weight> digits;
  Weight rest = lambda;
  do {
    Weight d(rest.size());
    bool more = false;
    for (size_t j = 0; j < rest.size(); ++j) {
      d[j] = static_cast<int>(rest[j] % p);
      rest[j] = static_cast<int>(rest[j] / p);
      if (rest[j] != 0) more = true;
    }
    digits.push_back(std::move(d));
    if (!more) break;
  } while (true);
  return digits;
}

CharacterTable char_irreducible_general(const StructureConstantTable& t,
                                        const Weight& lambda, long long p,
                                        Budget budget, bool allow_char2_typeB) {
  std::vector<Weight> digits = steinberg_digits(lambda, p);
  if (digits.size() == 1)
    return char_irreducible(t, lambda, p, budget, allow_char2_typeB);
  const RootSystem& rs = t.roots();
  std::map<Weight, Int> full;
  Int dim = 1;
  long long scale = 1;
  for (size_t k = 0; k < digits.size(); ++k, scale *= p) {
    CharacterTable tab =
        char_irreducible(t, digits[k], p, budget, allow_char2_typeB);
    dim *= tab.dimension;
    std::map<Weight, Int> layer;
    for (const auto& [mu, m] : tab.entries)
      for (const Weight& w : rs.weyl_orbit(mu)) {
        Weight sw(w);
        for (int& a : sw) a = static_cast<int>(a * scale);
        layer[sw] += m;
      }
    if (k == 0) {
      full = std::move(layer);
      continue;
    }
    if (static_cast<long long>(full.size()) *
            static_cast<long long>(layer.size()) >
        8'000'000)
      throw BudgetExceeded("character convolution exceeds the support cap");
    std::map<Weight, Int> next;
    for (const auto& [a, ma] : full)
      for (const auto& [b, mb] : layer) {
        Weight s(a);
        for (size_t j = 0; j < s.size(); ++j) s[j] += b[j];
        next[s] += ma * mb;
      }
    full = std::move(next);
  }
  CharacterTable out;
  out.lambda = lambda;
  out.p = p;
  out.kind = CharKind::irreducible;
  out.dimension = dim;
  Int covered = 0;
  for (const auto& [w, m] : full) {
    if (std::any_of(w.begin(), w.end(), [](int a) { return a < 0; })) continue;
    out.entries[w] = to_small(m);
    covered += Int(static_cast<long>(rs.weyl_orbit(w).size())) * m;
  }
  if (covered != dim)
    throw std::logic_error(
        "twisted tensor support does not account for the full dimension");
  return out;
}

Int levi_restrict_mult(const StructureConstantTable& t, const Weight& lambda,
                       const Weight& mu, int j_lo, int j_hi, long long p,
                       bool crosscheck) {
  const RootSystem& rs = t.roots();
  check_dominant(rs, lambda);
  if (j_lo < 1 || j_lo > j_hi || j_hi > rs.rank())
    throw std::invalid_argument("Levi range is out of bounds");
  DominanceDelta dd = rs.dominance_delta(lambda, mu);
  if (!dd.holds())
    throw std::invalid_argument("weight is not below the highest weight");
  for (int j = 0; j < rs.rank(); ++j)
    if (dd.delta[j] != 0 && (j < j_lo - 1 || j > j_hi - 1))
      throw std::invalid_argument("support of the weight drop leaves the Levi range");
  LeviSubsystem levi = levi_subsystem(rs, j_lo, j_hi);
  Weight lam_h = levi.restrict(lambda);
  Weight mu_h = levi.restrict(mu);
  Int val;
  if (p == 0) {
    val = freudenthal_mult(levi.sub, lam_h, mu_h);
  } else {
    if (!zero_or_prime(p)) throw std::invalid_argument("p must be zero or a prime");
    const StructureConstantTable& ht =
        cached_table(levi.sub.type(), levi.sub.rank());
    CharacterTable tab = char_irreducible_general(ht, lam_h, p);
    val = Int(tab.mult(ht.roots(), mu_h));
  }
  if (crosscheck) {
    try {
      std::optional<Int> ambient;
      if (p == 0) {
        ambient = freudenthal_mult(rs, lambda, mu);
      } else if (restricted(lambda, p) &&
                 !(p == 2 && rs.type() == LieType::B)) {
        WeylModule wm(t, lambda);
        ambient = Int(wm.irreducible_dim_mu(mu, p));
      }
      if (ambient && *ambient != val)
        throw std::logic_error(
            "Levi restriction disagrees with the ambient multiplicity");
    } catch (const BudgetExceeded&) {
      // ambient side infeasible; the Levi value stands on its own
    }
  }
  return val;
}

}  // namespace branchlie
