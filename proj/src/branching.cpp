#include "branchlie/branching.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "branchlie/chevalley.hpp"

namespace branchlie {

namespace {

bool is_prime_ll(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// p = 0 uses the characteristic-zero convention p | m iff m = 0
bool divides(long long p, long long m) { return p == 0 ? m == 0 : m % p == 0; }

void check_rank(int n) {
  if (n < 3) throw std::invalid_argument("rank must be at least 3");
}

void check_weight(int n, const Weight& w, bool allow_zero) {
  if (static_cast<int>(w.size()) != n)
    throw std::invalid_argument("weight has the wrong rank");
  bool zero = true;
  for (int a : w) {
    if (a < 0) throw std::invalid_argument("weight is not dominant");
    if (a != 0) zero = false;
  }
  if (zero && !allow_zero) throw std::invalid_argument("weight is zero");
}

// largest 1 <= r < n with a_r != 0, or 0 when lambda is a multiple of the
// spin fundamental weight
int last_supported_below_spin(const Weight& lambda) {
  int n = static_cast<int>(lambda.size());
  for (int r = n - 1; r >= 1; --r)
    if (lambda[r - 1] != 0) return r;
  return 0;
}

bool is_spin_weight(const Weight& lambda) {
  int n = static_cast<int>(lambda.size());
  if (lambda[n - 1] != 1) return false;
  return last_supported_below_spin(lambda) == 0;
}

// lambda == lambda_k for some k < n
bool is_single_fundamental_below_spin(const Weight& lambda, int k) {
  int n = static_cast<int>(lambda.size());
  if (k == 0 || lambda[n - 1] != 0 || lambda[k - 1] != 1) return false;
  for (int r = 1; r < k; ++r)
    if (lambda[r - 1] != 0) return false;
  return true;
}

Weight spin_unit(int n) {
  Weight w(n, 0);
  w[n - 1] = 1;
  return w;
}

// fundamental coordinates of alpha_n, or of alpha_k + ... + alpha_n, in B_n
Weight drop_coords(const RootSystem& bn, int k) {
  RootVec d(bn.rank(), 0);
  for (int j = k; j <= bn.rank(); ++j) d[j - 1] = 1;
  return bn.weight_of_rootvec(d);
}

Weight subtract(const Weight& a, const Weight& b) {
  Weight out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

std::string weight_str(const Weight& w) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
  os << ")";
  return os.str();
}

int checked_int(long long v) {
  if (v > INT_MAX || v < INT_MIN)
    throw std::overflow_error("weight coordinate does not fit in an int");
  return static_cast<int>(v);
}

}  // namespace

// ---------------------------------------------------------------------------
// Weight translation

Weight RestrictionMap::operator()(const Weight& w) const {
  if (static_cast<int>(w.size()) != n)
    throw std::invalid_argument("weight has the wrong rank");
  Weight out(w.begin(), w.end());
  out[n - 1] = checked_int(static_cast<long long>(w[n - 2]) + w[n - 1]);
  return out;
}

RestrictionMap restriction_map(int n) {
  check_rank(n);
  return RestrictionMap{n};
}

Weight restrict_weight(int n, const Weight& lambda) {
  return restriction_map(n)(lambda);
}

Weight theta_twist(const Weight& omega) {
  if (omega.size() < 2) throw std::invalid_argument("weight has the wrong rank");
  Weight out = omega;
  std::swap(out[out.size() - 2], out[out.size() - 1]);
  return out;
}

// ---------------------------------------------------------------------------
// Verdict plumbing

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::TwoFactors: return "TwoFactors";
    case Outcome::NotTwo: return "NotTwo";
    case Outcome::Unknown: return "Unknown";
  }
  return "?";
}

std::string to_string(Condition c) {
  switch (c) {
    case Condition::Thm1_case1: return "Thm1_case1";
    case Condition::Thm1_case2: return "Thm1_case2";
    case Condition::Thm1_case3: return "Thm1_case3";
    case Condition::Thm3_1: return "Thm3_1";
    case Condition::Cor2_case1: return "Cor2_case1";
    case Condition::Cor2_case2: return "Cor2_case2";
    case Condition::failed: return "failed";
  }
  return "?";
}

std::string BranchingVerdict::fired_label() const {
  if (fired == Condition::failed) return "failed(" + which + ")";
  return to_string(fired);
}

Mode mode_from_string(const std::string& s) {
  if (s == "literal") return Mode::literal;
  if (s == "proof") return Mode::proof;
  throw std::invalid_argument("unknown mode: " + s);
}

// ---------------------------------------------------------------------------
// Predicted factors and weight-set disjointness

bool weight_sets_disjoint(const RootSystem& dn, const Weight& w1, const Weight& w2) {
  // distinct cosets of the root lattice cannot meet
  std::vector<Rat> rc = dn.root_coords_of_weight(subtract(w1, w2));
  for (const Rat& c : rc)
    if (!is_integer(c)) return true;
  // same coset: compare the explicit saturated sets orbit by orbit
  SaturatedWeightSet s1 = weight_set_saturated(dn, w1);
  SaturatedWeightSet s2 = weight_set_saturated(dn, w2);
  for (const Weight& d : s1.dominant)
    if (s2.contains(dn, d)) return false;
  return true;
}

std::pair<Weight, Weight> predicted_factors(int n, const Weight& lambda, Condition c) {
  check_rank(n);
  check_weight(n, lambda, false);
  long long an = lambda[n - 1];
  int k = last_supported_below_spin(lambda);
  int drop_from = 0;  // alpha_{drop_from} + ... + alpha_n
  switch (c) {
    case Condition::Thm1_case2:
      if (!is_spin_weight(lambda))
        throw std::invalid_argument("tag expects the spin fundamental weight");
      drop_from = n;
      break;
    case Condition::Thm3_1:
      if (an != 1 || k == 0)
        throw std::invalid_argument(
            "tag expects spin-node coefficient one and support below the spin node");
      drop_from = n;
      break;
    case Condition::Thm1_case1:
      if (!is_single_fundamental_below_spin(lambda, k))
        throw std::invalid_argument("tag expects a single fundamental weight below the spin node");
      drop_from = k;
      break;
    case Condition::Thm1_case3:
      if (an != 0 || k == 0 || is_single_fundamental_below_spin(lambda, k))
        throw std::invalid_argument(
            "tag expects spin-node coefficient zero and a non-fundamental weight");
      drop_from = k;
      break;
    default:
      throw std::invalid_argument("tag does not select a p-restricted branch");
  }
  const RootSystem& bn = shared_structure_constants(LieType::B, n).roots();
  RestrictionMap rm{n};
  Weight w1 = rm(lambda);
  Weight w2 = rm(subtract(lambda, drop_coords(bn, drop_from)));
  const RootSystem& dn = shared_structure_constants(LieType::D, n).roots();
  if (!dn.is_dominant(w1) || !dn.is_dominant(w2))
    throw std::logic_error("predicted factor weight is not dominant");
  if (!weight_sets_disjoint(dn, w1, w2))
    throw std::logic_error("predicted factor weight sets intersect");
  return {w1, w2};
}

// ---------------------------------------------------------------------------
// Closed-form classification, p-restricted weights

namespace {

BranchingVerdict no_verdict(std::string which, std::string trace) {
  BranchingVerdict v;
  v.outcome = Outcome::NotTwo;
  v.fired = Condition::failed;
  v.which = std::move(which);
  v.trace = std::move(trace);
  return v;
}

BranchingVerdict yes_verdict(int n, const Weight& lambda, Condition c, std::string trace) {
  BranchingVerdict v;
  v.outcome = Outcome::TwoFactors;
  v.fired = c;
  v.trace = std::move(trace);
  v.completely_reducible = true;
  auto [w1, w2] = predicted_factors(n, lambda, c);
  bool theta_drop = (c == Condition::Thm1_case2 || c == Condition::Thm3_1);
  v.factors.push_back({w1, "restriction of the highest weight"});
  v.factors.push_back({w2, theta_drop
                               ? "half-spin twist of the first factor"
                               : "restriction after the drop from the last supported node"});
  return v;
}

}  // namespace

BranchingVerdict classify_p_restricted(int n, long long p, const Weight& lambda) {
  check_rank(n);
  check_weight(n, lambda, false);
  if (p != 0 && !is_prime_ll(p))
    throw std::invalid_argument("p must be zero or a prime");
  if (p > 0)
    for (int a : lambda)
      if (a >= p) throw std::invalid_argument("weight is not p-restricted");

  long long an = lambda[n - 1];
  int k = last_supported_below_spin(lambda);

  if (k == 0) {  // lambda = a_n * (spin weight)
    if (an == 1)
      return yes_verdict(n, lambda, Condition::Thm1_case2,
                         "lambda is the spin fundamental weight; the restriction "
                         "splits into the two half-spin factors");
    return no_verdict("a_n>1",
                      "spin-node coefficient " + std::to_string(an) +
                          " > 1: a third factor appears below twice the spin drop");
  }

  if (is_single_fundamental_below_spin(lambda, k)) {
    if (p != 2)
      return yes_verdict(n, lambda, Condition::Thm1_case1,
                         "lambda = lambda_" + std::to_string(k) +
                             " with k < n and p != 2");
    return no_verdict("p=2", "p = 2: the subgroup acts irreducibly on this module");
  }

  if (an > 1)
    return no_verdict("a_n>1",
                      "spin-node coefficient " + std::to_string(an) +
                          " > 1: a third factor appears below twice the spin drop");

  // divisibility conditions on the consecutive supported pairs and the tail
  std::ostringstream tr;
  tr << "k=" << k;
  bool ok_a = true;
  int prev = 0;
  for (int r = 1; r < n; ++r) {
    if (lambda[r - 1] == 0) continue;
    if (prev != 0) {
      long long va = static_cast<long long>(lambda[prev - 1]) + lambda[r - 1] + r - prev;
      bool ok = divides(p, va);
      tr << "; (a) i=" << prev << ",j=" << r << ": p | " << va
         << (ok ? " holds" : " fails");
      ok_a = ok_a && ok;
    }
    prev = r;
  }
  long long vb = 2 * (an + lambda[k - 1] + n - k) - 1;
  bool ok_b = divides(p, vb);
  tr << "; (b) p | " << vb << (ok_b ? " holds" : " fails");

  if (ok_a && ok_b)
    return yes_verdict(n, lambda, an == 1 ? Condition::Thm3_1 : Condition::Thm1_case3,
                       tr.str());
  return no_verdict(!ok_a ? "cond_a" : "cond_b", tr.str());
}

// ---------------------------------------------------------------------------
// General highest weights via base-p digits

namespace {

Weight scale_weight(const Weight& w, long long factor) {
  Weight out(w.size());
  for (size_t i = 0; i < w.size(); ++i)
    out[i] = checked_int(factor * w[i]);
  return out;
}

Weight add_weights(const Weight& a, const Weight& b) {
  Weight out(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    out[i] = checked_int(static_cast<long long>(a[i]) + b[i]);
  return out;
}

long long pow_ll(long long p, int j) {
  long long v = 1;
  for (int i = 0; i < j; ++i) {
    if (v > LLONG_MAX / p) throw std::overflow_error("p^j overflows");
    v *= p;
  }
  return v;
}

// the two factors of a p = 2 multi-digit weight whose unique two-factor digit
// sits at position j: every other digit contributes its restriction at its
// own twist level, the spin digit contributes the two half-spin weights
std::pair<Weight, Weight> twisted_spin_factors(int n, const std::vector<Weight>& digits,
                                               int j) {
  RestrictionMap rm{n};
  Weight base(n, 0);
  for (size_t i = 0; i < digits.size(); ++i) {
    if (static_cast<int>(i) == j) continue;
    base = add_weights(base, scale_weight(rm(digits[i]), pow_ll(2, static_cast<int>(i))));
  }
  Weight half(n, 0);
  half[n - 1] = checked_int(pow_ll(2, j));
  Weight w1 = add_weights(base, half);
  return {w1, theta_twist(w1)};
}

}  // namespace

BranchingVerdict classify_general(int n, long long p, const Weight& delta, Mode mode) {
  check_rank(n);
  check_weight(n, delta, false);
  if (p == 0) {
    BranchingVerdict v = classify_p_restricted(n, 0, delta);
    if (v.outcome == Outcome::TwoFactors) {
      v.fired = Condition::Cor2_case1;
      v.trace = "characteristic zero, single digit: " + v.trace;
    } else {
      v.which = "digit_classifier";
      v.trace = "characteristic zero: " + v.trace;
    }
    return v;
  }
  if (!is_prime_ll(p)) throw std::invalid_argument("p must be zero or a prime");

  std::vector<Weight> digits = steinberg_digits(delta, p);
  int r = static_cast<int>(digits.size()) - 1;
  std::vector<int> nz;
  for (int i = 0; i <= r; ++i) {
    bool zero = true;
    for (int a : digits[i]) zero = zero && a == 0;
    if (!zero) nz.push_back(i);
  }

  if (nz.size() == 1) {
    int j = nz[0];
    BranchingVerdict inner = classify_p_restricted(n, p, digits[j]);
    std::string shift = "delta = p^" + std::to_string(j) + " * " + weight_str(digits[j]);
    if (inner.outcome == Outcome::TwoFactors) {
      BranchingVerdict v;
      v.outcome = Outcome::TwoFactors;
      v.fired = Condition::Cor2_case1;
      v.completely_reducible = true;
      v.trace = shift + "; " + inner.trace;
      long long pw = pow_ll(p, j);
      for (const FactorNote& f : inner.factors) {
        std::string note = f.note;
        if (j > 0) note += ", twisted to level " + std::to_string(j);
        v.factors.push_back({scale_weight(f.omega, pw), note});
      }
      return v;
    }
    return no_verdict("digit_classifier", shift + "; " + inner.trace);
  }

  if (p != 2)
    return no_verdict("multiple_digits",
                      "p odd with " + std::to_string(nz.size()) +
                          " nonzero base-p digits: every nonzero digit restricts "
                          "with at least two factors");

  // p = 2, several nonzero digits
  Weight spin = spin_unit(n);
  if (mode == Mode::literal) {
    int cnt_an = 0, cnt_spin = 0, spin_at = -1;
    for (int j = 1; j <= r; ++j) {
      if (digits[j][n - 1] != 0) ++cnt_an;
      if (digits[j] == spin) {
        ++cnt_spin;
        spin_at = j;
      }
    }
    std::string tr = "digit positions 1.." + std::to_string(r) + ": spin-node count " +
                     std::to_string(cnt_an) + ", spin-weight count " +
                     std::to_string(cnt_spin);
    if (cnt_an == 1 && cnt_spin == 1) {
      BranchingVerdict v;
      v.outcome = Outcome::TwoFactors;
      v.fired = Condition::Cor2_case2;
      v.completely_reducible = true;
      v.trace = tr;
      auto [w1, w2] = twisted_spin_factors(n, digits, spin_at);
      v.factors.push_back({w1, "spin digit at position " + std::to_string(spin_at)});
      v.factors.push_back({w2, "half-spin twist of the first factor"});
      return v;
    }
    return no_verdict("p2_digit_pattern", tr);
  }

  // Mode::proof: classify every nonzero digit position, including 0
  int ntwo = 0, two_at = -1;
  for (int j : nz) {
    if (digits[j] == spin) {
      ++ntwo;
      two_at = j;
    } else if (digits[j][n - 1] != 0) {
      BranchingVerdict v;
      v.outcome = Outcome::Unknown;
      v.fired = Condition::failed;
      v.which = "p2_seitz_digit";
      v.trace = "digit " + weight_str(digits[j]) + " at position " + std::to_string(j) +
                " has a nonzero spin-node coefficient but is not the spin weight; "
                "its factor count is not determined by the closed forms";
      return v;
    }
  }
  std::string tr = "digit positions 0.." + std::to_string(r) + ": " +
                   std::to_string(ntwo) + " digit(s) restrict with two factors, the "
                   "rest restrict irreducibly";
  if (ntwo == 1) {
    BranchingVerdict v;
    v.outcome = Outcome::TwoFactors;
    v.fired = Condition::Cor2_case2;
    v.completely_reducible = true;
    v.trace = tr;
    auto [w1, w2] = twisted_spin_factors(n, digits, two_at);
    v.factors.push_back({w1, "spin digit at position " + std::to_string(two_at)});
    v.factors.push_back({w2, "half-spin twist of the first factor"});
    return v;
  }
  if (ntwo == 0)
    return no_verdict("irreducible", tr + "; the restriction is irreducible");
  return no_verdict("p2_digit_pattern", tr + "; at least four factors");
}

BranchingVerdict classify_general(int n, long long p, const Weight& delta, Mode mode,
                                  const Budget& oracle_budget, long long time_ms) {
  BranchingVerdict v = classify_general(n, p, delta, mode);
  if (v.outcome != Outcome::Unknown) return v;
  FactorList fl = brute_force_decompose(n, p, delta, oracle_budget, time_ms);
  if (!fl.complete) {
    v.trace += "; oracle incomplete: " + fl.note;
    return v;
  }
  v.which = "oracle";
  if (fl.factor_count() == 2) {
    v.outcome = Outcome::TwoFactors;
    v.completely_reducible = true;
    v.trace += "; settled by character peeling: two factors";
    for (const FactorEntry& f : fl.factors)
      for (int m = 0; m < f.multiplicity; ++m)
        v.factors.push_back({f.omega, "character-peeling oracle"});
  } else {
    v.outcome = Outcome::NotTwo;
    v.trace += "; settled by character peeling: " + std::to_string(fl.factor_count()) +
               " factors";
  }
  return v;
}

// ---------------------------------------------------------------------------
// Character-peeling oracle

namespace {

// process-wide memo of irreducible D_n dominant characters, shared across
// decompositions; entries are immutable once inserted
const CharacterTable& subgroup_character(int n, long long p, const Weight& nu,
                                         const Budget& budget) {
  using Key = std::tuple<int, long long, Weight>;
  static std::mutex guard;
  static std::map<Key, std::unique_ptr<const CharacterTable>> cache;
  Key key{n, p, nu};
  {
    std::scoped_lock lock(guard);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  const StructureConstantTable& t = shared_structure_constants(LieType::D, n);
  CharacterTable ct;
  if (p == 0) {
    ct = char_weyl(t.roots(), nu);
  } else {
    bool restricted = true;
    for (int a : nu) restricted = restricted && a < p;
    ct = restricted ? char_irreducible(t, nu, p, budget)
                    : char_irreducible_general(t, nu, p, budget);
  }
  std::scoped_lock lock(guard);
  auto [it, inserted] = cache.emplace(key, nullptr);
  if (inserted) it->second = std::make_unique<const CharacterTable>(std::move(ct));
  return *it->second;
}

}  // namespace

long long FactorList::factor_count() const {
  long long c = 0;
  for (const FactorEntry& f : factors) c += f.multiplicity;
  return c;
}

FactorList brute_force_decompose(int n, long long p, const Weight& lambda,
                                 const Budget& budget, long long time_ms) {
  check_rank(n);
  check_weight(n, lambda, true);
  if (p != 0 && !is_prime_ll(p))
    throw std::invalid_argument("p must be zero or a prime");

  auto start = std::chrono::steady_clock::now();
  auto out_of_time = [&]() {
    if (time_ms <= 0) return false;
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    return ms > time_ms;
  };

  FactorList out;
  out.lambda = lambda;
  out.p = p;

  const StructureConstantTable& tB = shared_structure_constants(LieType::B, n);
  const RootSystem& rsB = tB.roots();
  const RootSystem& rsD = shared_structure_constants(LieType::D, n).roots();
  RestrictionMap rm{n};

  CharacterTable cb;
  try {
    if (p == 0) {
      cb = char_weyl(rsB, lambda);
    } else {
      bool restricted = true;
      for (int a : lambda) restricted = restricted && a < p;
      if (restricted) {
        // The full character reaches the lowest weight -lambda, so the
        // deepest weight space sits at drop 2*lambda; refuse upfront when the
        // budget cannot cover it instead of computing the shallow part first.
        // (The digit route below and char_weyl never enumerate that deep.)
        Weight twice(lambda.size());
        for (std::size_t i = 0; i < lambda.size(); ++i) twice[i] = 2 * lambda[i];
        long long needed = 0;
        for (const Rat& c : rsB.root_coords_of_weight(twice)) {
          if (!is_integer(c)) throw std::logic_error("2*lambda must lie in the root lattice");
          needed += static_cast<long long>(Int(c).get_si());
        }
        if (needed > budget.height) {
          out.note = "full character needs drop height " + std::to_string(needed) +
                     ", above the budget height " + std::to_string(budget.height);
          return out;
        }
        cb = char_irreducible(tB, lambda, p, budget, true);
      } else {
        cb = char_irreducible_general(tB, lambda, p, budget, true);
      }
    }
  } catch (const BudgetExceeded& e) {
    out.note = std::string("module character exceeds the budget: ") + e.what();
    return out;
  }
  out.module_dim = cb.dimension;

  // full restricted character: expand each dominant orbit and push the
  // weights through the restriction map
  std::map<Weight, long long> remaining;
  for (const auto& [mu, m] : cb.entries)
    for (const Weight& w : rsB.weyl_orbit(mu)) remaining[rm(w)] += m;

  while (!remaining.empty()) {
    for (const auto& [w, m] : remaining)
      if (m < 0)
        throw std::logic_error("character peeling produced a negative multiplicity at " +
                               weight_str(w));
    if (out_of_time()) {
      out.note = "time budget exhausted during peeling";
      return out;
    }
    // dominance-maximal dominant weight of what remains, lexicographically
    // largest among the maximal ones for determinism
    std::vector<Weight> cands;
    for (const auto& [w, m] : remaining)
      if (m > 0 && rsD.is_dominant(w)) cands.push_back(w);
    if (cands.empty())
      throw std::logic_error("nonzero character without a dominant weight");
    std::sort(cands.begin(), cands.end(),
              [](const Weight& a, const Weight& b) { return b < a; });
    const Weight* pick = nullptr;
    for (const Weight& c : cands) {
      bool maximal = true;
      for (const Weight& d : cands)
        if (d != c && rsD.dominates(d, c)) maximal = false;
      if (maximal) {
        pick = &c;
        break;
      }
    }
    Weight nu = *pick;
    long long mult = remaining[nu];

    const CharacterTable* cd = nullptr;
    try {
      cd = &subgroup_character(n, p, nu, budget);
    } catch (const BudgetExceeded& e) {
      out.note = "factor character at " + weight_str(nu) +
                 " exceeds the budget: " + e.what();
      return out;
    }
    for (const auto& [mu2, m2] : cd->entries)
      for (const Weight& w : rsD.weyl_orbit(mu2)) {
        auto it = remaining.find(w);
        long long nv = (it == remaining.end() ? 0 : it->second) -
                       mult * static_cast<long long>(m2);
        if (nv == 0) {
          if (it != remaining.end()) remaining.erase(it);
        } else if (it == remaining.end()) {
          remaining.emplace(w, nv);
        } else {
          it->second = nv;
        }
      }
    out.factors.push_back({nu, checked_int(mult), cd->dimension});
  }

  std::sort(out.factors.begin(), out.factors.end(),
            [](const FactorEntry& a, const FactorEntry& b) { return b.omega < a.omega; });
  Int total = 0;
  for (const FactorEntry& f : out.factors) total += Int(static_cast<long>(f.multiplicity)) * f.dim;
  if (total != out.module_dim)
    throw std::logic_error("dimension ledger disagrees with the module dimension");
  out.complete = true;
  return out;
}

}  // namespace branchlie
