#pragma once
// Restriction of irreducible highest-weight modules from Spin(2n+1) (type B_n)
// to Spin(2n) (type D_n), embedded as the subsystem of long roots.
//
// The module answers one question in several independent ways: for which
// highest weights lambda and characteristics p does the restriction of
// L(lambda) to the subgroup split into exactly two composition factors?
//
//  * restrict_weight / theta_twist translate weights between the two systems;
//    the twist is the symmetry swapping the two half-spin nodes.
//  * classify_p_restricted decides the question for p-restricted lambda by
//    closed-form divisibility conditions, and predicted_factors names the two
//    factors when the answer is yes.
//  * classify_general extends the decision to arbitrary dominant weights
//    through the base-p digit factorization; its two modes expose two
//    inequivalent readings of the stated p = 2 digit condition.
//  * brute_force_decompose ignores all of the above and decomposes the
//    restriction directly by character peeling, giving an independent oracle
//    with an exact dimension ledger.
//
// Condition tags (Thm1_case1, ..., Cor2_case2) are fixed interface tokens
// naming which branch of the classification fired.

#include <string>
#include <utility>
#include <vector>

#include "branchlie/weylmod.hpp"

namespace branchlie {

// ---------------------------------------------------------------------------
// Weight translation

// Linear map from B_n fundamental-weight coordinates (a_1,...,a_n) to D_n
// coordinates: the first n-1 coordinates are kept and the last becomes
// a_{n-1} + a_n.  Unit vectors map as e_i -> e_i (i < n-1),
// e_{n-1} -> e_{n-1} + e_n, e_n -> e_n.
struct RestrictionMap {
  int n = 0;
  Weight operator()(const Weight& w) const;
};

RestrictionMap restriction_map(int n);

// restriction_map(n) applied to a length-n weight vector; n >= 3.
Weight restrict_weight(int n, const Weight& lambda);

// Swap the coefficients of the two half-spin fundamental weights (the last
// two coordinates); an involution on D_n weights.
Weight theta_twist(const Weight& omega);

// ---------------------------------------------------------------------------
// Verdicts

enum class Outcome { TwoFactors, NotTwo, Unknown };

std::string to_string(Outcome o);

// Which branch of the classification decided the verdict.  The first four
// apply to p-restricted weights, the Cor2 tags to the digit-factorized
// general case, and failed carries a short reason tag in
// BranchingVerdict::which.
enum class Condition {
  Thm1_case1,  // lambda is a single fundamental weight below the spin node, p != 2
  Thm1_case2,  // lambda is the spin fundamental weight
  Thm1_case3,  // divisibility conditions, spin-node coefficient zero
  Thm3_1,      // divisibility conditions, spin-node coefficient one
  Cor2_case1,  // a single base-p digit passes the p-restricted classification
  Cor2_case2,  // p = 2 multi-digit pattern with a unique spin digit
  failed,      // NotTwo or Unknown; see which / trace
};

std::string to_string(Condition c);

struct FactorNote {
  Weight omega;      // D_n highest weight
  std::string note;  // where the factor comes from
};

struct BranchingVerdict {
  Outcome outcome = Outcome::Unknown;
  std::vector<FactorNote> factors;  // the two factors when TwoFactors
  Condition fired = Condition::failed;
  std::string which;  // reason tag when fired == failed ("cond_b", "p=2", ...)
  std::string trace;  // the condition evaluations spelled out
  bool completely_reducible = false;

  // "Thm1_case3" or "failed(cond_b)"
  std::string fired_label() const;
};

// ---------------------------------------------------------------------------
// Closed-form classification, p-restricted weights

// Decides whether the restriction of L(lambda) to the D_n subgroup has
// exactly two composition factors.  Requires n >= 3, lambda dominant nonzero
// of length n, p zero or prime, and lambda p-restricted when p > 0 (throws
// std::invalid_argument otherwise).  p = 0 uses the convention p | m iff
// m = 0.  When the answer is yes the two factor weights are filled in and
// the restriction is completely reducible.
BranchingVerdict classify_p_restricted(int n, long long p, const Weight& lambda);

// The two predicted factor highest weights for an accepted (lambda, p): the
// restriction of lambda, and the restriction of lambda minus the drop to the
// second maximal vector (alpha_n when the spin-node coefficient is nonzero,
// else the chain alpha_k + ... + alpha_n from the last supported node).
// The tag selects the branch and must match lambda (std::invalid_argument
// otherwise).  Both weights are dominant and their saturated weight sets are
// verified disjoint (std::logic_error on violation).
std::pair<Weight, Weight> predicted_factors(int n, const Weight& lambda, Condition c);

// True when the saturated weight sets of w1 and w2 cannot meet: either the
// difference w1 - w2 falls outside the root lattice (distinct cosets), or
// the explicitly enumerated dominant orbits are disjoint.
bool weight_sets_disjoint(const RootSystem& dn, const Weight& w1, const Weight& w2);

// ---------------------------------------------------------------------------
// General highest weights via base-p digits

enum class Mode { literal, proof };

Mode mode_from_string(const std::string& s);

// Decides the two-factor question for an arbitrary dominant nonzero delta.
// p must be prime, or zero (which reduces to the p-restricted classification).
// A single nonzero digit defers to classify_p_restricted on the digit
// (Cor2_case1).  With several nonzero digits and p odd the answer is no; for
// p = 2 the stated digit-counting condition is applied over digit positions
// 1..r in Mode::literal, while Mode::proof classifies every digit position
// (including 0) and may return Unknown when a digit's factor count is not
// determined by the closed forms (spin-node coefficient nonzero but not the
// spin weight).
BranchingVerdict classify_general(int n, long long p, const Weight& delta,
                                  Mode mode = Mode::proof);

// Same, but an Unknown verdict is settled by brute_force_decompose under the
// given budget; if the oracle itself exceeds the budget the verdict stays
// Unknown.
BranchingVerdict classify_general(int n, long long p, const Weight& delta, Mode mode,
                                  const Budget& oracle_budget, long long time_ms);

// ---------------------------------------------------------------------------
// Character-peeling oracle

struct FactorEntry {
  Weight omega;         // D_n dominant highest weight
  int multiplicity = 0;
  Int dim = 0;          // dim of the irreducible D_n module of weight omega
};

struct FactorList {
  Weight lambda;   // the B_n highest weight that was decomposed
  long long p = 0;
  std::vector<FactorEntry> factors;  // descending lexicographic order
  Int module_dim = 0;                // dim of the restricted module
  bool complete = false;
  std::string note;  // why the run stopped early, empty when complete

  // total number of composition factors found (sum of multiplicities)
  long long factor_count() const;
};

// Decomposes the restriction of L(lambda) by repeatedly subtracting the full
// D_n irreducible character at a maximal dominant weight of what remains.
// Independent of the classifiers above.  Works for any dominant lambda
// (non-restricted weights go through the digit factorization) and any p zero
// or prime, including 2.  A budget overrun or an elapsed time beyond time_ms
// (0 = no limit) yields complete = false with the reason in note; the
// partial ledger is still returned.  When complete, the dimension ledger
// sum(mult * dim) == module_dim is verified (std::logic_error on failure).
FactorList brute_force_decompose(int n, long long p, const Weight& lambda,
                                 const Budget& budget = {}, long long time_ms = 0);

}  // namespace branchlie
