#pragma once
// Character-level data for highest-weight modules: the Freudenthal recursion
// (a characteristic-zero multiplicity oracle independent of the straightening
// engine), the Weyl dimension formula, saturated weight sets with orbit data,
// Levi restriction of multiplicities, and dominant multiplicity tables of the
// irreducible modules L(lambda) in characteristic p, assembled from the
// F_p-ranks of weight-space Gram matrices.  Twisted tensor factorizations
// extend the tables to non-restricted highest weights.
//
// All tables list dominant weights only; values at arbitrary weights follow
// by Weyl invariance through CharacterTable::mult.

#include <map>
#include <utility>
#include <vector>

#include "branchlie/enveloping.hpp"

namespace branchlie {

// Multiplicities of V(lambda) in characteristic zero by the Freudenthal
// recursion, memoized over dominant weights.  Exact integer arithmetic
// throughout: with the long-root normalization (gamma,gamma) = 2, both sides
// of the recursion are integers after doubling the inner products.
class FreudenthalTable {
 public:
  FreudenthalTable(const RootSystem& rs, Weight lambda);

  // multiplicity of mu in V(lambda); 0 when mu is below lambda but not a
  // weight.  Throws std::invalid_argument when mu is not below lambda.
  Int mult(const Weight& mu);

  const Weight& lambda() const { return lambda_; }
  const RootSystem& roots() const { return *rs_; }

 private:
  Int mult_dominant(const Weight& mu);

  const RootSystem* rs_;
  Weight lambda_;
  std::map<Weight, Int> memo_;
};

Int freudenthal_mult(const RootSystem& rs, const Weight& lambda, const Weight& mu);

// dim V(lambda) by the Weyl degree formula.
Int weyl_dim(const RootSystem& rs, const Weight& lambda);

// The set of weights of V(lambda), represented by its dominant members with
// their orbit sizes.  The full set is the union of the Weyl orbits and is
// saturated: mu - r*alpha stays in the set for 0 <= r <= <mu, alpha^vee>.
struct SaturatedWeightSet {
  Weight lambda;
  std::vector<Weight> dominant;        // ascending drop height from lambda
  std::vector<long long> orbit_sizes;  // parallel to dominant
  bool contains(const RootSystem& rs, const Weight& mu) const;
  long long total_size() const;
};

SaturatedWeightSet weight_set_saturated(const RootSystem& rs, const Weight& lambda);

enum class CharKind { weyl, irreducible };

// Dominant multiplicity table of V(lambda) (kind weyl) or L(lambda) (kind
// irreducible) in characteristic p, with the total dimension.
struct CharacterTable {
  Weight lambda;
  long long p = 0;
  CharKind kind = CharKind::weyl;
  std::map<Weight, int> entries;  // dominant mu -> multiplicity, zeros omitted
  Int dimension = 0;

  // multiplicity at an arbitrary weight, by Weyl invariance
  int mult(const RootSystem& rs, const Weight& mu) const;
};

CharacterTable char_weyl(const RootSystem& rs, const Weight& lambda);

// Full dominant character of L(lambda), p zero or prime, lambda p-restricted
// when p > 0.  Type B in characteristic 2 sits outside the theory the rest of
// the library depends on and is refused unless allow_char2_typeB is set (the
// brute-force branching checks opt in deliberately).
CharacterTable char_irreducible(const StructureConstantTable& t, const Weight& lambda,
                                long long p, Budget budget = {},
                                bool allow_char2_typeB = false);

// Base-p digits of a dominant weight, least significant first; each digit is
// p-restricted and lambda = sum_k p^k digit_k.  At least one digit.
std::vector<Weight> steinberg_digits(const Weight& lambda, long long p);

// Character of L(lambda) for arbitrary dominant lambda via the twisted tensor
// factorization L(lambda) = L(digit_0) (x) L(digit_1)^[p] (x) ..., convolving
// the full weight supports of the digit characters.
CharacterTable char_irreducible_general(const StructureConstantTable& t,
                                        const Weight& lambda, long long p,
                                        Budget budget = {},
                                        bool allow_char2_typeB = false);

// Multiplicity of mu in L(lambda) computed inside the Levi subsystem on the
// contiguous 1-based diagram range {j_lo..j_hi}, which must contain the
// support of lambda - mu.  p = 0 means characteristic zero.  When crosscheck
// is set and the ambient computation is feasible within the default budget,
// the two values are compared and a mismatch throws std::logic_error.
Int levi_restrict_mult(const StructureConstantTable& t, const Weight& lambda,
                       const Weight& mu, int j_lo, int j_hi, long long p,
                       bool crosscheck = true);

}  // namespace branchlie
