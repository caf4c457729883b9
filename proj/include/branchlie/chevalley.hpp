/*
  chevalley.hpp

  Structure constants N_{(alpha,beta)} of a standard Chevalley basis, fixed by
  the convention N > 0 on extraspecial pairs and propagated to all pairs of
  roots through the defining relations:

    [e_a, e_b] = N_{(a,b)} e_{a+b},  |N_{(a,b)}| = q+1,
                 q = max{ k : a - k b is a root }              (R0)
    N_{(b,a)} = -N_{(a,b)} = N_{(-a,-b)}                       (R1)
    a+b+c = 0:      N_{(a,b)}/(c,c) = N_{(b,c)}/(a,a)
                                    = N_{(c,a)}/(b,b)          (R2)
    a+b+c+d = 0, no opposite pair:
      N_{(a,b)}N_{(c,d)}/(a+b,a+b) + N_{(c,a)}N_{(b,d)}/(c+a,c+a)
        + N_{(b,c)}N_{(a,d)}/(b+c,b+c) = 0                     (R3)

  Signed-root encoding used throughout: s = +(idx+1) is the positive root with
  order index idx, s = -(idx+1) its negative.
*/
#ifndef BRANCHLIE_CHEVALLEY_HPP
#define BRANCHLIE_CHEVALLEY_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "branchlie/rootsystem.hpp"

namespace branchlie {

struct ExtraspecialMap {
  // non-simple positive root index -> the (first, second) pair of positive
  // root indices summing to it with minimal first component in the root order
  std::map<int, std::pair<int, int>> by_sum;
};

ExtraspecialMap extraspecial_pairs(const RootSystem& rs);

class StructureConstantTable {
 public:
  // N for signed roots sa, sb; 0 when sa+sb is not a root
  int N(int sa, int sb) const;
  // N for a pair of positive roots given by order index
  int N_pos(int a, int b) const { return N(a + 1, b + 1); }

  const RootSystem& roots() const { return *rs_; }
  const ExtraspecialMap& extraspecial() const { return esp_; }
  int num_signed_pairs() const;  // stored pairs with root sum

  // root vector of a signed root
  RootVec vec(int s) const;
  int norm2(int s) const { return rs_->positive(std::abs(s) - 1).norm2; }

 private:
  friend StructureConstantTable propagate_structure_constants(
      const RootSystem&, const ExtraspecialMap&);
  const RootSystem* rs_ = nullptr;
  ExtraspecialMap esp_;
  // full table indexed by [signed a][signed b], linearized: positive root idx
  // -> idx, negative root idx -> num_positive + idx
  std::vector<std::vector<int>> n_;
};

StructureConstantTable propagate_structure_constants(const RootSystem& rs,
                                                     const ExtraspecialMap& esp);

// Process-wide table for (type, rank), owning its root system. Construction
// is serialized; afterwards the table is immutable, so sharing it across
// threads (each with its own modules) is safe.
const StructureConstantTable& shared_structure_constants(LieType t, int rank);

struct RelationReport {
  long long string_checked = 0;     // |N| = q+1 instances (R0)
  long long pairs_checked = 0;      // antisymmetry instances (R1)
  long long triples_checked = 0;    // (R2) instances
  long long quadruples_checked = 0; // (R3) instances
  std::vector<std::string> violations;  // capped at 100 entries
  long long violation_count = 0;
  bool ok() const { return violation_count == 0; }
};

RelationReport verify_chevalley_relations(const StructureConstantTable& t);

}  // namespace branchlie

#endif
