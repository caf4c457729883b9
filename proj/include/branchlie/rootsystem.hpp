/*
  rootsystem.hpp

  Root systems of types A_l (l >= 2), B_n, D_n (n >= 3) in Bourbaki labelling.
  Roots are stored in simple-root coordinates, weights in fundamental-weight
  coordinates. Lengths are normalized so long roots have squared norm 2 (so
  the short simple root of B_n has squared norm 1).

  Positive roots are kept sorted by the total order
      alpha <= beta  iff  alpha == beta or the last nonzero coordinate of
      beta - alpha (in the simple-root basis) is positive,
  and are addressed by their index in that order throughout the library.
*/
#ifndef BRANCHLIE_ROOTSYSTEM_HPP
#define BRANCHLIE_ROOTSYSTEM_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "branchlie/rational.hpp"

namespace branchlie {

enum class LieType { A, B, D };

std::string to_string(LieType t);
LieType lie_type_from_string(const std::string& s);

using Weight = std::vector<int>;    // fundamental-weight coordinates
using RootVec = std::vector<int>;   // simple-root coordinates

struct Root {
  RootVec c;
  int height = 0;  // sum of simple-root coordinates
  int norm2 = 0;   // (gamma, gamma), 1 or 2
};

struct DominanceDelta {
  enum class Status { InCone, NotInRootLattice, NegativeCoefficient };
  Status status;
  RootVec delta;  // meaningful only for InCone
  bool holds() const { return status == Status::InCone; }
};

class RootSystem {
 public:
  RootSystem() = default;  // empty shell, fill via build()
  static RootSystem build(LieType type, int rank);

  LieType type() const { return type_; }
  int rank() const { return rank_; }
  int num_positive() const { return static_cast<int>(pos_.size()); }
  const Root& positive(int idx) const { return pos_[idx]; }
  const std::vector<Root>& positive_roots() const { return pos_; }
  int simple_index(int i) const { return simple_idx_[i]; }  // order index of alpha_{i+1}
  bool is_simple(int idx) const;

  // -1 if v is not a positive root
  int index_of(const RootVec& v) const;
  bool is_root(const RootVec& v) const;  // positive or negative

  // <w, gamma^vee> for a weight w and positive root gamma
  int pairing(const Weight& w, int idx) const;
  // <gamma_a, gamma_b^vee>
  int pairing_roots(int a, int b) const;
  // <sum_j d_j alpha_j, gamma^vee> for an integer vector d in root coordinates
  int pairing_rootvec(const RootVec& d, int idx) const;
  // 2*(w, gamma) for a weight w (an integer by the normalization)
  long long ip2_weight_root(const Weight& w, int idx) const;
  // 2*(gamma_a, gamma_b)
  int ip2_roots(int a, int b) const { return ip2_[a][b]; }

  // fundamental coordinates of sum_j d_j alpha_j (always integral)
  Weight weight_of_rootvec(const RootVec& d) const;
  // simple-root coordinates of a weight, when the weight lies in the root
  // lattice over Q the result is the rational coordinate vector
  std::vector<Rat> root_coords_of_weight(const Weight& w) const;

  Weight rho() const { return Weight(rank_, 1); }

  Weight reflect(const Weight& w, int idx) const;
  Weight dominant_rep(const Weight& w) const;
  bool is_dominant(const Weight& w) const;
  std::vector<Weight> weyl_orbit(const Weight& w) const;

  // lambda - mu as a nonnegative root-lattice vector, or the reason it fails
  DominanceDelta dominance_delta(const Weight& lambda, const Weight& mu) const;
  bool dominates(const Weight& lambda, const Weight& mu) const {
    return dominance_delta(lambda, mu).holds();
  }

  // largest q >= 0 with gamma_a - q * gamma_b a root
  int root_string_q(int a, int b) const;

  // the comparator behind the stored order, usable on arbitrary root vectors
  static bool root_vec_less(const RootVec& x, const RootVec& y);

 private:
  LieType type_ = LieType::A;
  int rank_ = 0;
  std::vector<std::vector<int>> sg2_;   // 2*(alpha_i, alpha_j)
  std::vector<Root> pos_;               // sorted by the positive-root order
  std::vector<int> simple_idx_;
  std::map<RootVec, int> index_;
  std::vector<std::vector<int>> ip2_;   // 2*(gamma_a, gamma_b)
};

// Levi subsystem on a contiguous index range J = {lo..hi} (1-based) of the
// Dynkin diagram. Supported shapes: any contiguous range of A_l; ranges of
// B_n (tail {k..n} gives B_{n-k+1}, others give type A); ranges of D_n
// ({k..n} with k <= n-2 gives D_{n-k+1}, ranges avoiding n give type A).
struct LeviSubsystem {
  RootSystem sub;
  int lo = 1, hi = 0;                       // the 1-based range in the ambient system
  Weight restrict(const Weight& w) const;   // pick coordinates lo..hi
  RootVec embed(const RootVec& d) const;    // sub root coords -> ambient root coords
  int ambient_rank = 0;
};

LeviSubsystem levi_subsystem(const RootSystem& rs, int lo, int hi);

// Dictionary for the subsystem of long roots of B_n, which is a D_n system
// with simple roots beta_i = alpha_i (i < n), beta_n = alpha_{n-1} + 2 alpha_n.
// Weight restriction is the corresponding linear map on fundamental
// coordinates: (a_1..a_n) -> (a_1, .., a_{n-1}, a_{n-1} + a_n).
struct BnDnDictionary {
  int n = 0;
  RootSystem bn;
  RootSystem dn;
  std::vector<RootVec> d_simple_in_b;  // beta_i as B_n root vectors
  bool is_long(int b_pos_idx) const;
  Weight restrict(const Weight& b_weight) const;
  Weight theta_twist(const Weight& d_weight) const;  // swap the last two coordinates
};

BnDnDictionary bn_dn_dictionary(int n);

}  // namespace branchlie

#endif
