/*
  maxvec.hpp

  Weight-space spanning lists, closed-form bases for distinguished highest
  weights, maximal-vector solution spaces, and quotient modules by the
  submodule generated by a maximal vector.

  The families with closed-form bases (tags below) are the highest weights
    A_l : aσ_1 + bσ_l            with μ = λ − (α_1+⋯+α_l),
    B_n : aλ_1                   with μ = λ − 2(α_1+⋯+α_n),
    B_n : λ_i (1<i<n)            with μ = λ − (α_1+⋯+α_{i−1}+2α_i+⋯+2α_n),
    B_n : aλ_1+λ_2               with μ = λ − (α_1+2α_2+⋯+2α_n),
    B_n : aλ_1+λ_k (2<k<n)       with μ = λ − (α_1+⋯+α_{k−1}+2α_k+⋯+2α_n).
  Their weight spaces V(λ)_μ carry explicit bases built from the composite
  root vectors f_{i,j} (root α_i+⋯+α_j) and F_{r,s} (root
  α_r+⋯+α_{s−1}+2α_s+⋯+2α_n), in a fixed display order. Whether V(λ)_μ (or
  the appropriate quotient) contains a maximal vector of weight μ is
  equivalent to a divisibility condition on p, with an explicit solution ray;
  both are implemented here and solved independently by exact linear algebra.

  For aλ_1+λ_k (k ≥ 2) the right ambient space is the quotient
  V̄(λ) = V(λ)/⟨G u⁺⟩ where u⁺ = f_{1,k}v − Σ_{r<k} f_{1,r}f_{r+1,k}v is the
  maximal vector of weight λ−(α_1+⋯+α_k) that exists when p | a+k.

  Everything is exact: over Q in characteristic zero, over F_p via the
  minimal admissible lattice otherwise.
*/
#ifndef BRANCHLIE_MAXVEC_HPP
#define BRANCHLIE_MAXVEC_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "branchlie/enveloping.hpp"
#include "branchlie/linalg.hpp"
#include "branchlie/rootsystem.hpp"

namespace branchlie {

// Which family a generator list belongs to. `generic` is the plain
// divided-power spanning list of an arbitrary weight space; `quotient` marks
// a basis of a quotient-module weight space.
enum class CaseTag {
  generic,
  A_row,        // A_l, aσ_1 + bσ_l
  B_a_l1,       // B_n, aλ_1 (a ≥ 2)
  B_li,         // B_n, λ_i (1 < i < n)
  B_a_l1_l2,    // B_n, aλ_1 + λ_2
  B_a_l1_lk,    // B_n, aλ_1 + λ_k (2 < k < n)
  quotient,
};

std::string to_string(CaseTag tag);
// Accepts the display names ("A_row", "B_aλ1", "B_λi", "B_aλ1λ2",
// "B_aλ1λk") and ASCII fallbacks ("B_al1", "B_li", "B_al1l2", "B_al1lk").
CaseTag case_tag_from_string(const std::string& s);

// Parameters selecting one instance of a closed-form family.
struct CaseParams {
  CaseTag tag = CaseTag::generic;
  int rank = 0;     // l for type A, n for type B
  int k = 0;        // the inner fundamental-weight index (B_li, B_a_l1_lk)
  long long a = 0;  // coefficient of σ_1 / λ_1
  long long b = 0;  // coefficient of σ_l (A_row only)
};

// Throws std::invalid_argument when the parameters leave the family's
// hypotheses (rank bounds, a ≥ 2 for B_a_l1, 1 < i < n, 2 < k < n, …).
void validate_case(const CaseParams& cp);

LieType case_lie_type(const CaseParams& cp);
Weight case_lambda(const CaseParams& cp);
Weight case_mu(const CaseParams& cp);

// The family's divisibility condition on p (false for B_li, which never
// admits a maximal vector of weight μ, and for p = 0).
bool case_divisibility(const CaseParams& cp, long long p);

// The solution ray reduced mod p, in display-order coordinates:
// (1,…,1,−b) for A_row; (4,…,4,1) for B_a_l1 and B_a_l1_l2 (in the
// quotient); (4, n−k−1,…, k−n,…, −2,…, 4,…, 1) for B_a_l1_lk. Empty when
// the family has no solution ray (B_li) or p = 0.
std::vector<long long> case_solution_pattern(const CaseParams& cp, long long p);

// Index of the positive root α_i+⋯+α_j (1-based, i ≤ j ≤ rank).
int chain_root_index(const RootSystem& rs, int i, int j);
// Index of the positive root α_r+⋯+α_{s−1}+2α_s+⋯+2α_n (type B only,
// 1-based, r < s ≤ n).
int doubled_tail_root_index(const RootSystem& rs, int r, int s);

// One spanning element: a product of root vectors applied to the highest
// vector, left factor acting last. `factors` lists positive-root indices in
// the written order (repeated index = repeated factor, so plain powers, not
// divided); empty for generic divided-power monomial entries. `element` is
// the straightened result in the divided-power basis.
struct Generator {
  std::string label;
  std::vector<int> factors;
  ModuleElement element;
};

struct GeneratorList {
  CaseTag tag = CaseTag::generic;
  Weight lambda;
  Weight mu;
  std::vector<Generator> gens;
  // |Φ⁺| − |Φ⁺_λ|, filled by generating_monomials (0 otherwise).
  int excluded_roots = 0;

  int size() const { return static_cast<int>(gens.size()); }
};

// The positive roots γ with λ−γ a weight of V(λ) (the set Φ⁺_λ), as indices.
std::vector<int> supported_positive_roots(const RootSystem& rs,
                                          const Weight& lambda);

// The divided-power spanning list of V(λ)_μ. With restricted = true, keeps
// only monomials over Φ⁺_λ — a valid spanning set when every coefficient of
// λ−μ is < p (checked; p = 0 imposes no bound) — and asserts the span
// against the lattice rank (mod p when p > 0).
GeneratorList generating_monomials(WeylModule& wm, const Weight& mu,
                                   bool restricted, long long p = 0);

// The family's displayed basis of V(λ)_μ, in display order, certified
// linearly independent of full cardinality over Q.
GeneratorList case_basis(WeylModule& wm, const CaseParams& cp);

// The maximal vector u⁺ = f_{1,k}v − Σ_{r=1}^{k−1} f_{1,r}f_{r+1,k}v of
// weight λ−(α_1+⋯+α_k) used to form the quotient for aλ_1+λ_k (k from the
// params; requires tag B_a_l1_l2 or B_a_l1_lk). Maximality holds mod p
// exactly when p | a+k and is re-verified by quotient_space.
ModuleElement case_killed_vector(WeylModule& wm, const CaseParams& cp);

// V̄(λ) = V(λ)/⟨G u⁺⟩ seen through its weight spaces: the submodule
// component at a weight w is spanned by the divided-power monomials of the
// right drop applied to u⁺. Construction verifies that u⁺ is a maximal
// vector mod p. A display basis of V̄(λ)_μ may be installed (and is then
// certified independent mod the submodule); otherwise lattice cosets serve.
// Keeps a reference to the module; the module must outlive the quotient.
class QuotientSpace {
 public:
  QuotientSpace(WeylModule& wm, ModuleElement u_plus, Weight mu, long long p,
                std::optional<GeneratorList> display_basis = std::nullopt);

  WeylModule& module() { return *wm_; }
  long long p() const { return p_; }
  const Weight& mu() const { return mu_; }
  const ModuleElement& killed() const { return u_plus_; }
  const GeneratorList& basis() const { return basis_; }
  int dim() const { return basis_.size(); }

  // Dimension of the submodule component ⟨G u⁺⟩_w.
  int submodule_dim(const Weight& w);
  // Does x lie in the submodule (i.e. vanish in the quotient)? x must be
  // homogeneous; any weight is accepted.
  bool vanishes(const ModuleElement& x);
  bool equal_classes(const ModuleElement& x, const ModuleElement& y);
  // Coordinates of x + ⟨G u⁺⟩ in the installed basis; x of weight μ.
  std::vector<long long> coordinates(const ModuleElement& x);
  // Reduce the mod-p lattice coordinates of a weight-w element modulo the
  // submodule component (used by the maximal-vector solver).
  std::vector<long long> reduce_at(const Weight& w, const ModuleElement& x);

 private:
  const FpSpace& component(const Weight& w);

  WeylModule* wm_;
  ModuleElement u_plus_;
  Weight nu_;  // weight of u⁺
  Weight mu_;
  long long p_;
  GeneratorList basis_;
  std::vector<std::vector<long long>> reduced_basis_;  // basis coords mod ⟨G u⁺⟩_μ
  std::map<Weight, FpSpace> components_;
  std::map<Weight, QMat> inv_cache_;
};

// Basis of {w : e_α w = 0 for all simple α} inside the given ambient weight
// space, in the coordinates of `basis` (display order for family bases).
// Solutions are re-verified by applying every raising operator to the
// reconstructed element.
struct MaxVecSolution {
  long long p = 0;
  bool quotient_ambient = false;
  GeneratorList basis;
  int dim = 0;
  std::vector<std::vector<long long>> vectors_p;  // p > 0: entries in [0, p)
  std::vector<std::vector<Rat>> vectors_q;        // p = 0
};

// Ambient V(λ)_μ, coordinates in a caller-supplied basis of the weight
// space (certified mod p / over Q before solving).
MaxVecSolution maximal_vector_space(WeylModule& wm, const GeneratorList& basis,
                                    long long p);
// Ambient V(λ)_μ with an automatically chosen coordinate basis (pivot
// monomials over Q, lattice vectors mod p).
MaxVecSolution maximal_vector_space(WeylModule& wm, const Weight& mu,
                                    long long p);
// Ambient a quotient weight space; coordinates in its installed basis.
MaxVecSolution maximal_vector_space(QuotientSpace& qs);

// End-to-end: build the module (and quotient where the family needs one) and
// solve. Quotient families require p | a+k (k = 2 for B_a_l1_l2).
MaxVecSolution case_solution(const CaseParams& cp, long long p,
                             Budget budget = {});
QuotientSpace case_quotient(WeylModule& wm, const CaseParams& cp, long long p);

// Membership of `target` in the span of `span_elems` inside L(λ)_μ, i.e.
// modulo the radical of the contravariant form: coordinates are Gram-paired
// before solving, so the answer is about images in the irreducible quotient.
// λ must be p-restricted, p an odd prime (2 allowed in type A).
struct Membership {
  bool member = false;
  std::vector<long long> coords;  // target = Σ coords[i]·span_elems[i] in L(λ)
};
Membership subspace_membership(WeylModule& wm, const ModuleElement& target,
                               const std::vector<ModuleElement>& span_elems,
                               long long p);

// The four equivalent statements for a family instance, each evaluated by an
// independent computation:
//   (1) μ is the highest weight of a composition factor (the ambient weight
//       space — quotient for the aλ_1+λ_k families — exceeds dim L(λ)_μ),
//   (2) the displayed generators become linearly dependent in L(λ)_μ,
//   (3) the distinguished last generator lies in the span of the others in
//       L(λ)_μ,
//   (4) the divisibility condition holds.
struct EquivalenceAudit {
  CaseParams params;
  long long p = 0;
  bool factor_at_mu = false;
  bool dependent = false;
  bool member = false;
  bool divisible = false;
  int ambient_dim = 0;
  int irreducible_dim = 0;

  bool agree() const {
    return factor_at_mu == dependent && dependent == member &&
           member == divisible;
  }
};
EquivalenceAudit equivalence_audit(const CaseParams& cp, long long p,
                                   Budget budget = {});

// The closed-form rewriting identities at rank n, each evaluated by the
// straightening engine in the stated module:
//   - in V(λ_1):  f_{1,j}F_{1,j+1}v = f_{α_1}F_{1,2}v  (1 ≤ j < n)
//                 (f_{1,n})² v = 2 f_{α_1}F_{1,2}v
//   - in V̄(aλ_1+λ_2), p | a+2:  f_{1,r}v̄ = f_{α_1}f_{2,r}v̄  (2 < r ≤ n)
//   - in V̄(aλ_1+λ_k), p | a+k, 2 < k < n:
//                 f_{k,n}f_{2,n}v̄ = −F_{2,k}v̄ − f_{2,k−1}f_{α_k}F_{k,k+1}v̄
//                 f_{k,n−1}f_{1,n}v̄ = f_{1,n−1}f_{k,n}v̄
//                                     − Σ_{r<k−1} f_{1,r}f_{r+1,n−1}f_{k,n}v̄
//                 f_{k,n−1}f_{r+1,n}v̄ = −f_{r+1,n−1}f_{k,n}v̄  (r < k−1)
struct IdentityCheck {
  std::string name;
  bool holds = false;
};
std::vector<IdentityCheck> identity_checks(int n, Budget budget = {});

// True when x and y generate the same line in (F_p)^m.
bool proportional_mod_p(const std::vector<long long>& x,
                        const std::vector<long long>& y, long long p);

}  // namespace branchlie

#endif
