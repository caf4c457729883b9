/*
  enveloping.hpp

  Divided-power lowering monomials f_{γ_1}^{(k_1)} ⋯ f_{γ_r}^{(k_r)} v^λ with
  the γ_i strictly increasing in the positive-root order, straightening of
  arbitrary products back into that order, the contravariant form ⟨·,·⟩ with
  ⟨f_γ u, w⟩ = ⟨u, e_γ w⟩, and integral lattices of weight spaces together
  with their Gram matrices. Ranks of those Gram matrices over Q and over F_p
  give the weight multiplicities of the Weyl module and of its irreducible
  quotient.

  Conventions:
    - [x_α, x_β] = N_{(α,β)} x_{α+β} for signed roots α, β (table from
      chevalley.hpp), so [f_α, f_β] = N_{(-α,-β)} f_{α+β} for positive α, β.
    - Straightening uses x·y^{(k)} = Σ_{j≥0} y^{(k-j)} · ((-ad y)^j x)/j!.
    - Cartan elements act on a weight vector of weight μ by ⟨μ, α^∨⟩.
    - e_γ v^λ = 0 for every positive γ.

  Lifetimes: LoweringAlgebra keeps a pointer to the structure-constant table,
  which itself points at its root system; both must outlive every module
  built on them. Caches are not synchronized — concurrent work should use one
  WeylModule (and one LoweringAlgebra) per thread.
*/
#ifndef BRANCHLIE_ENVELOPING_HPP
#define BRANCHLIE_ENVELOPING_HPP

#include <compare>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "branchlie/chevalley.hpp"
#include "branchlie/linalg.hpp"
#include "branchlie/rational.hpp"
#include "branchlie/rootsystem.hpp"

namespace branchlie {

// Caps keeping weight-space computations at desk scale. Height is the sum of
// the root coordinates of λ-μ; the caps bound how many monomials a single
// weight space may enumerate (the lattice cap is tighter because explicit
// lattice bases carry an |monomials|-sized transform).
struct Budget {
  int height = 24;
  long long monomial_cap = 40000;
  long long lattice_cap = 1500;
};

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

// ∏ f_γ^{(k)} over strictly increasing positive-root indices; the empty
// monomial is the identity (so m·v^λ = v^λ).
struct PBWMonomial {
  std::vector<std::pair<int, int>> factors;  // (root index, exponent ≥ 1)

  bool empty() const { return factors.empty(); }
  auto operator<=>(const PBWMonomial&) const = default;
};

// Root coordinates of the weight lowered by the monomial, Σ k·γ.
RootVec monomial_drop(const RootSystem& rs, const PBWMonomial& m);

std::string to_string(const PBWMonomial& m);

using LinComb = std::map<PBWMonomial, Rat>;

void add_term(LinComb& x, const PBWMonomial& m, const Rat& c);
void add_scaled(LinComb& x, const LinComb& y, const Rat& c);

// An element of a highest-weight module, written in PBW monomials applied to
// the highest vector. All stored monomials drop the weight by the same
// amount; zero coefficients are never stored.
struct ModuleElement {
  Weight lambda;
  LinComb terms;

  bool is_zero() const { return terms.empty(); }
};

// Straightening inside the negative half of the enveloping algebra. Results
// depend only on the structure constants, never on a highest weight, so a
// single instance (with its cache) can serve every module over one system.
class LoweringAlgebra {
 public:
  explicit LoweringAlgebra(const StructureConstantTable& table) : t_(&table) {}

  const StructureConstantTable& table() const { return *t_; }
  const RootSystem& roots() const { return t_->roots(); }

  // f_γ · m as a combination of ordered monomials (single power).
  const LinComb& lmul_f1(int gamma, const PBWMonomial& m);

  // f_γ^{(k)} · x, divided power.
  LinComb lmul_f(int gamma, int k, const LinComb& x);

 private:
  const StructureConstantTable* t_;
  std::map<std::pair<int, PBWMonomial>, LinComb> cache_;
};

// A Z-basis of the minimal admissible lattice intersected with one weight
// space, in coordinates of the generating monomial list, plus the Gram
// matrix of the contravariant form on that basis.
struct WeightSpaceLattice {
  Weight lambda;
  Weight mu;
  std::vector<PBWMonomial> monomials;
  ZMat basis;  // rank × |monomials|
  ZMat gram;   // rank × rank, symmetric

  int rank() const { return basis.rows(); }
};

// The Weyl module V(λ): free action of lowering monomials on v^λ, raising
// operators straightened back, and the contravariant form. Weight λ must be
// dominant.
class WeylModule {
 public:
  WeylModule(std::shared_ptr<LoweringAlgebra> algebra, Weight lambda,
             Budget budget = {});
  WeylModule(const StructureConstantTable& table, Weight lambda,
             Budget budget = {});

  const Weight& lambda() const { return lambda_; }
  const RootSystem& roots() const { return la_->roots(); }
  const Budget& budget() const { return budget_; }
  LoweringAlgebra& algebra() { return *la_; }

  ModuleElement highest() const;

  // f_γ^{(k)} x and e_γ^{(k)} x for a positive root index γ.
  ModuleElement apply_f(int gamma, int k, const ModuleElement& x);
  ModuleElement apply_e(int gamma, int k, const ModuleElement& x);

  // Weight of a homogeneous element (λ for the empty monomial); throws on
  // mixed weights.
  Weight weight_of(const ModuleElement& x) const;

  // Contravariant form; zero when the weights differ.
  Rat form(const PBWMonomial& a, const PBWMonomial& b);
  Rat form(const ModuleElement& a, const ModuleElement& b);

  // All monomials of weight μ, i.e. with drop λ-μ, in the enumeration order
  // used throughout (lexicographic in exponents along the root order).
  // Throws std::invalid_argument unless μ ≼ λ, BudgetExceeded past the caps.
  std::vector<PBWMonomial> monomials_of_weight(const Weight& mu);

  // Full Gram matrix of the contravariant form on monomials_of_weight(μ).
  QMat gram_matrix(const Weight& mu);

  // Multiplicity of μ in V(λ): rank over Q of the Gram matrix.
  int weyl_mult(const Weight& mu);

  // Z-basis of the lattice spanned by all monomials of weight μ; the second
  // form takes the generating list explicitly (any order, same lattice).
  WeightSpaceLattice lattice_basis(const Weight& mu);
  WeightSpaceLattice lattice_basis_from(const Weight& mu,
                                        const std::vector<PBWMonomial>& mons);

  // dim L(λ)_μ for p prime (Gram rank mod p on the lattice basis), or the
  // Weyl multiplicity for p = 0. λ must be p-restricted when p > 0.
  int irreducible_dim_mu(const Weight& mu, long long p);

  // Coordinates of an element of weight μ in the Q-basis of pivot monomials
  // selected for that weight space (used to express vectors in lattice
  // coordinates). Throws if the element involves monomials of another weight.
  std::vector<Rat> pivot_coordinates(const Weight& mu, const ModuleElement& x);

  // The pivot monomials themselves (a Q-basis of V(λ)_μ).
  std::vector<PBWMonomial> pivot_monomials(const Weight& mu);

  // Rows = the lattice basis vectors of V_Z(λ)_μ expressed in the pivot
  // Q-basis (rank × rank). A vector of the weight space lies in the minimal
  // lattice iff its coordinates in these rows are integers.
  QMat lattice_pivot_matrix(const Weight& mu);

 private:
  // Greedy Gram data for one weight space: pivot subset with invertible Gram,
  // plus every monomial's coordinates in that basis.
  struct SpanData {
    std::vector<PBWMonomial> mons;
    std::map<PBWMonomial, int> index;  // position in mons
    std::vector<int> pivots;
    QMat gb;
    QMat gb_inv;
    std::vector<std::vector<Rat>> coords;
  };

  const LinComb& lmul_e1(int gamma, const PBWMonomial& m);
  const SpanData& span(const Weight& mu);
  SpanData compute_span(const std::vector<PBWMonomial>& mons);

  std::shared_ptr<LoweringAlgebra> la_;
  Weight lambda_;
  Budget budget_;
  std::map<std::pair<int, PBWMonomial>, LinComb> e_cache_;
  std::map<std::pair<PBWMonomial, PBWMonomial>, Rat> form_cache_;
  std::map<Weight, SpanData> span_cache_;
  std::map<Weight, QMat> lpm_cache_;
};

}  // namespace branchlie

#endif
