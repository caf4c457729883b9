#include "doctest.h"

#include <map>
#include <stdexcept>

#include "branchlie/chevalley.hpp"
#include "branchlie/maxvec.hpp"
#include "branchlie/weylmod.hpp"

using namespace branchlie;

namespace {

WeylModule module_for(const CaseParams& cp) {
  return WeylModule(shared_structure_constants(case_lie_type(cp), cp.rank),
                    case_lambda(cp));
}

}  // namespace

TEST_CASE("case parameters, weights, divisibility") {
  CaseParams arow{CaseTag::A_row, 3, 0, 2, 1};
  CHECK(case_lie_type(arow) == LieType::A);
  CHECK(case_lambda(arow) == Weight{2, 0, 1});
  CHECK(case_mu(arow) == Weight{1, 0, 0});
  CHECK(case_divisibility(arow, 5));       // 5 | a+b+l-1 = 5
  CHECK_FALSE(case_divisibility(arow, 3));
  CHECK_FALSE(case_divisibility(arow, 7));
  CHECK_FALSE(case_divisibility(arow, 0));

  CaseParams bl1{CaseTag::B_a_l1, 3, 0, 2, 0};
  CHECK(case_lambda(bl1) == Weight{2, 0, 0});
  CHECK(case_mu(bl1) == Weight{0, 0, 0});
  CHECK(case_divisibility(bl1, 7));        // 7 | 2(a+n)-3 = 7
  CHECK_FALSE(case_divisibility(bl1, 5));

  CaseParams bli{CaseTag::B_li, 4, 3, 0, 0};
  CHECK(case_lambda(bli) == Weight{0, 0, 1, 0});
  for (long long p : {3, 5, 7, 11}) CHECK_FALSE(case_divisibility(bli, p));

  CaseParams bl12{CaseTag::B_a_l1_l2, 3, 0, 1, 0};
  CHECK(case_lambda(bl12) == Weight{1, 1, 0});
  CHECK(case_divisibility(bl12, 3));       // 3 | 2n-3 = 3
  CHECK_FALSE(case_divisibility(bl12, 5));

  CaseParams bl1k{CaseTag::B_a_l1_lk, 4, 3, 2, 0};
  CHECK(case_lambda(bl1k) == Weight{2, 0, 1, 0});
  CHECK(case_divisibility(bl1k, 3));       // 3 | 2(n-k)+1 = 3
  CHECK_FALSE(case_divisibility(bl1k, 5));

  CHECK(case_solution_pattern(arow, 5) == std::vector<long long>{1, 1, 4});
  CHECK(case_solution_pattern(bl1, 7) == std::vector<long long>{4, 4, 1});
  CHECK(case_solution_pattern(bli, 5).empty());

  CHECK_THROWS_AS(validate_case(CaseParams{CaseTag::A_row, 1, 0, 1, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_case(CaseParams{CaseTag::B_a_l1, 3, 0, 1, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_case(CaseParams{CaseTag::B_li, 3, 1, 0, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_case(CaseParams{CaseTag::B_a_l1_lk, 4, 2, 1, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_case(CaseParams{CaseTag::generic, 3, 0, 0, 0}),
                  std::invalid_argument);

  for (CaseTag t : {CaseTag::generic, CaseTag::A_row, CaseTag::B_a_l1,
                    CaseTag::B_li, CaseTag::B_a_l1_l2, CaseTag::B_a_l1_lk,
                    CaseTag::quotient})
    CHECK(case_tag_from_string(to_string(t)) == t);
  CHECK(case_tag_from_string("B_al1lk") == CaseTag::B_a_l1_lk);
  CHECK(case_tag_from_string("B_li") == CaseTag::B_li);
  CHECK_THROWS_AS(case_tag_from_string("nonsense"), std::invalid_argument);
}

TEST_CASE("composite root indices") {
  RootSystem b3 = RootSystem::build(LieType::B, 3);
  CHECK(b3.positive(chain_root_index(b3, 1, 3)).c == RootVec{1, 1, 1});
  CHECK(b3.positive(chain_root_index(b3, 2, 2)).c == RootVec{0, 1, 0});
  CHECK(b3.positive(doubled_tail_root_index(b3, 1, 2)).c == RootVec{1, 2, 2});
  CHECK(b3.positive(doubled_tail_root_index(b3, 2, 3)).c == RootVec{0, 1, 2});
  CHECK_THROWS_AS(chain_root_index(b3, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(doubled_tail_root_index(b3, 2, 2), std::invalid_argument);

  RootSystem a3 = RootSystem::build(LieType::A, 3);
  CHECK(a3.positive(chain_root_index(a3, 1, 3)).c == RootVec{1, 1, 1});
  CHECK_THROWS_AS(doubled_tail_root_index(a3, 1, 2), std::invalid_argument);
}

TEST_CASE("supported positive roots") {
  RootSystem b3 = RootSystem::build(LieType::B, 3);
  Weight l1{1, 0, 0};
  auto supp = supported_positive_roots(b3, l1);
  CHECK(supp.size() == 5);
  auto has = [&](const RootVec& v) {
    int idx = b3.index_of(v);
    for (int s : supp)
      if (s == idx) return true;
    return false;
  };
  CHECK(has({1, 0, 0}));
  CHECK(has({1, 1, 1}));
  CHECK(has({1, 2, 2}));
  CHECK_FALSE(has({0, 1, 1}));  // λ_1 − (e_2-shape root) leaves the weight set
  CHECK_FALSE(has({0, 1, 0}));

  RootSystem a2 = RootSystem::build(LieType::A, 2);
  CHECK(supported_positive_roots(a2, {1, 1}).size() == 3);
}

TEST_CASE("generating monomials, plain and restricted") {
  CaseParams cp{CaseTag::B_a_l1, 3, 0, 2, 0};
  WeylModule wm = module_for(cp);
  Weight mu = case_mu(cp);

  GeneratorList all = generating_monomials(wm, mu, false);
  CHECK(all.size() == 15);
  CHECK(all.excluded_roots == 4);

  GeneratorList restr = generating_monomials(wm, mu, true, 5);
  CHECK(restr.size() == 3);  // two pair products and one divided square
  CHECK(restr.excluded_roots == 4);

  // Over Q the same filtered list still spans (certified internally).
  CHECK(generating_monomials(wm, mu, true, 0).size() == 3);

  // A coefficient of λ−μ reaches p: the restricted claim is unavailable.
  CHECK_THROWS_AS(generating_monomials(wm, mu, true, 2), std::invalid_argument);
}

TEST_CASE("closed-form bases are certified") {
  {
    CaseParams cp{CaseTag::A_row, 3, 0, 2, 1};
    WeylModule wm = module_for(cp);
    GeneratorList b = case_basis(wm, cp);
    REQUIRE(b.size() == 3);
    CHECK(b.gens[0].label == "f(1,1) f(2,3) v");
    CHECK(b.gens[1].label == "f(1,2) f(3,3) v");
    CHECK(b.gens[2].label == "f(1,3) v");
  }
  {
    CaseParams cp{CaseTag::B_a_l1, 3, 0, 2, 0};
    WeylModule wm = module_for(cp);
    GeneratorList b = case_basis(wm, cp);
    REQUIRE(b.size() == 3);
    CHECK(b.gens[0].label == "f(1,1) F(1,2) v");
    CHECK(b.gens[1].label == "f(1,2) F(1,3) v");
    CHECK(b.gens[2].label == "f(1,3)^2 v");
  }
  {
    CaseParams cp{CaseTag::B_li, 4, 3, 0, 0};
    WeylModule wm = module_for(cp);
    GeneratorList b = case_basis(wm, cp);
    REQUIRE(b.size() == 3);  // n-i+2
    CHECK(b.gens[0].label == "F(1,3) v");
    CHECK(b.gens[1].label == "f(1,2) f(3,3) F(3,4) v");
    CHECK(b.gens[2].label == "f(3,3) F(1,4) v");
  }
  {
    CaseParams cp{CaseTag::B_a_l1_l2, 3, 0, 1, 0};
    WeylModule wm = module_for(cp);
    CHECK(case_basis(wm, cp).size() == 5);  // 2n-1
  }
  {
    CaseParams cp{CaseTag::B_a_l1_lk, 4, 3, 1, 0};
    WeylModule wm = module_for(cp);
    CHECK(case_basis(wm, cp).size() == 8);  // k(n-k+2)-1
  }
  {
    CaseParams cp{CaseTag::B_a_l1_lk, 5, 3, 1, 0};
    WeylModule wm = module_for(cp);
    CHECK(case_basis(wm, cp).size() == 11);  // k(n-k+2)-1
  }
  {
    // Mismatched module and parameters.
    CaseParams cp{CaseTag::B_a_l1, 3, 0, 2, 0};
    CaseParams other{CaseTag::B_a_l1, 3, 0, 3, 0};
    WeylModule wm = module_for(other);
    CHECK_THROWS_AS(case_basis(wm, cp), std::invalid_argument);
  }
}

TEST_CASE("maximal vectors in the Weyl module") {
  {
    CaseParams cp{CaseTag::A_row, 3, 0, 2, 1};
    MaxVecSolution s5 = case_solution(cp, 5);
    REQUIRE(s5.dim == 1);
    CHECK_FALSE(s5.quotient_ambient);
    CHECK(s5.basis.tag == CaseTag::A_row);
    CHECK(proportional_mod_p(s5.vectors_p[0], case_solution_pattern(cp, 5), 5));
    CHECK(case_solution(cp, 3).dim == 0);
    CHECK(case_solution(cp, 0).dim == 0);
  }
  {
    CaseParams cp{CaseTag::B_a_l1, 3, 0, 2, 0};
    MaxVecSolution s7 = case_solution(cp, 7);
    REQUIRE(s7.dim == 1);
    CHECK(proportional_mod_p(s7.vectors_p[0], {4, 4, 1}, 7));
    CHECK(case_solution(cp, 3).dim == 0);
    CHECK(case_solution(cp, 5).dim == 0);
    CHECK(case_solution(cp, 11).dim == 0);
  }
  {
    CaseParams cp{CaseTag::B_a_l1, 3, 0, 4, 0};  // 2(a+n)-3 = 11
    MaxVecSolution s11 = case_solution(cp, 11);
    REQUIRE(s11.dim == 1);
    CHECK(proportional_mod_p(s11.vectors_p[0], {4, 4, 1}, 11));
  }
  {
    CaseParams cp{CaseTag::B_li, 3, 2, 0, 0};
    for (long long p : {3, 5, 7}) CHECK(case_solution(cp, p).dim == 0);
    CHECK(case_solution(cp, 0).dim == 0);
    CaseParams cp43{CaseTag::B_li, 4, 3, 0, 0};
    CHECK(case_solution(cp43, 3).dim == 0);
  }
  {
    // p = 2 is fine in type A: l=2, a=1, b=2 has 2 | a+b+l-1 = 4.
    CaseParams cp{CaseTag::A_row, 2, 0, 1, 2};
    MaxVecSolution s2 = case_solution(cp, 2);
    REQUIRE(s2.dim == 1);
    CHECK(s2.vectors_p[0] == std::vector<long long>{1, 0});
    // ... and rejected in type B.
    CHECK_THROWS_AS(case_solution(CaseParams{CaseTag::B_a_l1, 3, 0, 2, 0}, 2),
                    std::invalid_argument);
  }
  {
    // Generic ambient over Q at a weight with no maximal vector.
    CaseParams cp{CaseTag::B_a_l1, 3, 0, 2, 0};
    WeylModule wm = module_for(cp);
    MaxVecSolution s0 = maximal_vector_space(wm, case_mu(cp), 0);
    CHECK(s0.dim == 0);
    // The restricted spanning list is a basis here and finds the same
    // solution at p = 7 (where 2(a+n)-3 vanishes).
    GeneratorList restr = generating_monomials(wm, case_mu(cp), true, 7);
    CHECK(maximal_vector_space(wm, restr, 7).dim == 1);
  }
}

TEST_CASE("quotient spaces") {
  {
    CaseParams cp{CaseTag::B_a_l1_l2, 3, 0, 1, 0};
    WeylModule wm = module_for(cp);
    QuotientSpace qs = case_quotient(wm, cp, 3);
    CHECK(qs.dim() == 3);
    CHECK(qs.submodule_dim(case_mu(cp)) == 2);  // ambient multiplicity 5
    REQUIRE(qs.basis().size() == 3);
    CHECK(qs.basis().tag == CaseTag::quotient);
    CHECK(qs.basis().gens[0].label == "F(1,2) v");
    CHECK(qs.basis().gens[1].label == "f(2,2) F(1,3) v");
    CHECK(qs.basis().gens[2].label == "f(2,3) f(1,3) v");
    CHECK(qs.vanishes(qs.killed()));
    for (int i = 0; i < 3; ++i) {
      auto c = qs.coordinates(qs.basis().gens[static_cast<size_t>(i)].element);
      for (int j = 0; j < 3; ++j) CHECK(c[static_cast<size_t>(j)] == (i == j ? 1 : 0));
    }

    MaxVecSolution sol = maximal_vector_space(qs);
    REQUIRE(sol.dim == 1);
    CHECK(sol.quotient_ambient);
    CHECK(proportional_mod_p(sol.vectors_p[0], {1, 1, 1}, 3));  // (4,4,1) mod 3

    // Outside p | a+2 the construction must refuse.
    CHECK_THROWS_AS(case_quotient(wm, cp, 5), std::invalid_argument);
  }
  {
    CaseParams cp{CaseTag::B_a_l1_lk, 4, 3, 2, 0};
    WeylModule wm = module_for(cp);
    QuotientSpace qs = case_quotient(wm, cp, 5);
    CHECK(qs.dim() == 6);  // (k-1)(n-k+2)
    CHECK(maximal_vector_space(qs).dim == 0);  // 5 does not divide 2(n-k)+1 = 3
  }
  {
    // In-hypothesis instance with a one-dimensional solution: n=5, k=4, a=2,
    // p=3 divides both a+k = 6 and 2(n-k)+1 = 3.
    CaseParams cp{CaseTag::B_a_l1_lk, 5, 4, 2, 0};
    MaxVecSolution sol = case_solution(cp, 3);
    REQUIRE(sol.dim == 1);
    std::vector<long long> pat = case_solution_pattern(cp, 3);
    CHECK(pat == std::vector<long long>{1, 0, 0, 2, 2, 1, 1, 1, 1});
    CHECK(proportional_mod_p(sol.vectors_p[0], pat, 3));
  }
}

TEST_CASE("membership in the irreducible quotient") {
  {
    CaseParams cp{CaseTag::A_row, 3, 0, 2, 1};
    WeylModule wm = module_for(cp);
    GeneratorList b = case_basis(wm, cp);
    std::vector<ModuleElement> span{b.gens[0].element, b.gens[1].element};

    Membership m5 = subspace_membership(wm, b.gens[2].element, span, 5);
    CHECK(m5.member);
    CHECK(m5.coords == std::vector<long long>{1, 1});

    Membership m7 = subspace_membership(wm, b.gens[2].element, span, 7);
    CHECK_FALSE(m7.member);
  }
  {
    CaseParams cp{CaseTag::B_a_l1, 3, 0, 2, 0};
    WeylModule wm = module_for(cp);
    GeneratorList b = case_basis(wm, cp);
    std::vector<ModuleElement> span{b.gens[0].element, b.gens[1].element};
    Membership m7 = subspace_membership(wm, b.gens[2].element, span, 7);
    CHECK(m7.member);
    CHECK(m7.coords == std::vector<long long>{3, 3});  // -4·(1,1) mod 7
    CHECK_FALSE(subspace_membership(wm, b.gens[2].element, span, 5).member);
  }
  {
    // Highest weight not p-restricted: no irreducible-quotient coordinates.
    CaseParams cp{CaseTag::A_row, 2, 0, 2, 1};
    WeylModule wm = module_for(cp);
    GeneratorList b = case_basis(wm, cp);
    CHECK_THROWS_AS(subspace_membership(wm, b.gens[1].element,
                                        {b.gens[0].element}, 2),
                    std::invalid_argument);
  }
}

TEST_CASE("four-way equivalence audits") {
  auto all_true = [](const EquivalenceAudit& a) {
    return a.agree() && a.divisible;
  };
  auto all_false = [](const EquivalenceAudit& a) {
    return a.agree() && !a.divisible;
  };

  CHECK(all_true(equivalence_audit(CaseParams{CaseTag::A_row, 3, 0, 2, 1}, 5)));
  CHECK(all_false(equivalence_audit(CaseParams{CaseTag::A_row, 3, 0, 2, 1}, 7)));
  CHECK(all_true(equivalence_audit(CaseParams{CaseTag::B_a_l1, 3, 0, 2, 0}, 7)));
  CHECK(all_false(equivalence_audit(CaseParams{CaseTag::B_a_l1, 3, 0, 2, 0}, 5)));
  CHECK(all_true(equivalence_audit(CaseParams{CaseTag::B_a_l1_l2, 3, 0, 1, 0}, 3)));
  CHECK(all_false(
      equivalence_audit(CaseParams{CaseTag::B_a_l1_lk, 4, 3, 2, 0}, 5)));

  // The quotient construction is only available under p | a+k.
  CHECK_THROWS_AS(equivalence_audit(CaseParams{CaseTag::B_a_l1_lk, 4, 3, 2, 0}, 7),
                  std::invalid_argument);
  // Audits compare against L(λ), so λ must be p-restricted.
  CHECK_THROWS_AS(equivalence_audit(CaseParams{CaseTag::A_row, 3, 0, 5, 1}, 5),
                  std::invalid_argument);
}

TEST_CASE("rewriting identities hold") {
  auto checks3 = identity_checks(3);
  CHECK(checks3.size() == 4);  // rank 3 has no 2<k<n block
  for (const auto& c : checks3) {
    INFO(c.name);
    CHECK(c.holds);
  }

  auto checks4 = identity_checks(4);
  CHECK(checks4.size() == 9);
  for (const auto& c : checks4) {
    INFO(c.name);
    CHECK(c.holds);
  }
}

TEST_CASE("solution dimension tracks divisibility across small families") {
  std::vector<CaseParams> cases;
  for (int l : {2, 3})
    for (long long a = 1; a <= 2; ++a)
      for (long long b = 1; b <= 2; ++b)
        cases.push_back(CaseParams{CaseTag::A_row, l, 0, a, b});
  for (long long a = 2; a <= 3; ++a)
    cases.push_back(CaseParams{CaseTag::B_a_l1, 3, 0, a, 0});
  cases.push_back(CaseParams{CaseTag::B_li, 3, 2, 0, 0});
  cases.push_back(CaseParams{CaseTag::B_li, 4, 2, 0, 0});
  cases.push_back(CaseParams{CaseTag::B_li, 4, 3, 0, 0});

  for (const CaseParams& cp : cases) {
    for (long long p : {3, 5, 7}) {
      MaxVecSolution sol = case_solution(cp, p);
      bool divisible = case_divisibility(cp, p);
      INFO(to_string(cp.tag), " rank=", cp.rank, " a=", cp.a, " b=", cp.b,
           " p=", p);
      CHECK(sol.dim == (divisible ? 1 : 0));
      if (sol.dim == 1)
        CHECK(proportional_mod_p(sol.vectors_p[0], case_solution_pattern(cp, p), p));
    }
  }

  // Quotient families, inside their hypothesis p | a+k.
  std::vector<std::pair<CaseParams, long long>> qcases = {
      {CaseParams{CaseTag::B_a_l1_l2, 3, 0, 1, 0}, 3},
      {CaseParams{CaseTag::B_a_l1_l2, 3, 0, 3, 0}, 5},
      {CaseParams{CaseTag::B_a_l1_l2, 4, 0, 1, 0}, 3},
      {CaseParams{CaseTag::B_a_l1_l2, 4, 0, 3, 0}, 5},
      {CaseParams{CaseTag::B_a_l1_lk, 4, 3, 2, 0}, 5},
      {CaseParams{CaseTag::B_a_l1_lk, 4, 3, 4, 0}, 7},
  };
  for (const auto& [cp, p] : qcases) {
    MaxVecSolution sol = case_solution(cp, p);
    bool divisible = case_divisibility(cp, p);
    INFO(to_string(cp.tag), " rank=", cp.rank, " k=", cp.k, " a=", cp.a,
         " p=", p);
    CHECK(sol.dim == (divisible ? 1 : 0));
    if (sol.dim == 1)
      CHECK(proportional_mod_p(sol.vectors_p[0], case_solution_pattern(cp, p), p));
  }
}
