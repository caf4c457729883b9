#include "doctest.h"

#include <map>
#include <stdexcept>

#include "branchlie/weylmod.hpp"

using namespace branchlie;

namespace {

std::shared_ptr<LoweringAlgebra> wl_algebra_for(LieType t, int rank) {
  static std::map<std::pair<LieType, int>, RootSystem> systems;
  static std::map<std::pair<LieType, int>, StructureConstantTable> tables;
  static std::map<std::pair<LieType, int>, std::shared_ptr<LoweringAlgebra>> algs;
  auto key = std::make_pair(t, rank);
  if (!algs.count(key)) {
    systems[key] = RootSystem::build(t, rank);
    tables[key] =
        propagate_structure_constants(systems[key], extraspecial_pairs(systems[key]));
    algs[key] = std::make_shared<LoweringAlgebra>(tables[key]);
  }
  return algs[key];
}

// all dominant weights of the given rank with coefficient sum <= cap
std::vector<Weight> small_weights(int rank, int cap) {
  std::vector<Weight> out;
  Weight w(rank, 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == rank) {
      out.push_back(w);
      return;
    }
    for (int a = 0; a <= left; ++a) {
      w[i] = a;
      self(self, i + 1, left - a);
    }
    w[i] = 0;
  };
  rec(rec, 0, cap);
  return out;
}

}  // namespace

TEST_CASE("Weyl degree formula on familiar modules") {
  RootSystem b3 = RootSystem::build(LieType::B, 3);
  CHECK(weyl_dim(b3, {1, 0, 0}) == 7);
  CHECK(weyl_dim(b3, {0, 1, 0}) == 21);
  CHECK(weyl_dim(b3, {0, 0, 1}) == 8);
  CHECK(weyl_dim(b3, {1, 1, 0}) == 105);
  CHECK(weyl_dim(b3, {0, 0, 0}) == 1);
  RootSystem a2 = RootSystem::build(LieType::A, 2);
  CHECK(weyl_dim(a2, {1, 1}) == 8);
  CHECK(weyl_dim(a2, {2, 2}) == 27);
  CHECK(weyl_dim(RootSystem::build(LieType::D, 3), {0, 0, 1}) == 4);
  CHECK(weyl_dim(RootSystem::build(LieType::D, 4), {0, 0, 0, 1}) == 8);
}

TEST_CASE("Freudenthal multiplicities at frozen values") {
  RootSystem a2 = RootSystem::build(LieType::A, 2);
  CHECK(freudenthal_mult(a2, {1, 1}, {0, 0}) == 2);
  CHECK(freudenthal_mult(a2, {2, 2}, {1, 1}) == 2);
  CHECK(freudenthal_mult(a2, {2, 2}, {0, 0}) == 3);
  RootSystem b3 = RootSystem::build(LieType::B, 3);
  CHECK(freudenthal_mult(b3, {0, 1, 0}, {0, 0, 0}) == 3);
  CHECK(freudenthal_mult(b3, {1, 1, 0}, {1, 0, 0}) == 5);
  CHECK(freudenthal_mult(b3, {1, 0, 0}, {1, 0, 0}) == 1);
  // below lambda but not a weight
  CHECK(freudenthal_mult(a2, {1, 0}, {2, -2}) == 0);
  CHECK_THROWS_AS(freudenthal_mult(a2, {1, 0}, {0, 2}), std::invalid_argument);
}

TEST_CASE("Freudenthal agrees with the Gram rank over Q") {
  for (LieType t : {LieType::A, LieType::B, LieType::D}) {
    auto la = wl_algebra_for(t, 3);
    const RootSystem& rs = la->roots();
    for (const Weight& lam : small_weights(3, 2)) {
      FreudenthalTable ft(rs, lam);
      WeylModule wm(la, lam);
      SaturatedWeightSet sat = weight_set_saturated(rs, lam);
      for (const Weight& mu : sat.dominant) {
        DominanceDelta dd = rs.dominance_delta(lam, mu);
        long long h = 0;
        for (int d : dd.delta) h += d;
        if (h > 8) continue;
        CHECK(ft.mult(mu) == Int(wm.weyl_mult(mu)));
      }
    }
  }
  // a couple of deeper spot checks
  auto lb = wl_algebra_for(LieType::B, 3);
  WeylModule wm(lb, {0, 0, 2});
  CHECK(freudenthal_mult(lb->roots(), {0, 0, 2}, {0, 0, 0}) ==
        Int(wm.weyl_mult({0, 0, 0})));
}

TEST_CASE("saturated weight sets and their closure") {
  RootSystem b3 = RootSystem::build(LieType::B, 3);
  SaturatedWeightSet s1 = weight_set_saturated(b3, {1, 0, 0});
  REQUIRE(s1.dominant.size() == 2);
  CHECK(s1.dominant[0] == Weight{1, 0, 0});
  CHECK(s1.dominant[1] == Weight{0, 0, 0});
  CHECK(s1.orbit_sizes[0] == 6);
  CHECK(s1.orbit_sizes[1] == 1);
  CHECK(s1.total_size() == 7);

  SaturatedWeightSet s0 = weight_set_saturated(b3, {0, 0, 0});
  REQUIRE(s0.dominant.size() == 1);
  CHECK(s0.dominant[0] == Weight{0, 0, 0});

  RootSystem a2 = RootSystem::build(LieType::A, 2);
  SaturatedWeightSet sa = weight_set_saturated(a2, {1, 1});
  CHECK(sa.total_size() == 7);  // six roots and zero

  // closure: mu - r*alpha stays inside for 0 <= r <= <mu, alpha^vee>
  for (const RootSystem* rs : {&b3, &a2}) {
    SaturatedWeightSet sat =
        weight_set_saturated(*rs, Weight(rs->rank(), 1));
    for (const Weight& mu : sat.dominant)
      for (int idx = 0; idx < rs->num_positive(); ++idx) {
        int top = rs->pairing(mu, idx);
        Weight alw = rs->weight_of_rootvec(rs->positive(idx).c);
        Weight nu = mu;
        for (int r = 1; r <= top; ++r) {
          for (int j = 0; j < rs->rank(); ++j) nu[j] -= alw[j];
          CHECK(sat.contains(*rs, nu));
        }
      }
  }
}

TEST_CASE("Weyl character tables") {
  RootSystem b3 = RootSystem::build(LieType::B, 3);
  CharacterTable t = char_weyl(b3, {0, 1, 0});
  CHECK(t.kind == CharKind::weyl);
  CHECK(t.dimension == 21);
  REQUIRE(t.entries.size() == 3);
  CHECK(t.entries.at({0, 1, 0}) == 1);
  CHECK(t.entries.at({1, 0, 0}) == 1);
  CHECK(t.entries.at({0, 0, 0}) == 3);
  // lookup by Weyl invariance: any long root has the multiplicity of omega_2
  CHECK(t.mult(b3, {2, -1, 0}) == 1);
  CHECK(t.mult(b3, {-1, 1, 0}) == 1);
}

TEST_CASE("irreducible characters at frozen points") {
  auto a2 = wl_algebra_for(LieType::A, 2);
  const StructureConstantTable& at = a2->table();
  CharacterTable t3 = char_irreducible(at, {1, 1}, 3);
  CHECK(t3.kind == CharKind::irreducible);
  CHECK(t3.dimension == 7);
  CHECK(t3.entries.at({1, 1}) == 1);
  CHECK(t3.entries.at({0, 0}) == 1);
  CharacterTable t2 = char_irreducible(at, {1, 1}, 2);
  CHECK(t2.dimension == 8);
  CHECK(t2.entries.at({0, 0}) == 2);

  auto b3 = wl_algebra_for(LieType::B, 3);
  const StructureConstantTable& bt = b3->table();
  CharacterTable n7 = char_irreducible(bt, {1, 0, 0}, 7);
  CHECK(n7.dimension == 7);
  CHECK(n7.entries.size() == 2);
  CharacterTable spin = char_irreducible(bt, {0, 0, 1}, 5);
  CHECK(spin.dimension == 8);
  CHECK(spin.entries.size() == 1);

  // characteristic zero: the radical vanishes
  CharacterTable w0 = char_irreducible(bt, {0, 1, 0}, 0);
  CharacterTable wc = char_weyl(bt.roots(), {0, 1, 0});
  CHECK(w0.kind == CharKind::irreducible);
  CHECK(w0.entries == wc.entries);
  CHECK(w0.dimension == wc.dimension);

  // the Weyl character dominates the irreducible one entrywise
  CharacterTable i3 = char_irreducible(bt, {0, 1, 0}, 3);
  for (const auto& [mu, m] : i3.entries) CHECK(m <= wc.entries.at(mu));
  CHECK(i3.dimension <= wc.dimension);
}

TEST_CASE("characteristic-2 guard for type B") {
  auto b3 = wl_algebra_for(LieType::B, 3);
  CHECK_THROWS_AS(char_irreducible(b3->table(), {1, 0, 0}, 2),
                  std::invalid_argument);
  CharacterTable c2 = char_irreducible(b3->table(), {1, 0, 0}, 2, {}, true);
  CHECK(c2.dimension == 6);  // the radical of the form is the zero-weight line
  CHECK(c2.entries.size() == 1);
  // no guard outside type B
  auto d3 = wl_algebra_for(LieType::D, 3);
  CharacterTable d = char_irreducible(d3->table(), {1, 0, 0}, 2);
  CHECK(d.dimension > 0);
}

TEST_CASE("validation of p and restrictedness") {
  auto a2 = wl_algebra_for(LieType::A, 2);
  CHECK_THROWS_AS(char_irreducible(a2->table(), {1, 1}, 4), std::invalid_argument);
  CHECK_THROWS_AS(char_irreducible(a2->table(), {1, 1}, -5), std::invalid_argument);
  CHECK_THROWS_AS(char_irreducible(a2->table(), {3, 0}, 3), std::invalid_argument);
  CHECK_THROWS_AS(char_irreducible(a2->table(), {1, -1}, 3), std::invalid_argument);
}

TEST_CASE("budget violations surface as explicit errors") {
  auto b3 = wl_algebra_for(LieType::B, 3);
  CHECK_THROWS_AS(
      char_irreducible(b3->table(), {0, 1, 0}, 3, Budget{.height = 1}),
      BudgetExceeded);
}

TEST_CASE("base-p digits and the twisted tensor factorization") {
  CHECK(steinberg_digits({4, 0}, 3) ==
        std::vector<Weight>{{1, 0}, {1, 0}});
  CHECK(steinberg_digits({5, 3}, 5) ==
        std::vector<Weight>{{0, 3}, {1, 0}});
  CHECK(steinberg_digits({0, 0}, 7) == std::vector<Weight>{{0, 0}});
  CHECK_THROWS_AS(steinberg_digits({1, 0}, 6), std::invalid_argument);

  // round trip
  for (const Weight& w : small_weights(3, 6))
    for (long long p : {2, 5}) {
      auto digits = steinberg_digits(w, p);
      Weight sum(3, 0);
      long long scale = 1;
      for (const Weight& d : digits) {
        for (int j = 0; j < 3; ++j) sum[j] += static_cast<int>(scale * d[j]);
        scale *= p;
      }
      CHECK(sum == w);
    }

  auto a2 = wl_algebra_for(LieType::A, 2);
  CharacterTable g = char_irreducible_general(a2->table(), {4, 0}, 3);
  CHECK(g.dimension == 9);
  REQUIRE(g.entries.size() == 2);
  CHECK(g.entries.at({4, 0}) == 1);
  CHECK(g.entries.at({2, 1}) == 1);
  // restricted weights take the direct path and agree
  CharacterTable direct = char_irreducible(a2->table(), {1, 1}, 3);
  CharacterTable via = char_irreducible_general(a2->table(), {1, 1}, 3);
  CHECK(via.entries == direct.entries);
  CHECK(via.dimension == direct.dimension);
}

TEST_CASE("Levi restriction computes multiplicities in the subsystem") {
  auto b3 = wl_algebra_for(LieType::B, 3);
  const StructureConstantTable& bt = b3->table();
  // drop alpha_1 + alpha_2 from lambda_1+lambda_2: handled in the A_2 head
  Weight lam{1, 1, 0};
  Weight mu{0, 0, 2};
  CHECK(levi_restrict_mult(bt, lam, mu, 1, 2, 0) == 2);
  CHECK(levi_restrict_mult(bt, lam, mu, 1, 3, 0) == 2);  // full range: identity
  CHECK(levi_restrict_mult(bt, lam, mu, 1, 2, 5) == 2);
  CHECK(levi_restrict_mult(bt, lam, mu, 1, 2, 3) == 1);
  CHECK(freudenthal_mult(bt.roots(), lam, mu) == 2);
  CHECK_THROWS_AS(levi_restrict_mult(bt, lam, mu, 2, 3, 0),
                  std::invalid_argument);

  // B_4: drop alpha_2+2alpha_3+2alpha_4 from lambda_1+lambda_3, handled in
  // the B_3 tail where it is the zero weight of the 21-dimensional module
  auto b4 = wl_algebra_for(LieType::B, 4);
  Weight lam2{1, 0, 1, 0};
  Weight drop2 = b4->roots().weight_of_rootvec({0, 1, 2, 2});
  Weight mu2(4);
  for (int j = 0; j < 4; ++j) mu2[j] = lam2[j] - drop2[j];
  CHECK(mu2 == Weight{2, 0, 0, 0});
  CHECK(levi_restrict_mult(b4->table(), lam2, mu2, 2, 4, 0) == 3);

  // disconnected type D range is refused
  auto d4 = wl_algebra_for(LieType::D, 4);
  CHECK_THROWS_AS(
      levi_restrict_mult(d4->table(), {0, 0, 1, 1}, {0, 1, 0, 0}, 3, 4, 0),
      std::invalid_argument);
}

TEST_CASE("orbit sums of characters match dimensions across the board") {
  auto b3 = wl_algebra_for(LieType::B, 3);
  const RootSystem& rs = b3->roots();
  for (const Weight& lam : small_weights(3, 2)) {
    CharacterTable t = char_weyl(rs, lam);
    SaturatedWeightSet sat = weight_set_saturated(rs, lam);
    Int total = 0;
    for (size_t i = 0; i < sat.dominant.size(); ++i)
      total += Int(static_cast<long>(sat.orbit_sizes[i])) *
               Int(t.entries.at(sat.dominant[i]));
    CHECK(total == weyl_dim(rs, lam));
  }
}
