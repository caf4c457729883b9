#include "doctest.h"

#include <algorithm>

#include "branchlie/rootsystem.hpp"

using namespace branchlie;

static RootVec rv(std::initializer_list<int> l) { return RootVec(l); }

TEST_CASE("positive root counts") {
  CHECK(RootSystem::build(LieType::A, 4).num_positive() == 10);
  CHECK(RootSystem::build(LieType::B, 3).num_positive() == 9);
  CHECK(RootSystem::build(LieType::B, 4).num_positive() == 16);
  CHECK(RootSystem::build(LieType::D, 4).num_positive() == 12);
  CHECK(RootSystem::build(LieType::D, 5).num_positive() == 20);
}

TEST_CASE("A2 positive roots come sorted by the last-coefficient order") {
  auto rs = RootSystem::build(LieType::A, 2);
  REQUIRE(rs.num_positive() == 3);
  CHECK(rs.positive(0).c == rv({1, 0}));
  CHECK(rs.positive(1).c == rv({0, 1}));
  CHECK(rs.positive(2).c == rv({1, 1}));
}

TEST_CASE("B3 positive root order, norms and heights") {
  auto rs = RootSystem::build(LieType::B, 3);
  std::vector<RootVec> expected = {
      rv({1, 0, 0}), rv({0, 1, 0}), rv({1, 1, 0}),
      rv({0, 0, 1}), rv({0, 1, 1}), rv({1, 1, 1}),
      rv({0, 1, 2}), rv({1, 1, 2}), rv({1, 2, 2}),
  };
  REQUIRE(rs.num_positive() == 9);
  for (int i = 0; i < 9; ++i) CHECK(rs.positive(i).c == expected[i]);

  int n_long = 0;
  for (int i = 0; i < 9; ++i)
    if (rs.positive(i).norm2 == 2) ++n_long;
  CHECK(n_long == 6);  // n^2 - n long roots, n short
  CHECK(rs.positive(rs.index_of(rv({0, 0, 1}))).norm2 == 1);
  CHECK(rs.positive(rs.index_of(rv({1, 2, 2}))).height == 5);
}

TEST_CASE("simple indices point at the unit vectors") {
  for (auto rs : {RootSystem::build(LieType::A, 3), RootSystem::build(LieType::B, 4),
                  RootSystem::build(LieType::D, 4)}) {
    for (int i = 0; i < rs.rank(); ++i) {
      const auto& c = rs.positive(rs.simple_index(i)).c;
      for (int j = 0; j < rs.rank(); ++j) CHECK(c[j] == (i == j ? 1 : 0));
      CHECK(rs.is_simple(rs.simple_index(i)));
    }
  }
}

TEST_CASE("B3 pairings distinguish long and short coroots") {
  auto rs = RootSystem::build(LieType::B, 3);
  int a2 = rs.simple_index(1), a3 = rs.simple_index(2);
  CHECK(rs.pairing_roots(a2, a3) == -2);  // <alpha_2, alpha_3^vee>
  CHECK(rs.pairing_roots(a3, a2) == -1);  // <alpha_3, alpha_2^vee>
  // pairing against a root vector agrees with pairing against its weight
  for (int a = 0; a < rs.num_positive(); ++a)
    for (int b = 0; b < rs.num_positive(); ++b) {
      Weight w = rs.weight_of_rootvec(rs.positive(a).c);
      CHECK(rs.pairing(w, b) == rs.pairing_roots(a, b));
      CHECK(rs.pairing_rootvec(rs.positive(a).c, b) == rs.pairing_roots(a, b));
    }
}

TEST_CASE("weight and root coordinate conversions invert each other") {
  auto rs = RootSystem::build(LieType::A, 2);
  CHECK(rs.weight_of_rootvec(rv({1, 0})) == Weight({2, -1}));
  auto x = rs.root_coords_of_weight(Weight({1, 0}));
  CHECK(x[0] == Rat(2, 3));
  CHECK(x[1] == Rat(1, 3));

  for (auto sys : {RootSystem::build(LieType::B, 3), RootSystem::build(LieType::D, 4)}) {
    for (int idx = 0; idx < sys.num_positive(); ++idx) {
      auto back = sys.root_coords_of_weight(sys.weight_of_rootvec(sys.positive(idx).c));
      for (int j = 0; j < sys.rank(); ++j)
        CHECK(back[j] == Rat(sys.positive(idx).c[j]));
    }
  }
}

TEST_CASE("reflections and dominant representatives") {
  auto rs = RootSystem::build(LieType::A, 2);
  CHECK(rs.reflect(Weight({1, 0}), rs.simple_index(0)) == Weight({-1, 1}));

  auto b3 = RootSystem::build(LieType::B, 3);
  for (const auto& w : b3.weyl_orbit(Weight({1, 0, 2})))
    CHECK(b3.dominant_rep(w) == Weight({1, 0, 2}));
}

TEST_CASE("Weyl orbit sizes") {
  CHECK(RootSystem::build(LieType::A, 2).weyl_orbit(Weight({1, 0})).size() == 3);
  auto b3 = RootSystem::build(LieType::B, 3);
  CHECK(b3.weyl_orbit(Weight({1, 0, 0})).size() == 6);   // short orbit of omega_1
  CHECK(b3.weyl_orbit(Weight({1, 1, 1})).size() == 48);  // regular orbit = |W|
  auto d4 = RootSystem::build(LieType::D, 4);
  CHECK(d4.weyl_orbit(Weight({1, 0, 0, 0})).size() == 8);
}

TEST_CASE("dominance delta reports the failure reason") {
  auto rs = RootSystem::build(LieType::A, 2);
  auto ok = rs.dominance_delta(Weight({1, 1}), Weight({0, 0}));
  REQUIRE(ok.status == DominanceDelta::Status::InCone);
  CHECK(ok.delta == rv({1, 1}));

  CHECK(rs.dominance_delta(Weight({1, 0}), Weight({0, 1})).status ==
        DominanceDelta::Status::NotInRootLattice);
  CHECK(rs.dominance_delta(Weight({1, 1}), Weight({4, 1})).status ==
        DominanceDelta::Status::NegativeCoefficient);
  CHECK(rs.dominates(Weight({1, 1}), Weight({0, 0})));
  CHECK(!rs.dominates(Weight({0, 0}), Weight({1, 1})));
}

TEST_CASE("root strings") {
  auto rs = RootSystem::build(LieType::B, 3);
  int a23 = rs.index_of(rv({0, 1, 1}));
  int a3 = rs.simple_index(2);
  REQUIRE(a23 >= 0);
  CHECK(rs.root_string_q(a23, a3) == 1);
  // alpha_2 - alpha_3 is not a root, alpha_2 + 2 alpha_3 - 2 alpha_3 is
  CHECK(rs.root_string_q(rs.simple_index(1), a3) == 0);
  CHECK(rs.root_string_q(rs.index_of(rv({0, 1, 2})), a3) == 2);
}

TEST_CASE("Levi subsystems on contiguous ranges") {
  auto b4 = RootSystem::build(LieType::B, 4);
  auto tail = levi_subsystem(b4, 2, 4);
  CHECK(tail.sub.type() == LieType::B);
  CHECK(tail.sub.rank() == 3);
  CHECK(tail.restrict(Weight({5, 6, 7, 8})) == Weight({6, 7, 8}));
  CHECK(tail.embed(rv({1, 2, 2})) == rv({0, 1, 2, 2}));

  auto head = levi_subsystem(b4, 1, 2);
  CHECK(head.sub.type() == LieType::A);
  CHECK(head.sub.rank() == 2);

  auto mid = levi_subsystem(RootSystem::build(LieType::A, 4), 2, 3);
  CHECK(mid.sub.type() == LieType::A);
  CHECK(mid.sub.rank() == 2);

  auto d5 = RootSystem::build(LieType::D, 5);
  CHECK(levi_subsystem(d5, 2, 5).sub.type() == LieType::D);
  CHECK(levi_subsystem(d5, 2, 5).sub.rank() == 4);
  CHECK(levi_subsystem(RootSystem::build(LieType::D, 4), 1, 3).sub.type() == LieType::A);
  CHECK_THROWS(levi_subsystem(RootSystem::build(LieType::D, 4), 3, 4));
  CHECK_THROWS(levi_subsystem(b4, 0, 2));
}

TEST_CASE("long-root subsystem dictionary for B_n over D_n") {
  auto dict = bn_dn_dictionary(3);
  CHECK(dict.bn.type() == LieType::B);
  CHECK(dict.dn.type() == LieType::D);

  // beta_3 = alpha_2 + 2 alpha_3 is a long positive root of B_3
  int idx = dict.bn.index_of(rv({0, 1, 2}));
  REQUIRE(idx >= 0);
  CHECK(dict.is_long(idx));
  int n_long = 0;
  for (int i = 0; i < dict.bn.num_positive(); ++i)
    if (dict.is_long(i)) ++n_long;
  CHECK(n_long == dict.dn.num_positive());  // 6 = |D_3^+|

  CHECK(dict.restrict(Weight({1, 0, 0})) == Weight({1, 0, 0}));
  CHECK(dict.restrict(Weight({0, 1, 0})) == Weight({0, 1, 1}));
  CHECK(dict.restrict(Weight({0, 0, 1})) == Weight({0, 0, 1}));
  CHECK(dict.theta_twist(Weight({1, 2, 3})) == Weight({1, 3, 2}));

  // the simple roots of the dictionary pair integrally with every B_3 weight
  for (int i = 0; i < 3; ++i) CHECK(dict.bn.is_root(dict.d_simple_in_b[i]));
}

TEST_CASE("order comparator is consistent with the stored sort") {
  auto rs = RootSystem::build(LieType::D, 4);
  for (int a = 0; a < rs.num_positive(); ++a)
    for (int b = 0; b < rs.num_positive(); ++b) {
      bool lt = RootSystem::root_vec_less(rs.positive(a).c, rs.positive(b).c);
      CHECK(lt == (a < b));
    }
}
