#include "doctest.h"

#include <cstdlib>

#include "branchlie/chevalley.hpp"

using namespace branchlie;

namespace {

RootVec range_root(int rank, int i, int j) {  // alpha_i + ... + alpha_j, 1-based
  RootVec v(rank, 0);
  for (int r = i; r <= j; ++r) v[r - 1] = 1;
  return v;
}

RootVec range_root_doubled(int rank, int i, int j, int dbl) {
  // alpha_i + ... + alpha_j + 2 alpha_{dbl} + ... + 2 alpha_rank
  RootVec v = range_root(rank, i, j);
  for (int r = dbl; r <= rank; ++r) v[r - 1] = 2;
  return v;
}

StructureConstantTable table_for(LieType t, int rank) {
  static std::map<std::pair<LieType, int>, StructureConstantTable> cache;
  static std::map<std::pair<LieType, int>, RootSystem> systems;
  auto key = std::make_pair(t, rank);
  if (!cache.count(key)) {
    systems[key] = RootSystem::build(t, rank);
    cache[key] = propagate_structure_constants(systems[key], extraspecial_pairs(systems[key]));
  }
  return cache[key];
}

}  // namespace

TEST_CASE("extraspecial pairs in type A pick the leading simple root") {
  auto rs = RootSystem::build(LieType::A, 4);
  auto esp = extraspecial_pairs(rs);
  CHECK(esp.by_sum.size() == 6);  // non-simple positive roots
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) {
      int sum = rs.index_of(range_root(4, i, j));
      REQUIRE(sum >= 0);
      auto [a, b] = esp.by_sum.at(sum);
      CHECK(rs.positive(a).c == range_root(4, i, i));
      CHECK(rs.positive(b).c == range_root(4, i + 1, j));
    }
}

TEST_CASE("extraspecial pairs in type B match the four families") {
  for (int n : {3, 4}) {
    auto rs = RootSystem::build(LieType::B, n);
    auto esp = extraspecial_pairs(rs);
    CHECK(static_cast<int>(esp.by_sum.size()) == n * n - n);

    auto pair_at = [&](const RootVec& sum) {
      auto [a, b] = esp.by_sum.at(rs.index_of(sum));
      return std::make_pair(rs.positive(a).c, rs.positive(b).c);
    };
    // alpha_i + ... + alpha_j -> (alpha_i, rest)
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        CHECK(pair_at(range_root(n, i, j)) ==
              std::make_pair(range_root(n, i, i), range_root(n, i + 1, j)));
    // alpha_i + .. + alpha_k + 2 alpha_{k+1} + .. + 2 alpha_n
    for (int i = 1; i < n; ++i)
      for (int k = i + 1; k < n; ++k)
        CHECK(pair_at(range_root_doubled(n, i, k, k + 1)) ==
              std::make_pair(range_root(n, i, i), range_root_doubled(n, i + 1, k, k + 1)));
    // alpha_{i-1} + 2 alpha_i + ... + 2 alpha_n
    for (int i = 2; i < n; ++i)
      CHECK(pair_at(range_root_doubled(n, i - 1, i - 1, i)) ==
            std::make_pair(range_root(n, i, i), range_root_doubled(n, i - 1, i, i + 1)));
    // alpha_{n-1} + 2 alpha_n
    CHECK(pair_at(range_root_doubled(n, n - 1, n - 1, n)) ==
          std::make_pair(range_root(n, n, n), range_root(n, n - 1, n)));
  }
}

TEST_CASE("type A constants on consecutive ranges are all 1") {
  auto t = table_for(LieType::A, 4);
  const auto& rs = t.roots();
  for (int i = 1; i <= 4; ++i)
    for (int r = i; r <= 4; ++r)
      for (int j = r + 1; j <= 4; ++j)
        CHECK(t.N_pos(rs.index_of(range_root(4, i, r)),
                      rs.index_of(range_root(4, r + 1, j))) == 1);
  // and every stored constant has magnitude 1 (all root strings have q = 0)
  int npos = rs.num_positive();
  for (int a = 1; a <= npos; ++a)
    for (int b = 1; b <= npos; ++b)
      if (b != a) CHECK(std::abs(t.N(a, b)) <= 1);
}

TEST_CASE("type B closed-form constant families") {
  for (int n : {3, 4}) {
    auto t = table_for(LieType::B, n);
    const auto& rs = t.roots();
    auto N_of = [&](const RootVec& x, const RootVec& y) {
      int a = rs.index_of(x), b = rs.index_of(y);
      REQUIRE(a >= 0);
      REQUIRE(b >= 0);
      return t.N_pos(a, b);
    };
    // (1) consecutive ranges
    for (int i = 1; i <= n; ++i)
      for (int r = i; r <= n; ++r)
        for (int j = r + 1; j <= n; ++j)
          CHECK(N_of(range_root(n, i, r), range_root(n, r + 1, j)) == 1);
    // (2) range + doubled tail starting past it
    for (int i = 1; i < n; ++i)
      for (int r = i; r < n; ++r)
        for (int j = r + 1; j < n; ++j)
          CHECK(N_of(range_root(n, i, r), range_root_doubled(n, r + 1, j, j + 1)) == 1);
    // (3) overlapping range + doubled tail
    for (int i = 1; i < n; ++i)
      for (int r = i + 1; r < n; ++r)
        for (int j = r; j < n; ++j)
          CHECK(N_of(range_root(n, r, j), range_root_doubled(n, i, j, j + 1)) == 1);
    // (4) two ranges reaching alpha_n
    for (int r = 1; r < n; ++r)
      for (int j = r + 1; j <= n; ++j)
        CHECK(N_of(range_root(n, j, n), range_root(n, r, n)) == 2);
    // (5) the -1 family
    for (int i = 1; i < n; ++i)
      for (int r = i; r < n; ++r)
        for (int j = r + 1; j < n; ++j)
          CHECK(N_of(range_root(n, i, j), range_root_doubled(n, r + 1, j, j + 1)) == -1);
  }
}

TEST_CASE("extraspecial short-root pair in B3 has magnitude q+1 = 2") {
  auto t = table_for(LieType::B, 3);
  const auto& rs = t.roots();
  int a3 = rs.simple_index(2);
  int a23 = rs.index_of(RootVec({0, 1, 1}));
  CHECK(t.N_pos(a3, a23) == 2);
  CHECK(t.N_pos(a23, a3) == -2);
}

TEST_CASE("defining relations verify cleanly at small rank") {
  for (auto [type, rank] : std::vector<std::pair<LieType, int>>{
           {LieType::A, 2}, {LieType::A, 3}, {LieType::B, 3}, {LieType::D, 4}}) {
    auto rep = verify_chevalley_relations(table_for(type, rank));
    CHECK(rep.ok());
    CHECK(rep.string_checked > 0);
    CHECK(rep.triples_checked > 0);
    // rank 2 admits no zero-sum quadruple free of opposite pairs
    if (rank >= 3) CHECK(rep.quadruples_checked > 0);
  }
}

TEST_CASE("simply laced tables only hold constants of magnitude 1") {
  auto t = table_for(LieType::D, 4);
  int npos = t.roots().num_positive();
  for (int a = 1; a <= npos; ++a)
    for (int b = 1; b <= npos; ++b)
      if (b != a) CHECK(std::abs(t.N(a, b)) <= 1);
}

TEST_CASE("long-root pairs of B4 close among long roots") {
  auto dict = bn_dn_dictionary(4);
  auto t = table_for(LieType::B, 4);
  const auto& rs = t.roots();
  for (int a = 0; a < rs.num_positive(); ++a)
    for (int b = 0; b < rs.num_positive(); ++b) {
      if (!dict.is_long(a) || !dict.is_long(b)) continue;
      RootVec sum(rs.rank());
      for (int i = 0; i < rs.rank(); ++i)
        sum[i] = rs.positive(a).c[i] + rs.positive(b).c[i];
      int s = rs.index_of(sum);
      if (s >= 0) CHECK(dict.is_long(s));
    }
}
