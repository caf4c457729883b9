#include "branchlie/chevalley.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "branchlie/rational.hpp"

namespace branchlie {

namespace {

RootVec add_vec(const RootVec& a, const RootVec& b, int sign_b) {
  RootVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + sign_b * b[i];
  return r;
}

RootVec neg_vec(const RootVec& a) {
  RootVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

// signed root index of v: +(idx+1), -(idx+1), or 0 when v is not a root
int signed_index(const RootSystem& rs, const RootVec& v) {
  int i = rs.index_of(v);
  if (i >= 0) return i + 1;
  i = rs.index_of(neg_vec(v));
  if (i >= 0) return -(i + 1);
  return 0;
}

// largest q >= 0 with a - q*b a root
int string_q(const RootSystem& rs, const RootVec& a, const RootVec& b) {
  RootVec v = add_vec(a, b, -1);
  int q = 0;
  while (rs.is_root(v)) {
    ++q;
    v = add_vec(v, b, -1);
  }
  return q;
}

// Partial table of constants on pairs of positive roots, with a resolver for
// signed pairs that reduces to stored positive entries through (R1)/(R2).
struct PosTable {
  const RootSystem* rs;
  std::vector<std::vector<int>> val;
  std::vector<std::vector<char>> known;

  explicit PosTable(const RootSystem& r)
      : rs(&r),
        val(r.num_positive(), std::vector<int>(r.num_positive(), 0)),
        known(r.num_positive(), std::vector<char>(r.num_positive(), 0)) {}

  void set(int a, int b, int n) {
    val[a][b] = n;
    known[a][b] = 1;
  }

  int get(int a, int b) const {
    assert(known[a][b]);
    return val[a][b];
  }

  // N for a signed pair; 0 when the sum is not a root. Every positive-pair
  // entry this touches must already be known (propagation by height
  // guarantees it).
  int resolve(int sa, int sb) const {
    RootVec va = sa > 0 ? rs->positive(sa - 1).c : neg_vec(rs->positive(-sa - 1).c);
    RootVec vb = sb > 0 ? rs->positive(sb - 1).c : neg_vec(rs->positive(-sb - 1).c);
    int ss = signed_index(*rs, add_vec(va, vb, 1));
    if (ss == 0) return 0;
    if (sa > 0 && sb > 0) return get(sa - 1, sb - 1);
    if (sa < 0 && sb < 0) return -resolve(-sa, -sb);   // N(-a,-b) = -N(a,b)
    if (sa < 0) return -resolve(sb, sa);               // N(b,a) = -N(a,b)
    // sa > 0, sb < 0; use the triangle relation on (a, b, -(a+b))
    int x = sa - 1, y = -sb - 1;
    int n2x = rs->positive(x).norm2, n2y = rs->positive(y).norm2;
    int n2s = rs->positive(std::abs(ss) - 1).norm2;
    if (ss > 0) {
      // N(a,b) = -((s,s)/(a,a)) N(-b, s), with -b + s = a
      long long num = -static_cast<long long>(n2s) * get(y, ss - 1);
      assert(num % n2x == 0);
      return static_cast<int>(num / n2x);
    }
    // N(a,b) = ((s,s)/(b,b)) N(-s, a), with -s + a = -b
    long long num = static_cast<long long>(n2s) * get(-ss - 1, x);
    assert(num % n2y == 0);
    return static_cast<int>(num / n2y);
  }
};

}  // namespace

ExtraspecialMap extraspecial_pairs(const RootSystem& rs) {
  ExtraspecialMap out;
  for (int s = 0; s < rs.num_positive(); ++s) {
    if (rs.is_simple(s)) continue;
    // order index ascending = root order ascending, so the first special pair
    // found has the minimal first component
    for (int a = 0; a < rs.num_positive(); ++a) {
      int b = rs.index_of(add_vec(rs.positive(s).c, rs.positive(a).c, -1));
      if (b >= 0 && a < b) {
        out.by_sum[s] = {a, b};
        break;
      }
    }
    if (!out.by_sum.count(s))
      throw std::logic_error("non-simple positive root without a special pair");
  }
  return out;
}

StructureConstantTable propagate_structure_constants(const RootSystem& rs,
                                                     const ExtraspecialMap& esp) {
  int npos = rs.num_positive();
  PosTable pt(rs);

  // non-simple positive roots by increasing height
  std::vector<int> sums;
  for (int s = 0; s < npos; ++s)
    if (!rs.is_simple(s)) sums.push_back(s);
  std::stable_sort(sums.begin(), sums.end(), [&](int a, int b) {
    return rs.positive(a).height < rs.positive(b).height;
  });

  for (int s : sums) {
    auto [ea, eb] = esp.by_sum.at(s);
    int q = string_q(rs, rs.positive(ea).c, rs.positive(eb).c);
    pt.set(ea, eb, q + 1);  // the sign convention: N > 0 on extraspecial pairs
    pt.set(eb, ea, -(q + 1));

    // derive every other pair summing to s from one instance of (R3) on
    // (alpha, beta, -eps, -eta)
    for (int e = 0; e < npos; ++e) {
      int h = rs.index_of(add_vec(rs.positive(s).c, rs.positive(e).c, -1));
      if (h < 0 || e >= h || e == ea) continue;
      Rat acc = 0;
      // N(-eps,alpha) N(beta,-eta) / (alpha-eps, alpha-eps)
      int n1 = pt.resolve(-(e + 1), ea + 1), n2 = pt.resolve(eb + 1, -(h + 1));
      if (n1 != 0 && n2 != 0) {
        int d = rs.positive(std::abs(signed_index(
                    rs, add_vec(rs.positive(ea).c, rs.positive(e).c, -1))) - 1)
                    .norm2;
        acc += frac(static_cast<long>(n1) * n2, d);
      }
      // N(beta,-eps) N(alpha,-eta) / (beta-eps, beta-eps)
      int n3 = pt.resolve(eb + 1, -(e + 1)), n4 = pt.resolve(ea + 1, -(h + 1));
      if (n3 != 0 && n4 != 0) {
        int d = rs.positive(std::abs(signed_index(
                    rs, add_vec(rs.positive(eb).c, rs.positive(e).c, -1))) - 1)
                    .norm2;
        acc += frac(static_cast<long>(n3) * n4, d);
      }
      if (acc == 0)
        throw std::logic_error("propagation quadruple degenerated");
      Rat n_eh = acc * rs.positive(s).norm2 / pt.get(ea, eb);
      Int n = to_int(n_eh);
      pt.set(e, h, static_cast<int>(n.get_si()));
      pt.set(h, e, -static_cast<int>(n.get_si()));
    }
  }

  // eager full table over signed pairs
  StructureConstantTable t;
  t.rs_ = &rs;
  t.esp_ = esp;
  t.n_.assign(2 * npos, std::vector<int>(2 * npos, 0));
  auto lin = [npos](int sgn) { return sgn > 0 ? sgn - 1 : npos + (-sgn - 1); };
  for (int sa = -npos; sa <= npos; ++sa) {
    if (sa == 0) continue;
    for (int sb = -npos; sb <= npos; ++sb) {
      if (sb == 0 || sb == -sa) continue;
      t.n_[lin(sa)][lin(sb)] = pt.resolve(sa, sb);
    }
  }
  return t;
}

int StructureConstantTable::N(int sa, int sb) const {
  int npos = rs_->num_positive();
  assert(sa != 0 && sb != 0 && std::abs(sa) <= npos && std::abs(sb) <= npos);
  if (sb == -sa) return 0;
  auto lin = [npos](int sgn) { return sgn > 0 ? sgn - 1 : npos + (-sgn - 1); };
  return n_[lin(sa)][lin(sb)];
}

RootVec StructureConstantTable::vec(int s) const {
  return s > 0 ? rs_->positive(s - 1).c : neg_vec(rs_->positive(-s - 1).c);
}

int StructureConstantTable::num_signed_pairs() const {
  int c = 0;
  for (const auto& row : n_)
    for (int v : row)
      if (v != 0) ++c;
  return c;
}

RelationReport verify_chevalley_relations(const StructureConstantTable& t) {
  const RootSystem& rs = t.roots();
  int npos = rs.num_positive();
  RelationReport rep;
  auto flag = [&rep](const std::string& msg) {
    ++rep.violation_count;
    if (rep.violations.size() < 100) rep.violations.push_back(msg);
  };

  std::vector<int> all;
  for (int i = 1; i <= npos; ++i) {
    all.push_back(i);
    all.push_back(-i);
  }

  // (R0) magnitude and (R1) antisymmetry for every ordered signed pair
  for (int sa : all)
    for (int sb : all) {
      if (sb == -sa) continue;
      RootVec sum = add_vec(t.vec(sa), t.vec(sb), 1);
      int n = t.N(sa, sb);
      if (!rs.is_root(sum)) {
        if (n != 0) flag("nonzero N on a non-root sum");
        continue;
      }
      ++rep.string_checked;
      int q = string_q(rs, t.vec(sa), t.vec(sb));
      if (std::abs(n) != q + 1) flag("|N| != q+1 at a stored pair");
      ++rep.pairs_checked;
      if (t.N(sb, sa) != -n) flag("N(b,a) != -N(a,b)");
      if (t.N(-sa, -sb) != -n) flag("N(-a,-b) != -N(a,b)");
    }

  // (R2) on all signed triples with zero sum
  for (int sa : all)
    for (int sb : all) {
      if (sb == -sa) continue;
      RootVec sum = add_vec(t.vec(sa), t.vec(sb), 1);
      int sc = signed_index(rs, neg_vec(sum));
      if (sc == 0) continue;
      ++rep.triples_checked;
      long long nab = t.N(sa, sb), nbc = t.N(sb, sc), nca = t.N(sc, sa);
      if (nab * t.norm2(sa) != nbc * t.norm2(sc))
        flag("triangle relation fails (first equality)");
      if (nbc * t.norm2(sb) != nca * t.norm2(sa))
        flag("triangle relation fails (second equality)");
    }

  // (R3) on all signed quadruples with zero sum and no opposite pair
  for (int sa : all)
    for (int sb : all)
      for (int sc : all) {
        RootVec s3 = add_vec(add_vec(t.vec(sa), t.vec(sb), 1), t.vec(sc), 1);
        int sd = signed_index(rs, neg_vec(s3));
        if (sd == 0) continue;
        if (sb == -sa || sc == -sa || sc == -sb || sd == -sa || sd == -sb ||
            sd == -sc)
          continue;
        ++rep.quadruples_checked;
        Rat acc = 0;
        auto term = [&](int x, int y, int z, int w) {
          int n1 = t.N(x, y), n2 = t.N(z, w);
          if (n1 == 0 || n2 == 0) return;
          int si = signed_index(rs, add_vec(t.vec(x), t.vec(y), 1));
          acc += frac(static_cast<long>(n1) * n2, t.norm2(si));
        };
        term(sa, sb, sc, sd);
        term(sc, sa, sb, sd);
        term(sb, sc, sa, sd);
        if (acc != 0) flag("four-term relation fails");
      }

  return rep;
}

const StructureConstantTable& shared_structure_constants(LieType t, int rank) {
  struct Entry {
    std::unique_ptr<RootSystem> rs;
    StructureConstantTable table;
  };
  static std::mutex guard;
  static std::map<std::pair<LieType, int>, Entry> entries;
  std::scoped_lock lock(guard);
  auto key = std::make_pair(t, rank);
  auto it = entries.find(key);
  if (it == entries.end()) {
    Entry e;
    e.rs = std::make_unique<RootSystem>(RootSystem::build(t, rank));
    e.table = propagate_structure_constants(*e.rs, extraspecial_pairs(*e.rs));
    it = entries.emplace(key, std::move(e)).first;
  }
  return it->second.table;
}

}  // namespace branchlie
