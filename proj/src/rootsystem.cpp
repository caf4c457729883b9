#include "branchlie/rootsystem.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <set>
#include <stdexcept>

#include "branchlie/linalg.hpp"

namespace branchlie {

std::string to_string(LieType t) {
  switch (t) {
    case LieType::A: return "A";
    case LieType::B: return "B";
    case LieType::D: return "D";
  }
  return "?";
}

LieType lie_type_from_string(const std::string& s) {
  if (s == "A" || s == "a") return LieType::A;
  if (s == "B" || s == "b") return LieType::B;
  if (s == "D" || s == "d") return LieType::D;
  throw std::invalid_argument("unknown Lie type '" + s + "' (expected A, B or D)");
}

bool RootSystem::root_vec_less(const RootVec& x, const RootVec& y) {
  // alpha < beta iff the nonzero coefficient of beta - alpha with the largest
  // index is positive
  for (int j = static_cast<int>(x.size()) - 1; j >= 0; --j)
    if (x[j] != y[j]) return x[j] < y[j];
  return false;
}

RootSystem RootSystem::build(LieType type, int rank) {
  if (rank < 1) throw std::invalid_argument("rank must be positive");
  if (type == LieType::D && rank < 3)
    throw std::invalid_argument("type D requires rank >= 3");

  RootSystem rs;
  rs.type_ = type;
  rs.rank_ = rank;

  // doubled inner products 2*(alpha_i, alpha_j), long roots have norm 2
  auto& sg2 = rs.sg2_;
  sg2.assign(rank, std::vector<int>(rank, 0));
  for (int i = 0; i < rank; ++i) sg2[i][i] = 4;
  auto bond = [&](int i, int j) { sg2[i][j] = sg2[j][i] = -2; };
  switch (type) {
    case LieType::A:
      for (int i = 0; i + 1 < rank; ++i) bond(i, i + 1);
      break;
    case LieType::B:
      for (int i = 0; i + 1 < rank; ++i) bond(i, i + 1);
      sg2[rank - 1][rank - 1] = 2;  // short simple root
      break;
    case LieType::D:
      for (int i = 0; i + 2 < rank; ++i) bond(i, i + 1);
      bond(rank - 3, rank - 1);
      break;
  }

  // close the simple roots under simple reflections, keeping positives
  auto pair_with_simple = [&](const RootVec& v, int i) {
    long long s = 0;
    for (int j = 0; j < rank; ++j) s += static_cast<long long>(v[j]) * sg2[j][i];
    assert((2 * s) % sg2[i][i] == 0);
    return static_cast<int>(2 * s / sg2[i][i]);
  };
  std::set<RootVec> seen;
  std::deque<RootVec> queue;
  for (int i = 0; i < rank; ++i) {
    RootVec e(rank, 0);
    e[i] = 1;
    seen.insert(e);
    queue.push_back(e);
  }
  while (!queue.empty()) {
    RootVec v = queue.front();
    queue.pop_front();
    for (int i = 0; i < rank; ++i) {
      RootVec w = v;
      w[i] -= pair_with_simple(v, i);
      if (std::all_of(w.begin(), w.end(), [](int c) { return c >= 0; }) &&
          seen.insert(w).second)
        queue.push_back(w);
    }
  }

  int expected = 0;
  switch (type) {
    case LieType::A: expected = rank * (rank + 1) / 2; break;
    case LieType::B: expected = rank * rank; break;
    case LieType::D: expected = rank * (rank - 1); break;
  }
  if (static_cast<int>(seen.size()) != expected)
    throw std::logic_error("positive root closure has unexpected size");

  auto norm2_of = [&](const RootVec& v) {
    long long s = 0;
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j)
        s += static_cast<long long>(v[i]) * v[j] * sg2[i][j];
    assert(s % 2 == 0);
    return static_cast<int>(s / 2);
  };

  std::vector<RootVec> sorted(seen.begin(), seen.end());
  std::sort(sorted.begin(), sorted.end(), root_vec_less);
  rs.simple_idx_.assign(rank, -1);
  for (int idx = 0; idx < static_cast<int>(sorted.size()); ++idx) {
    Root r;
    r.c = sorted[idx];
    r.height = 0;
    for (int c : r.c) r.height += c;
    r.norm2 = norm2_of(r.c);
    rs.pos_.push_back(r);
    rs.index_[r.c] = idx;
    if (r.height == 1)
      for (int i = 0; i < rank; ++i)
        if (r.c[i] == 1) rs.simple_idx_[i] = idx;
  }

  int npos = rs.num_positive();
  rs.ip2_.assign(npos, std::vector<int>(npos, 0));
  for (int a = 0; a < npos; ++a)
    for (int b = 0; b < npos; ++b) {
      long long s = 0;
      for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j)
          s += static_cast<long long>(rs.pos_[a].c[i]) * rs.pos_[b].c[j] * sg2[i][j];
      rs.ip2_[a][b] = static_cast<int>(s);  // 2*(gamma_a, gamma_b)
    }
  return rs;
}

bool RootSystem::is_simple(int idx) const { return pos_[idx].height == 1; }

int RootSystem::index_of(const RootVec& v) const {
  auto it = index_.find(v);
  return it == index_.end() ? -1 : it->second;
}

bool RootSystem::is_root(const RootVec& v) const {
  if (index_.count(v)) return true;
  RootVec neg(v.size());
  for (size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
  return index_.count(neg) > 0;
}

int RootSystem::pairing(const Weight& w, int idx) const {
  long long ip2 = ip2_weight_root(w, idx);
  int n2 = pos_[idx].norm2;
  assert(ip2 % n2 == 0);
  return static_cast<int>(ip2 / n2);
}

long long RootSystem::ip2_weight_root(const Weight& w, int idx) const {
  // 2*(w, gamma) = sum_j c_j w_j (alpha_j, alpha_j)
  const RootVec& c = pos_[idx].c;
  long long s = 0;
  for (int j = 0; j < rank_; ++j)
    s += static_cast<long long>(c[j]) * w[j] * (sg2_[j][j] / 2);
  return s;
}

int RootSystem::pairing_roots(int a, int b) const {
  int n2 = pos_[b].norm2;
  assert(ip2_[a][b] % n2 == 0);
  return ip2_[a][b] / n2;
}

int RootSystem::pairing_rootvec(const RootVec& d, int idx) const {
  const RootVec& c = pos_[idx].c;
  long long s = 0;
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j)
      s += static_cast<long long>(d[i]) * c[j] * sg2_[i][j];
  int n2 = pos_[idx].norm2;
  assert(s % n2 == 0);
  return static_cast<int>(s / n2);
}

Weight RootSystem::weight_of_rootvec(const RootVec& d) const {
  Weight w(rank_, 0);
  for (int i = 0; i < rank_; ++i) {
    long long s = 0;
    for (int j = 0; j < rank_; ++j)
      s += static_cast<long long>(d[j]) * 2 * sg2_[j][i];
    assert(s % sg2_[i][i] == 0);
    w[i] = static_cast<int>(s / sg2_[i][i]);
  }
  return w;
}

std::vector<Rat> RootSystem::root_coords_of_weight(const Weight& w) const {
  // solve M x = w where M[i][j] = <alpha_j, alpha_i^vee>
  QMat m(rank_, rank_);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j)
      m(i, j) = frac(2 * sg2_[j][i], sg2_[i][i]);
  std::vector<Rat> b(rank_);
  for (int i = 0; i < rank_; ++i) b[i] = w[i];
  auto x = solve_q(m, b);
  if (!x) throw std::logic_error("Cartan matrix is singular");
  return *x;
}

Weight RootSystem::reflect(const Weight& w, int idx) const {
  int p = pairing(w, idx);
  Weight g = weight_of_rootvec(pos_[idx].c);
  Weight r(rank_);
  for (int i = 0; i < rank_; ++i) r[i] = w[i] - p * g[i];
  return r;
}

bool RootSystem::is_dominant(const Weight& w) const {
  return std::all_of(w.begin(), w.end(), [](int a) { return a >= 0; });
}

Weight RootSystem::dominant_rep(const Weight& w) const {
  Weight v = w;
  for (;;) {
    int neg = -1;
    for (int i = 0; i < rank_; ++i)
      if (v[i] < 0) {
        neg = i;
        break;
      }
    if (neg < 0) return v;
    v = reflect(v, simple_idx_[neg]);
  }
}

std::vector<Weight> RootSystem::weyl_orbit(const Weight& w) const {
  std::set<Weight> seen;
  std::deque<Weight> queue;
  seen.insert(w);
  queue.push_back(w);
  while (!queue.empty()) {
    Weight v = queue.front();
    queue.pop_front();
    for (int i = 0; i < rank_; ++i) {
      Weight u = reflect(v, simple_idx_[i]);
      if (seen.insert(u).second) queue.push_back(u);
    }
  }
  return std::vector<Weight>(seen.begin(), seen.end());
}

DominanceDelta RootSystem::dominance_delta(const Weight& lambda, const Weight& mu) const {
  Weight diff(rank_);
  for (int i = 0; i < rank_; ++i) diff[i] = lambda[i] - mu[i];
  auto x = root_coords_of_weight(diff);
  DominanceDelta out;
  out.delta.assign(rank_, 0);
  for (int i = 0; i < rank_; ++i) {
    if (!is_integer(x[i])) {
      out.status = DominanceDelta::Status::NotInRootLattice;
      return out;
    }
    Int z = to_int(x[i]);
    if (z < 0) {
      out.status = DominanceDelta::Status::NegativeCoefficient;
      return out;
    }
    out.delta[i] = static_cast<int>(z.get_si());
  }
  out.status = DominanceDelta::Status::InCone;
  return out;
}

int RootSystem::root_string_q(int a, int b) const {
  RootVec v(rank_);
  for (int i = 0; i < rank_; ++i) v[i] = pos_[a].c[i] - pos_[b].c[i];
  int q = 0;
  while (is_root(v)) {
    ++q;
    for (int i = 0; i < rank_; ++i) v[i] -= pos_[b].c[i];
  }
  return q;
}

Weight LeviSubsystem::restrict(const Weight& w) const {
  return Weight(w.begin() + (lo - 1), w.begin() + hi);
}

RootVec LeviSubsystem::embed(const RootVec& d) const {
  RootVec out(ambient_rank, 0);
  for (int j = 0; j < static_cast<int>(d.size()); ++j) out[lo - 1 + j] = d[j];
  return out;
}

LeviSubsystem levi_subsystem(const RootSystem& rs, int lo, int hi) {
  int n = rs.rank();
  if (lo < 1 || hi > n || lo > hi)
    throw std::invalid_argument("Levi range out of bounds");
  int m = hi - lo + 1;
  LieType sub_type = LieType::A;
  switch (rs.type()) {
    case LieType::A:
      sub_type = LieType::A;
      break;
    case LieType::B:
      sub_type = (hi == n) ? LieType::B : LieType::A;
      break;
    case LieType::D:
      if (hi == n) {
        if (lo == n - 1)
          throw std::invalid_argument(
              "range {n-1, n} is disconnected in the type D diagram");
        sub_type = (lo <= n - 2) ? LieType::D : LieType::A;
      } else {
        sub_type = LieType::A;
      }
      break;
  }
  LeviSubsystem out;
  out.sub = RootSystem::build(sub_type, m);
  out.lo = lo;
  out.hi = hi;
  out.ambient_rank = n;
  return out;
}

bool BnDnDictionary::is_long(int b_pos_idx) const {
  return bn.positive(b_pos_idx).norm2 == 2;
}

Weight BnDnDictionary::restrict(const Weight& b_weight) const {
  Weight r(n);
  for (int i = 0; i + 1 < n; ++i) r[i] = b_weight[i];
  r[n - 1] = b_weight[n - 2] + b_weight[n - 1];
  return r;
}

Weight BnDnDictionary::theta_twist(const Weight& d_weight) const {
  Weight r = d_weight;
  std::swap(r[n - 2], r[n - 1]);
  return r;
}

BnDnDictionary bn_dn_dictionary(int n) {
  if (n < 3) throw std::invalid_argument("the long-root dictionary needs n >= 3");
  BnDnDictionary d;
  d.n = n;
  d.bn = RootSystem::build(LieType::B, n);
  d.dn = RootSystem::build(LieType::D, n);
  for (int i = 0; i < n; ++i) {
    RootVec v(n, 0);
    if (i + 1 < n) {
      v[i] = 1;
    } else {
      v[n - 2] = 1;
      v[n - 1] = 2;
    }
    d.d_simple_in_b.push_back(v);
  }
  return d;
}

}  // namespace branchlie
