/*
  enveloping.cpp
*/
#include "branchlie/enveloping.hpp"

#include <cassert>
#include <sstream>

namespace branchlie {

RootVec monomial_drop(const RootSystem& rs, const PBWMonomial& m) {
  RootVec d(rs.rank(), 0);
  for (const auto& [idx, k] : m.factors) {
    const RootVec& c = rs.positive(idx).c;
    for (int j = 0; j < rs.rank(); ++j) d[j] += k * c[j];
  }
  return d;
}

std::string to_string(const PBWMonomial& m) {
  if (m.empty()) return "1";
  std::ostringstream os;
  for (size_t i = 0; i < m.factors.size(); ++i) {
    if (i) os << '.';
    os << 'f' << m.factors[i].first;
    if (m.factors[i].second > 1) os << "^(" << m.factors[i].second << ')';
  }
  return os.str();
}

void add_term(LinComb& x, const PBWMonomial& m, const Rat& c) {
  if (c == 0) return;
  auto it = x.find(m);
  if (it == x.end()) {
    x.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second == 0) x.erase(it);
}

void add_scaled(LinComb& x, const LinComb& y, const Rat& c) {
  if (c == 0) return;
  for (const auto& [m, v] : y) add_term(x, m, v * c);
}

namespace {

// out += scale * f_delta^{(e)} * src, where every monomial of src starts
// strictly after delta in the root order (so prepending keeps PBW order).
void add_prepended(LinComb& out, int delta, int e, const LinComb& src,
                   const Rat& scale) {
  if (scale == 0) return;
  if (e == 0) {
    add_scaled(out, src, scale);
    return;
  }
  for (const auto& [m, c] : src) {
    assert(m.empty() || m.factors.front().first > delta);
    PBWMonomial w;
    w.factors.reserve(m.factors.size() + 1);
    w.factors.emplace_back(delta, e);
    w.factors.insert(w.factors.end(), m.factors.begin(), m.factors.end());
    add_term(out, w, c * scale);
  }
}

PBWMonomial tail(const PBWMonomial& m) {
  PBWMonomial rest;
  rest.factors.assign(m.factors.begin() + 1, m.factors.end());
  return rest;
}

}  // namespace

const LinComb& LoweringAlgebra::lmul_f1(int gamma, const PBWMonomial& m) {
  auto key = std::make_pair(gamma, m);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  const RootSystem& rs = roots();
  LinComb out;
  if (m.empty()) {
    PBWMonomial w;
    w.factors.emplace_back(gamma, 1);
    out.emplace(std::move(w), Rat(1));
  } else {
    const auto [delta, k] = m.factors.front();
    if (gamma < delta) {
      PBWMonomial w;
      w.factors.reserve(m.factors.size() + 1);
      w.factors.emplace_back(gamma, 1);
      w.factors.insert(w.factors.end(), m.factors.begin(), m.factors.end());
      out.emplace(std::move(w), Rat(1));
    } else if (gamma == delta) {
      // f f^{(k)} = (k+1) f^{(k+1)}
      PBWMonomial w = m;
      w.factors.front().second = k + 1;
      out.emplace(std::move(w), Rat(k + 1));
    } else {
      // f_gamma f_delta^{(k)} = sum_t f_delta^{(k-t)} ((-ad f_delta)^t f_gamma)/t!
      const PBWMonomial rest = tail(m);
      add_prepended(out, delta, k, lmul_f1(gamma, rest), Rat(1));
      const RootVec& dv = rs.positive(delta).c;
      RootVec cur = rs.positive(gamma).c;
      int prev = gamma;
      Rat coef(1);
      for (int t = 1; t <= k; ++t) {
        // [f_delta, f_prev] = N(-delta, -prev) f_{delta+prev}
        int nf = t_->N(-(delta + 1), -(prev + 1));
        if (nf == 0) break;
        for (size_t j = 0; j < cur.size(); ++j) cur[j] += dv[j];
        int nidx = rs.index_of(cur);
        assert(nidx >= 0);
        coef *= frac(Int(-nf), Int(t));
        add_prepended(out, delta, k - t, lmul_f1(nidx, rest), coef);
        prev = nidx;
      }
    }
  }
  return cache_.emplace(std::move(key), std::move(out)).first->second;
}

LinComb LoweringAlgebra::lmul_f(int gamma, int k, const LinComb& x) {
  LinComb cur = x;
  for (int j = 1; j <= k; ++j) {
    LinComb next;
    Rat cj = frac(Int(1), Int(j));
    for (const auto& [m, c] : cur) add_scaled(next, lmul_f1(gamma, m), c * cj);
    cur = std::move(next);
    if (cur.empty()) break;
  }
  return cur;
}

WeylModule::WeylModule(std::shared_ptr<LoweringAlgebra> algebra, Weight lambda,
                       Budget budget)
    : la_(std::move(algebra)), lambda_(std::move(lambda)), budget_(budget) {
  const RootSystem& rs = la_->roots();
  if (static_cast<int>(lambda_.size()) != rs.rank())
    throw std::invalid_argument("highest weight has wrong rank");
  for (int a : lambda_)
    if (a < 0) throw std::invalid_argument("highest weight must be dominant");
}

WeylModule::WeylModule(const StructureConstantTable& table, Weight lambda,
                       Budget budget)
    : WeylModule(std::make_shared<LoweringAlgebra>(table), std::move(lambda),
                 budget) {}

ModuleElement WeylModule::highest() const {
  ModuleElement v{lambda_, {}};
  v.terms.emplace(PBWMonomial{}, Rat(1));
  return v;
}

ModuleElement WeylModule::apply_f(int gamma, int k, const ModuleElement& x) {
  assert(x.lambda == lambda_);
  return ModuleElement{lambda_, la_->lmul_f(gamma, k, x.terms)};
}

ModuleElement WeylModule::apply_e(int gamma, int k, const ModuleElement& x) {
  assert(x.lambda == lambda_);
  LinComb cur = x.terms;
  for (int j = 1; j <= k; ++j) {
    LinComb next;
    Rat cj = frac(Int(1), Int(j));
    for (const auto& [m, c] : cur) add_scaled(next, lmul_e1(gamma, m), c * cj);
    cur = std::move(next);
    if (cur.empty()) break;
  }
  return ModuleElement{lambda_, std::move(cur)};
}

const LinComb& WeylModule::lmul_e1(int gamma, const PBWMonomial& m) {
  auto key = std::make_pair(gamma, m);
  if (auto it = e_cache_.find(key); it != e_cache_.end()) return it->second;
  const RootSystem& rs = roots();
  LinComb out;
  if (!m.empty()) {
    const auto [delta, k] = m.factors.front();
    const PBWMonomial rest = tail(m);
    {
      // e_gamma straight past the leading factor
      const LinComb& r0 = lmul_e1(gamma, rest);
      if (!r0.empty()) add_scaled(out, la_->lmul_f(delta, k, r0), Rat(1));
    }
    if (gamma == delta) {
      // [e, f^{(k)}] = f^{(k-1)} (h - k + 1), h acting on the weight of
      // rest * v
      RootVec dr = monomial_drop(rs, rest);
      Weight wd = rs.weight_of_rootvec(dr);
      Weight mu(lambda_.size());
      for (size_t i = 0; i < mu.size(); ++i) mu[i] = lambda_[i] - wd[i];
      Rat c(rs.pairing(mu, delta) - (k - 1));
      LinComb one;
      one.emplace(rest, Rat(1));
      add_prepended(out, delta, k - 1, one, c);
    } else {
      // chain through x_{gamma - t delta}, which may cross to the f side
      const RootVec& dv = rs.positive(delta).c;
      RootVec cur = rs.positive(gamma).c;
      int prev_signed = gamma + 1;
      Rat coef(1);
      for (int t = 1; t <= k; ++t) {
        // [f_delta, x_prev] = N(-delta, prev) x_{prev - delta}
        int nf = la_->table().N(-(delta + 1), prev_signed);
        if (nf == 0) break;
        for (size_t j = 0; j < cur.size(); ++j) cur[j] -= dv[j];
        int pos_idx = rs.index_of(cur);
        int neg_idx = -1;
        if (pos_idx < 0) {
          RootVec nc = cur;
          for (auto& v : nc) v = -v;
          neg_idx = rs.index_of(nc);
          assert(neg_idx >= 0);
        }
        coef *= frac(Int(-nf), Int(t));
        if (pos_idx >= 0) {
          add_scaled(out, la_->lmul_f(delta, k - t, lmul_e1(pos_idx, rest)),
                     coef);
          prev_signed = pos_idx + 1;
        } else {
          add_scaled(out, la_->lmul_f(delta, k - t, la_->lmul_f1(neg_idx, rest)),
                     coef);
          prev_signed = -(neg_idx + 1);
        }
      }
    }
  }
  return e_cache_.emplace(std::move(key), std::move(out)).first->second;
}

Weight WeylModule::weight_of(const ModuleElement& x) const {
  const RootSystem& rs = roots();
  if (x.terms.empty()) return lambda_;
  RootVec d0 = monomial_drop(rs, x.terms.begin()->first);
  for (const auto& [m, c] : x.terms)
    if (monomial_drop(rs, m) != d0)
      throw std::logic_error("element is not weight-homogeneous");
  Weight wd = rs.weight_of_rootvec(d0);
  Weight mu(lambda_.size());
  for (size_t i = 0; i < mu.size(); ++i) mu[i] = lambda_[i] - wd[i];
  return mu;
}

Rat WeylModule::form(const PBWMonomial& a, const PBWMonomial& b) {
  const RootSystem& rs = roots();
  if (monomial_drop(rs, a) != monomial_drop(rs, b)) return Rat(0);
  auto key = a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
  if (auto it = form_cache_.find(key); it != form_cache_.end())
    return it->second;
  // apply tau(key.first), i.e. the divided e-powers in increasing root order,
  // to key.second * v
  LinComb cur;
  cur.emplace(key.second, Rat(1));
  for (const auto& [gamma, k] : key.first.factors) {
    for (int j = 1; j <= k && !cur.empty(); ++j) {
      LinComb next;
      Rat cj = frac(Int(1), Int(j));
      for (const auto& [m, c] : cur) add_scaled(next, lmul_e1(gamma, m), c * cj);
      cur = std::move(next);
    }
    if (cur.empty()) break;
  }
  Rat val(0);
  if (!cur.empty()) {
    assert(cur.size() == 1 && cur.begin()->first.empty());
    val = cur.begin()->second;
  }
  form_cache_.emplace(std::move(key), val);
  return val;
}

Rat WeylModule::form(const ModuleElement& a, const ModuleElement& b) {
  Rat out(0);
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) out += ca * cb * form(ma, mb);
  return out;
}

std::vector<PBWMonomial> WeylModule::monomials_of_weight(const Weight& mu) {
  const RootSystem& rs = roots();
  if (static_cast<int>(mu.size()) != rs.rank())
    throw std::invalid_argument("weight has wrong rank");
  DominanceDelta dd = rs.dominance_delta(lambda_, mu);
  if (!dd.holds())
    throw std::invalid_argument("weight is not below the highest weight");
  long long ht = 0;
  for (int v : dd.delta) ht += v;
  if (ht > budget_.height) {
    std::ostringstream os;
    os << "weight drop height " << ht << " exceeds budget " << budget_.height;
    throw BudgetExceeded(os.str());
  }
  int npos = rs.num_positive();
  int rank = rs.rank();
  // which coordinates are touched by roots with index >= i
  std::vector<std::vector<char>> suffix(npos + 1, std::vector<char>(rank, 0));
  for (int i = npos - 1; i >= 0; --i) {
    suffix[i] = suffix[i + 1];
    for (int j = 0; j < rank; ++j)
      if (rs.positive(i).c[j] > 0) suffix[i][j] = 1;
  }
  std::vector<PBWMonomial> out;
  PBWMonomial curm;
  RootVec rem = dd.delta;
  auto emit = [&]() {
    out.push_back(curm);
    if (static_cast<long long>(out.size()) > budget_.monomial_cap) {
      std::ostringstream os;
      os << "weight space exceeds " << budget_.monomial_cap << " monomials";
      throw BudgetExceeded(os.str());
    }
  };
  auto rec = [&](auto&& self, int i) -> void {
    bool zero = true;
    for (int v : rem)
      if (v != 0) { zero = false; break; }
    if (zero) {
      emit();
      return;
    }
    if (i == npos) return;
    for (int j = 0; j < rank; ++j)
      if (rem[j] > 0 && !suffix[i][j]) return;
    const RootVec& c = rs.positive(i).c;
    int maxk = -1;
    for (int j = 0; j < rank; ++j) {
      if (c[j] == 0) continue;
      int q = rem[j] / c[j];
      if (maxk < 0 || q < maxk) maxk = q;
    }
    // k = 0 branch
    self(self, i + 1);
    for (int k = 1; k <= maxk; ++k) {
      for (int j = 0; j < rank; ++j) rem[j] -= c[j];
      curm.factors.emplace_back(i, k);
      self(self, i + 1);
      curm.factors.pop_back();
    }
    for (int j = 0; j < rank; ++j) rem[j] += maxk * c[j];
  };
  rec(rec, 0);
  return out;
}

QMat WeylModule::gram_matrix(const Weight& mu) {
  std::vector<PBWMonomial> mons = monomials_of_weight(mu);
  if (static_cast<long long>(mons.size()) > budget_.lattice_cap) {
    std::ostringstream os;
    os << "gram matrix on " << mons.size() << " monomials exceeds cap "
       << budget_.lattice_cap;
    throw BudgetExceeded(os.str());
  }
  int m = static_cast<int>(mons.size());
  QMat g(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      g(i, j) = form(mons[i], mons[j]);
      g(j, i) = g(i, j);
    }
  return g;
}

WeylModule::SpanData WeylModule::compute_span(
    const std::vector<PBWMonomial>& mons) {
  SpanData sd;
  sd.mons = mons;
  int m = static_cast<int>(mons.size());
  for (int s = 0; s < m; ++s) sd.index.emplace(mons[s], s);
  // greedy pivot selection; valid because the form is positive definite on
  // the rational span of the monomials in characteristic zero
  std::vector<std::vector<Rat>> inv;
  for (int s = 0; s < m; ++s) {
    int r = static_cast<int>(sd.pivots.size());
    std::vector<Rat> g(r);
    for (int i = 0; i < r; ++i) g[i] = form(mons[sd.pivots[i]], mons[s]);
    std::vector<Rat> u(r, Rat(0));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) u[i] += inv[i][j] * g[j];
    Rat d = form(mons[s], mons[s]);
    for (int i = 0; i < r; ++i) d -= g[i] * u[i];
    if (d < 0)
      throw std::logic_error(
          "contravariant form is not positive semidefinite on a weight space");
    if (d == 0) continue;
    std::vector<std::vector<Rat>> ninv(r + 1, std::vector<Rat>(r + 1, Rat(0)));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) ninv[i][j] = inv[i][j] + u[i] * u[j] / d;
    for (int i = 0; i < r; ++i) {
      ninv[i][r] = -u[i] / d;
      ninv[r][i] = ninv[i][r];
    }
    ninv[r][r] = Rat(1) / d;
    inv = std::move(ninv);
    sd.pivots.push_back(s);
  }
  int r = static_cast<int>(sd.pivots.size());
  sd.gb = QMat(r, r);
  sd.gb_inv = QMat(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      sd.gb(i, j) = form(mons[sd.pivots[i]], mons[sd.pivots[j]]);
      sd.gb_inv(i, j) = inv[i][j];
    }
  sd.coords.assign(m, {});
  for (int s = 0; s < m; ++s) {
    std::vector<Rat> g(r);
    for (int i = 0; i < r; ++i) g[i] = form(mons[sd.pivots[i]], mons[s]);
    std::vector<Rat> x(r, Rat(0));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) x[i] += sd.gb_inv(i, j) * g[j];
    sd.coords[s] = std::move(x);
  }
  return sd;
}

const WeylModule::SpanData& WeylModule::span(const Weight& mu) {
  if (auto it = span_cache_.find(mu); it != span_cache_.end())
    return it->second;
  SpanData sd = compute_span(monomials_of_weight(mu));
  return span_cache_.emplace(mu, std::move(sd)).first->second;
}

int WeylModule::weyl_mult(const Weight& mu) {
  return static_cast<int>(span(mu).pivots.size());
}

std::vector<PBWMonomial> WeylModule::pivot_monomials(const Weight& mu) {
  const SpanData& sd = span(mu);
  std::vector<PBWMonomial> out;
  out.reserve(sd.pivots.size());
  for (int p : sd.pivots) out.push_back(sd.mons[p]);
  return out;
}

std::vector<Rat> WeylModule::pivot_coordinates(const Weight& mu,
                                               const ModuleElement& x) {
  const SpanData& sd = span(mu);
  std::vector<Rat> out(sd.pivots.size(), Rat(0));
  for (const auto& [m, c] : x.terms) {
    auto it = sd.index.find(m);
    if (it == sd.index.end())
      throw std::invalid_argument("element has a monomial outside the weight space");
    const std::vector<Rat>& xs = sd.coords[it->second];
    for (size_t i = 0; i < out.size(); ++i) out[i] += c * xs[i];
  }
  return out;
}

namespace {

// Common denominator of a coordinate table.
Int common_denominator(const std::vector<std::vector<Rat>>& coords) {
  Int d(1);
  for (const auto& row : coords)
    for (const Rat& q : row)
      mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), q.get_den().get_mpz_t());
  return d;
}

}  // namespace

QMat WeylModule::lattice_pivot_matrix(const Weight& mu) {
  if (auto it = lpm_cache_.find(mu); it != lpm_cache_.end()) return it->second;
  const SpanData& sd = span(mu);
  int r = static_cast<int>(sd.pivots.size());
  int m = static_cast<int>(sd.mons.size());
  QMat lpm(r, r);
  if (r > 0) {
    Int d = common_denominator(sd.coords);
    ZMat xd(m, r);
    for (int s = 0; s < m; ++s)
      for (int j = 0; j < r; ++j) xd(s, j) = to_int(sd.coords[s][j] * Rat(d));
    ZMat h = hnf_row_basis(std::move(xd));
    if (h.rows() != r)
      throw std::logic_error("weight-space lattice has unexpected rank");
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) lpm(i, j) = frac(h(i, j), d);
  }
  return lpm_cache_.emplace(mu, std::move(lpm)).first->second;
}

namespace {

// (a * g * a^T) with integer entries demanded.
ZMat conjugate_to_int(const QMat& a, const QMat& g) {
  int r = a.rows();
  int n = a.cols();
  QMat t(r, n);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < n; ++j) {
      Rat acc(0);
      for (int k = 0; k < n; ++k) acc += a(i, k) * g(k, j);
      t(i, j) = acc;
    }
  ZMat out(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Rat acc(0);
      for (int k = 0; k < n; ++k) acc += t(i, k) * a(j, k);
      if (!is_integer(acc))
        throw std::logic_error("lattice Gram entry is not integral");
      out(i, j) = acc.get_num();
    }
  return out;
}

}  // namespace

int WeylModule::irreducible_dim_mu(const Weight& mu, long long p) {
  if (p < 0 || p == 1 ||
      (p > 1 && mpz_probab_prime_p(Int(static_cast<long>(p)).get_mpz_t(), 40) == 0))
    throw std::invalid_argument("p must be zero or a prime");
  if (p > 0)
    for (int a : lambda_)
      if (a >= p)
        throw std::invalid_argument("highest weight is not p-restricted");
  const SpanData& sd = span(mu);
  int r = static_cast<int>(sd.pivots.size());
  if (r == 0) return 0;
  if (p == 0) return r;
  ZMat gl = conjugate_to_int(lattice_pivot_matrix(mu), sd.gb);
  return rank_p(gl, p);
}

WeightSpaceLattice WeylModule::lattice_basis_from(
    const Weight& mu, const std::vector<PBWMonomial>& mons) {
  const RootSystem& rs = roots();
  DominanceDelta dd = rs.dominance_delta(lambda_, mu);
  if (!dd.holds())
    throw std::invalid_argument("weight is not below the highest weight");
  for (const PBWMonomial& m : mons)
    if (monomial_drop(rs, m) != dd.delta)
      throw std::invalid_argument("generating monomial of wrong weight");
  if (static_cast<long long>(mons.size()) > budget_.lattice_cap) {
    std::ostringstream os;
    os << "lattice basis on " << mons.size() << " monomials exceeds cap "
       << budget_.lattice_cap;
    throw BudgetExceeded(os.str());
  }
  SpanData sd = compute_span(mons);
  int r = static_cast<int>(sd.pivots.size());
  int m = static_cast<int>(sd.mons.size());
  WeightSpaceLattice out;
  out.lambda = lambda_;
  out.mu = mu;
  out.monomials = mons;
  out.basis = ZMat(r, m);
  out.gram = ZMat(r, r);
  if (r == 0) return out;
  Int d = common_denominator(sd.coords);
  ZMat xd(m, r);
  for (int s = 0; s < m; ++s)
    for (int j = 0; j < r; ++j) xd(s, j) = to_int(sd.coords[s][j] * Rat(d));
  HnfTransform ht = hnf_with_transform(std::move(xd));
  if (ht.h.rows() != r)
    throw std::logic_error("weight-space lattice has unexpected rank");
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < m; ++j) out.basis(i, j) = ht.u(i, j);
  QMat lpm(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) lpm(i, j) = frac(ht.h(i, j), d);
  out.gram = conjugate_to_int(lpm, sd.gb);
  return out;
}

WeightSpaceLattice WeylModule::lattice_basis(const Weight& mu) {
  return lattice_basis_from(mu, monomials_of_weight(mu));
}

}  // namespace branchlie
