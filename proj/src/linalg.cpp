/*
  linalg.cpp
*/
#include "branchlie/linalg.hpp"

#include <algorithm>
#include <cassert>

namespace branchlie {

int rank_q(QMat a) {
  int rank = 0;
  for (int col = 0; col < a.cols() && rank < a.rows(); ++col) {
    int piv = -1;
    for (int i = rank; i < a.rows(); ++i)
      if (a(i, col) != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != rank)
      for (int j = col; j < a.cols(); ++j) std::swap(a(piv, j), a(rank, j));
    for (int i = rank + 1; i < a.rows(); ++i) {
      if (a(i, col) == 0) continue;
      Rat f = a(i, col) / a(rank, col);
      for (int j = col; j < a.cols(); ++j) a(i, j) -= f * a(rank, j);
    }
    ++rank;
  }
  return rank;
}

namespace {

// Reduced row echelon form in place; returns pivot column per pivot row.
std::vector<int> rref_q(QMat& a) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
    int piv = -1;
    for (int i = row; i < a.rows(); ++i)
      if (a(i, col) != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(row, j));
    Rat d = a(row, col);
    for (int j = 0; j < a.cols(); ++j) a(row, j) /= d;
    for (int i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == 0) continue;
      Rat f = a(i, col);
      for (int j = 0; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::vector<std::vector<Rat>> kernel_q(QMat a) {
  std::vector<int> pivots = rref_q(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rat>> basis;
  for (int free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rat> v(a.cols(), Rat(0));
    v[free] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(static_cast<int>(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Rat>> solve_q(QMat a, std::vector<Rat> b) {
  assert(static_cast<int>(b.size()) == a.rows());
  QMat aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  std::vector<int> pivots = rref_q(aug);
  for (size_t r = 0; r < pivots.size(); ++r)
    if (pivots[r] == a.cols()) return std::nullopt;  // row (0 .. 0 | 1)
  std::vector<Rat> x(a.cols(), Rat(0));
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(static_cast<int>(r), a.cols());
  return x;
}

std::optional<QMat> inverse_q(QMat a) {
  assert(a.rows() == a.cols());
  int n = a.rows();
  QMat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  std::vector<int> pivots = rref_q(aug);
  if (static_cast<int>(pivots.size()) != n || pivots.back() != n - 1) return std::nullopt;
  QMat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

ZMat hnf_row_basis(ZMat a) {
  int row = 0;
  for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
    // gcd out the column below `row` using Euclidean row operations
    for (;;) {
      int piv = -1;
      for (int i = row; i < a.rows(); ++i) {
        if (a(i, col) == 0) continue;
        if (piv < 0 || mpz_cmpabs(a(i, col).get_mpz_t(), a(piv, col).get_mpz_t()) < 0) piv = i;
      }
      if (piv < 0) break;
      if (piv != row)
        for (int j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(row, j));
      bool clean = true;
      for (int i = row + 1; i < a.rows(); ++i) {
        if (a(i, col) == 0) continue;
        Int q = a(i, col) / a(row, col);  // truncated division keeps remainders small
        if (q != 0)
          for (int j = 0; j < a.cols(); ++j) a(i, j) -= q * a(row, j);
        if (a(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (a(row, col) == 0) continue;
    if (a(row, col) < 0)
      for (int j = 0; j < a.cols(); ++j) a(row, j) = -a(row, j);
    // reduce the entries above the pivot into [0, pivot)
    for (int i = 0; i < row; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), a(i, col).get_mpz_t(), a(row, col).get_mpz_t());
      if (q != 0)
        for (int j = 0; j < a.cols(); ++j) a(i, j) -= q * a(row, j);
    }
    ++row;
  }
  ZMat basis(row, a.cols());
  for (int i = 0; i < row; ++i)
    for (int j = 0; j < a.cols(); ++j) basis(i, j) = a(i, j);
  return basis;
}

HnfTransform hnf_with_transform(ZMat a) {
  int m = a.rows();
  ZMat u(m, m);
  for (int i = 0; i < m; ++i) u(i, i) = 1;
  auto swap_rows = [&](int i, int k) {
    for (int j = 0; j < a.cols(); ++j) std::swap(a(i, j), a(k, j));
    for (int j = 0; j < m; ++j) std::swap(u(i, j), u(k, j));
  };
  auto sub_row = [&](int i, const Int& q, int k) {  // row_i -= q * row_k
    for (int j = 0; j < a.cols(); ++j) a(i, j) -= q * a(k, j);
    for (int j = 0; j < m; ++j) u(i, j) -= q * u(k, j);
  };
  int row = 0;
  for (int col = 0; col < a.cols() && row < m; ++col) {
    for (;;) {
      int piv = -1;
      for (int i = row; i < m; ++i) {
        if (a(i, col) == 0) continue;
        if (piv < 0 || mpz_cmpabs(a(i, col).get_mpz_t(), a(piv, col).get_mpz_t()) < 0) piv = i;
      }
      if (piv < 0) break;
      if (piv != row) swap_rows(piv, row);
      bool clean = true;
      for (int i = row + 1; i < m; ++i) {
        if (a(i, col) == 0) continue;
        Int q = a(i, col) / a(row, col);
        if (q != 0) sub_row(i, q, row);
        if (a(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (a(row, col) == 0) continue;
    if (a(row, col) < 0) {
      for (int j = 0; j < a.cols(); ++j) a(row, j) = -a(row, j);
      for (int j = 0; j < m; ++j) u(row, j) = -u(row, j);
    }
    for (int i = 0; i < row; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), a(i, col).get_mpz_t(), a(row, col).get_mpz_t());
      if (q != 0) sub_row(i, q, row);
    }
    ++row;
  }
  HnfTransform out;
  out.h = ZMat(row, a.cols());
  for (int i = 0; i < row; ++i)
    for (int j = 0; j < a.cols(); ++j) out.h(i, j) = a(i, j);
  out.u = std::move(u);
  return out;
}

namespace {

long long inv_p(long long x, long long p) {
  auto mulmod = [p](long long a, long long b) {
    return static_cast<long long>(static_cast<__int128>(a) * b % p);
  };
  long long r = 1, base = x % p, e = p - 2;
  while (e > 0) {
    if (e & 1) r = mulmod(r, base);
    base = mulmod(base, base);
    e >>= 1;
  }
  return r;
}

std::vector<std::vector<long long>> to_fp(const ZMat& a, long long p) {
  std::vector<std::vector<long long>> m(a.rows(), std::vector<long long>(a.cols()));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m[i][j] = mod_p(a(i, j), p);
  return m;
}

// In-place reduced echelon form over F_p; returns pivot columns.
std::vector<int> rref_p(std::vector<std::vector<long long>>& m, long long p) {
  auto mulmod = [p](long long a, long long b) {
    return static_cast<long long>(static_cast<__int128>(a) * b % p);
  };
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  int cols = static_cast<int>(m[0].size());
  int row = 0;
  for (int col = 0; col < cols && row < static_cast<int>(m.size()); ++col) {
    int piv = -1;
    for (int i = row; i < static_cast<int>(m.size()); ++i)
      if (m[i][col] != 0) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(m[piv], m[row]);
    long long inv = inv_p(m[row][col], p);
    for (int j = 0; j < cols; ++j) m[row][j] = mulmod(m[row][j], inv);
    for (int i = 0; i < static_cast<int>(m.size()); ++i) {
      if (i == row || m[i][col] == 0) continue;
      long long f = m[i][col];
      for (int j = 0; j < cols; ++j) {
        m[i][j] = (m[i][j] - mulmod(f, m[row][j])) % p;
        if (m[i][j] < 0) m[i][j] += p;
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

int rank_p(const ZMat& a, long long p) {
  auto m = to_fp(a, p);
  return static_cast<int>(rref_p(m, p).size());
}

std::vector<std::vector<long long>> kernel_p(const ZMat& a, long long p) {
  auto m = to_fp(a, p);
  std::vector<int> pivots = rref_p(m, p);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<long long>> basis;
  for (int free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<long long> v(a.cols(), 0);
    v[free] = 1;
    for (size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = (p - m[r][free]) % p;
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<long long>> solve_p(const ZMat& a,
                                              const std::vector<Int>& b,
                                              long long p) {
  ZMat aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[static_cast<size_t>(i)];
  }
  auto m = to_fp(aug, p);
  std::vector<int> pivots = rref_p(m, p);
  for (size_t r = 0; r < pivots.size(); ++r)
    if (pivots[r] == a.cols()) return std::nullopt;
  std::vector<long long> x(a.cols(), 0);
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m[r][a.cols()];
  return x;
}

std::vector<long long> FpSpace::reduce(std::vector<long long> v) const {
  auto mulmod = [this](long long a, long long b) {
    return static_cast<long long>(static_cast<__int128>(a) * b % p_);
  };
  for (size_t r = 0; r < rows_.size(); ++r) {
    long long f = v[pivots_[r]] % p_;
    if (f == 0) continue;
    for (int j = 0; j < ncols_; ++j) {
      v[j] = (v[j] - mulmod(f, rows_[r][j])) % p_;
      if (v[j] < 0) v[j] += p_;
    }
  }
  for (auto& x : v) { x %= p_; if (x < 0) x += p_; }
  return v;
}

bool FpSpace::contains(const std::vector<long long>& v) const {
  auto r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](long long x) { return x == 0; });
}

bool FpSpace::add(std::vector<long long> v) {
  v = reduce(std::move(v));
  int piv = -1;
  for (int j = 0; j < ncols_; ++j)
    if (v[j] != 0) { piv = j; break; }
  if (piv < 0) return false;
  auto mulmod = [this](long long a, long long b) {
    return static_cast<long long>(static_cast<__int128>(a) * b % p_);
  };
  long long inv = inv_p(v[piv], p_);
  for (auto& x : v) x = mulmod(x, inv);
  // keep earlier rows reduced against the new pivot
  for (size_t r = 0; r < rows_.size(); ++r) {
    long long f = rows_[r][piv];
    if (f == 0) continue;
    for (int j = 0; j < ncols_; ++j) {
      rows_[r][j] = (rows_[r][j] - mulmod(f, v[j])) % p_;
      if (rows_[r][j] < 0) rows_[r][j] += p_;
    }
  }
  size_t at = 0;
  while (at < pivots_.size() && pivots_[at] < piv) ++at;
  rows_.insert(rows_.begin() + at, std::move(v));
  pivots_.insert(pivots_.begin() + at, piv);
  return true;
}

std::vector<Rat> QSpace::reduce(std::vector<Rat> v) const {
  for (size_t r = 0; r < rows_.size(); ++r) {
    Rat f = v[pivots_[r]];
    if (f == 0) continue;
    for (int j = 0; j < ncols_; ++j) v[j] -= f * rows_[r][j];
  }
  return v;
}

bool QSpace::contains(const std::vector<Rat>& v) const {
  auto r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](const Rat& x) { return x == 0; });
}

bool QSpace::add(std::vector<Rat> v) {
  v = reduce(std::move(v));
  int piv = -1;
  for (int j = 0; j < ncols_; ++j)
    if (v[j] != 0) { piv = j; break; }
  if (piv < 0) return false;
  Rat d = v[piv];
  for (auto& x : v) x /= d;
  for (size_t r = 0; r < rows_.size(); ++r) {
    Rat f = rows_[r][piv];
    if (f == 0) continue;
    for (int j = 0; j < ncols_; ++j) rows_[r][j] -= f * v[j];
  }
  size_t at = 0;
  while (at < pivots_.size() && pivots_[at] < piv) ++at;
  rows_.insert(rows_.begin() + at, std::move(v));
  pivots_.insert(pivots_.begin() + at, piv);
  return true;
}

}  // namespace branchlie
