/*
  linalg.hpp

  Small dense exact linear algebra: Gaussian elimination over Q and F_p,
  Hermite normal form over Z. Matrices here are at most a few hundred rows;
  clarity and exactness beat asymptotics.
*/
#ifndef BRANCHLIE_LINALG_HPP
#define BRANCHLIE_LINALG_HPP

#include <optional>
#include <vector>

#include "branchlie/rational.hpp"

namespace branchlie {

template <class T>
class Mat {
 public:
  Mat() : r_(0), c_(0) {}
  Mat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}
  int rows() const { return r_; }
  int cols() const { return c_; }
  T& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
  const T& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

 private:
  int r_, c_;
  std::vector<T> a_;
};

using QMat = Mat<Rat>;
using ZMat = Mat<Int>;

int rank_q(QMat a);

// Basis of the right kernel {x : Ax = 0} over Q.
std::vector<std::vector<Rat>> kernel_q(QMat a);

// One solution of Ax = b over Q, or nullopt if inconsistent.
std::optional<std::vector<Rat>> solve_q(QMat a, std::vector<Rat> b);

// Inverse of a square matrix over Q, or nullopt if singular.
std::optional<QMat> inverse_q(QMat a);

// Basis of the row lattice of a, as the nonzero rows of the row-style Hermite
// normal form (pivots positive, entries above pivots reduced).
ZMat hnf_row_basis(ZMat a);

// Hermite normal form together with the unimodular row transform:
// u * input = [h; 0] with h the nonzero rows. u.rows() == input rows,
// h.rows() == rank. The first h.rows() rows of u express the basis in
// terms of the original rows.
struct HnfTransform {
  ZMat h;
  ZMat u;
};
HnfTransform hnf_with_transform(ZMat a);

int rank_p(const ZMat& a, long long p);

// Basis of the right kernel over F_p; entries in [0, p).
std::vector<std::vector<long long>> kernel_p(const ZMat& a, long long p);

// One solution of Ax = b over F_p (entries in [0, p)), or nullopt if
// inconsistent.
std::optional<std::vector<long long>> solve_p(const ZMat& a,
                                              const std::vector<Int>& b,
                                              long long p);

// Incrementally built row space over F_p, kept in reduced echelon form.
// Used to represent submodule weight components and to reduce vectors mod
// a subspace.
class FpSpace {
 public:
  FpSpace(long long p, int ncols) : p_(p), ncols_(ncols) {}
  long long p() const { return p_; }
  int cols() const { return ncols_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  // Reduce v modulo the current space (eliminating pivot columns).
  std::vector<long long> reduce(std::vector<long long> v) const;
  bool contains(const std::vector<long long>& v) const;
  // Add a vector; returns true if it enlarged the space.
  bool add(std::vector<long long> v);

 private:
  long long p_;
  int ncols_;
  std::vector<std::vector<long long>> rows_;
  std::vector<int> pivots_;
};

// Same idea over Q, for characteristic-zero runs of the same algorithms.
class QSpace {
 public:
  explicit QSpace(int ncols) : ncols_(ncols) {}
  int cols() const { return ncols_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  std::vector<Rat> reduce(std::vector<Rat> v) const;
  bool contains(const std::vector<Rat>& v) const;
  bool add(std::vector<Rat> v);

 private:
  int ncols_;
  std::vector<std::vector<Rat>> rows_;
  std::vector<int> pivots_;
};

}  // namespace branchlie

#endif
