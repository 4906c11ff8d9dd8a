// Matrix-group machinery over F_q: unipotent enumeration, psi_n on
// unipotents, coset representatives of U_m\GL_m, and primary-decomposition
// data of an invertible matrix.
#pragma once

#include <vector>

#include "cuspgamma/characters.hpp"
#include "cuspgamma/fields.hpp"

namespace cuspgamma {

// Square matrix with entries in F_q (the level-1 subfield of the tower).
class MatFq {
 public:
  MatFq(const FieldTower* tw, u32 n) : tw_(tw), n_(n), a_(std::size_t(n) * n, tw->zero()) {}
  static MatFq identity(const FieldTower* tw, u32 n);

  u32 size() const { return n_; }
  const FieldTower* tower() const { return tw_; }
  FqElem at(u32 i, u32 j) const { return a_[std::size_t(i) * n_ + j]; }
  void set(u32 i, u32 j, FqElem v) { a_[std::size_t(i) * n_ + j] = v; }

  MatFq operator*(const MatFq& rhs) const;
  bool operator==(const MatFq& rhs) const;

  u32 rank() const;
  bool invertible() const { return rank() == n_; }
  MatFq inverse() const;  // SingularMatrix
  bool is_upper_unitriangular() const;

  // Row-major packed-coefficient encoding of the entries; doubles as a
  // deterministic sort/memo key.
  std::vector<u32> packed() const;
  static MatFq from_packed(const FieldTower* tw, u32 n, const std::vector<u32>& entries);

 private:
  const FieldTower* tw_;
  u32 n_;
  std::vector<FqElem> a_;
};

// All q^{n(n-1)/2} upper unitriangular matrices, in a fixed order.
std::vector<MatFq> enumerate_unipotent(const FieldTower* tw, u32 n, u64 limit);
// All invertible n x n matrices (enumeration bound applies to q^{n^2}).
std::vector<MatFq> enumerate_gl(const FieldTower* tw, u32 n, u64 limit);

// psi_n(u) = phi(u_{12} + u_{23} + ... + u_{n-1,n}); phi at level 1.
cx psi_n(const MatFq& u, const AddChar& phi);

// Normal form of g under left multiplication by U_m: rows reduced bottom-up
// against the pivots of the rows below. One representative per coset.
MatFq coset_canonical(const MatFq& g);
std::vector<MatFq> coset_reps(const FieldTower* tw, u32 m, u64 limit);
double gl_order(u64 q, u32 n);

// Conjugacy type of an invertible matrix: Split when the characteristic
// polynomial has at least two distinct irreducible factors, otherwise the
// degree d of the unique factor h, the least-index root alpha of h in
// F_{q^d}, and the partition lambda of n/d read off the nullity jumps of
// powers of h(A).
struct ClassData {
  bool split = false;
  u32 d = 0;
  FqElem alpha;
  std::vector<u32> lambda;  // weakly decreasing, sums to n/d
};

ClassData class_data(const MatFq& A);

MatFq random_gl(const FieldTower* tw, u32 n, SplitMix64& rng);
MatFq random_unipotent(const FieldTower* tw, u32 n, SplitMix64& rng);

}  // namespace cuspgamma
