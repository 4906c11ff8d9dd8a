// Tower of finite fields F_q <= F_{q^d} <= F_{q^L} (q = p^f, d | L) realized
// inside one ambient field F_{q^L}: elements are powers of a fixed primitive
// root g, addition goes through a Zech logarithm table, and every subfield is
// the image of a power map of g. Norm, trace and Frobenius are then pure
// index arithmetic.
#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <vector>

#include "cuspgamma/errors.hpp"
#include "cuspgamma/util.hpp"

namespace cuspgamma {

class FieldTower;

// Element of F_{q^L} in discrete-log form: g^k, with a sentinel for 0.
class FqElem {
 public:
  static constexpr u64 kZeroIdx = ~u64{0};

  FqElem() = default;
  FqElem(const FieldTower* tw, u64 idx) : tw_(tw), idx_(idx) {}

  bool is_zero() const { return idx_ == kZeroIdx; }
  u64 index() const {
    if (is_zero()) fail(Errc::EvalAtZero, "index of zero element");
    return idx_;
  }
  u64 raw() const { return idx_; }
  const FieldTower* tower() const { return tw_; }

  friend bool operator==(FqElem a, FqElem b) { return a.idx_ == b.idx_; }
  friend bool operator!=(FqElem a, FqElem b) { return !(a == b); }

 private:
  const FieldTower* tw_ = nullptr;
  u64 idx_ = kZeroIdx;
};

class FieldTower {
 public:
  static constexpr u64 kDefaultLimit = u64{1} << 20;

  struct Params {
    u64 p;
    u32 f;
    u32 L;
    u32 variant = 0;  // picks the variant-th primitive modulus in the search order
  };

  // Deterministic construction: modulus is the `variant`-th monic polynomial,
  // in ascending packed-coefficient order, that is irreducible over F_p with x
  // primitive mod it.
  static std::shared_ptr<const FieldTower> build(const Params& params, u64 limit = kDefaultLimit);

  // `p{p}_f{f}_L{L}.tower` blob. load() rebuilds the derived tables from the
  // stored modulus and cross-checks the stored Zech table.
  void save(const std::filesystem::path& file) const;
  static std::shared_ptr<const FieldTower> load(const std::filesystem::path& file, const Params& expect,
                                                u64 limit = kDefaultLimit);

  u64 p() const { return p_; }
  u32 f() const { return f_; }
  u32 L() const { return L_; }
  u64 q() const { return q_; }
  u64 order() const { return order_; }          // q^L
  u64 unit_order() const { return order_ - 1; }  // |F_{q^L}^x|
  u32 variant() const { return variant_; }
  u32 degree() const { return deg_; }                      // f*L, over F_p
  const std::vector<u32>& modulus() const { return modulus_; }
  const std::vector<u64>& zech() const { return zech_; }

  bool supports_level(u32 d) const { return d >= 1 && L_ % d == 0; }
  u64 subfield_units(u32 d) const;  // q^d - 1
  u64 subfield_step(u32 d) const;   // (q^L - 1)/(q^d - 1); gen(d) = g^step

  FqElem zero() const { return {this, FqElem::kZeroIdx}; }
  FqElem one() const { return {this, 0}; }
  FqElem gen() const { return {this, unit_order() == 1 ? 0 : 1}; }
  FqElem gen(u32 d) const;
  FqElem neg_one() const;
  FqElem from_index(u64 k) const { return {this, unit_order() ? k % unit_order() : 0}; }

  // Coefficient-vector encoding sum c_i p^i of an element, 0 <-> 0.
  FqElem from_packed(u32 packed) const;
  u32 packed(FqElem x) const;
  // Enumeration order for F_{q^d}: t = 0 -> 0, t >= 1 -> gen(d)^(t-1).
  FqElem subfield_element(u32 d, u64 t) const;

  FqElem add(FqElem a, FqElem b) const;
  FqElem sub(FqElem a, FqElem b) const { return add(a, neg(b)); }
  FqElem neg(FqElem a) const { return mul(a, neg_one()); }
  FqElem mul(FqElem a, FqElem b) const;
  FqElem inv(FqElem a) const;
  FqElem div(FqElem a, FqElem b) const { return mul(a, inv(b)); }
  FqElem pow(FqElem a, u64 e) const;
  FqElem frobenius(FqElem x, i64 i) const;  // x^{q^i}, i may be negative

  bool in_subfield(FqElem x, u32 d) const;
  u32 subfield_level(FqElem x) const;  // least d | L with x in F_{q^d}
  // Discrete log of x w.r.t. gen(d); requires x nonzero in F_{q^d}.
  u64 dlog(FqElem x, u32 d) const;
  // Absolute trace of F_{q^d} down to F_p, as an integer in [0, p);
  // requires x in F_{q^d}. The trace depends on the level: for x in a proper
  // subfield the ambient trace differs by the factor L/d mod p.
  u32 abs_trace(FqElem x, u32 d) const;
  // Table of absolute traces of F_{q^d}, indexed by dlog w.r.t. gen(d).
  const std::vector<u32>& trace_table(u32 d) const;

 private:
  FieldTower() = default;
  void build_tables();  // walk powers of g, fill dlog/packed/trace/zech tables

  u64 p_ = 0;
  u32 f_ = 0, L_ = 0, deg_ = 0, variant_ = 0;
  u64 q_ = 0, order_ = 0;
  std::vector<u32> modulus_;          // monic, ascending, deg_+1 coefficients
  std::vector<u64> zech_;             // zech[j] = dlog(1 + g^j), kZeroIdx if -1 == g^j
  std::vector<u32> packed_of_pow_;    // packed coefficients of g^j
  std::vector<u32> dlog_of_packed_;   // inverse of the above
  std::vector<std::vector<u32>> level_trace_;  // per divisor d of L (by divisor rank)
  std::vector<u32> divisors_;         // divisors of L, ascending
  std::vector<u64> q_pow_mod_;        // q^i mod (q^L - 1), i in [0, L)
};

std::shared_ptr<const FieldTower> build_tower(u64 p, u32 f, u32 L, u64 limit = FieldTower::kDefaultLimit,
                                              u32 variant = 0);

// Process-wide registry (towers are immutable; construction happens once per
// (p, f, L, variant)). When cache_dir is given and variant == 0, the tower is
// loaded from / saved to `p{p}_f{f}_L{L}.tower` in that directory.
std::shared_ptr<const FieldTower> get_tower(u64 p, u32 f, u32 L, u64 limit = FieldTower::kDefaultLimit,
                                            u32 variant = 0,
                                            const std::optional<std::filesystem::path>& cache_dir = std::nullopt);
std::shared_ptr<const FieldTower> get_tower_for_q(u64 q, u32 L, u64 limit = FieldTower::kDefaultLimit,
                                                  u32 variant = 0,
                                                  const std::optional<std::filesystem::path>& cache_dir = std::nullopt);

FqElem norm(FqElem x, u32 d_from, u32 d_to);
FqElem trace(FqElem x, u32 d_from, u32 d_to);
FqElem frobenius(FqElem x, i64 i);

// Exponent relabeling between two models A, B of the same field: the
// character with exponent k in A equals the character with exponent
// k * t mod (q^L - 1) in B, where t is the returned factor. The field
// isomorphism is pinned by sending A's generator to the least-index root of
// A's modulus inside B.
u64 tower_relabel_factor(const FieldTower& a, const FieldTower& b);

}  // namespace cuspgamma
