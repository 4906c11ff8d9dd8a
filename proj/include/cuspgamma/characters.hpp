// Multiplicative and additive characters of the tower fields, regularity and
// Frobenius orbits (the parameter space of Green's parameterization), norm
// composition, and Gauss sums.
#pragma once

#include <memory>
#include <vector>

#include "cuspgamma/fields.hpp"

namespace cuspgamma {

using TowerPtr = std::shared_ptr<const FieldTower>;

// Character of F_{q^level}^x: chi(gen(level)^j) = zeta_{q^level-1}^{exponent*j}.
struct MultChar {
  TowerPtr tower;
  u32 level = 1;
  u64 exponent = 0;

  bool trivial() const { return exponent == 0; }
};

MultChar make_mult_char(TowerPtr tower, u32 level, u64 exponent);
cx eval_mult(const MultChar& chi, FqElem x);
MultChar mult_product(const MultChar& a, const MultChar& b);  // same level
MultChar mult_inverse(const MultChar& chi);
// chi composed with the field automorphism x -> x^{q^i}; exponent * q^i.
MultChar frob_twist(const MultChar& chi, i64 i);
// chi of level e composed with the norm from level D: exponent scales by
// (q^D - 1)/(q^e - 1).
MultChar compose_norm(const MultChar& chi, u32 D);

// True iff the q^base-power Frobenius orbit of the exponent has full size
// level/base; checked against the equivalent "does not factor through any
// intermediate norm" criterion (the two must agree).
bool is_regular(const MultChar& chi);
bool exponent_is_regular(const FieldTower& tower, u32 level, u64 exponent, u32 base = 1);

// psi_b(x) = zeta_p^{AbsTr(b*x)} for b != 0 in F_{q^level}; nontrivial by
// construction.
struct AddChar {
  TowerPtr tower;
  u32 level = 1;
  FqElem shift;
};

AddChar make_add_char(TowerPtr tower, u32 level, FqElem shift);
AddChar make_standard_psi(TowerPtr tower);  // level 1, b = 1
cx eval_add(const AddChar& psi, FqElem x);
AddChar add_inverse(const AddChar& psi);  // shift -> -b

// Frobenius orbit {k, k q^base, k q^{2 base}, ...} mod q^level - 1 of a
// regular exponent; size is exactly level/base.
struct RegularOrbit {
  u32 level = 1;
  u32 base = 1;
  std::vector<u64> exponents;  // sorted ascending

  u64 canonical() const { return exponents.front(); }
  u32 size() const { return static_cast<u32>(exponents.size()); }
};

std::vector<u64> frobenius_orbit_exponents(const FieldTower& tower, u32 level, u64 exponent, u32 base = 1);
// Throws NotAdmissible when the exponent is not regular over the base.
RegularOrbit regular_orbit(TowerPtr tower, u32 level, u64 exponent, u32 base = 1);
bool orbits_equal(const RegularOrbit& a, const RegularOrbit& b);

// All Frobenius orbits of F_q-regular characters of F_{q^d}^x, one per orbit,
// sorted by canonical exponent.
std::vector<RegularOrbit> enumerate_regular_orbits(TowerPtr tower, u32 d);

// G(beta, phi) = sum_{a in F_{q^N}^x} beta^{-1}(a) phi(Tr a), with beta at
// level N and phi at a level dividing N (phi of higher level pairs with the
// relative trace; everything reduces to the absolute trace).
cx gauss_sum(const MultChar& beta, const AddChar& phi);
// The a -> a^{-1} substituted expression sum beta(a) phi(Tr a^{-1}); must
// agree with gauss_sum.
cx gauss_sum_alt(const MultChar& beta, const AddChar& phi);

}  // namespace cuspgamma
