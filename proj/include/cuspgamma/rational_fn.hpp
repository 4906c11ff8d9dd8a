// Ratios of complex-coefficient polynomials in the formal variable T = q^{-s},
// for the abelian unramified gamma factors.
#pragma once

#include <vector>

#include "cuspgamma/util.hpp"

namespace cuspgamma {

struct Poly {
  std::vector<cx> c;  // ascending; empty = zero

  static Poly constant(cx v);
  u32 degree() const { return c.empty() ? 0 : static_cast<u32>(c.size() - 1); }
  bool is_zero() const;
  cx eval(cx t) const;
  void trim();
};

Poly poly_mul(const Poly& a, const Poly& b);

struct RationalFn {
  Poly num, den;

  cx eval(cx t) const;
  // Scale so the denominator is monic; the represented function is unchanged.
  void normalize();
};

RationalFn rational_mul(const RationalFn& a, const RationalFn& b);

}  // namespace cuspgamma
