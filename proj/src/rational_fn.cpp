#include "cuspgamma/rational_fn.hpp"

#include <cmath>

#include "cuspgamma/errors.hpp"

namespace cuspgamma {

Poly Poly::constant(cx v) { return Poly{{v}}; }

bool Poly::is_zero() const {
  for (const cx& v : c)
    if (std::abs(v) != 0.0) return false;
  return true;
}

cx Poly::eval(cx t) const {
  cx acc{0.0, 0.0};
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
  return acc;
}

void Poly::trim() {
  while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.c.empty() || b.c.empty()) return {};
  Poly out;
  out.c.assign(a.c.size() + b.c.size() - 1, cx{0.0, 0.0});
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) out.c[i + j] += a.c[i] * b.c[j];
  out.trim();
  return out;
}

cx RationalFn::eval(cx t) const {
  cx d = den.eval(t);
  if (std::abs(d) == 0.0) fail(Errc::BadInput, "rational function evaluated at a pole");
  return num.eval(t) / d;
}

void RationalFn::normalize() {
  num.trim();
  den.trim();
  if (den.c.empty()) fail(Errc::BadInput, "rational function with zero denominator");
  cx lead = den.c.back();
  for (auto& v : num.c) v /= lead;
  for (auto& v : den.c) v /= lead;
}

RationalFn rational_mul(const RationalFn& a, const RationalFn& b) {
  RationalFn out{poly_mul(a.num, b.num), poly_mul(a.den, b.den)};
  out.normalize();
  return out;
}

}  // namespace cuspgamma
