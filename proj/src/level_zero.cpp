#include "cuspgamma/level_zero.hpp"

#include <numeric>

namespace cuspgamma {

TamePair make_tame_pair(TowerPtr tower, u32 degree, cx scalar, u64 orbit_exponent, u32 base) {
  if (degree < 1 || base < 1) fail(Errc::BadInput, "tame pair needs positive degree and base");
  if (std::abs(scalar) == 0.0) fail(Errc::ZeroScalar, "theta(varpi) must be nonzero");
  TamePair t;
  t.base = base;
  t.degree = degree;
  t.scalar = scalar;
  t.orbit = regular_orbit(tower, base * degree, orbit_exponent, base);  // NotAdmissible if not regular
  t.tower = std::move(tower);
  return t;
}

LevelZeroRep pair_to_rep(const TamePair& t) {
  if (t.base != 1) fail(Errc::BadInput, "pair_to_rep expects a pair over the base field");
  LevelZeroRep rep;
  rep.n = t.degree;
  rep.scalar = t.scalar;
  rep.cusp = make_cuspidal(t.tower, t.degree, t.orbit.canonical());
  return rep;
}

TamePair rep_to_pair(const LevelZeroRep& rep) {
  return make_tame_pair(rep.cusp.tower, rep.n, rep.scalar, rep.cusp.orbit.canonical(), 1);
}

TamePair llc_twist(const TamePair& t, i64 k) {
  TamePair out = t;
  if (((k % 2) + 2) % 2 == 1) out.scalar = -out.scalar;
  return out;
}

std::vector<TamePair> base_change(const TamePair& t, u32 m) {
  if (m < 1) fail(Errc::BadInput, "base change degree must be positive");
  const FieldTower& tw = *t.tower;
  const u32 n = t.degree;
  const u32 g = std::gcd(n, m);
  const u32 deg_out = n / g;
  const u32 level_in = t.level();
  const u32 level_out = t.base * (n / g * m);  // base * lcm(n, m)
  if (!tw.supports_level(level_out))
    fail(Errc::FieldTooLarge, "tower does not support level " + std::to_string(level_out));

  const u64 m_in = tw.subfield_units(level_in);
  const u64 m_out = tw.subfield_units(level_out);
  const u64 scale = m_out / m_in;
  const u64 qb = powmod_u64(tw.q() % m_in, t.base, m_in);

  // (Delta^{n-1} theta)(varpi) = (-1)^{n-1} theta(varpi); the norm from the
  // compositum raises it to the power m/(n,m), and the compositum twist
  // contributes (-1)^{n/(n,m)-1}.
  cx inner = ((n - 1) % 2 == 0 ? 1.0 : -1.0) * t.scalar;
  cx scalar = ((deg_out - 1) % 2 == 0 ? 1.0 : -1.0) * cx_ipow(inner, m / g);

  std::vector<TamePair> out;
  out.reserve(g);
  u64 k = t.orbit.canonical() % m_in;
  for (u32 i = 1; i <= g; ++i) {
    u64 twisted = (k * powmod_u64(qb, i, m_in)) % m_in;
    u64 exponent = twisted * scale % m_out;
    TamePair s;
    s.base = t.base * m;
    s.degree = deg_out;
    s.scalar = scalar;
    s.orbit = regular_orbit(t.tower, level_out, exponent, s.base);  // admissibility per the claim
    s.tower = t.tower;
    out.push_back(std::move(s));
  }
  return out;
}

AiDatum ai_presentation(const TamePair& t) {
  AiDatum d;
  d.inducing_character = llc_twist(t, static_cast<i64>(t.degree) - 1);
  d.induced_degree = t.degree;
  return d;
}

}  // namespace cuspgamma
