#include "cuspgamma/characters.hpp"

#include <algorithm>

namespace cuspgamma {

MultChar make_mult_char(TowerPtr tower, u32 level, u64 exponent) {
  if (!tower || !tower->supports_level(level))
    fail(Errc::BadDivisor, "character level " + std::to_string(level) + " unsupported by tower");
  u64 m = tower->subfield_units(level);
  return {std::move(tower), level, exponent % m};
}

cx eval_mult(const MultChar& chi, FqElem x) {
  if (x.is_zero()) fail(Errc::EvalAtZero, "multiplicative character at 0");
  const FieldTower& tw = *chi.tower;
  u64 m = tw.subfield_units(chi.level);
  u64 j = tw.dlog(x, chi.level);
  const auto& z = unity_roots(m);
  return z[(chi.exponent * j) % m];
}

MultChar mult_product(const MultChar& a, const MultChar& b) {
  if (a.level != b.level || a.tower.get() != b.tower.get())
    fail(Errc::BadInput, "character product requires matching level and tower");
  u64 m = a.tower->subfield_units(a.level);
  return {a.tower, a.level, (a.exponent + b.exponent) % m};
}

MultChar mult_inverse(const MultChar& chi) {
  u64 m = chi.tower->subfield_units(chi.level);
  return {chi.tower, chi.level, (m - chi.exponent % m) % m};
}

MultChar frob_twist(const MultChar& chi, i64 i) {
  u64 m = chi.tower->subfield_units(chi.level);
  u32 d = chi.level;
  u32 ii = static_cast<u32>(((i % d) + d) % d);
  u64 mult = powmod_u64(chi.tower->q() % m, ii, m);
  return {chi.tower, chi.level, (chi.exponent % m) * mult % m};
}

MultChar compose_norm(const MultChar& chi, u32 D) {
  const FieldTower& tw = *chi.tower;
  if (!tw.supports_level(D) || D % chi.level != 0)
    fail(Errc::BadDivisor, "norm composition " + std::to_string(D) + "->" + std::to_string(chi.level));
  u64 mD = tw.subfield_units(D);
  u64 me = tw.subfield_units(chi.level);
  u64 scale = mD / me;
  return {chi.tower, D, (chi.exponent % me) * scale % mD};
}

bool exponent_is_regular(const FieldTower& tower, u32 level, u64 exponent, u32 base) {
  if (!tower.supports_level(level) || level % base != 0)
    fail(Errc::BadDivisor, "regularity levels " + std::to_string(level) + "/" + std::to_string(base));
  const u32 rel_deg = level / base;
  auto orbit = frobenius_orbit_exponents(tower, level, exponent, base);
  bool by_orbit = orbit.size() == rel_deg;

  // Equivalent criterion: chi factors through the norm down to level base*e,
  // e a proper divisor of rel_deg, iff (q^level - 1)/(q^{base*e} - 1) divides
  // the exponent.
  u64 m = tower.subfield_units(level);
  u64 k = exponent % m;
  bool by_norm = true;
  for (u32 e : divisors_of(rel_deg)) {
    if (e == rel_deg) continue;
    u64 sub = tower.subfield_units(base * e);
    u64 idx = m / sub;
    if (k % idx == 0) {
      by_norm = false;
      break;
    }
  }
  if (by_orbit != by_norm) fail(Errc::BadInput, "regularity criteria disagree (internal)");
  return by_orbit;
}

bool is_regular(const MultChar& chi) { return exponent_is_regular(*chi.tower, chi.level, chi.exponent, 1); }

AddChar make_add_char(TowerPtr tower, u32 level, FqElem shift) {
  if (!tower || !tower->supports_level(level)) fail(Errc::BadDivisor, "additive character level unsupported");
  if (shift.is_zero()) fail(Errc::BadInput, "additive character shift must be nonzero");
  if (!tower->in_subfield(shift, level)) fail(Errc::NotInSubfield, "additive character shift outside its level");
  return {std::move(tower), level, shift};
}

AddChar make_standard_psi(TowerPtr tower) {
  FqElem one = tower->one();
  return make_add_char(std::move(tower), 1, one);
}

cx eval_add(const AddChar& psi, FqElem x) {
  const FieldTower& tw = *psi.tower;
  if (!tw.in_subfield(x, psi.level)) fail(Errc::NotInSubfield, "additive character argument outside its level");
  u32 t = tw.abs_trace(tw.mul(psi.shift, x), psi.level);
  const auto& z = unity_roots(tw.p());
  return z[t];
}

AddChar add_inverse(const AddChar& psi) { return {psi.tower, psi.level, psi.tower->neg(psi.shift)}; }

std::vector<u64> frobenius_orbit_exponents(const FieldTower& tower, u32 level, u64 exponent, u32 base) {
  u64 m = tower.subfield_units(level);
  u64 k = exponent % m;
  u64 step = powmod_u64(tower.q() % m, base, m);
  std::vector<u64> orbit;
  u64 cur = k;
  do {
    orbit.push_back(cur);
    cur = (cur * step) % m;
  } while (cur != k);
  std::sort(orbit.begin(), orbit.end());
  return orbit;
}

RegularOrbit regular_orbit(TowerPtr tower, u32 level, u64 exponent, u32 base) {
  if (!exponent_is_regular(*tower, level, exponent, base))
    fail(Errc::NotAdmissible, "exponent " + std::to_string(exponent) + " not regular at level " +
                                  std::to_string(level) + " over base " + std::to_string(base));
  RegularOrbit orbit;
  orbit.level = level;
  orbit.base = base;
  orbit.exponents = frobenius_orbit_exponents(*tower, level, exponent, base);
  return orbit;
}

bool orbits_equal(const RegularOrbit& a, const RegularOrbit& b) {
  return a.level == b.level && a.base == b.base && a.exponents == b.exponents;
}

std::vector<RegularOrbit> enumerate_regular_orbits(TowerPtr tower, u32 d) {
  u64 m = tower->subfield_units(d);
  std::vector<RegularOrbit> out;
  std::vector<bool> seen(m, false);
  for (u64 k = 0; k < m; ++k) {
    if (seen[k]) continue;
    auto orbit = frobenius_orbit_exponents(*tower, d, k, 1);
    for (u64 e : orbit) seen[e] = true;
    if (orbit.size() == d) {
      RegularOrbit ro;
      ro.level = d;
      ro.base = 1;
      ro.exponents = std::move(orbit);
      out.push_back(std::move(ro));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const RegularOrbit& a, const RegularOrbit& b) { return a.canonical() < b.canonical(); });
  return out;
}

namespace {

void check_gauss_args(const MultChar& beta, const AddChar& phi) {
  if (beta.tower.get() != phi.tower.get()) fail(Errc::BadInput, "gauss sum needs one shared tower");
  if (beta.level % phi.level != 0) fail(Errc::BadDivisor, "additive character level must divide beta level");
}

}  // namespace

cx gauss_sum(const MultChar& beta, const AddChar& phi) {
  check_gauss_args(beta, phi);
  const FieldTower& tw = *beta.tower;
  const u64 m = tw.subfield_units(beta.level);
  const u64 units = tw.unit_order();
  const u64 step = tw.subfield_step(beta.level);
  const auto& zm = unity_roots(m);
  const auto& zp = unity_roots(tw.p());
  const auto& tr = tw.trace_table(beta.level);
  const u64 bidx = phi.shift.index();
  cx acc{0.0, 0.0};
  u64 aidx = 0;
  for (u64 j = 0; j < m; ++j) {
    u64 e = (beta.exponent * j) % m;
    u64 tidx = bidx + aidx;
    if (tidx >= units) tidx -= units;
    acc += zm[(m - e) % m] * zp[tr[tidx / step]];
    aidx += step;
    if (aidx >= units) aidx -= units;
  }
  return acc;
}

cx gauss_sum_alt(const MultChar& beta, const AddChar& phi) {
  check_gauss_args(beta, phi);
  const FieldTower& tw = *beta.tower;
  const u64 m = tw.subfield_units(beta.level);
  const u64 units = tw.unit_order();
  const u64 step = tw.subfield_step(beta.level);
  const auto& zm = unity_roots(m);
  const auto& zp = unity_roots(tw.p());
  const auto& tr = tw.trace_table(beta.level);
  const u64 bidx = phi.shift.index();
  cx acc{0.0, 0.0};
  u64 aidx = 0;
  for (u64 j = 0; j < m; ++j) {
    u64 e = (beta.exponent * j) % m;
    u64 inv = (units - aidx) % units;
    u64 tidx = bidx + inv;
    if (tidx >= units) tidx -= units;
    acc += zm[e] * zp[tr[tidx / step]];
    aidx += step;
    if (aidx >= units) aidx -= units;
  }
  return acc;
}

}  // namespace cuspgamma
