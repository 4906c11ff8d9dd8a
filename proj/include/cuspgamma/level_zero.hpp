// Data-level bookkeeping for admissible tame pairs and level-zero
// supercuspidal representations: the unramified-twist action, the
// automorphic-induction presentation, and unramified base change. Everything
// the gamma computations need factors through the residue shadow
// (uniformizer scalar, regular character orbit).
#pragma once

#include "cuspgamma/cuspidal.hpp"

namespace cuspgamma {

// Admissible tame pair over a base p-adic field with residue field F_{q^base}:
// an unramified extension of the given degree together with a character,
// recorded as (theta(varpi), Frobenius orbit of the reduction). Admissibility
// is regularity of the orbit over the base.
struct TamePair {
  u32 base = 1;
  u32 degree = 0;
  cx scalar{1.0, 0.0};   // theta(varpi), nonzero
  RegularOrbit orbit;    // level base*degree, Galois step q^base
  TowerPtr tower;

  u32 level() const { return base * degree; }
};

TamePair make_tame_pair(TowerPtr tower, u32 degree, cx scalar, u64 orbit_exponent, u32 base = 1);

// Level-zero supercuspidal of GL_n as (omega(varpi), cuspidal of GL_n(F_q)).
struct LevelZeroRep {
  u32 n = 0;
  cx scalar{1.0, 0.0};
  CuspidalSpec cusp;
};

// The bijection between degree-n tame pairs over F and level-zero
// supercuspidals of GL_n(F); Green's parameterization acts as the identity on
// orbit labels here, and the scalar passes through verbatim.
LevelZeroRep pair_to_rep(const TamePair& t);
TamePair rep_to_pair(const LevelZeroRep& rep);

// Twist by the k-th power of the unique unramified order-2 character:
// scalar -> (-1)^k scalar, orbit unchanged.
TamePair llc_twist(const TamePair& t, i64 k);

// Unramified base change to the degree-m extension of the base: (n, m) pairs
// of degree n/(n,m) over the new base, orbits the Frobenius twists
// theta^{q^i} o N at level [n,m], scalars
// (-1)^{n/(n,m)-1} * ((-1)^{n-1} theta(varpi))^{m/(n,m)}.
std::vector<TamePair> base_change(const TamePair& t, u32 m);

// Presentation of the degree-m pair as an automorphic-induction datum:
// the inducing character of the degree-m extension is the (m-1)-fold twist.
struct AiDatum {
  TamePair inducing_character;
  u32 induced_degree = 0;  // degree over the base field, = pair degree
};

AiDatum ai_presentation(const TamePair& t);

}  // namespace cuspgamma
