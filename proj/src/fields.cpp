#include "cuspgamma/fields.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

namespace cuspgamma {

namespace {

// Dense polynomials over F_p, ascending coefficients, used only during tower
// construction (modulus search and basis traces).
using PPoly = std::vector<u32>;

void ptrim(PPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PPoly pmod(PPoly a, const PPoly& m, u64 p) {
  ptrim(a);
  const std::size_t dm = m.size() - 1;  // m monic
  while (a.size() > dm) {
    u64 c = a.back();
    std::size_t shift = a.size() - 1 - dm;
    if (c != 0) {
      for (std::size_t i = 0; i < dm; ++i) {
        u64 sub = (c * m[i]) % p;
        a[shift + i] = static_cast<u32>((a[shift + i] + p - sub) % p);
      }
    }
    a.pop_back();
    ptrim(a);
  }
  return a;
}

PPoly pmulmod(const PPoly& a, const PPoly& b, const PPoly& m, u64 p) {
  if (a.empty() || b.empty()) return {};
  PPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      c[i + j] = static_cast<u32>((c[i + j] + u64(a[i]) * b[j]) % p);
    }
  }
  return pmod(std::move(c), m, p);
}

PPoly ppowmod(PPoly base, u64 e, const PPoly& m, u64 p) {
  PPoly r{1};
  while (e) {
    if (e & 1) r = pmulmod(r, base, m, p);
    base = pmulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

PPoly pgcd(PPoly a, PPoly b, u64 p) {
  ptrim(a);
  ptrim(b);
  while (!b.empty()) {
    // a mod b with b made monic on the fly
    u64 lead = b.back();
    u64 leadinv = powmod_u64(lead, p - 2, p);
    PPoly bm = b;
    for (auto& c : bm) c = static_cast<u32>((u64(c) * leadinv) % p);
    a = pmod(std::move(a), bm, p);
    std::swap(a, b);
  }
  return a;
}

bool is_irreducible(const PPoly& m, u64 p) {
  const u32 D = static_cast<u32>(m.size() - 1);
  if (D == 0) return false;
  PPoly x{0, 1};
  if (D == 1) return true;
  // h_k = x^{p^k} mod m; m irreducible iff h_D == x and gcd(h_{D/r} - x, m) = 1
  // for every prime r | D.
  std::vector<PPoly> h(D + 1);
  h[0] = x;
  for (u32 k = 1; k <= D; ++k) h[k] = ppowmod(h[k - 1], p, m, p);
  if (h[D] != x) return false;
  for (u64 r : distinct_prime_factors(D)) {
    PPoly diff = h[D / r];
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = static_cast<u32>((u64(diff[1]) + p - 1) % p);
    ptrim(diff);
    PPoly g = pgcd(m, diff, p);
    if (!(g.size() == 1)) return false;
  }
  return true;
}

bool x_is_primitive(const PPoly& m, u64 p, u64 units) {
  if (m[0] == 0) return false;  // x not a unit
  PPoly x{0, 1};
  for (u64 r : distinct_prime_factors(units)) {
    PPoly t = ppowmod(x, units / r, m, p);
    if (t == PPoly{1}) return false;
  }
  // order divides units and misses every maximal divisor
  return true;
}

u32 pack_coeffs(const PPoly& c, u64 p, u32 deg) {
  u64 v = 0;
  for (u32 i = deg; i-- > 0;) v = v * p + (i < c.size() ? c[i] : 0);
  return static_cast<u32>(v);
}

constexpr char kMagic[5] = {'G', 'T', 'W', 'R', '1'};

template <typename T>
void put_le(std::ostream& os, T v) {
  unsigned char buf[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T get_le(std::istream& is) {
  unsigned char buf[sizeof(T)];
  is.read(reinterpret_cast<char*>(buf), sizeof(T));
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(buf[i]) << (8 * i);
  return v;
}

}  // namespace

std::shared_ptr<const FieldTower> FieldTower::build(const Params& params, u64 limit) {
  if (!is_prime_u64(params.p)) fail(Errc::NotPrime, "p = " + std::to_string(params.p));
  if (params.f < 1 || params.L < 1) fail(Errc::BadInput, "f and L must be positive");
  const u32 deg = params.f * params.L;
  u64 order = 1;
  for (u32 i = 0; i < deg; ++i) {
    if (order > limit / params.p) fail(Errc::FieldTooLarge, "q^L exceeds limit " + std::to_string(limit));
    order *= params.p;
  }
  if (order > limit) fail(Errc::FieldTooLarge, "q^L exceeds limit " + std::to_string(limit));

  auto tower = std::shared_ptr<FieldTower>(new FieldTower());
  tower->p_ = params.p;
  tower->f_ = params.f;
  tower->L_ = params.L;
  tower->deg_ = deg;
  tower->variant_ = params.variant;
  tower->q_ = ipow_u64(params.p, params.f);
  tower->order_ = order;

  // Search moduli in ascending packed-coefficient order; keep the variant-th
  // hit. Primitive polynomials exist for every (p, deg), so the search
  // terminates; running off the end signals a search bug.
  const u64 units = order - 1;
  u32 hits = 0;
  bool found = false;
  for (u64 v = 1; v < order; ++v) {
    if (v % params.p == 0) continue;  // constant term 0: x is not a unit
    PPoly m(deg + 1, 0);
    u64 t = v;
    for (u32 i = 0; i < deg; ++i) {
      m[i] = static_cast<u32>(t % params.p);
      t /= params.p;
    }
    m[deg] = 1;
    if (!is_irreducible(m, params.p)) continue;
    if (units > 1 && !x_is_primitive(m, params.p, units)) continue;
    if (hits == params.variant) {
      tower->modulus_ = m;
      found = true;
      break;
    }
    ++hits;
  }
  if (!found) fail(Errc::NoPrimitivePolynomial, "no primitive modulus found (internal search bug)");

  tower->build_tables();
  return tower;
}

void FieldTower::build_tables() {
  const u64 units = order_ - 1;
  const u32 D = deg_;

  // Absolute traces of the basis 1, x, ..., x^{D-1}.
  std::vector<u32> basis_trace(D, 0);
  for (u32 i = 0; i < D; ++i) {
    PPoly acc;
    u64 pj = 1;  // p^j
    for (u32 j = 0; j < D; ++j) {
      PPoly t = ppowmod(PPoly{0, 1}, u64(i) * pj, modulus_, p_);
      if (acc.size() < t.size()) acc.resize(t.size(), 0);
      for (std::size_t k = 0; k < t.size(); ++k) acc[k] = static_cast<u32>((acc[k] + t[k]) % p_);
      pj *= p_;
    }
    ptrim(acc);
    if (acc.size() > 1) fail(Errc::NoPrimitivePolynomial, "basis trace not in F_p (internal)");
    basis_trace[i] = acc.empty() ? 0 : acc[0];
  }

  packed_of_pow_.assign(units, 0);
  std::vector<u32> ambient_trace(units, 0);
  dlog_of_packed_.assign(order_, ~u32{0});
  zech_.assign(units, FqElem::kZeroIdx);

  // Walk g^j = x^j mod modulus.
  std::vector<u32> cur(D, 0);
  cur[0] = 1;
  for (u64 j = 0; j < units; ++j) {
    u32 packed = pack_coeffs(cur, p_, D);
    if (dlog_of_packed_[packed] != ~u32{0})
      fail(Errc::NoPrimitivePolynomial, "generator order too small (internal)");
    packed_of_pow_[j] = packed;
    dlog_of_packed_[packed] = static_cast<u32>(j);
    u64 tr = 0;
    for (u32 i = 0; i < D; ++i) tr += u64(cur[i]) * basis_trace[i];
    ambient_trace[j] = static_cast<u32>(tr % p_);
    // cur *= x mod modulus
    u32 carry = cur[D - 1];
    for (u32 i = D; i-- > 1;) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (carry) {
      for (u32 i = 0; i < D; ++i) {
        u64 sub = (u64(carry) * modulus_[i]) % p_;
        cur[i] = static_cast<u32>((cur[i] + p_ - sub) % p_);
      }
    }
  }
  if (!(cur.size() >= 1 && cur[0] == 1 && pack_coeffs(cur, p_, D) == 1))
    fail(Errc::NoPrimitivePolynomial, "power walk did not close (internal)");

  for (u64 j = 0; j < units; ++j) {
    u32 v = packed_of_pow_[j];
    u32 c0 = static_cast<u32>(v % p_);
    u32 v2 = v - c0 + static_cast<u32>((c0 + 1) % p_);
    zech_[j] = (v2 == 0) ? FqElem::kZeroIdx : dlog_of_packed_[v2];
  }

  q_pow_mod_.assign(L_, 0);
  u64 m = units ? units : 1;
  u64 acc = 1 % m;
  for (u32 i = 0; i < L_; ++i) {
    q_pow_mod_[i] = acc;
    acc = (acc * (q_ % m)) % m;
  }

  // Per-level absolute traces: for d < L the ambient table cannot be reused
  // (the two traces differ by L/d mod p).
  divisors_ = divisors_of(L_);
  level_trace_.assign(divisors_.size(), {});
  const u64 pmod = p_ % m;
  for (std::size_t di = 0; di < divisors_.size(); ++di) {
    u32 d = divisors_[di];
    u64 units_d = ipow_u64(q_, d) - 1;
    std::vector<u32>& tab = level_trace_[di];
    if (d == L_) {
      tab = ambient_trace;
      continue;
    }
    tab.assign(units_d, 0);
    u64 step = units / units_d;
    const u32 fd = f_ * d;
    for (u64 j = 0; j < units_d; ++j) {
      FqElem acc_e = zero();
      u64 y = (j * step) % m;
      for (u32 t = 0; t < fd; ++t) {
        acc_e = add(acc_e, FqElem(this, y));
        y = (y * pmod) % m;
      }
      u32 v = acc_e.is_zero() ? 0 : packed_of_pow_[acc_e.index()];
      if (v >= p_) fail(Errc::NoPrimitivePolynomial, "subfield trace not in F_p (internal)");
      tab[j] = v;
    }
  }
}

const std::vector<u32>& FieldTower::trace_table(u32 d) const {
  for (std::size_t di = 0; di < divisors_.size(); ++di)
    if (divisors_[di] == d) return level_trace_[di];
  fail(Errc::BadDivisor, "level " + std::to_string(d) + " does not divide L");
}

u32 FieldTower::abs_trace(FqElem x, u32 d) const {
  if (x.is_zero()) return 0;
  return trace_table(d)[dlog(x, d)];
}

u64 FieldTower::subfield_units(u32 d) const {
  if (!supports_level(d)) fail(Errc::BadDivisor, "level " + std::to_string(d) + " does not divide L");
  return ipow_u64(q_, d) - 1;
}

u64 FieldTower::subfield_step(u32 d) const { return unit_order() / subfield_units(d); }

FqElem FieldTower::gen(u32 d) const {
  u64 su = subfield_units(d);
  return su == 0 ? one() : from_index(subfield_step(d));
}

FqElem FieldTower::neg_one() const {
  if (p_ == 2) return one();
  return from_index(unit_order() / 2);
}

FqElem FieldTower::from_packed(u32 packed) const {
  if (packed == 0) return zero();
  if (packed >= order_) fail(Errc::BadInput, "packed value out of range");
  u32 j = dlog_of_packed_[packed];
  return {this, j};
}

u32 FieldTower::packed(FqElem x) const { return x.is_zero() ? 0 : packed_of_pow_[x.index()]; }

FqElem FieldTower::subfield_element(u32 d, u64 t) const {
  u64 qd = subfield_units(d) + 1;
  if (t >= qd) fail(Errc::BadInput, "subfield element index out of range");
  if (t == 0) return zero();
  return from_index((t - 1) * subfield_step(d));
}

FqElem FieldTower::add(FqElem a, FqElem b) const {
  if (a.is_zero()) return b.is_zero() ? zero() : FqElem{this, b.index()};
  if (b.is_zero()) return {this, a.index()};
  const u64 units = unit_order();
  u64 ai = a.index(), bi = b.index();
  u64 d = (bi + units - ai) % units;
  u64 z = zech_[d];
  if (z == FqElem::kZeroIdx) return zero();
  return from_index(ai + z);
}

FqElem FieldTower::mul(FqElem a, FqElem b) const {
  if (a.is_zero() || b.is_zero()) return zero();
  return from_index(a.index() + b.index());
}

FqElem FieldTower::inv(FqElem a) const {
  if (a.is_zero()) fail(Errc::EvalAtZero, "inverse of zero");
  return from_index(unit_order() - a.index() % unit_order());
}

FqElem FieldTower::pow(FqElem a, u64 e) const {
  if (a.is_zero()) return e == 0 ? one() : zero();
  u64 units = unit_order();
  if (units == 0) return one();
  return from_index((a.index() % units) * (e % units) % units);
}

FqElem FieldTower::frobenius(FqElem x, i64 i) const {
  if (x.is_zero()) return zero();
  u32 ii = static_cast<u32>(((i % L_) + L_) % L_);
  u64 units = unit_order();
  if (units == 0) return x;
  return from_index((x.index() * q_pow_mod_[ii]) % units);
}

bool FieldTower::in_subfield(FqElem x, u32 d) const {
  if (!supports_level(d)) return false;
  if (x.is_zero()) return true;
  return x.index() % subfield_step(d) == 0;
}

u32 FieldTower::subfield_level(FqElem x) const {
  for (u32 d : divisors_of(L_))
    if (in_subfield(x, d)) return d;
  return L_;
}

u64 FieldTower::dlog(FqElem x, u32 d) const {
  if (x.is_zero()) fail(Errc::EvalAtZero, "dlog of zero");
  u64 step = subfield_step(d);
  if (x.index() % step != 0)
    fail(Errc::NotInSubfield, "element g^" + std::to_string(x.index()) + " not in F_q^" + std::to_string(d));
  return x.index() / step;
}

void FieldTower::save(const std::filesystem::path& file) const {
  std::ofstream os(file, std::ios::binary | std::ios::trunc);
  if (!os) fail(Errc::CacheError, "cannot open " + file.string() + " for writing");
  os.write(kMagic, sizeof(kMagic));
  put_le<u64>(os, p_);
  put_le<u32>(os, f_);
  put_le<u32>(os, L_);
  put_le<u32>(os, deg_);
  for (u32 i = 0; i <= deg_; ++i) put_le<u32>(os, modulus_[i]);
  put_le<u64>(os, static_cast<u64>(zech_.size()));
  for (u64 z : zech_) put_le<u64>(os, z);
  if (!os) fail(Errc::CacheError, "short write to " + file.string());
}

std::shared_ptr<const FieldTower> FieldTower::load(const std::filesystem::path& file, const Params& expect,
                                                   u64 limit) {
  std::ifstream is(file, std::ios::binary);
  if (!is) fail(Errc::CacheError, "cannot open " + file.string());
  char magic[5];
  is.read(magic, 5);
  if (!is || std::memcmp(magic, kMagic, 5) != 0) fail(Errc::CacheError, "bad magic in " + file.string());
  u64 p = get_le<u64>(is);
  u32 f = get_le<u32>(is);
  u32 L = get_le<u32>(is);
  u32 deg = get_le<u32>(is);
  if (p != expect.p || f != expect.f || L != expect.L || deg != expect.f * expect.L)
    fail(Errc::CacheError, "tower parameters mismatch in " + file.string());

  auto tower = std::shared_ptr<FieldTower>(new FieldTower());
  tower->p_ = p;
  tower->f_ = f;
  tower->L_ = L;
  tower->deg_ = deg;
  tower->variant_ = 0;
  tower->q_ = ipow_u64(p, f);
  tower->order_ = ipow_u64(p, deg);
  if (tower->order_ > limit) fail(Errc::FieldTooLarge, "cached tower exceeds limit");
  tower->modulus_.resize(deg + 1);
  for (u32 i = 0; i <= deg; ++i) tower->modulus_[i] = get_le<u32>(is);
  u64 nz = get_le<u64>(is);
  if (!is || nz != tower->order_ - 1) fail(Errc::CacheError, "bad zech length in " + file.string());
  std::vector<u64> stored(nz);
  for (u64 i = 0; i < nz; ++i) stored[i] = get_le<u64>(is);
  if (!is) fail(Errc::CacheError, "short read from " + file.string());

  if (!is_irreducible(tower->modulus_, p)) fail(Errc::CacheError, "cached modulus not irreducible");
  tower->build_tables();
  if (tower->zech_ != stored) fail(Errc::CacheError, "cached zech table inconsistent");
  return tower;
}

std::shared_ptr<const FieldTower> build_tower(u64 p, u32 f, u32 L, u64 limit, u32 variant) {
  return FieldTower::build({p, f, L, variant}, limit);
}

std::shared_ptr<const FieldTower> get_tower(u64 p, u32 f, u32 L, u64 limit, u32 variant,
                                            const std::optional<std::filesystem::path>& cache_dir) {
  static std::mutex mu;
  static std::map<std::tuple<u64, u32, u32, u32>, std::shared_ptr<const FieldTower>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(p, f, L, variant);
  auto it = registry.find(key);
  if (it != registry.end()) {
    if (it->second->order() > limit) fail(Errc::FieldTooLarge, "q^L exceeds limit " + std::to_string(limit));
    return it->second;
  }
  std::shared_ptr<const FieldTower> tower;
  if (cache_dir && variant == 0) {
    auto file = *cache_dir / ("p" + std::to_string(p) + "_f" + std::to_string(f) + "_L" + std::to_string(L) +
                              ".tower");
    if (std::filesystem::exists(file)) {
      try {
        tower = FieldTower::load(file, {p, f, L, 0}, limit);
      } catch (const Error& e) {
        if (e.code() == Errc::FieldTooLarge) throw;
        tower = nullptr;  // corrupt cache: rebuild below
      }
    }
    if (!tower) {
      tower = FieldTower::build({p, f, L, 0}, limit);
      std::error_code ec;
      std::filesystem::create_directories(*cache_dir, ec);
      tower->save(file);
    }
  } else {
    tower = FieldTower::build({p, f, L, variant}, limit);
  }
  registry.emplace(key, tower);
  return tower;
}

std::shared_ptr<const FieldTower> get_tower_for_q(u64 q, u32 L, u64 limit, u32 variant,
                                                  const std::optional<std::filesystem::path>& cache_dir) {
  auto pf = prime_power(q);
  if (!pf) fail(Errc::BadInput, std::to_string(q) + " is not a prime power");
  return get_tower(pf->first, pf->second, L, limit, variant, cache_dir);
}

FqElem norm(FqElem x, u32 d_from, u32 d_to) {
  const FieldTower* tw = x.tower();
  if (!tw) fail(Errc::BadInput, "norm of detached zero element");
  if (!tw->supports_level(d_from) || d_from % d_to != 0)
    fail(Errc::BadDivisor, "norm levels " + std::to_string(d_from) + "->" + std::to_string(d_to));
  if (!tw->in_subfield(x, d_from)) fail(Errc::NotInSubfield, "norm argument outside F_q^" + std::to_string(d_from));
  if (x.is_zero()) return tw->zero();
  u64 e = tw->subfield_units(d_from) / tw->subfield_units(d_to);
  return tw->pow(x, e);
}

FqElem trace(FqElem x, u32 d_from, u32 d_to) {
  const FieldTower* tw = x.tower();
  if (!tw) fail(Errc::BadInput, "trace of detached zero element");
  if (!tw->supports_level(d_from) || d_from % d_to != 0)
    fail(Errc::BadDivisor, "trace levels " + std::to_string(d_from) + "->" + std::to_string(d_to));
  if (!tw->in_subfield(x, d_from)) fail(Errc::NotInSubfield, "trace argument outside F_q^" + std::to_string(d_from));
  FqElem acc = tw->zero();
  u32 r = d_from / d_to;
  for (u32 i = 0; i < r; ++i) acc = tw->add(acc, tw->frobenius(x, static_cast<i64>(d_to) * i));
  return acc;
}

FqElem frobenius(FqElem x, i64 i) {
  const FieldTower* tw = x.tower();
  if (!tw) return x;
  return tw->frobenius(x, i);
}

u64 tower_relabel_factor(const FieldTower& a, const FieldTower& b) {
  if (a.p() != b.p() || a.f() != b.f() || a.L() != b.L())
    fail(Errc::BadInput, "relabeling requires two models of the same field");
  const u64 units = a.unit_order();
  if (units <= 1) return 1 % std::max<u64>(units, 1);
  // Least-index root r of a's modulus in b; iota(g_a) = r pins the isomorphism.
  const auto& m = a.modulus();
  u64 s = 0;
  bool found = false;
  for (u64 j = 0; j < units; ++j) {
    FqElem x = b.from_index(j);
    FqElem acc = b.zero();
    for (std::size_t i = m.size(); i-- > 0;) {
      acc = b.mul(acc, x);
      if (m[i] != 0) {
        // lift the F_p coefficient
        FqElem c = b.from_packed(m[i] % static_cast<u32>(b.p()));
        acc = b.add(acc, c);
      }
    }
    if (acc.is_zero()) {
      s = j;
      found = true;
      break;
    }
  }
  if (!found) fail(Errc::BadInput, "modulus has no root in target tower (internal)");
  // Labels transform by the inverse of s mod the unit order; s is coprime to
  // it because iota(g_a) generates the unit group.
  i64 r0 = static_cast<i64>(units), r1 = static_cast<i64>(s);
  i64 t0 = 0, t1 = 1;
  while (r1 != 0) {
    i64 qq = r0 / r1;
    r0 -= qq * r1;
    std::swap(r0, r1);
    t0 -= qq * t1;
    std::swap(t0, t1);
  }
  if (r0 != 1) fail(Errc::BadInput, "generator image not primitive (internal)");
  i64 inv = t0 % static_cast<i64>(units);
  if (inv < 0) inv += static_cast<i64>(units);
  return static_cast<u64>(inv);
}

}  // namespace cuspgamma
