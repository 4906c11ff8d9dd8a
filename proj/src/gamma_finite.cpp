#include "cuspgamma/gamma_finite.hpp"

#include <cmath>
#include <numeric>

namespace cuspgamma {

TauSide TauSide::cuspidal(CuspidalSpec spec) {
  if (spec.n < 2) fail(Errc::BadInput, "cuspidal tau needs m >= 2; use TauSide::character for m = 1");
  return TauSide{std::variant<CuspidalSpec, MultChar>{std::move(spec)}};
}

TauSide TauSide::character(MultChar chi) {
  if (chi.level != 1) fail(Errc::BadInput, "character tau must have level 1");
  return TauSide{std::variant<CuspidalSpec, MultChar>{std::move(chi)}};
}

u32 TauSide::m() const { return cusp() ? cusp()->n : 1; }

const TowerPtr& TauSide::tower() const { return cusp() ? cusp()->tower : chr()->tower; }

u64 TauSide::eta_exponent() const { return cusp() ? cusp()->orbit.canonical() : chr()->exponent; }

MultChar TauSide::eta() const { return make_mult_char(tower(), m(), eta_exponent()); }

std::vector<u64> TauSide::orbit_exponents() const {
  if (cusp()) return cusp()->orbit.exponents;
  return {chr()->exponent};
}

cx TauSide::eta_at_minus_one() const { return eval_mult(eta(), tower()->neg_one()); }

cx TauSide::whittaker(const MatFq& g, const AddChar& phi, u64 enum_limit) const {
  if (const MultChar* chi = chr()) {
    FqElem a = g.at(0, 0);
    if (a.is_zero()) fail(Errc::SingularMatrix, "Whittaker value at singular matrix");
    return eval_mult(*chi, a);
  }
  auto table = bessel_table(*cusp(), add_inverse(phi), enum_limit);
  return table->value(g);
}

double GammaResult::expected_modulus() const {
  double e = static_cast<double>(m) * (static_cast<double>(m) + 1.0 - static_cast<double>(n)) / 2.0;
  return std::pow(static_cast<double>(q), e);
}

namespace {

void check_pair(const CuspidalSpec& pi, const TauSide& tau) {
  if (pi.tower.get() != tau.tower().get()) fail(Errc::BadInput, "pi and tau must live on one tower");
  if (pi.n <= tau.m()) fail(Errc::SizeOrder, "gamma factors need n > m");
}

GammaResult result_shell(const CuspidalSpec& pi, const TauSide& tau, const AddChar& phi, const char* method) {
  GammaResult r;
  r.method = method;
  r.n = pi.n;
  r.m = tau.m();
  r.q = pi.tower->q();
  r.pi_orbit = pi.orbit.exponents;
  r.tau_orbit = tau.orbit_exponents();
  r.psi_shift_packed = pi.tower->packed(phi.shift);
  return r;
}

// [[0, I_{n-m}], [g, 0]]
MatFq gamma_block(const CuspidalSpec& pi, const MatFq& g) {
  const u32 n = pi.n, m = g.size();
  MatFq w(pi.tower.get(), n);
  for (u32 i = 0; i < n - m; ++i) w.set(i, m + i, pi.tower->one());
  for (u32 r = 0; r < m; ++r)
    for (u32 c = 0; c < m; ++c) w.set(n - m + r, c, g.at(r, c));
  return w;
}

}  // namespace

cx gauss_twist_product(const CuspidalSpec& pi, const TauSide& tau, const AddChar& phi, u32 shift) {
  const u32 n = pi.n, m = tau.m();
  const u32 g = std::gcd(n, m);
  const u32 lnm = n / g * m;
  if (!pi.tower->supports_level(lnm))
    fail(Errc::FieldTooLarge, "tower does not support level " + std::to_string(lnm));
  MultChar eta_pi = pi.eta();
  MultChar tau_norm = compose_norm(tau.eta(), lnm);
  cx prod{1.0, 0.0};
  for (u32 i = 0; i < g; ++i) {
    MultChar twisted = compose_norm(frob_twist(eta_pi, static_cast<i64>(i) + shift), lnm);
    prod *= gauss_sum(mult_product(twisted, tau_norm), phi);
  }
  return prod;
}

GammaResult gamma_bessel(const CuspidalSpec& pi, const TauSide& tau, const AddChar& phi, u64 enum_limit) {
  check_pair(pi, tau);
  GammaResult r = result_shell(pi, tau, phi, "bessel_sum");
  auto pi_table = bessel_table(pi, phi, enum_limit);
  cx acc{0.0, 0.0};
  for (const auto& g : coset_reps(pi.tower.get(), tau.m(), enum_limit)) {
    acc += pi_table->value(gamma_block(pi, g)) * tau.whittaker(g, phi, enum_limit);
  }
  r.value = acc;
  return r;
}

GammaResult gamma_closed(const CuspidalSpec& pi, const TauSide& tau, const AddChar& phi) {
  check_pair(pi, tau);
  GammaResult r = result_shell(pi, tau, phi, "closed_form");
  const u32 n = pi.n, m = tau.m();
  const u32 g = std::gcd(n, m);
  double sign = ((static_cast<u64>(n) * m - g) % 2 == 0) ? 1.0 : -1.0;
  cx central = cx_ipow(tau.eta_at_minus_one(), n - 1);
  double qpow = std::pow(static_cast<double>(r.q),
                         -static_cast<double>(m) * n + (static_cast<double>(m) * m + m) / 2.0);
  r.value = sign * central * qpow * gauss_twist_product(pi, tau, phi);
  return r;
}

GammaResult gamma_n_by_1(const CuspidalSpec& pi, const MultChar& tau, const AddChar& phi) {
  TauSide side = TauSide::character(tau);
  check_pair(pi, side);
  if (pi.n < 2) fail(Errc::SizeOrder, "n x 1 formula needs n >= 2");
  GammaResult r = result_shell(pi, side, phi, "nien_n_by_1");
  const u32 n = pi.n;
  cx base = eval_mult(tau, pi.tower->neg_one()) * (-1.0 / static_cast<double>(r.q));
  MultChar combined = mult_product(pi.eta(), compose_norm(tau, n));
  r.value = cx_ipow(base, n - 1) * gauss_sum(combined, phi);
  return r;
}

FunctionalEqReport check_functional_equation(const CuspidalSpec& pi, const TauSide& tau, const AddChar& phi,
                                             u32 k, u32 trials, u64 seed, u64 enum_limit) {
  check_pair(pi, tau);
  const u32 n = pi.n, m = tau.m();
  if (k + m + 1 > n) fail(Errc::BadK, "k must satisfy 0 <= k <= n - m - 1");
  FunctionalEqReport rep;
  rep.n = n;
  rep.m = m;
  rep.k = k;
  rep.trials = trials;
  rep.q = pi.tower->q();
  rep.seed = seed;
  rep.gamma = gamma_bessel(pi, tau, phi, enum_limit).value;

  const FieldTower* tw = pi.tower.get();
  const u64 q = tw->q();
  auto pi_table = bessel_table(pi, phi, enum_limit);
  auto reps = coset_reps(tw, m, enum_limit);
  const u32 rows_x = n - m - 1 - k;  // x in M_{rows_x, m}
  const u64 count_x = ipow_u64(q, rows_x * m);
  const u64 count_y = ipow_u64(q, m * k);
  double qkm = std::pow(static_cast<double>(q), static_cast<double>(k) * m);

  SplitMix64 rng(seed);
  for (u32 t = 0; t < trials; ++t) {
    MatFq r_pi = random_gl(tw, n, rng);
    MatFq r_tau = random_gl(tw, m, rng);
    cx lhs{0.0, 0.0}, rhs{0.0, 0.0};
    for (const auto& g : reps) {
      cx wtau = tau.whittaker(g * r_tau, phi, enum_limit);
      // left side: [[g,0,0],[x,I_{n-m-1-k},0],[0,0,I_{k+1}]]
      cx accx{0.0, 0.0};
      for (u64 v = 0; v < count_x; ++v) {
        MatFq b(tw, n);
        for (u32 r = 0; r < m; ++r)
          for (u32 c = 0; c < m; ++c) b.set(r, c, g.at(r, c));
        u64 tt = v;
        for (u32 r = 0; r < rows_x; ++r)
          for (u32 c = 0; c < m; ++c) {
            b.set(m + r, c, tw->subfield_element(1, tt % q));
            tt /= q;
          }
        for (u32 i = 0; i < rows_x; ++i) b.set(m + i, m + i, tw->one());
        for (u32 i = 0; i < k + 1; ++i) b.set(m + rows_x + i, m + rows_x + i, tw->one());
        accx += pi_table->value(b * r_pi);
      }
      lhs += accx * wtau;
      // right side: [[0,I_{n-m-k},0],[0,0,I_k],[g,0,y]]
      cx accy{0.0, 0.0};
      for (u64 v = 0; v < count_y; ++v) {
        MatFq b(tw, n);
        for (u32 i = 0; i < n - m - k; ++i) b.set(i, m + i, tw->one());
        for (u32 i = 0; i < k; ++i) b.set(n - m - k + i, m + (n - m - k) + i, tw->one());
        for (u32 r = 0; r < m; ++r)
          for (u32 c = 0; c < m; ++c) b.set(n - m + r, c, g.at(r, c));
        u64 tt = v;
        for (u32 r = 0; r < m; ++r)
          for (u32 c = 0; c < k; ++c) {
            b.set(n - m + r, m + (n - m - k) + c, tw->subfield_element(1, tt % q));
            tt /= q;
          }
        accy += pi_table->value(b * r_pi);
      }
      rhs += accy * wtau;
    }
    double disc = std::abs(rep.gamma * qkm * lhs - rhs);
    rep.max_abs_discrepancy = std::max(rep.max_abs_discrepancy, disc);
  }
  return rep;
}

}  // namespace cuspgamma
