#include "cuspgamma/gamma_local.hpp"

#include <cmath>
#include <numeric>

namespace cuspgamma {

namespace {

TauSide tau_side_of(const LevelZeroRep& rep) {
  if (rep.n == 1) return TauSide::character(rep.cusp.eta());
  return TauSide::cuspidal(rep.cusp);
}

LocalGamma local_shell(const LevelZeroRep& pi, const LevelZeroRep& tau, const AddChar& phi, const char* method) {
  LocalGamma r;
  r.method = method;
  r.n = pi.n;
  r.m = tau.n;
  r.q = pi.cusp.tower->q();
  r.pi_orbit = pi.cusp.orbit.exponents;
  r.tau_orbit = tau.cusp.orbit.exponents;
  r.psi_shift_packed = pi.cusp.tower->packed(phi.shift);
  return r;
}

void check_local_pair(const LevelZeroRep& pi, const LevelZeroRep& tau) {
  if (pi.cusp.tower.get() != tau.cusp.tower.get()) fail(Errc::BadInput, "pi and tau must live on one tower");
  if (pi.n <= tau.n) fail(Errc::SizeOrder, "local gamma needs n > m");
}

}  // namespace

LocalGamma gamma_local_closed(const LevelZeroRep& pi, const LevelZeroRep& tau, const AddChar& phi) {
  check_local_pair(pi, tau);
  LocalGamma r = local_shell(pi, tau, phi, "closed_form");
  const u32 n = pi.n, m = tau.n;
  const u32 g = std::gcd(n, m);
  double sign = ((static_cast<u64>(n) * m - g) % 2 == 0) ? 1.0 : -1.0;
  double qpow = std::pow(static_cast<double>(r.q), -static_cast<double>(n) * m / 2.0);
  r.value = sign * qpow * gauss_twist_product(pi.cusp, tau_side_of(tau), phi);
  return r;
}

LocalGamma gamma_local_bridge(const LevelZeroRep& pi, const LevelZeroRep& tau, const AddChar& phi,
                              const std::string& finite_method, u64 enum_limit) {
  check_local_pair(pi, tau);
  LocalGamma r = local_shell(pi, tau, phi, ("bridge_" + finite_method).c_str());
  const u32 n = pi.n, m = tau.n;
  cx omega = cx_ipow(eval_mult(tau.cusp.eta(), tau.cusp.tower->neg_one()), n - 1);
  double qpow = std::pow(static_cast<double>(r.q),
                         static_cast<double>(m) * (static_cast<double>(n) - m - 1.0) / 2.0);
  TauSide side = tau_side_of(tau);
  cx finite;
  if (finite_method == "closed") {
    finite = gamma_closed(pi.cusp, side, phi).value;
  } else if (finite_method == "bessel") {
    finite = gamma_bessel(pi.cusp, side, phi, enum_limit).value;
  } else if (finite_method == "nien") {
    if (m != 1) fail(Errc::BadInput, "nien bridge needs m = 1");
    finite = gamma_n_by_1(pi.cusp, tau.cusp.eta(), phi).value;
  } else {
    fail(Errc::BadInput, "unknown finite method " + finite_method);
  }
  r.value = omega * qpow * finite;
  return r;
}

RationalFn gamma_unramified_char(cx c, u32 m_base, u64 q) {
  if (std::abs(c) == 0.0) fail(Errc::ZeroScalar, "chi(varpi) must be nonzero");
  double q0 = std::pow(static_cast<double>(q), static_cast<double>(m_base));
  double sq = std::sqrt(q0);
  // -q0^{-s-1/2} (q0^s - c)/(q0^{s-1} - c) = -sqrt(q0) T (1 - cT)/(1 - c q0 T)
  RationalFn f;
  f.num.c = {cx{0.0, 0.0}, cx{-sq, 0.0}, sq * c};
  f.den.c = {cx{1.0, 0.0}, -c * q0};
  f.normalize();
  return f;
}

XiProductResult xi_product(u32 m, u64 q, u64 seed, double tol) {
  if (m < 1) fail(Errc::BadInput, "xi_product needs m >= 1");
  XiProductResult out;
  const auto& roots = unity_roots(m);
  out.product = gamma_unramified_char(roots[0], 1, q);
  for (u32 j = 1; j < m; ++j) out.product = rational_mul(out.product, gamma_unramified_char(roots[j], 1, q));

  RationalFn rhs = gamma_unramified_char(cx{1.0, 0.0}, m, q);
  double rhs_sign = (m - 1) % 2 == 0 ? 1.0 : -1.0;
  SplitMix64 sampler(seed + 0x51ed270bull);
  out.pass = true;
  for (int i = 0; i < 5; ++i) {
    double s = 0.05 + 0.9 * sampler.unit();
    cx t1 = std::pow(static_cast<double>(q), -s);
    cx tm = std::pow(std::pow(static_cast<double>(q), static_cast<double>(m)), -s);
    cx lhs = out.product.eval(t1);
    cx want = rhs_sign * rhs.eval(tm);
    double err = rel_err(lhs, want);
    out.max_rel_err = std::max(out.max_rel_err, err);
    if (err > tol) out.pass = false;
  }
  return out;
}

ChainReport verify_chain(const TamePair& t_pi, const TamePair& t_tau, const AddChar& phi, double tol) {
  if (t_pi.base != 1 || t_tau.base != 1) fail(Errc::BadInput, "chain verification starts over the base field");
  if (t_pi.tower.get() != t_tau.tower.get()) fail(Errc::BadInput, "pairs must live on one tower");
  const u32 n = t_pi.degree, m = t_tau.degree;
  if (n <= m) fail(Errc::SizeOrder, "chain needs n > m");
  const FieldTower& tw = *t_pi.tower;
  const u64 q = tw.q();
  const u32 g = std::gcd(n, m);
  const u32 deg_out = n / g;
  const u32 lnm = n / g * m;
  if (!tw.supports_level(lnm)) fail(Errc::FieldTooLarge, "tower does not support level " + std::to_string(lnm));

  ChainReport rep;
  rep.n = n;
  rep.m = m;
  rep.q = q;
  rep.closed_value = gamma_local_closed(pair_to_rep(t_pi), pair_to_rep(t_tau), phi).value;

  // Step 1: tau is automorphically induced from Delta_K^{m-1} eta_tau; the
  // character-group product contributes (-1)^{mn-n}.
  rep.step1_sign = ((static_cast<u64>(m) * n - n) % 2 == 0) ? 1.0 : -1.0;
  AiDatum ai = ai_presentation(t_tau);
  rep.ai_scalar = ai.inducing_character.scalar;
  MultChar eta_tau = make_mult_char(t_tau.tower, m, t_tau.orbit.canonical());
  cx omega_minus_one = eval_mult(eta_tau, tw.neg_one());  // unramified twists vanish at units

  // Step 2: base change of pi splits into (n,m) pieces.
  auto pieces = base_change(t_pi, m);

  // Step 3: each piece pairs with the GL_1(K) character through the bridge at
  // (n', 1) over the residue field of K, then the n' x 1 formula.
  const double q_K = std::pow(static_cast<double>(q), static_cast<double>(m));
  MultChar tau_norm = compose_norm(eta_tau, lnm);
  rep.step2_product = cx{1.0, 0.0};
  for (const auto& piece : pieces) {
    ChainPiece cp;
    cp.orbit = piece.orbit.exponents;
    cp.scalar = piece.scalar;
    cp.bridge_prefactor =
        cx_ipow(omega_minus_one, deg_out - 1) * std::pow(q_K, (static_cast<double>(deg_out) - 2.0) / 2.0);
    MultChar eta_piece = make_mult_char(t_pi.tower, lnm, piece.orbit.canonical());
    cp.nien_gauss = gauss_sum(mult_product(eta_piece, tau_norm), phi);
    cp.nien_value = cx_ipow(omega_minus_one * (-1.0 / q_K), deg_out - 1) * cp.nien_gauss;
    cp.factor = cp.bridge_prefactor * cp.nien_value;
    rep.step2_product *= cp.factor;
    rep.pieces.push_back(std::move(cp));
  }
  rep.chain_value = rep.step1_sign * rep.step2_product;
  rep.rel_discrepancy = rel_err(rep.chain_value, rep.closed_value);
  rep.pass = rep.rel_discrepancy < tol;
  return rep;
}

}  // namespace cuspgamma
