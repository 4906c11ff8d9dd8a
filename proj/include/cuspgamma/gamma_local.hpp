// Local gamma factors of level-zero supercuspidal pairs: the Gauss-sum closed
// form, the finite-field bridge, abelian unramified gamma factors as rational
// functions, and the step-by-step chain verifier that recomputes the closed
// form through automorphic induction, base change and the bridge.
#pragma once

#include "cuspgamma/gamma_finite.hpp"
#include "cuspgamma/level_zero.hpp"
#include "cuspgamma/rational_fn.hpp"

namespace cuspgamma {

struct LocalGamma {
  cx value;  // constant in s for a level-one psi
  std::string method;
  u32 n = 0, m = 0;
  u64 q = 0;
  std::vector<u64> pi_orbit, tau_orbit;
  u32 psi_shift_packed = 1;
};

// (-1)^{nm-(n,m)} q^{-nm/2} prod_i G(eta_pi^{q^i} o N * eta_tau o N, psi~).
LocalGamma gamma_local_closed(const LevelZeroRep& pi, const LevelZeroRep& tau, const AddChar& phi);

// omega_tau(-1)^{n-1} q^{m(n-m-1)/2} gamma(pi~ x tau~, psi~), the finite gamma
// taken from the named method ("closed", "bessel" or "nien").
LocalGamma gamma_local_bridge(const LevelZeroRep& pi, const LevelZeroRep& tau, const AddChar& phi,
                              const std::string& finite_method = "closed", u64 enum_limit = 10'000'000);

// gamma(s, chi, psi) = -q0^{-s-1/2} (q0^s - c)/(q0^{s-1} - c) for an
// unramified chi with chi(varpi) = c, as a ratio of polynomials in
// T = q0^{-s}, q0 = q^{m_base}.
RationalFn gamma_unramified_char(cx c, u32 m_base, u64 q);

struct XiProductResult {
  RationalFn product;  // in T = q^{-s}
  bool pass = false;
  double max_rel_err = 0.0;
};

// prod over the m unramified characters with chi(varpi) an m-th root of unity
// of gamma(s, chi, psi), checked against (-1)^{m-1} gamma(s, 1_K, psi_K) at 5
// random sample points s in (0, 1).
XiProductResult xi_product(u32 m, u64 q, u64 seed = 0, double tol = 1e-9);

struct ChainPiece {
  std::vector<u64> orbit;  // level [n,m] exponents of varsigma_i
  cx scalar;
  cx bridge_prefactor;  // omega(-1)^{n'-1} q_K^{(n'-2)/2}
  cx nien_gauss;        // the Gauss sum in the n' x 1 step
  cx nien_value;        // the finite gamma over the residue field of K
  cx factor;            // bridge_prefactor * nien_value
};

struct ChainReport {
  u32 n = 0, m = 0;
  u64 q = 0;
  double step1_sign = 1.0;  // (-1)^{mn-n}
  cx ai_scalar;             // (Delta_K^{m-1} eta_tau)(varpi)
  std::vector<ChainPiece> pieces;
  cx step2_product;
  cx chain_value;
  cx closed_value;
  double rel_discrepancy = 0.0;
  bool pass = false;
};

// Recomputes gamma_local_closed through the three-step pipeline: automorphic
// induction of tau, base change of pi, and the bridge + n' x 1 formula over
// the extended base, reporting every intermediate.
ChainReport verify_chain(const TamePair& t_pi, const TamePair& t_tau, const AddChar& phi, double tol = 1e-6);

}  // namespace cuspgamma
