// Rankin-Selberg gamma factors over F_q for a cuspidal pi of GL_n against a
// cuspidal tau of GL_m (or a character of F_q^x when m = 1), computed three
// ways: the Bessel-sum definition, the Gauss-sum closed form, and the n x 1
// formula. Plus a checker for the defining functional equation.
#pragma once

#include <string>
#include <variant>

#include "cuspgamma/cuspidal.hpp"

namespace cuspgamma {

// The tau side: a cuspidal of GL_m (m >= 2) or a character of F_q^x (m = 1).
// GL_1 cuspidals are characters, so the union is explicit.
class TauSide {
 public:
  static TauSide cuspidal(CuspidalSpec spec);
  static TauSide character(MultChar chi);  // level 1

  u32 m() const;
  const TowerPtr& tower() const;
  u64 eta_exponent() const;  // canonical orbit exponent at level m
  MultChar eta() const;
  std::vector<u64> orbit_exponents() const;
  cx eta_at_minus_one() const;
  const CuspidalSpec* cusp() const { return std::get_if<CuspidalSpec>(&v_); }
  const MultChar* chr() const { return std::get_if<MultChar>(&v_); }

  // Whittaker value: the psi^{-1}-Bessel function for cuspidal tau, tau itself
  // for m = 1. phi is the level-one character the pair (pi, tau) is taken
  // against; the inverse is applied here.
  cx whittaker(const MatFq& g, const AddChar& phi, u64 enum_limit) const;

 private:
  explicit TauSide(std::variant<CuspidalSpec, MultChar> v) : v_(std::move(v)) {}
  std::variant<CuspidalSpec, MultChar> v_;
};

struct GammaResult {
  cx value;
  std::string method;  // bessel_sum | closed_form | nien_n_by_1
  u32 n = 0, m = 0;
  u64 q = 0;
  std::vector<u64> pi_orbit, tau_orbit;
  u32 psi_shift_packed = 1;

  // q^{m(m+1-n)/2}, forced by |G(beta, phi)| = q^{N/2}.
  double expected_modulus() const;
};

// prod_{i=0}^{(n,m)-1} G(eta_pi^{q^i} o N_{[n,m]:n} * eta_tau o N_{[n,m]:m}, phi),
// the Gauss-sum product shared by the closed forms. `shift` starts the twist
// index at i = shift (the product is invariant under shifts; see tests).
cx gauss_twist_product(const CuspidalSpec& pi, const TauSide& tau, const AddChar& phi, u32 shift = 0);

GammaResult gamma_bessel(const CuspidalSpec& pi, const TauSide& tau, const AddChar& phi, u64 enum_limit);
GammaResult gamma_closed(const CuspidalSpec& pi, const TauSide& tau, const AddChar& phi);
GammaResult gamma_n_by_1(const CuspidalSpec& pi, const MultChar& tau, const AddChar& phi);

struct FunctionalEqReport {
  u32 n = 0, m = 0, k = 0, trials = 0;
  u64 q = 0, seed = 0;
  cx gamma;
  double max_abs_discrepancy = 0.0;
};

// Both sides of the defining functional equation on random right translates
// of the Bessel functions, with gamma taken from gamma_bessel.
FunctionalEqReport check_functional_equation(const CuspidalSpec& pi, const TauSide& tau, const AddChar& phi,
                                             u32 k, u32 trials, u64 seed, u64 enum_limit);

}  // namespace cuspgamma
