// Python bindings for the main operations: orbit enumeration, Gauss sums,
// character/Bessel values, gamma factors by every method, base change and the
// chain verifier.
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <numeric>

#include "cuspgamma/gamma_local.hpp"
#include "cuspgamma/verify.hpp"

namespace py = pybind11;
using namespace cuspgamma;

namespace {

constexpr u64 kLimit = FieldTower::kDefaultLimit;
constexpr u64 kEnumLimit = 10'000'000;

TowerPtr tower_of(u64 q, u32 L) { return get_tower_for_q(q, L, kLimit); }

AddChar psi_of(const TowerPtr& tower, u64 shift) {
  return make_add_char(tower, 1, tower->from_packed(static_cast<u32>(shift)));
}

TauSide tau_of(const TowerPtr& tower, u32 m, u64 exponent) {
  if (m == 1) return TauSide::character(make_mult_char(tower, 1, exponent));
  return TauSide::cuspidal(make_cuspidal(tower, m, exponent));
}

py::dict tame_pair_dict(const TamePair& t) {
  py::dict d;
  d["base"] = t.base;
  d["degree"] = t.degree;
  d["scalar"] = t.scalar;
  d["orbit"] = t.orbit.exponents;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Gamma factors of cuspidal representations over finite and p-adic fields";

  mod.def(
      "regular_orbits",
      [](u64 q, u32 n) {
        auto tower = tower_of(q, n);
        std::vector<std::vector<u64>> out;
        for (const auto& o : enumerate_regular_orbits(tower, n)) out.push_back(o.exponents);
        return out;
      },
      py::arg("q"), py::arg("n"), "Frobenius orbits of F_q-regular characters of F_{q^n}^x");

  mod.def(
      "is_regular",
      [](u64 q, u32 n, u64 exponent) {
        auto tower = tower_of(q, n);
        return exponent_is_regular(*tower, n, exponent, 1);
      },
      py::arg("q"), py::arg("n"), py::arg("exponent"));

  mod.def(
      "gauss_sum",
      [](u64 q, u32 N, u64 exponent, u64 psi_shift) {
        auto tower = tower_of(q, N);
        return gauss_sum(make_mult_char(tower, N, exponent), psi_of(tower, psi_shift));
      },
      py::arg("q"), py::arg("N"), py::arg("exponent"), py::arg("psi_shift") = 1,
      "G(beta, psi) = sum over F_{q^N}^x of beta^{-1}(a) psi(Tr a)");

  mod.def(
      "char_value",
      [](u64 q, u32 n, u64 orbit, const std::vector<u32>& entries) {
        auto tower = tower_of(q, n);
        CuspidalSpec rho = make_cuspidal(tower, n, orbit);
        return char_value(rho, MatFq::from_packed(tower.get(), n, entries));
      },
      py::arg("q"), py::arg("n"), py::arg("orbit"), py::arg("matrix"),
      "Trace character of the cuspidal with the given orbit at a packed row-major matrix");

  mod.def(
      "bessel_value",
      [](u64 q, u32 n, u64 orbit, const std::vector<u32>& entries, u64 psi_shift) {
        auto tower = tower_of(q, n);
        CuspidalSpec rho = make_cuspidal(tower, n, orbit);
        return bessel_value(rho, MatFq::from_packed(tower.get(), n, entries), psi_of(tower, psi_shift),
                            kEnumLimit);
      },
      py::arg("q"), py::arg("n"), py::arg("orbit"), py::arg("matrix"), py::arg("psi_shift") = 1);

  mod.def(
      "gamma_finite",
      [](u64 q, u32 n, u32 m, u64 pi_orbit, u64 tau, const std::string& method, u64 psi_shift) {
        auto tower = tower_of(q, std::lcm(n, m));
        AddChar phi = psi_of(tower, psi_shift);
        CuspidalSpec pi = make_cuspidal(tower, n, pi_orbit);
        TauSide side = tau_of(tower, m, tau);
        if (method == "bessel") return gamma_bessel(pi, side, phi, kEnumLimit).value;
        if (method == "closed") return gamma_closed(pi, side, phi).value;
        if (method == "nien") return gamma_n_by_1(pi, *side.chr(), phi).value;
        fail(Errc::BadInput, "method must be bessel, closed or nien");
      },
      py::arg("q"), py::arg("n"), py::arg("m"), py::arg("pi_orbit"), py::arg("tau"),
      py::arg("method") = "closed", py::arg("psi_shift") = 1,
      "Finite-field gamma factor; tau is a level-1 exponent when m == 1, else a level-m orbit exponent");

  mod.def(
      "gamma_local",
      [](u64 q, u32 n, u32 m, u64 pi_orbit, u64 tau_orbit, const std::string& method, u64 psi_shift) {
        auto tower = tower_of(q, std::lcm(n, m));
        AddChar phi = psi_of(tower, psi_shift);
        LevelZeroRep pi{n, cx{1.0, 0.0}, make_cuspidal(tower, n, pi_orbit)};
        LevelZeroRep tau{m, cx{1.0, 0.0}, make_cuspidal(tower, m, tau_orbit)};
        if (method == "closed") return gamma_local_closed(pi, tau, phi).value;
        return gamma_local_bridge(pi, tau, phi, method == "bridge" ? "closed" : method, kEnumLimit).value;
      },
      py::arg("q"), py::arg("n"), py::arg("m"), py::arg("pi_orbit"), py::arg("tau_orbit"),
      py::arg("method") = "closed", py::arg("psi_shift") = 1);

  mod.def(
      "base_change",
      [](u64 q, u32 n, u32 m, u64 orbit, cx scalar) {
        auto tower = tower_of(q, static_cast<u32>(std::lcm(n, m)));
        TamePair t = make_tame_pair(tower, n, scalar, orbit, 1);
        py::list out;
        for (const auto& s : base_change(t, m)) out.append(tame_pair_dict(s));
        return out;
      },
      py::arg("q"), py::arg("n"), py::arg("m"), py::arg("orbit"), py::arg("scalar") = cx{1.0, 0.0});

  mod.def(
      "verify_chain",
      [](u64 q, u32 n, u32 m, u64 pi_orbit, u64 tau_orbit, u64 psi_shift) {
        auto tower = tower_of(q, static_cast<u32>(std::lcm(n, m)));
        AddChar phi = psi_of(tower, psi_shift);
        TamePair tpi = make_tame_pair(tower, n, cx{1.0, 0.0}, pi_orbit, 1);
        TamePair ttau = make_tame_pair(tower, m, cx{1.0, 0.0}, tau_orbit, 1);
        ChainReport rep = verify_chain(tpi, ttau, phi);
        py::dict d;
        d["step1_sign"] = rep.step1_sign;
        d["chain_value"] = rep.chain_value;
        d["closed_value"] = rep.closed_value;
        d["rel_discrepancy"] = rep.rel_discrepancy;
        d["pass"] = rep.pass;
        py::list pieces;
        for (const auto& p : rep.pieces) {
          py::dict pd;
          pd["orbit"] = p.orbit;
          pd["scalar"] = p.scalar;
          pd["factor"] = p.factor;
          pieces.append(pd);
        }
        d["pieces"] = pieces;
        return d;
      },
      py::arg("q"), py::arg("n"), py::arg("m"), py::arg("pi_orbit"), py::arg("tau_orbit"),
      py::arg("psi_shift") = 1);

  mod.def(
      "xi_product_check",
      [](u64 q, u32 m) {
        auto res = xi_product(m, q);
        return py::make_tuple(res.pass, res.max_rel_err);
      },
      py::arg("q"), py::arg("m"));

  mod.def(
      "run_suite",
      [](const std::string& suite, const std::string& size_class) {
        RunConfig cfg;
        SuiteReport rep = run_suite(suite, size_class, cfg);
        py::dict d;
        d["suite"] = rep.suite;
        d["pass"] = rep.pass;
        d["max_err"] = rep.max_err;
        d["cases"] = rep.cases.size();
        return d;
      },
      py::arg("suite"), py::arg("size_class") = "quick");
}
