#include "cuspgamma/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>

#include "cuspgamma/gamma_local.hpp"

namespace cuspgamma {

void SuiteReport::add(CaseResult r) {
  pass = pass && r.pass;
  max_err = std::max(max_err, r.err);
  cases.push_back(std::move(r));
}

namespace {

struct NQ {
  u32 n;
  u64 q;
};
struct NMQ {
  u32 n, m;
  u64 q;
};

std::vector<NQ> ortho_tuples(const std::string& sc) {
  if (sc == "quick") return {{2, 2}, {2, 3}, {3, 2}};
  return {{2, 2}, {2, 3}, {2, 4}, {2, 5}, {3, 2}, {3, 3}};
}

std::vector<NMQ> gamma_tuples(const std::string& sc) {
  if (sc == "quick") return {{2, 1, 3}, {3, 2, 2}};
  return {{2, 1, 2}, {2, 1, 3}, {2, 1, 5}, {3, 1, 2}, {3, 1, 3}, {3, 2, 2}, {3, 2, 3}, {4, 2, 2}, {4, 3, 2}};
}

std::vector<NQ> nien_tuples(const std::string& sc) {
  if (sc == "quick") return {{2, 3}, {3, 2}};
  return {{2, 3}, {2, 5}, {3, 2}, {3, 3}, {4, 2}};
}

TowerPtr tower_for(const RunConfig& cfg, u64 q, u32 L, u32 variant = 0) {
  return get_tower_for_q(q, L, cfg.max_field, variant, cfg.tower_cache_dir());
}

AddChar psi_for(const RunConfig& cfg, const TowerPtr& tower) {
  FqElem b = tower->from_packed(static_cast<u32>(cfg.psi_shift));
  return make_add_char(tower, 1, b);
}

cx unit_scalar(SplitMix64& rng) {
  double a = rng.unit() * 8.0 * std::atan(1.0);
  return {std::cos(a), std::sin(a)};
}

// All (pi cuspidal at n, tau side at m) combinations on one tower.
std::vector<std::pair<CuspidalSpec, TauSide>> orbit_pairs(const TowerPtr& tower, u32 n, u32 m) {
  std::vector<std::pair<CuspidalSpec, TauSide>> out;
  auto pis = enumerate_regular_orbits(tower, n);
  if (m == 1) {
    u64 qm1 = tower->subfield_units(1);
    for (const auto& po : pis) {
      CuspidalSpec pi = make_cuspidal(tower, n, po.canonical());
      for (u64 k = 0; k < std::max<u64>(qm1, 1); ++k)
        out.emplace_back(pi, TauSide::character(make_mult_char(tower, 1, k)));
    }
  } else {
    auto taus = enumerate_regular_orbits(tower, m);
    for (const auto& po : pis) {
      CuspidalSpec pi = make_cuspidal(tower, n, po.canonical());
      for (const auto& to : taus)
        out.emplace_back(pi, TauSide::cuspidal(make_cuspidal(tower, m, to.canonical())));
    }
  }
  return out;
}

std::string orbit_tag(const std::vector<u64>& exps) {
  std::string s;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(exps[i]);
  }
  return s;
}

void run_cases(SuiteReport& rep, unsigned jobs, std::size_t count,
               const std::function<std::vector<CaseResult>(std::size_t)>& fn) {
  std::vector<std::vector<CaseResult>> buckets(count);
  parallel_for(count, jobs, [&](std::size_t i) { buckets[i] = fn(i); });
  for (auto& b : buckets)
    for (auto& r : b) rep.add(std::move(r));
}

SuiteReport suite_orthogonality(const std::string& sc, const RunConfig& cfg) {
  SuiteReport rep{.suite = "orthogonality", .size_class = sc, .seed = cfg.seed};
  auto tuples = ortho_tuples(sc);
  run_cases(rep, cfg.jobs, tuples.size(), [&](std::size_t ti) {
    std::vector<CaseResult> out;
    auto [n, q] = tuples[ti];
    auto tower = tower_for(cfg, q, n);
    auto orbits = enumerate_regular_orbits(tower, n);
    std::vector<CuspidalSpec> specs;
    for (const auto& o : orbits) specs.push_back(make_cuspidal(tower, n, o.canonical()));
    auto gl = enumerate_gl(tower.get(), n, cfg.max_enum);
    const double order = static_cast<double>(gl.size());
    const std::size_t k = specs.size();
    std::vector<double> norms(k, 0.0);
    std::vector<cx> cross(k * k, cx{0.0, 0.0});
    for (const auto& A : gl) {
      ClassData cd = class_data(A);
      std::vector<cx> vals(k);
      for (std::size_t i = 0; i < k; ++i) vals[i] = char_value(specs[i], cd);
      for (std::size_t i = 0; i < k; ++i) {
        norms[i] += std::norm(vals[i]);
        for (std::size_t j = i + 1; j < k; ++j) cross[i * k + j] += vals[i] * std::conj(vals[j]);
      }
    }
    std::string base = "ortho_n" + std::to_string(n) + "_q" + std::to_string(q);
    for (std::size_t i = 0; i < k; ++i) {
      double err = std::abs(norms[i] - order) / order;
      out.push_back({base + "_norm_orb" + std::to_string(orbits[i].canonical()), err <= cfg.tol_rel, err});
      double dim_err = rel_err(char_value(specs[i], MatFq::identity(tower.get(), n)), cx{specs[i].dimension(), 0.0});
      out.push_back({base + "_dim_orb" + std::to_string(orbits[i].canonical()), dim_err <= 1e-9, dim_err});
    }
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        double err = std::abs(cross[i * k + j]) / order;
        out.push_back({base + "_cross_" + std::to_string(orbits[i].canonical()) + "_" +
                           std::to_string(orbits[j].canonical()),
                       err <= cfg.tol_rel, err});
      }
    return out;
  });
  return rep;
}

SuiteReport suite_gauss(const std::string& sc, const RunConfig& cfg) {
  SuiteReport rep{.suite = "gauss", .size_class = sc, .seed = cfg.seed};
  const u64 cap = sc == "quick" ? 27 : 81;
  std::vector<std::pair<u64, u32>> qn;
  for (u64 q : {2, 3, 4, 5, 7, 8, 9}) {
    for (u32 N = 1;; ++N) {
      u64 size = 1;
      bool fits = true;
      for (u32 i = 0; i < N; ++i) {
        size *= q;
        if (size > cap) {
          fits = false;
          break;
        }
      }
      if (!fits) break;
      qn.emplace_back(q, N);
    }
  }
  run_cases(rep, cfg.jobs, qn.size(), [&](std::size_t i) {
    std::vector<CaseResult> out;
    auto [q, N] = qn[i];
    auto tower = tower_for(cfg, q, N);
    AddChar phi = psi_for(cfg, tower);
    std::string base = "gauss_q" + std::to_string(q) + "_N" + std::to_string(N);
    const u64 units = tower->subfield_units(N);
    double modulus = std::pow(static_cast<double>(q), static_cast<double>(N) / 2.0);
    double worst_mod = 0.0, worst_two = 0.0;
    for (u64 k = 0; k < units; ++k) {
      MultChar beta = make_mult_char(tower, N, k);
      cx g = gauss_sum(beta, phi);
      cx g2 = gauss_sum_alt(beta, phi);
      worst_two = std::max(worst_two, std::abs(g - g2) / modulus);
      if (k == 0) {
        double err = std::abs(g - cx{-1.0, 0.0});
        out.push_back({base + "_trivial", err <= 1e-9, err});
      } else {
        worst_mod = std::max(worst_mod, std::abs(std::abs(g) - modulus) / modulus);
      }
    }
    if (units > 1) out.push_back({base + "_modulus", worst_mod <= cfg.tol_rel, worst_mod});
    out.push_back({base + "_two_expressions", worst_two <= cfg.tol_rel, worst_two});
    return out;
  });

  // Hasse-Davenport lifting
  std::vector<std::pair<u64, u32>> hd;
  for (u64 q : {2, 3, 4, 5})
    for (u32 N = 2; N <= (sc == "quick" ? 3u : 4u); ++N) hd.emplace_back(q, N);
  run_cases(rep, cfg.jobs, hd.size(), [&](std::size_t i) {
    std::vector<CaseResult> out;
    auto [q, N] = hd[i];
    auto tower = tower_for(cfg, q, N);
    AddChar phi = psi_for(cfg, tower);
    double sign = (N - 1) % 2 == 0 ? 1.0 : -1.0;
    double worst = 0.0;
    for (u64 k = 0; k < tower->subfield_units(1); ++k) {
      MultChar beta = make_mult_char(tower, 1, k);
      cx lifted = gauss_sum(compose_norm(beta, N), phi);
      cx want = sign * cx_ipow(gauss_sum(beta, phi), N);
      worst = std::max(worst, rel_err(lifted, want));
    }
    out.push_back({"hasse_davenport_q" + std::to_string(q) + "_N" + std::to_string(N), worst <= 1e-8, worst});
    return out;
  });
  return rep;
}

SuiteReport suite_bessel(const std::string& sc, const RunConfig& cfg) {
  SuiteReport rep{.suite = "bessel", .size_class = sc, .seed = cfg.seed};
  auto tuples = sc == "quick" ? std::vector<NQ>{{2, 3}, {3, 2}} : ortho_tuples("full");
  run_cases(rep, cfg.jobs, tuples.size(), [&](std::size_t ti) {
    std::vector<CaseResult> out;
    auto [n, q] = tuples[ti];
    auto tower = tower_for(cfg, q, n);
    AddChar phi = psi_for(cfg, tower);
    std::string base = "bessel_n" + std::to_string(n) + "_q" + std::to_string(q);
    for (const auto& o : enumerate_regular_orbits(tower, n)) {
      CuspidalSpec rho = make_cuspidal(tower, n, o.canonical());
      auto table = bessel_table(rho, phi, cfg.max_enum);
      double id_err = std::abs(table->value(MatFq::identity(tower.get(), n)) - cx{1.0, 0.0});
      out.push_back({base + "_orb" + std::to_string(o.canonical()) + "_identity", id_err <= 1e-9, id_err});
      SplitMix64 rng(cfg.seed ^ (o.canonical() * 1315423911ull) ^ (n * 131ull) ^ q);
      double worst = 0.0;
      for (u32 t = 0; t < 100; ++t) {
        MatFq u1 = random_unipotent(tower.get(), n, rng);
        MatFq u2 = random_unipotent(tower.get(), n, rng);
        MatFq g = random_gl(tower.get(), n, rng);
        cx lhs = table->value(u1 * g * u2);
        cx rhs = psi_n(u1, phi) * psi_n(u2, phi) * table->value(g);
        worst = std::max(worst, std::abs(lhs - rhs));
      }
      out.push_back({base + "_orb" + std::to_string(o.canonical()) + "_equivariance", worst <= cfg.tol_rel, worst});
    }
    return out;
  });
  return rep;
}

SuiteReport suite_functional_eq(const std::string& sc, const RunConfig& cfg) {
  SuiteReport rep{.suite = "functional-eq", .size_class = sc, .seed = cfg.seed};
  std::vector<NMQ> tuples;
  if (sc == "quick") {
    tuples = {{2, 1, 3}, {3, 1, 2}};
  } else {
    for (u64 q : {2, 3})
      for (auto [n, m] : std::vector<std::pair<u32, u32>>{{2, 1}, {3, 1}, {3, 2}}) tuples.push_back({n, m, q});
  }
  run_cases(rep, cfg.jobs, tuples.size(), [&](std::size_t ti) {
    std::vector<CaseResult> out;
    auto [n, m, q] = tuples[ti];
    auto tower = tower_for(cfg, q, std::lcm(n, m));
    AddChar phi = psi_for(cfg, tower);
    double bound = 1e-6 * std::pow(static_cast<double>(q), static_cast<double>(n));
    for (auto& [pi, tau] : orbit_pairs(tower, n, m)) {
      for (u32 k = 0; k + m + 1 <= n; ++k) {
        auto fe = check_functional_equation(pi, tau, phi, k, 20, cfg.seed + k, cfg.max_enum);
        std::string name = "fe_n" + std::to_string(n) + "_m" + std::to_string(m) + "_q" + std::to_string(q) +
                           "_pi" + orbit_tag(pi.orbit.exponents) + "_tau" + orbit_tag(tau.orbit_exponents()) +
                           "_k" + std::to_string(k);
        out.push_back({name, fe.max_abs_discrepancy <= bound, fe.max_abs_discrepancy});
      }
    }
    return out;
  });
  return rep;
}

SuiteReport suite_finite_vs_closed(const std::string& sc, const RunConfig& cfg) {
  SuiteReport rep{.suite = "finite-vs-closed", .size_class = sc, .seed = cfg.seed};
  auto tuples = gamma_tuples(sc);
  run_cases(rep, cfg.jobs, tuples.size(), [&](std::size_t ti) {
    std::vector<CaseResult> out;
    auto [n, m, q] = tuples[ti];
    auto tower = tower_for(cfg, q, std::lcm(n, m));
    AddChar phi = psi_for(cfg, tower);
    for (auto& [pi, tau] : orbit_pairs(tower, n, m)) {
      GammaResult closed = gamma_closed(pi, tau, phi);
      GammaResult bessel = gamma_bessel(pi, tau, phi, cfg.max_enum);
      double err = rel_err(bessel.value, closed.value);
      std::string name = "gamma_n" + std::to_string(n) + "_m" + std::to_string(m) + "_q" + std::to_string(q) +
                         "_pi" + orbit_tag(pi.orbit.exponents) + "_tau" + orbit_tag(tau.orbit_exponents());
      out.push_back({name, err <= cfg.tol_rel, err});
      double mod_err = std::abs(std::abs(closed.value) - closed.expected_modulus()) / closed.expected_modulus();
      out.push_back({name + "_modulus", mod_err <= cfg.tol_rel, mod_err});
    }
    return out;
  });

  auto ntuples = nien_tuples(sc);
  run_cases(rep, cfg.jobs, ntuples.size(), [&](std::size_t ti) {
    std::vector<CaseResult> out;
    auto [n, q] = ntuples[ti];
    auto tower = tower_for(cfg, q, n);
    AddChar phi = psi_for(cfg, tower);
    for (auto& [pi, tau] : orbit_pairs(tower, n, 1)) {
      GammaResult nien = gamma_n_by_1(pi, *tau.chr(), phi);
      GammaResult bessel = gamma_bessel(pi, tau, phi, cfg.max_enum);
      double err = rel_err(bessel.value, nien.value);
      std::string name = "nien_n" + std::to_string(n) + "_q" + std::to_string(q) + "_pi" +
                         orbit_tag(pi.orbit.exponents) + "_tau" + std::to_string(tau.eta_exponent());
      out.push_back({name, err <= cfg.tol_rel, err});
    }
    return out;
  });
  return rep;
}

SuiteReport suite_chain(const std::string& sc, const RunConfig& cfg) {
  SuiteReport rep{.suite = "chain", .size_class = sc, .seed = cfg.seed};
  auto tuples = gamma_tuples(sc);
  run_cases(rep, cfg.jobs, tuples.size(), [&](std::size_t ti) {
    std::vector<CaseResult> out;
    auto [n, m, q] = tuples[ti];
    auto tower = tower_for(cfg, q, std::lcm(n, m));
    AddChar phi = psi_for(cfg, tower);
    SplitMix64 rng(cfg.seed ^ (u64(n) << 16) ^ (u64(m) << 8) ^ q);
    auto pis = enumerate_regular_orbits(tower, n);
    auto taus = enumerate_regular_orbits(tower, m);
    for (const auto& po : pis) {
      for (const auto& to : taus) {
        TamePair tpi = make_tame_pair(tower, n, unit_scalar(rng), po.canonical(), 1);
        TamePair ttau = make_tame_pair(tower, m, unit_scalar(rng), to.canonical(), 1);
        LevelZeroRep rpi = pair_to_rep(tpi), rtau = pair_to_rep(ttau);
        LocalGamma closed = gamma_local_closed(rpi, rtau, phi);
        LocalGamma bridge = gamma_local_bridge(rpi, rtau, phi, "closed", cfg.max_enum);
        LocalGamma bridge_b = gamma_local_bridge(rpi, rtau, phi, "bessel", cfg.max_enum);
        ChainReport chain = verify_chain(tpi, ttau, phi, cfg.tol_rel);
        std::string name = "local_n" + std::to_string(n) + "_m" + std::to_string(m) + "_q" + std::to_string(q) +
                           "_pi" + std::to_string(po.canonical()) + "_tau" + std::to_string(to.canonical());
        double e1 = rel_err(bridge.value, closed.value);
        out.push_back({name + "_bridge", e1 <= cfg.tol_rel, e1});
        double e2 = rel_err(bridge_b.value, closed.value);
        out.push_back({name + "_bridge_bessel", e2 <= cfg.tol_rel, e2});
        out.push_back({name + "_chain", chain.pass, chain.rel_discrepancy});
        double e3 = std::abs(std::abs(closed.value) - 1.0);
        out.push_back({name + "_unit_modulus", e3 <= cfg.tol_rel, e3});
      }
    }
    return out;
  });
  return rep;
}

SuiteReport suite_xi(const std::string& sc, const RunConfig& cfg) {
  SuiteReport rep{.suite = "xi", .size_class = sc, .seed = cfg.seed};
  std::vector<std::pair<u32, u64>> cases;
  u32 maxm = sc == "quick" ? 4 : 8;
  auto qs = sc == "quick" ? std::vector<u64>{2, 3} : std::vector<u64>{2, 3, 5};
  for (u64 q : qs)
    for (u32 m = 1; m <= maxm; ++m) cases.emplace_back(m, q);
  run_cases(rep, cfg.jobs, cases.size(), [&](std::size_t i) {
    auto [m, q] = cases[i];
    auto res = xi_product(m, q, cfg.seed, 1e-9);
    return std::vector<CaseResult>{
        {"xi_m" + std::to_string(m) + "_q" + std::to_string(q), res.pass, res.max_rel_err}};
  });
  return rep;
}

SuiteReport suite_base_change(const std::string& sc, const RunConfig& cfg) {
  SuiteReport rep{.suite = "base-change", .size_class = sc, .seed = cfg.seed};
  const u32 maxdeg = sc == "quick" ? 3 : 4;
  std::vector<u64> qs{2, 3};
  run_cases(rep, cfg.jobs, qs.size(), [&](std::size_t qi) {
    std::vector<CaseResult> out;
    u64 q = qs[qi];
    u32 L = 12;  // lcm of everything up to degree 4
    auto tower = tower_for(cfg, q, L);
    SplitMix64 rng(cfg.seed ^ (q * 2654435761ull));
    for (u32 n = 1; n <= maxdeg; ++n) {
      for (const auto& o : enumerate_regular_orbits(tower, n)) {
        TamePair t = make_tame_pair(tower, n, unit_scalar(rng), o.canonical(), 1);
        for (u32 m = 1; m <= maxdeg; ++m) {
          const u32 g = std::gcd(n, m);
          std::string name = "bc_q" + std::to_string(q) + "_n" + std::to_string(n) + "_m" + std::to_string(m) +
                             "_orb" + std::to_string(o.canonical());
          bool ok = true;
          double err = 0.0;
          try {
            auto bc = base_change(t, m);
            ok = bc.size() == g;
            for (const auto& s : bc) {
              ok = ok && s.degree == n / g && s.base == m;
              ok = ok && exponent_is_regular(*tower, s.base * s.degree, s.orbit.canonical(), s.base);
            }
            // independent double-coset count: distinct q^m-orbits among the
            // Frobenius twists theta^{q^i} o N
            const u64 m_in = tower->subfield_units(n);
            const u64 m_out = tower->subfield_units(std::lcm(n, m));
            std::set<std::vector<u64>> distinct;
            for (u32 i = 0; i < n; ++i) {
              u64 e = (o.canonical() * powmod_u64(q % m_in, i, m_in)) % m_in * (m_out / m_in) % m_out;
              distinct.insert(frobenius_orbit_exponents(*tower, std::lcm(n, m), e, m));
            }
            ok = ok && distinct.size() == g;
            if (n == m) {
              // degenerate case: the outputs are the n Frobenius-orbit members
              std::set<u64> got, want(o.exponents.begin(), o.exponents.end());
              for (const auto& s : bc) {
                ok = ok && s.degree == 1;
                got.insert(s.orbit.canonical());
              }
              ok = ok && got == want;
            }
          } catch (const Error&) {
            ok = false;
            err = 1.0;
          }
          out.push_back({name, ok, err});
        }
      }
    }
    // residue-level transitivity
    for (auto [m1, m2] : std::vector<std::pair<u32, u32>>{{2, 3}, {3, 2}}) {
      for (u32 n = 1; n <= maxdeg; ++n) {
        auto orbits = enumerate_regular_orbits(tower, n);
        if (orbits.empty()) continue;
        TamePair t = make_tame_pair(tower, n, unit_scalar(rng), orbits.front().canonical(), 1);
        bool ok = true;
        try {
          auto direct = base_change(t, m1 * m2);
          std::vector<TamePair> composed;
          for (const auto& s : base_change(t, m1))
            for (auto& s2 : base_change(s, m2)) composed.push_back(std::move(s2));
          auto key = [](const TamePair& s) {
            std::string k = std::to_string(s.base) + "|" + std::to_string(s.degree) + "|" + orbit_tag(s.orbit.exponents);
            char buf[64];
            std::snprintf(buf, sizeof(buf), "|%.9f|%.9f", s.scalar.real(), s.scalar.imag());
            return k + buf;
          };
          std::multiset<std::string> a, b;
          for (const auto& s : direct) a.insert(key(s));
          for (const auto& s : composed) b.insert(key(s));
          ok = a == b;
        } catch (const Error&) {
          ok = false;
        }
        out.push_back({"bc_transitivity_q" + std::to_string(q) + "_n" + std::to_string(n) + "_m" +
                           std::to_string(m1) + "x" + std::to_string(m2),
                       ok, ok ? 0.0 : 1.0});
      }
    }
    return out;
  });
  return rep;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"orthogonality", "gauss", "bessel", "functional-eq", "finite-vs-closed", "chain", "xi", "base-change"};
}

SuiteReport run_suite(const std::string& suite, const std::string& size_class, const RunConfig& cfg) {
  if (size_class != "quick" && size_class != "full") fail(Errc::BadInput, "size-class must be quick or full");
  if (suite == "orthogonality") return suite_orthogonality(size_class, cfg);
  if (suite == "gauss") return suite_gauss(size_class, cfg);
  if (suite == "bessel") return suite_bessel(size_class, cfg);
  if (suite == "functional-eq") return suite_functional_eq(size_class, cfg);
  if (suite == "finite-vs-closed") return suite_finite_vs_closed(size_class, cfg);
  if (suite == "chain") return suite_chain(size_class, cfg);
  if (suite == "xi") return suite_xi(size_class, cfg);
  if (suite == "base-change") return suite_base_change(size_class, cfg);
  if (suite == "all") {
    SuiteReport all{.suite = "all", .size_class = size_class, .seed = cfg.seed};
    for (const auto& name : suite_names()) {
      SuiteReport sub = run_suite(name, size_class, cfg);
      for (auto& c : sub.cases) all.add(std::move(c));
    }
    return all;
  }
  fail(Errc::BadInput, "unknown suite " + suite);
}

SuiteReport run_determinism_check(const RunConfig& cfg) {
  SuiteReport rep{.suite = "determinism", .size_class = "full", .seed = cfg.seed};
  std::vector<NMQ> tuples{{2, 1, 3}, {3, 2, 2}, {2, 1, 5}};
  for (auto [n, m, q] : tuples) {
    u32 L = std::lcm(n, m);
    auto ta = tower_for(cfg, q, L, 0);
    auto tb = tower_for(cfg, q, L, 1);
    bool distinct = ta->modulus() != tb->modulus();
    rep.add({"determinism_moduli_differ_q" + std::to_string(q) + "_L" + std::to_string(L), distinct,
             distinct ? 0.0 : 1.0});
    u64 t = tower_relabel_factor(*ta, *tb);
    AddChar phia = psi_for(cfg, ta), phib = psi_for(cfg, tb);
    for (auto& [pia, taua] : orbit_pairs(ta, n, m)) {
      u64 kp = pia.orbit.canonical() * (t % ta->subfield_units(n)) % ta->subfield_units(n);
      u64 kt = taua.eta_exponent() * (t % ta->subfield_units(m)) % ta->subfield_units(m);
      CuspidalSpec pib = make_cuspidal(tb, n, kp);
      TauSide taub = m == 1 ? TauSide::character(make_mult_char(tb, 1, kt))
                            : TauSide::cuspidal(make_cuspidal(tb, m, kt));
      cx va = gamma_closed(pia, taua, phia).value;
      cx vb = gamma_closed(pib, taub, phib).value;
      double err = rel_err(vb, va);
      rep.add({"determinism_closed_n" + std::to_string(n) + "_m" + std::to_string(m) + "_q" + std::to_string(q) +
                   "_pi" + std::to_string(pia.orbit.canonical()) + "_tau" + std::to_string(taua.eta_exponent()),
               err <= 1e-9, err});
      cx ba = gamma_bessel(pia, taua, phia, cfg.max_enum).value;
      cx bb = gamma_bessel(pib, taub, phib, cfg.max_enum).value;
      double berr = rel_err(bb, ba);
      rep.add({"determinism_bessel_n" + std::to_string(n) + "_m" + std::to_string(m) + "_q" + std::to_string(q) +
                   "_pi" + std::to_string(pia.orbit.canonical()) + "_tau" + std::to_string(taua.eta_exponent()),
               berr <= 1e-9, berr});
    }
  }
  return rep;
}

}  // namespace cuspgamma
