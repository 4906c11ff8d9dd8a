// cuspgamma CLI: orbit enumeration, gamma computation by every applicable
// method, invariant suites, base change, chain verification and tower cache
// management. All JSON output is deterministic: ordered keys, floats rounded
// to 12 significant digits, seeded randomness.
#include <cstdlib>
#include <iostream>
#include <numeric>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "cuspgamma/gamma_local.hpp"
#include "cuspgamma/verify.hpp"

using nlohmann::ordered_json;
using namespace cuspgamma;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitResource = 3;

ordered_json jnum(double x) { return round12(x); }

ordered_json jcx(cx z) {
  ordered_json j;
  j["re"] = jnum(z.real());
  j["im"] = jnum(z.imag());
  return j;
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

struct CliOptions {
  RunConfig cfg;
  std::string cache_dir_flag;
};

cx parse_scalar(const std::string& text) {
  if (text.empty()) return {1.0, 0.0};
  auto comma = text.find(',');
  if (comma == std::string::npos) return {std::stod(text), 0.0};
  return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

TowerPtr cli_tower(const RunConfig& cfg, u64 q, u32 L) {
  return get_tower_for_q(q, L, cfg.max_field, 0, cfg.tower_cache_dir());
}

AddChar cli_psi(const RunConfig& cfg, const TowerPtr& tower) {
  FqElem b = tower->from_packed(static_cast<u32>(cfg.psi_shift));
  if (b.is_zero() || !tower->in_subfield(b, 1)) fail(Errc::BadInput, "psi shift must be a nonzero element of F_q");
  return make_add_char(tower, 1, b);
}

int cmd_enumerate(const CliOptions& opt, u32 n, u64 q) {
  auto tower = cli_tower(opt.cfg, q, n);
  auto orbits = enumerate_regular_orbits(tower, n);
  if (opt.cfg.output == "json") {
    ordered_json j;
    j["schema"] = "cuspgamma/1";
    j["n"] = n;
    j["q"] = q;
    auto arr = ordered_json::array();
    for (const auto& o : orbits) {
      ordered_json row;
      row["level"] = o.level;
      row["canonical_exponent"] = o.canonical();
      row["orbit"] = o.exponents;
      arr.push_back(std::move(row));
    }
    j["orbits"] = std::move(arr);
    emit(j);
  } else {
    std::cout << "level,canonical_exponent,orbit\n";
    for (const auto& o : orbits) {
      std::cout << o.level << "," << o.canonical() << ",";
      for (std::size_t i = 0; i < o.exponents.size(); ++i) {
        if (i) std::cout << ";";
        std::cout << o.exponents[i];
      }
      std::cout << "\n";
    }
  }
  return kExitOk;
}

ordered_json gamma_result_json(const GammaResult& r, double tol) {
  ordered_json j;
  j["n"] = r.n;
  j["m"] = r.m;
  j["q"] = r.q;
  j["pi_orbit"] = r.pi_orbit;
  j["tau_orbit"] = r.tau_orbit;
  j["method"] = r.method;
  j["gamma"] = jcx(r.value);
  double dev = std::abs(std::abs(r.value) - r.expected_modulus()) / r.expected_modulus();
  j["modulus_check"] = dev <= tol;
  j["modulus_rel_dev"] = jnum(dev);
  return j;
}

ordered_json local_result_json(const LocalGamma& r, double tol) {
  ordered_json j;
  j["n"] = r.n;
  j["m"] = r.m;
  j["q"] = r.q;
  j["pi_orbit"] = r.pi_orbit;
  j["tau_orbit"] = r.tau_orbit;
  j["method"] = r.method;
  j["gamma"] = jcx(r.value);
  double dev = std::abs(std::abs(r.value) - 1.0);
  j["modulus_check"] = dev <= tol;
  j["modulus_rel_dev"] = jnum(dev);
  return j;
}

int cmd_gamma(const CliOptions& opt, const std::string& kind, u32 n, u32 m, u64 q, u64 pi_orbit, i64 tau_orbit,
              i64 tau_char, const std::string& method, const std::string& pi_scalar,
              const std::string& tau_scalar) {
  const RunConfig& cfg = opt.cfg;
  if (m < 1 || n <= m) fail(Errc::SizeOrder, "need n > m >= 1");
  auto tower = cli_tower(cfg, q, std::lcm(n, m));
  AddChar phi = cli_psi(cfg, tower);
  CuspidalSpec pi = make_cuspidal(tower, n, pi_orbit);
  u64 tau_exp = 0;
  if (m == 1) {
    if (tau_char < 0) fail(Errc::BadInput, "--tau-char is required when m = 1");
    tau_exp = static_cast<u64>(tau_char);
  } else {
    if (tau_orbit < 0) fail(Errc::BadInput, "--tau-orbit is required when m >= 2");
    tau_exp = static_cast<u64>(tau_orbit);
  }
  TauSide tau = m == 1 ? TauSide::character(make_mult_char(tower, 1, tau_exp))
                       : TauSide::cuspidal(make_cuspidal(tower, m, tau_exp));

  ordered_json out;
  out["schema"] = "cuspgamma/1";
  out["kind"] = kind;
  std::vector<std::pair<std::string, cx>> values;
  auto results = ordered_json::array();

  if (kind == "finite") {
    std::vector<std::string> methods;
    if (method == "all") {
      methods = {"bessel", "closed"};
      if (m == 1) methods.push_back("nien");
    } else {
      methods = {method};
    }
    for (const auto& meth : methods) {
      GammaResult r;
      if (meth == "bessel")
        r = gamma_bessel(pi, tau, phi, cfg.max_enum);
      else if (meth == "closed")
        r = gamma_closed(pi, tau, phi);
      else if (meth == "nien") {
        if (m != 1) fail(Errc::BadInput, "nien method needs m = 1");
        r = gamma_n_by_1(pi, *tau.chr(), phi);
      } else
        fail(Errc::BadInput, "unknown finite method " + meth);
      values.emplace_back(r.method, r.value);
      results.push_back(gamma_result_json(r, cfg.tol_rel));
    }
  } else if (kind == "local") {
    LevelZeroRep rpi{n, parse_scalar(pi_scalar), pi};
    CuspidalSpec tau_cusp = make_cuspidal(tower, m, tau_exp);
    LevelZeroRep rtau{m, parse_scalar(tau_scalar), tau_cusp};
    std::vector<std::string> methods;
    if (method == "all") {
      methods = {"closed", "bridge", "bessel"};
      if (m == 1) methods.push_back("nien");
    } else {
      methods = {method};
    }
    for (const auto& meth : methods) {
      LocalGamma r;
      if (meth == "closed")
        r = gamma_local_closed(rpi, rtau, phi);
      else if (meth == "bridge")
        r = gamma_local_bridge(rpi, rtau, phi, "closed", cfg.max_enum);
      else if (meth == "bessel")
        r = gamma_local_bridge(rpi, rtau, phi, "bessel", cfg.max_enum);
      else if (meth == "nien")
        r = gamma_local_bridge(rpi, rtau, phi, "nien", cfg.max_enum);
      else
        fail(Errc::BadInput, "unknown local method " + meth);
      values.emplace_back(r.method, r.value);
      results.push_back(local_result_json(r, cfg.tol_rel));
    }
  } else {
    fail(Errc::BadInput, "kind must be finite or local");
  }

  bool pass = true;
  auto pairwise = ordered_json::array();
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      double d = rel_err(values[j].second, values[i].second);
      ordered_json pj;
      pj["a"] = values[i].first;
      pj["b"] = values[j].first;
      pj["rel_diff"] = jnum(d);
      pairwise.push_back(std::move(pj));
      pass = pass && d <= cfg.tol_rel;
    }
  }
  out["results"] = std::move(results);
  out["pairwise"] = std::move(pairwise);
  out["pass"] = pass;
  emit(out);
  return pass ? kExitOk : kExitCheckFailed;
}

int cmd_verify(const CliOptions& opt, const std::string& suite, const std::string& size_class) {
  SuiteReport rep = run_suite(suite, size_class, opt.cfg);
  ordered_json j;
  j["schema"] = "cuspgamma/1";
  j["suite"] = rep.suite;
  j["size_class"] = rep.size_class;
  j["seed"] = rep.seed;
  auto cases = ordered_json::array();
  for (const auto& c : rep.cases) {
    ordered_json cj;
    cj["name"] = c.name;
    cj["pass"] = c.pass;
    cj["max_err"] = jnum(c.err);
    cases.push_back(std::move(cj));
  }
  j["cases"] = std::move(cases);
  j["pass"] = rep.pass;
  j["max_err"] = jnum(rep.max_err);
  emit(j);
  return rep.pass ? kExitOk : kExitCheckFailed;
}

int cmd_base_change(const CliOptions& opt, u32 n, u32 m, u64 q, u64 orbit, const std::string& scalar) {
  auto tower = cli_tower(opt.cfg, q, static_cast<u32>(std::lcm(n, m)));
  TamePair t = make_tame_pair(tower, n, parse_scalar(scalar), orbit, 1);
  auto pairs = base_change(t, m);
  ordered_json j;
  j["schema"] = "cuspgamma/1";
  j["n"] = n;
  j["m"] = m;
  j["q"] = q;
  auto arr = ordered_json::array();
  for (const auto& s : pairs) {
    ordered_json sj;
    sj["degree_over_K"] = s.degree;
    sj["scalar"] = jcx(s.scalar);
    sj["orbit"] = s.orbit.exponents;
    arr.push_back(std::move(sj));
  }
  j["pairs"] = std::move(arr);
  emit(j);
  return kExitOk;
}

int cmd_verify_chain(const CliOptions& opt, u32 n, u32 m, u64 q, u64 pi_orbit, u64 tau_orbit,
                     const std::string& pi_scalar, const std::string& tau_scalar) {
  const RunConfig& cfg = opt.cfg;
  auto tower = cli_tower(cfg, q, static_cast<u32>(std::lcm(n, m)));
  AddChar phi = cli_psi(cfg, tower);
  TamePair tpi = make_tame_pair(tower, n, parse_scalar(pi_scalar), pi_orbit, 1);
  TamePair ttau = make_tame_pair(tower, m, parse_scalar(tau_scalar), tau_orbit, 1);
  ChainReport rep = verify_chain(tpi, ttau, phi, cfg.tol_rel);
  ordered_json j;
  j["schema"] = "cuspgamma/1";
  j["n"] = rep.n;
  j["m"] = rep.m;
  j["q"] = rep.q;
  j["step1_sign"] = jnum(rep.step1_sign);
  j["ai_scalar"] = jcx(rep.ai_scalar);
  auto pieces = ordered_json::array();
  for (const auto& p : rep.pieces) {
    ordered_json pj;
    pj["orbit"] = p.orbit;
    pj["scalar"] = jcx(p.scalar);
    pj["bridge_prefactor"] = jcx(p.bridge_prefactor);
    pj["nien_gauss"] = jcx(p.nien_gauss);
    pj["nien_value"] = jcx(p.nien_value);
    pj["factor"] = jcx(p.factor);
    pieces.push_back(std::move(pj));
  }
  j["pieces"] = std::move(pieces);
  j["step2_product"] = jcx(rep.step2_product);
  j["chain_value"] = jcx(rep.chain_value);
  j["closed_value"] = jcx(rep.closed_value);
  j["rel_discrepancy"] = jnum(rep.rel_discrepancy);
  j["pass"] = rep.pass;
  emit(j);
  return rep.pass ? kExitOk : kExitCheckFailed;
}

int cmd_cache_build(const CliOptions& opt, u64 q, u32 L) {
  if (!opt.cfg.tower_cache_dir()) fail(Errc::BadInput, "cache build needs --cache-dir or CUSPGAMMA_CACHE");
  cli_tower(opt.cfg, q, L);
  ordered_json j;
  j["schema"] = "cuspgamma/1";
  j["cached"] = true;
  j["q"] = q;
  j["L"] = L;
  j["dir"] = opt.cfg.tower_cache_dir()->string();
  emit(j);
  return kExitOk;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::FieldTooLarge:
    case Errc::EnumerationTooLarge:
      return kExitResource;
    default:
      return kExitBadInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gamma factors of cuspidal representations over finite and p-adic fields"};
  app.require_subcommand(1);

  CliOptions opt;
  app.add_option("--cache-dir", opt.cache_dir_flag, "tower/Bessel cache directory (env CUSPGAMMA_CACHE)");
  app.add_flag("--no-cache", opt.cfg.no_cache, "ignore any cache directory");
  app.add_option("--tol-rel", opt.cfg.tol_rel, "relative tolerance for cross-checks");
  app.add_option("--max-field", opt.cfg.max_field, "largest allowed ambient field size q^L");
  app.add_option("--max-enum", opt.cfg.max_enum, "largest allowed enumeration");
  app.add_option("--psi-shift", opt.cfg.psi_shift, "packed value of the additive-character shift b");
  app.add_option("--seed", opt.cfg.seed, "seed for randomized checks");
  app.add_option("--jobs", opt.cfg.jobs, "worker threads for suites (0 = all cores)");
  app.add_option("--output", opt.cfg.output, "output format for enumerate: json or csv");
  opt.cfg.output = "csv";

  u32 n = 0, m = 0, L = 0;
  u64 q = 0, pi_orbit = 0, orbit = 0;
  i64 tau_orbit = -1, tau_char = -1;
  std::string kind = "finite", method = "all", suite = "all", size_class = "quick";
  std::string pi_scalar = "1", tau_scalar = "1";

  auto* enumerate = app.add_subcommand("enumerate", "list regular character orbits");
  enumerate->add_option("--n", n, "degree")->required();
  enumerate->add_option("--q", q, "residue field size")->required();

  auto add_gamma_opts = [&](CLI::App* cmd, bool with_kind) {
    if (with_kind) cmd->add_option("--kind", kind, "finite or local");
    cmd->add_option("--n", n)->required();
    cmd->add_option("--m", m)->required();
    cmd->add_option("--q", q)->required();
    cmd->add_option("--pi-orbit", pi_orbit)->required();
    cmd->add_option("--tau-orbit", tau_orbit);
    cmd->add_option("--tau-char", tau_char);
    cmd->add_option("--method", method, "bessel|closed|nien|bridge|all");
    cmd->add_option("--pi-scalar", pi_scalar, "omega_pi(varpi) as re[,im]");
    cmd->add_option("--tau-scalar", tau_scalar, "omega_tau(varpi) as re[,im]");
  };
  auto* gamma = app.add_subcommand("gamma", "compute a gamma factor by one or all methods");
  add_gamma_opts(gamma, true);
  auto* gamma_finite_cmd = app.add_subcommand("gamma-finite", "finite-field gamma factor");
  add_gamma_opts(gamma_finite_cmd, false);
  auto* gamma_local_cmd = app.add_subcommand("gamma-local", "local gamma factor of a level-zero pair");
  add_gamma_opts(gamma_local_cmd, false);

  auto* verify = app.add_subcommand("verify", "run an invariant suite");
  verify->add_option("--suite", suite, "orthogonality|gauss|bessel|functional-eq|finite-vs-closed|chain|xi|base-change|all");
  verify->add_option("--size-class", size_class, "quick or full");

  auto* bc = app.add_subcommand("base-change", "unramified base change of a tame pair");
  bc->add_option("--n", n)->required();
  bc->add_option("--m", m)->required();
  bc->add_option("--q", q)->required();
  bc->add_option("--orbit", orbit)->required();
  bc->add_option("--scalar", pi_scalar, "theta(varpi) as re[,im]");

  auto* chain = app.add_subcommand("verify-chain", "recompute the local gamma through the proof pipeline");
  chain->add_option("--n", n)->required();
  chain->add_option("--m", m)->required();
  chain->add_option("--q", q)->required();
  chain->add_option("--pi-orbit", pi_orbit)->required();
  chain->add_option("--tau-orbit", tau_orbit)->required();
  chain->add_option("--pi-scalar", pi_scalar);
  chain->add_option("--tau-scalar", tau_scalar);

  auto* cache = app.add_subcommand("cache", "tower cache management");
  auto* cache_build = cache->add_subcommand("build", "build and store a tower");
  cache_build->add_option("--q", q)->required();
  cache_build->add_option("--L", L)->required();
  auto* cache_path = cache->add_subcommand("path", "print the effective cache directory");

  CLI11_PARSE(app, argc, argv);

  if (!opt.cache_dir_flag.empty()) {
    opt.cfg.cache_dir = opt.cache_dir_flag;
  } else if (const char* env = std::getenv("CUSPGAMMA_CACHE")) {
    if (*env) opt.cfg.cache_dir = env;
  }
  set_bessel_cache_dir(opt.cfg.tower_cache_dir());

  int rc = kExitOk;
  try {
    if (!prime_power(q) && (enumerate->parsed() || gamma->parsed() || gamma_finite_cmd->parsed() ||
                            gamma_local_cmd->parsed() || bc->parsed() || chain->parsed() ||
                            cache_build->parsed()))
      fail(Errc::BadInput, std::to_string(q) + " is not a prime power");
    if (enumerate->parsed()) {
      rc = cmd_enumerate(opt, n, q);
    } else if (gamma->parsed()) {
      rc = cmd_gamma(opt, kind, n, m, q, pi_orbit, tau_orbit, tau_char, method, pi_scalar, tau_scalar);
    } else if (gamma_finite_cmd->parsed()) {
      rc = cmd_gamma(opt, "finite", n, m, q, pi_orbit, tau_orbit, tau_char, method, pi_scalar, tau_scalar);
    } else if (gamma_local_cmd->parsed()) {
      rc = cmd_gamma(opt, "local", n, m, q, pi_orbit, tau_orbit, tau_char, method, pi_scalar, tau_scalar);
    } else if (verify->parsed()) {
      rc = cmd_verify(opt, suite, size_class);
    } else if (bc->parsed()) {
      rc = cmd_base_change(opt, n, m, q, orbit, pi_scalar);
    } else if (chain->parsed()) {
      rc = cmd_verify_chain(opt, n, m, q, pi_orbit, static_cast<u64>(tau_orbit), pi_scalar, tau_scalar);
    } else if (cache->parsed()) {
      if (cache_build->parsed()) {
        rc = cmd_cache_build(opt, q, L);
      } else if (cache_path->parsed()) {
        ordered_json j;
        j["schema"] = "cuspgamma/1";
        j["dir"] = opt.cfg.tower_cache_dir() ? opt.cfg.tower_cache_dir()->string() : "";
        emit(j);
      }
    }
    flush_bessel_tables();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return rc;
}
