// Cuspidal representations of GL_n(F_q) through Green's parameterization:
// trace character values on primary classes and normalized Bessel functions.
#pragma once

#include <memory>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "cuspgamma/characters.hpp"
#include "cuspgamma/gln.hpp"

namespace cuspgamma {

struct CuspidalSpec {
  u32 n = 0;
  RegularOrbit orbit;  // level n, base 1, size n
  TowerPtr tower;

  MultChar eta() const { return make_mult_char(tower, n, orbit.canonical()); }
  double dimension() const;  // prod_{j=1}^{n-1} (q^j - 1)
};

CuspidalSpec make_cuspidal(TowerPtr tower, u32 n, u64 orbit_exponent);

// Character value at an invertible A: zero off primary classes, otherwise
// (-1)^{n-1} * (sum of eta over the Galois orbit of alpha) *
// prod_{j=1}^{len(lambda)-1} (1 - q^{d j}).
cx char_value(const CuspidalSpec& rho, const MatFq& A);
cx char_value(const CuspidalSpec& rho, const ClassData& cd);

// Restriction of the parameter to F_q^x.
cx central_char(const CuspidalSpec& rho, FqElem a);

// J(g) = |U_n|^{-1} sum_u char(g u) psi_n(u^{-1}); J(I) = 1.
cx bessel_value(const CuspidalSpec& rho, const MatFq& g, const AddChar& phi, u64 enum_limit);

// Memoized Bessel values for one (rho, psi); safe for concurrent lookups and
// inserts. Optionally persisted as bessel_{key}.json.
class BesselTable {
 public:
  BesselTable(CuspidalSpec rho, AddChar psi, u64 enum_limit);

  cx value(const MatFq& g);
  const CuspidalSpec& spec() const { return rho_; }
  const AddChar& psi() const { return psi_; }

  std::string cache_key() const;
  std::string to_json() const;
  void load_json(const std::string& text);  // merges; ignores mismatched headers
  std::size_t entries() const;

 private:
  CuspidalSpec rho_;
  AddChar psi_;
  u64 enum_limit_;
  std::vector<MatFq> unipotents_;
  std::vector<cx> psi_inv_values_;  // psi_n(u^{-1}) per unipotent
  mutable std::shared_mutex mu_;
  std::unordered_map<std::string, cx> memo_;
};

// Process-wide table registry keyed by (tower, n, orbit, psi). When a cache
// directory is configured, tables load lazily and flush_bessel_tables()
// writes them back.
std::shared_ptr<BesselTable> bessel_table(const CuspidalSpec& rho, const AddChar& psi, u64 enum_limit);
void set_bessel_cache_dir(const std::optional<std::filesystem::path>& dir);
void flush_bessel_tables();

}  // namespace cuspgamma
