#include "cuspgamma/cuspidal.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "json.hpp"

namespace cuspgamma {

CuspidalSpec make_cuspidal(TowerPtr tower, u32 n, u64 orbit_exponent) {
  if (!tower->supports_level(n)) fail(Errc::FieldTooLarge, "tower does not support level " + std::to_string(n));
  CuspidalSpec spec;
  spec.n = n;
  spec.orbit = regular_orbit(tower, n, orbit_exponent, 1);
  spec.tower = std::move(tower);
  return spec;
}

double CuspidalSpec::dimension() const {
  double dim = 1.0;
  double qj = 1.0;
  for (u32 j = 1; j < n; ++j) {
    qj *= static_cast<double>(tower->q());
    dim *= qj - 1.0;
  }
  return dim;
}

cx char_value(const CuspidalSpec& rho, const ClassData& cd) {
  if (cd.split) return {0.0, 0.0};
  if (rho.n % cd.d != 0) return {0.0, 0.0};
  const FieldTower& tw = *rho.tower;
  MultChar eta = rho.eta();
  cx galois_sum{0.0, 0.0};
  for (u32 i = 0; i < cd.d; ++i) galois_sum += eval_mult(eta, tw.frobenius(cd.alpha, i));
  double prod = 1.0;
  double qd = std::pow(static_cast<double>(tw.q()), static_cast<double>(cd.d));
  double qdj = 1.0;
  for (std::size_t j = 1; j < cd.lambda.size(); ++j) {
    qdj *= qd;
    prod *= 1.0 - qdj;
  }
  double sign = (rho.n - 1) % 2 == 0 ? 1.0 : -1.0;
  return sign * prod * galois_sum;
}

cx char_value(const CuspidalSpec& rho, const MatFq& A) {
  if (A.size() != rho.n) fail(Errc::BadInput, "matrix size does not match representation");
  return char_value(rho, class_data(A));
}

cx central_char(const CuspidalSpec& rho, FqElem a) {
  if (a.is_zero()) fail(Errc::EvalAtZero, "central character at 0");
  if (!rho.tower->in_subfield(a, 1)) fail(Errc::NotInSubfield, "central character argument outside F_q");
  return eval_mult(rho.eta(), a);
}

namespace {

std::string matrix_key(const MatFq& g) {
  auto packed = g.packed();
  std::string key;
  key.reserve(packed.size() * 4);
  for (u32 v : packed) {
    key.push_back(static_cast<char>(v & 0xff));
    key.push_back(static_cast<char>((v >> 8) & 0xff));
    key.push_back(static_cast<char>((v >> 16) & 0xff));
    key.push_back(static_cast<char>((v >> 24) & 0xff));
  }
  return key;
}

}  // namespace

cx bessel_value(const CuspidalSpec& rho, const MatFq& g, const AddChar& phi, u64 enum_limit) {
  BesselTable table(rho, phi, enum_limit);
  return table.value(g);
}

BesselTable::BesselTable(CuspidalSpec rho, AddChar psi, u64 enum_limit)
    : rho_(std::move(rho)), psi_(std::move(psi)), enum_limit_(enum_limit) {
  unipotents_ = enumerate_unipotent(rho_.tower.get(), rho_.n, enum_limit_);
  psi_inv_values_.reserve(unipotents_.size());
  // psi_n(u^{-1}) = conj(psi_n(u)): the superdiagonal of u^{-1} is the
  // negated superdiagonal of u.
  for (const auto& u : unipotents_) psi_inv_values_.push_back(std::conj(psi_n(u, psi_)));
}

cx BesselTable::value(const MatFq& g) {
  if (g.size() != rho_.n) fail(Errc::BadInput, "matrix size does not match representation");
  if (!g.invertible()) fail(Errc::SingularMatrix, "Bessel function at singular matrix");
  std::string key = matrix_key(g);
  {
    std::shared_lock lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  cx acc{0.0, 0.0};
  for (std::size_t i = 0; i < unipotents_.size(); ++i) {
    acc += char_value(rho_, g * unipotents_[i]) * psi_inv_values_[i];
  }
  acc /= static_cast<double>(unipotents_.size());
  {
    std::unique_lock lock(mu_);
    memo_.emplace(std::move(key), acc);
  }
  return acc;
}

std::string BesselTable::cache_key() const {
  std::ostringstream os;
  os << "n" << rho_.n << "_q" << rho_.tower->q() << "_orb" << rho_.orbit.canonical() << "_psi"
     << rho_.tower->packed(psi_.shift);
  return os.str();
}

std::size_t BesselTable::entries() const {
  std::shared_lock lock(mu_);
  return memo_.size();
}

std::string BesselTable::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = rho_.n;
  j["q"] = rho_.tower->q();
  j["orbit"] = rho_.orbit.exponents;
  j["psi_shift"] = rho_.tower->packed(psi_.shift);
  auto values = nlohmann::ordered_json::array();
  std::shared_lock lock(mu_);
  std::map<std::string, cx> sorted(memo_.begin(), memo_.end());
  const u32 n = rho_.n;
  for (const auto& [key, val] : sorted) {
    std::vector<u32> entries(std::size_t(n) * n, 0);
    for (std::size_t i = 0; i < entries.size(); ++i) {
      u32 v = 0;
      for (int b = 3; b >= 0; --b) v = (v << 8) | static_cast<unsigned char>(key[i * 4 + b]);
      entries[i] = v;
    }
    nlohmann::ordered_json item;
    item["matrix"] = entries;
    item["re"] = val.real();
    item["im"] = val.imag();
    values.push_back(std::move(item));
  }
  j["values"] = std::move(values);
  return j.dump();
}

void BesselTable::load_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) return;
  if (!j.contains("n") || j["n"] != rho_.n || j["q"] != rho_.tower->q()) return;
  if (j["orbit"].get<std::vector<u64>>() != rho_.orbit.exponents) return;
  if (j["psi_shift"] != rho_.tower->packed(psi_.shift)) return;
  std::unique_lock lock(mu_);
  for (const auto& item : j["values"]) {
    auto entries = item["matrix"].get<std::vector<u32>>();
    MatFq m = MatFq::from_packed(rho_.tower.get(), rho_.n, entries);
    memo_[matrix_key(m)] = cx{item["re"].get<double>(), item["im"].get<double>()};
  }
}

namespace {

struct BesselRegistry {
  std::mutex mu;
  std::map<std::string, std::shared_ptr<BesselTable>> tables;
  std::optional<std::filesystem::path> cache_dir;
};

BesselRegistry& registry() {
  static BesselRegistry reg;
  return reg;
}

}  // namespace

std::shared_ptr<BesselTable> bessel_table(const CuspidalSpec& rho, const AddChar& psi, u64 enum_limit) {
  auto& reg = registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  std::ostringstream os;
  os << rho.tower.get() << "|" << rho.n << "|" << rho.orbit.canonical() << "|" << rho.tower->packed(psi.shift);
  auto it = reg.tables.find(os.str());
  if (it != reg.tables.end()) return it->second;
  auto table = std::make_shared<BesselTable>(rho, psi, enum_limit);
  if (reg.cache_dir) {
    auto file = *reg.cache_dir / ("bessel_" + table->cache_key() + ".json");
    if (std::filesystem::exists(file)) {
      std::ifstream is(file);
      std::stringstream buf;
      buf << is.rdbuf();
      table->load_json(buf.str());
    }
  }
  reg.tables.emplace(os.str(), table);
  return table;
}

void set_bessel_cache_dir(const std::optional<std::filesystem::path>& dir) {
  auto& reg = registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  reg.cache_dir = dir;
}

void flush_bessel_tables() {
  auto& reg = registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  if (!reg.cache_dir) return;
  std::error_code ec;
  std::filesystem::create_directories(*reg.cache_dir, ec);
  for (auto& [key, table] : reg.tables) {
    if (table->entries() == 0) continue;
    auto file = *reg.cache_dir / ("bessel_" + table->cache_key() + ".json");
    std::ofstream os(file, std::ios::trunc);
    os << table->to_json();
  }
}

}  // namespace cuspgamma
