#include "cuspgamma/util.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

#include "cuspgamma/errors.hpp"

namespace cuspgamma {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::FieldTooLarge: return "FieldTooLarge";
    case Errc::NoPrimitivePolynomial: return "NoPrimitivePolynomial";
    case Errc::NotInSubfield: return "NotInSubfield";
    case Errc::BadDivisor: return "BadDivisor";
    case Errc::EvalAtZero: return "EvalAtZero";
    case Errc::EnumerationTooLarge: return "EnumerationTooLarge";
    case Errc::NotUnipotent: return "NotUnipotent";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::SizeOrder: return "SizeOrder";
    case Errc::BadK: return "BadK";
    case Errc::NotAdmissible: return "NotAdmissible";
    case Errc::ZeroScalar: return "ZeroScalar";
    case Errc::BadInput: return "BadInput";
    case Errc::CacheError: return "CacheError";
  }
  return "UnknownError";
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::optional<std::pair<u64, u32>> prime_power(u64 q) {
  if (q < 2) return std::nullopt;
  u64 p = q;
  for (u64 d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  u32 f = 0;
  u64 rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++f;
  }
  if (rest != 1) return std::nullopt;
  return std::make_pair(p, f);
}

u64 ipow_u64(u64 b, u32 e) {
  u64 r = 1;
  for (u32 i = 0; i < e; ++i) {
    if (b != 0 && r > (u64{1} << 62) / b) fail(Errc::FieldTooLarge, "integer power overflow");
    r *= b;
  }
  return r;
}

u64 powmod_u64(u64 b, u64 e, u64 m) {
  if (m == 1) return 0;
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = (r * b) % m;  // operands < 2^21 at our field sizes
    b = (b * b) % m;
    e >>= 1;
  }
  return r;
}

std::vector<u32> divisors_of(u32 n) {
  std::vector<u32> out;
  for (u32 d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

std::vector<u64> distinct_prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

const std::vector<cx>& unity_roots(u64 M) {
  static std::mutex mu;
  static std::map<u64, std::unique_ptr<std::vector<cx>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(M);
  if (it != cache.end()) return *it->second;
  auto tab = std::make_unique<std::vector<cx>>();
  tab->resize(M);
  const double twopi = 8.0 * std::atan(1.0);
  for (u64 j = 0; j < M; ++j) {
    if (j == 0) {
      (*tab)[j] = {1.0, 0.0};
    } else if (2 * j == M) {
      (*tab)[j] = {-1.0, 0.0};
    } else if (4 * j == M) {
      (*tab)[j] = {0.0, 1.0};
    } else if (4 * j == 3 * M) {
      (*tab)[j] = {0.0, -1.0};
    } else {
      double a = twopi * static_cast<double>(j) / static_cast<double>(M);
      (*tab)[j] = {std::cos(a), std::sin(a)};
    }
  }
  auto& ref = *tab;
  cache.emplace(M, std::move(tab));
  return ref;
}

cx cx_ipow(cx z, i64 e) {
  if (e < 0) return 1.0 / cx_ipow(z, -e);
  cx r{1.0, 0.0};
  while (e) {
    if (e & 1) r *= z;
    z *= z;
    e >>= 1;
  }
  return r;
}

double rel_err(cx got, cx want) {
  double scale = std::abs(want);
  if (scale < 1e-300) scale = 1e-300;
  return std::abs(got - want) / scale;
}

double round12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::strtod(buf, nullptr);
}

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  if (jobs == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) break;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  unsigned nthreads = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
  pool.reserve(nthreads);
  for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

u64 SplitMix64::next() {
  u64 z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

u64 SplitMix64::below(u64 bound) { return bound ? next() % bound : 0; }

double SplitMix64::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

}  // namespace cuspgamma
