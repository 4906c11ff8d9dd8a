// Small shared helpers: integer arithmetic, root-of-unity tables, parallel driver.
#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace cuspgamma {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using cx = std::complex<double>;

bool is_prime_u64(u64 n);

// q = p^f with p prime, f >= 1; nullopt if q is not a prime power.
std::optional<std::pair<u64, u32>> prime_power(u64 q);

// b^e, throwing on overflow past 2^62.
u64 ipow_u64(u64 b, u32 e);

u64 powmod_u64(u64 b, u64 e, u64 m);

std::vector<u32> divisors_of(u32 n);

std::vector<u64> distinct_prime_factors(u64 n);

// zeta_M^j = exp(2*pi*i*j/M) for j in [0, M); one table per modulus, cached
// process-wide. Quarter-turn entries are set exactly.
const std::vector<cx>& unity_roots(u64 M);

// z^e for integer e (e may be negative when |z| > 0).
cx cx_ipow(cx z, i64 e);

// |got - want| / max(|want|, tiny)
double rel_err(cx got, cx want);

// Round through a %.17g -> %.12g formatting pass: deterministic 12-significant-
// digit values for emitted reports.
double round12(double x);

// Runs fn(0..count) on `jobs` threads (jobs == 0 -> hardware concurrency,
// jobs == 1 -> inline). fn must be safe to call concurrently.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn);

struct SplitMix64 {
  u64 state;
  explicit SplitMix64(u64 seed) : state(seed) {}
  u64 next();
  // uniform in [0, bound)
  u64 below(u64 bound);
  double unit();  // uniform in [0,1)
};

}  // namespace cuspgamma
