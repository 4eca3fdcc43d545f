#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "circle/core.hpp"

namespace circle::arith {

inline u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Plain Eratosthenes; used for base primes and small tables.
inline std::vector<u64> primes_up_to(u64 limit) {
  std::vector<u64> out;
  if (limit < 2) return out;
  std::vector<std::uint8_t> comp(limit + 1, 0);
  for (u64 i = 2; i <= limit; ++i) {
    if (comp[i]) continue;
    out.push_back(i);
    if (i * i <= limit)
      for (u64 j = i * i; j <= limit; j += i) comp[j] = 1;
  }
  return out;
}

// Smallest-prime-factor table for 0..n (spf[0] = spf[1] = 0).
inline std::vector<std::uint32_t> spf_table(u64 n) {
  std::vector<std::uint32_t> spf(n + 1, 0);
  std::vector<std::uint32_t> primes;
  for (u64 i = 2; i <= n; ++i) {
    if (spf[i] == 0) {
      spf[i] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes) {
      if (p > spf[i] || i * p > n) break;
      spf[i * p] = p;
    }
  }
  return spf;
}

// ---------------------------------------------------------------------------
// Primality and factorization for 64-bit integers.

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

inline u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin; this base set is exact below 2^64.
inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    u64 x = a % n;
    if (x == 0) continue;
    x = powmod(x, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace detail {

inline u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    u64 y = 2, x = 2, ys = 2, g = 1, q = 1, r = 1;
    const u64 m = 128;
    while (g == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void factor_into(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace detail

// Prime factorization as (p, e) pairs with p ascending.
inline std::vector<std::pair<u64, int>> factorize(u64 n) {
  std::vector<std::pair<u64, int>> res;
  if (n <= 1) return res;
  std::vector<u64> ps;
  for (u64 p = 2; p < 1000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ps.push_back(p);
      n /= p;
    }
  }
  detail::factor_into(n, ps);
  std::sort(ps.begin(), ps.end());
  for (u64 p : ps) {
    if (!res.empty() && res.back().first == p)
      ++res.back().second;
    else
      res.emplace_back(p, 1);
  }
  return res;
}

inline u64 euler_phi(u64 n) {
  require(n >= 1, "euler_phi: n >= 1");
  u64 r = n;
  for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

inline int mobius(u64 n) {
  require(n >= 1, "mobius: n >= 1");
  int s = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    s = -s;
  }
  return s;
}

inline int omega(u64 n) { return static_cast<int>(factorize(n).size()); }

inline u64 smallest_prime_factor(u64 n) {
  if (n <= 1) return 0;
  auto f = factorize(n);
  return f.front().first;
}

// (n, Q#) = 1 without forming Q#.
inline bool coprime_to_primorial(u64 n, double Q) {
  require(n >= 1 && Q >= 0, "coprime_to_primorial: n >= 1, Q >= 0");
  if (n == 1) return true;
  return static_cast<double>(smallest_prime_factor(n)) > Q;
}

struct PrimorialCondition {
  double bound = 0.0;
  bool admits(u64 n) const { return coprime_to_primorial(n, bound); }
  bool admits_prime(u64 p) const { return static_cast<double>(p) > bound; }
};

// ---------------------------------------------------------------------------
// Segmented sieves.

inline constexpr u64 kDefaultSegment = u64{1} << 20;

// Calls f(p) for each prime p in [lo, hi], ascending.
template <class F>
void for_each_prime(u64 lo, u64 hi, F&& f, u64 segment = kDefaultSegment) {
  if (hi < 2 || lo > hi) return;
  if (lo <= 2) {
    f(u64{2});
    lo = 3;
  }
  if (lo % 2 == 0) ++lo;
  if (lo > hi) return;
  const u64 root = isqrt(hi);
  const auto base = primes_up_to(root);
  std::vector<std::uint8_t> seg(segment);
  for (u64 s = lo; s <= hi;) {
    const u64 e = std::min(hi, s + 2 * segment - 1);
    const u64 len = (e - s) / 2 + 1;
    std::fill(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(len), 1);
    for (u64 p : base) {
      if (p == 2) continue;
      if (p * p > e) break;
      u64 start = std::max(p * p, (s + p - 1) / p * p);
      if (start % 2 == 0) start += p;
      for (u64 m = start; m <= e; m += 2 * p) seg[(m - s) / 2] = 0;
    }
    for (u64 i = 0; i < len; ++i) {
      if (seg[i]) {
        const u64 n = s + 2 * i;
        if (n > 1) f(n);
      }
    }
    if (e == hi) break;
    s = e + 1;
    if (s % 2 == 0) ++s;
  }
}

// Calls f(n, p) for each prime power n = p^k in [lo, hi], ascending in n.
template <class F>
void for_each_prime_power(u64 lo, u64 hi, F&& f, u64 segment = kDefaultSegment) {
  if (hi < 2 || lo > hi) return;
  std::vector<std::pair<u64, u64>> powers;
  for (u64 p : primes_up_to(isqrt(hi))) {
    u64 v = p * p;
    while (true) {
      if (v >= lo) powers.emplace_back(v, p);
      if (v > hi / p) break;
      v *= p;
    }
  }
  std::erase_if(powers, [&](auto& pr) { return pr.first > hi; });
  std::sort(powers.begin(), powers.end());
  std::size_t k = 0;
  for_each_prime(
      lo, hi,
      [&](u64 p) {
        while (k < powers.size() && powers[k].first < p) {
          f(powers[k].first, powers[k].second);
          ++k;
        }
        f(p, p);
      },
      segment);
  for (; k < powers.size(); ++k) f(powers[k].first, powers[k].second);
}

// ---------------------------------------------------------------------------
// Windowed table of Lambda, mu and primality.

struct ArithTable {
  u64 lo = 1;
  u64 hi = 0;
  std::vector<double> lambda;
  std::vector<std::int8_t> mobius;
  std::vector<std::uint8_t> is_prime;

  std::size_t size() const { return lambda.size(); }
  bool contains(u64 n) const { return n >= lo && n <= hi; }
  double Lambda(u64 n) const { return lambda[n - lo]; }
  int mu(u64 n) const { return mobius[n - lo]; }
  bool prime(u64 n) const { return is_prime[n - lo] != 0; }
};

struct SieveOptions {
  u64 segment = kDefaultSegment;
  u64 max_entries = u64{1} << 28;
};

inline ArithTable sieve(u64 lo, u64 hi, const SieveOptions& opt = {}) {
  require(lo >= 1 && lo <= hi, "sieve: 1 <= lo <= hi");
  const u64 n = hi - lo + 1;
  if (n > opt.max_entries)
    throw ResourceError("sieve: window of " + std::to_string(n) + " entries exceeds cap " +
                        std::to_string(opt.max_entries));
  ArithTable t;
  t.lo = lo;
  t.hi = hi;
  t.lambda.assign(n, 0.0);
  t.mobius.assign(n, 1);
  t.is_prime.assign(n, 0);
  const u64 root = isqrt(hi);
  const auto base = primes_up_to(root);
  std::vector<u64> prod;
  for (u64 s = lo; s <= hi;) {
    const u64 e = std::min(hi, s + opt.segment - 1);
    prod.assign(e - s + 1, 1);
    for (u64 p : base) {
      for (u64 m = (s + p - 1) / p * p; m <= e; m += p) {
        t.mobius[m - lo] = static_cast<std::int8_t>(-t.mobius[m - lo]);
        prod[m - s] *= p;
      }
      const u64 p2 = p * p;
      for (u64 m = (s + p2 - 1) / p2 * p2; m <= e; m += p2) t.mobius[m - lo] = 0;
      const double lp = std::log(static_cast<double>(p));
      for (u64 v = p; v <= e; v *= p) {
        if (v >= s) t.lambda[v - lo] = lp;
        if (v > e / p) break;
      }
      if (p >= s && p <= e) t.is_prime[p - lo] = 1;
    }
    for (u64 m = s; m <= e; ++m) {
      const u64 i = m - lo;
      if (m == 1) continue;
      if (prod[m - s] == 1) {
        t.is_prime[i] = 1;
        t.lambda[i] = std::log(static_cast<double>(m));
      }
      if (t.mobius[i] != 0 && prod[m - s] != m) t.mobius[i] = static_cast<std::int8_t>(-t.mobius[i]);
    }
    if (e == hi) break;
    s = e + 1;
  }
  return t;
}

// ---------------------------------------------------------------------------
// Chebyshev psi.

inline double chebyshev_psi(double y) {
  require(y >= 0, "chebyshev_psi: y >= 0");
  if (y < 2) return 0.0;
  const u64 Y = static_cast<u64>(std::floor(y));
  KahanSum s;
  for_each_prime_power(2, Y, [&](u64, u64 p) { s.add(std::log(static_cast<double>(p))); });
  return s.value();
}

// psi at many points in one pass; ys need not be sorted.
inline std::vector<double> chebyshev_psi_many(const std::vector<double>& ys) {
  std::vector<std::size_t> order(ys.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return ys[a] < ys[b]; });
  std::vector<double> out(ys.size(), 0.0);
  if (ys.empty()) return out;
  const double ymax = ys[order.back()];
  if (ymax < 2) return out;
  KahanSum s;
  std::size_t k = 0;
  for_each_prime_power(2, static_cast<u64>(std::floor(ymax)), [&](u64 n, u64 p) {
    while (k < order.size() && ys[order[k]] < static_cast<double>(n)) out[order[k++]] = s.value();
    s.add(std::log(static_cast<double>(p)));
  });
  while (k < order.size()) out[order[k++]] = s.value();
  return out;
}

// ---------------------------------------------------------------------------
// Binary dump/load: magic, u32 version, u64 lo, u64 hi, then the three arrays,
// all little-endian.

namespace detail {
inline constexpr char kMagic[8] = {'C', 'I', 'R', 'C', 'A', 'R', 'I', 'T'};
inline constexpr std::uint32_t kVersion = 1;

template <class T>
void put_le(std::ostream& os, T v) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  U u = std::bit_cast<U>(v);
  std::array<char, sizeof(U)> b{};
  for (std::size_t i = 0; i < sizeof(U); ++i) b[i] = static_cast<char>((u >> (8 * i)) & 0xff);
  os.write(b.data(), b.size());
}

template <class T>
T get_le(std::istream& is) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  std::array<unsigned char, sizeof(U)> b{};
  is.read(reinterpret_cast<char*>(b.data()), b.size());
  if (!is) throw IngestError("arith table: truncated stream");
  U u = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) u |= static_cast<U>(b[i]) << (8 * i);
  return std::bit_cast<T>(u);
}
}  // namespace detail

inline void dump(const ArithTable& t, std::ostream& os) {
  os.write(detail::kMagic, 8);
  detail::put_le<std::uint32_t>(os, detail::kVersion);
  detail::put_le<u64>(os, t.lo);
  detail::put_le<u64>(os, t.hi);
  for (double v : t.lambda) detail::put_le<double>(os, v);
  os.write(reinterpret_cast<const char*>(t.mobius.data()), static_cast<std::streamsize>(t.mobius.size()));
  os.write(reinterpret_cast<const char*>(t.is_prime.data()),
           static_cast<std::streamsize>(t.is_prime.size()));
}

inline ArithTable load(std::istream& is) {
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, detail::kMagic, 8) != 0) throw IngestError("arith table: bad magic");
  if (detail::get_le<std::uint32_t>(is) != detail::kVersion)
    throw IngestError("arith table: unsupported version");
  ArithTable t;
  t.lo = detail::get_le<u64>(is);
  t.hi = detail::get_le<u64>(is);
  if (t.lo < 1 || t.hi < t.lo) throw IngestError("arith table: bad window");
  const u64 n = t.hi - t.lo + 1;
  t.lambda.resize(n);
  for (auto& v : t.lambda) v = detail::get_le<double>(is);
  t.mobius.resize(n);
  t.is_prime.resize(n);
  is.read(reinterpret_cast<char*>(t.mobius.data()), static_cast<std::streamsize>(n));
  is.read(reinterpret_cast<char*>(t.is_prime.data()), static_cast<std::streamsize>(n));
  if (!is) throw IngestError("arith table: truncated stream");
  return t;
}

}  // namespace circle::arith
