#include "sievelab/modular.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <unordered_map>

#include "sievelab/errors.hpp"

namespace sievelab {

i64 pow_mod(i64 base, u64 exp, i64 m) {
  if (m < 1) throw InvalidArgument("pow_mod modulus must be >= 1");
  if (m == 1) return 0;
  i64 result = 1;
  i64 b = mod_floor(base, m);
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, b, m);
    b = mul_mod(b, b, m);
    exp >>= 1U;
  }
  return result;
}

i64 try_inv_mod(i64 x, i64 m) noexcept {
  if (m == 1) return 0;
  i64 old_r = mod_floor(x, m), r = m;
  i64 old_s = 1, s = 0;
  while (r != 0) {
    const i64 quot = old_r / r;
    old_r = std::exchange(r, old_r - quot * r);
    old_s = std::exchange(s, old_s - quot * s);
  }
  if (old_r != 1) return -1;
  return mod_floor(old_s, m);
}

i64 inv_mod(i64 x, i64 m) {
  if (m < 1) throw InvalidArgument("inv_mod modulus must be >= 1");
  const i64 y = try_inv_mod(x, m);
  if (y < 0) {
    throw NotInvertible(std::to_string(x) + " mod " + std::to_string(m));
  }
  return y;
}

namespace {

u64 mul_mod_u(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 pow_mod_u(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1U) r = mul_mod_u(r, b, m);
    b = mul_mod_u(b, b, m);
    e >>= 1U;
  }
  return r;
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  // First twelve primes: a deterministic witness set for all n < 3.3e24.
  constexpr u64 kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kWitnesses) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (u64 a : kWitnesses) {
    u64 x = pow_mod_u(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod_u(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<i64> primes_in(i64 lo, i64 hi) {
  std::vector<i64> out;
  lo = std::max<i64>(lo, 2);
  if (hi < lo) return out;

  const auto root = static_cast<i64>(std::sqrt(static_cast<double>(hi))) + 1;
  std::vector<char> small(static_cast<std::size_t>(root + 1), 1);
  std::vector<i64> base;
  for (i64 i = 2; i <= root; ++i) {
    if (!small[static_cast<std::size_t>(i)]) continue;
    base.push_back(i);
    for (i64 j = i * i; j <= root; j += i) small[static_cast<std::size_t>(j)] = 0;
  }

  constexpr i64 kSegment = i64{1} << 18;
  std::vector<char> seg;
  for (i64 start = lo; start <= hi; start += kSegment) {
    const i64 stop = std::min(hi, start + kSegment - 1);
    seg.assign(static_cast<std::size_t>(stop - start + 1), 1);
    for (i64 p : base) {
      if (p * p > stop) break;
      i64 first = std::max(p * p, (start + p - 1) / p * p);
      for (i64 j = first; j <= stop; j += p) seg[static_cast<std::size_t>(j - start)] = 0;
    }
    for (i64 i = start; i <= stop; ++i) {
      if (seg[static_cast<std::size_t>(i - start)]) out.push_back(i);
    }
  }
  return out;
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
  if (n < 1) throw InvalidArgument("factorize requires n >= 1");
  std::vector<std::pair<i64, int>> out;
  for (i64 d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d != 0) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }
i64 gcd(i64 a, i64 b, i64 c) { return std::gcd(std::gcd(a, b), c); }

i64 euler_phi(i64 n) {
  i64 phi = n;
  for (auto [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

i64 divisor_count(i64 n) {
  i64 tau = 1;
  for (auto [p, e] : factorize(n)) tau *= e + 1;
  return tau;
}

int mobius(i64 n) {
  if (n == 0) return 0;
  int mu = 1;
  for (auto [p, e] : factorize(n < 0 ? -n : n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

std::vector<i64> divisors(i64 n) {
  std::vector<i64> out{1};
  for (auto [p, e] : factorize(n)) {
    const std::size_t count = out.size();
    i64 pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < count; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

i64 multiplicative_order(i64 x, i64 m, i64 group_order) {
  i64 order = group_order;
  for (auto [r, e] : factorize(group_order)) {
    for (int k = 0; k < e && pow_mod(x, static_cast<u64>(order / r), m) == 1; ++k) order /= r;
  }
  return order;
}

i64 primitive_root(i64 p, int power) {
  if (power != 1 && power != 2) throw InvalidArgument("primitive_root power must be 1 or 2");
  if (!is_prime(static_cast<u64>(p))) throw InvalidArgument(std::to_string(p) + " is not prime");
  if (p == 2) return power == 1 ? 1 : 3;

  const i64 m = power == 1 ? p : p * p;
  const i64 order = power == 1 ? p - 1 : p * (p - 1);
  const auto factors = factorize(order);
  for (i64 g = 2; g < m; ++g) {
    if (g % p == 0) continue;
    const bool generates = std::all_of(factors.begin(), factors.end(), [&](const auto& f) {
      return pow_mod(g, static_cast<u64>(order / f.first), m) != 1;
    });
    if (generates) return g;
  }
  throw InvalidArgument("no primitive root found");  // unreachable for prime p
}

i64 discrete_log(i64 g, i64 y, i64 m, i64 order) {
  if (order < 1 || m < 1) throw InvalidArgument("discrete_log needs order >= 1, m >= 1");
  y = mod_floor(y, m);
  const auto steps = static_cast<i64>(std::ceil(std::sqrt(static_cast<double>(order))));

  std::unordered_map<i64, i64> baby;
  baby.reserve(static_cast<std::size_t>(steps) * 2);
  i64 cur = 1 % m;
  for (i64 j = 0; j < steps; ++j) {
    baby.try_emplace(cur, j);
    cur = mul_mod(cur, g, m);
  }

  const i64 g_inv = try_inv_mod(g, m);
  if (g_inv < 0) throw NotInGroup("generator not invertible mod " + std::to_string(m));
  const i64 giant = pow_mod(g_inv, static_cast<u64>(steps), m);
  i64 gamma = y;
  for (i64 i = 0; i <= steps; ++i) {
    if (auto it = baby.find(gamma); it != baby.end()) {
      const i64 e = i * steps + it->second;
      if (e < order) return e;
    }
    gamma = mul_mod(gamma, giant, m);
  }
  throw NotInGroup(std::to_string(y) + " not a power of " + std::to_string(g) + " mod " +
                   std::to_string(m));
}

PrimeModulus::PrimeModulus(i64 p) : p_(p), p_squared_(p * p) {
  if (p < 2 || p >= (i64{1} << 31) || !is_prime(static_cast<u64>(p))) {
    throw InvalidArgument(std::to_string(p) + " is not an admissible prime modulus");
  }
}

RationalAngle::RationalAngle(i64 num, i64 den) {
  if (den <= 0) throw InvalidArgument("RationalAngle denominator must be positive");
  num = mod_floor(num, den);
  const i64 g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
  if (num_ == 0) den_ = 1;
}

RationalAngle RationalAngle::operator+(const RationalAngle& o) const {
  const i64 g = std::gcd(den_, o.den_);
  const i64 den = den_ / g * o.den_;
  const i128 num = static_cast<i128>(num_) * (o.den_ / g) + static_cast<i128>(o.num_) * (den_ / g);
  return {static_cast<i64>(num % den), den};
}

RationalAngle RationalAngle::operator-() const { return {den_ - num_, den_}; }

std::complex<double> RationalAngle::to_complex() const { return unit_root(num_, den_); }

std::complex<double> unit_root(i64 num, i64 den) {
  i64 r = mod_floor(num, den);
  if (2 * static_cast<i128>(r) > den) r -= den;
  if (r == 0) return {1.0, 0.0};
  if (2 * static_cast<i128>(r) == den) return {-1.0, 0.0};
  if (4 * static_cast<i128>(r) == den) return {0.0, 1.0};
  if (-4 * static_cast<i128>(r) == den) return {0.0, -1.0};
  const double theta = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den);
  return {std::cos(theta), std::sin(theta)};
}

RootTable::RootTable(i64 den) {
  if (den < 1) throw InvalidArgument("RootTable denominator must be >= 1");
  roots_.resize(static_cast<std::size_t>(den));
  for (i64 k = 0; k < den; ++k) roots_[static_cast<std::size_t>(k)] = unit_root(k, den);
}

}  // namespace sievelab
