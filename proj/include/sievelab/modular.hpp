#pragma once

// Exact integer and modular arithmetic shared by every other module.
// All residues are reduced into [0, m). Products go through 128-bit
// intermediates, so any modulus below 2^63 is safe.

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace sievelab {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

/// Largest modulus accepted by the exponential-sum kernels (q*q1*q2 < 2^40).
inline constexpr i64 kModulusCap = i64{1} << 40;

/// Canonical residue of x modulo m (m >= 1).
constexpr i64 mod_floor(i64 x, i64 m) {
  const i64 r = x % m;
  return r < 0 ? r + m : r;
}

constexpr i64 mul_mod(i64 a, i64 b, i64 m) {
  return static_cast<i64>(static_cast<i128>(a) * b % m);
}

i64 pow_mod(i64 base, u64 exp, i64 m);

/// Inverse of x modulo m; throws NotInvertible when gcd(x, m) > 1.
i64 inv_mod(i64 x, i64 m);

/// Inverse of x modulo m, or -1 when gcd(x, m) > 1.
i64 try_inv_mod(i64 x, i64 m) noexcept;

/// Deterministic Miller-Rabin, exact for every n < 2^64.
bool is_prime(u64 n);

/// All primes in [lo, hi], ascending. Segmented sieve of Eratosthenes.
std::vector<i64> primes_in(i64 lo, i64 hi);

/// Prime factorization by trial division, as (prime, exponent) pairs.
std::vector<std::pair<i64, int>> factorize(i64 n);

i64 gcd(i64 a, i64 b);
i64 gcd(i64 a, i64 b, i64 c);
i64 euler_phi(i64 n);
i64 divisor_count(i64 n);
int mobius(i64 n);
std::vector<i64> divisors(i64 n);

/// Generator of (Z/p^power Z)^*, power in {1, 2}. Smallest candidate wins.
i64 primitive_root(i64 p, int power);

/// Multiplicative order of x modulo m, given the group order and its factors.
i64 multiplicative_order(i64 x, i64 m, i64 group_order);

/// Smallest e >= 0 with g^e == y (mod m), baby-step giant-step.
/// Throws NotInGroup when y is not a power of g.
i64 discrete_log(i64 g, i64 y, i64 m, i64 order);

/// A prime p together with p^2.
class PrimeModulus {
 public:
  explicit PrimeModulus(i64 p);

  i64 p() const { return p_; }
  i64 p_squared() const { return p_squared_; }

 private:
  i64 p_;
  i64 p_squared_;
};

/// Exact exponent of a root of unity: e(num/den) = exp(2*pi*i*num/den).
/// Always kept reduced, 0 <= num < den, gcd(num, den) = 1, zero is 0/1.
class RationalAngle {
 public:
  RationalAngle() = default;
  RationalAngle(i64 num, i64 den);

  i64 num() const { return num_; }
  i64 den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  std::complex<double> to_complex() const;

  RationalAngle operator+(const RationalAngle& o) const;
  RationalAngle operator-() const;
  RationalAngle operator-(const RationalAngle& o) const { return *this + (-o); }
  RationalAngle& operator+=(const RationalAngle& o) { return *this = *this + o; }

  friend bool operator==(const RationalAngle&, const RationalAngle&) = default;
  friend auto operator<=>(const RationalAngle&, const RationalAngle&) = default;

 private:
  i64 num_ = 0;
  i64 den_ = 1;
};

/// e(num/den) for arbitrary integer num, with the argument folded into
/// [-1/2, 1/2] before the trigonometric call.
std::complex<double> unit_root(i64 num, i64 den);

/// Table of e(k/den) for k in [0, den).
class RootTable {
 public:
  explicit RootTable(i64 den);

  i64 den() const { return static_cast<i64>(roots_.size()); }
  const std::complex<double>& operator[](i64 k) const { return roots_[static_cast<std::size_t>(k)]; }
  std::complex<double> at(i64 k) const { return roots_[static_cast<std::size_t>(mod_floor(k, den()))]; }

 private:
  std::vector<std::complex<double>> roots_;
};

}  // namespace sievelab
