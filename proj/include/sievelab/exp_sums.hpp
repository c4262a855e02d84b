#pragma once

// Kloosterman and Ramanujan sums, the three-modulus amplitude sums that
// arise after opening the large-sieve square twice, and checks of every
// pointwise estimate used on them.

#include <complex>
#include <utility>
#include <vector>

#include "sievelab/modular.hpp"

namespace sievelab {

struct SumReport {
  std::complex<double> value;
  double bound = 0.0;
  bool passed = false;
  u64 terms_skipped = 0;
};

/// K(m, n; c) = sum over a*d = 1 (mod c) of e((m*a + n*d)/c).
std::complex<double> kloosterman(i64 m, i64 n, i64 c);

/// c_q(l) = sum over units a mod q of e(a*l/q), by direct summation.
double ramanujan(i64 l, i64 q);

/// c_q(l) by the divisor formula sum_{d | gcd(l,q)} d*mu(q/d).
i64 ramanujan_closed_form(i64 l, i64 q);

/// |K(m,n;c)| against sqrt(gcd(m,n,c)) * sqrt(c) * tau(c).
SumReport weil_check(i64 m, i64 n, i64 c);

struct GcdSum {
  i64 value;  // sum_{d mod q} gcd(d, q)
  i64 bound;  // q * tau(q)
};

GcdSum gcd_sum(i64 q);
i64 gcd_sum_direct(i64 q);

/// Parameters of the amplitude
///   f(x) = inv(x + l*q)*l1/q1 - inv(x)*l2/q2 + inv(x)*l/q,
/// each inverse taken modulo the denominator it sits over.
struct AmplitudeSpec {
  i64 q = 2;
  i64 q1 = 3;
  i64 q2 = 5;
  i64 l = 0;
  i64 l1 = 0;
  i64 l2 = 0;

  i64 modulus() const { return q * q1 * q2; }
  bool distinct() const { return q != q1 && q != q2 && q1 != q2; }
  /// Throws InvalidArgument for non-prime moduli and ModulusOverflow past 2^40.
  void validate() const;
};

/// Seeded trial generator: three distinct primes <= pmax and l, l1, l2
/// uniform in [-lrange, lrange]. Trial k depends only on (seed, k).
AmplitudeSpec random_distinct_spec(u64 seed, u64 trial, i64 pmax, i64 lrange = 100);

struct AmplitudeSum {
  std::complex<double> value;
  u64 terms_skipped = 0;
};

/// S_a = sum over x mod c of e(f(x) - a*x/c), c = q*q1*q2, skipping x where
/// an inverse in f does not exist.
AmplitudeSum amplitude_sum(const AmplitudeSpec& spec, i64 a);

/// S_a for every a in [0, c).
std::vector<std::complex<double>> amplitude_spectrum(const AmplitudeSpec& spec);

/// Numerator of f(x) over c, or -1 when x is skipped.
i64 amplitude_phase(const AmplitudeSpec& spec, i64 x);

/// |S_0 - R(l1/q1) R(-l2/q2) R(l/q)| <= 1e-8 * c. Throws NotDistinct on
/// repeated moduli. The report value is the discrepancy S_0 - product.
SumReport factorization_check(const AmplitudeSpec& spec);

/// sum_{N0 <= n <= N1} e(f(n)) through the finite Fourier completion
///   (1/c) sum_{a mod c} D_a S_a,   D_a = sum_{N0 <= n <= N1} e(a n / c).
std::complex<double> complete_incomplete(const AmplitudeSpec& spec, i64 n0, i64 n1);

/// The same interval sum by direct summation.
std::complex<double> incomplete_direct(const AmplitudeSpec& spec, i64 n0, i64 n1);

struct ErrorTermReport {
  double harmonic_sum = 0.0;    // sum_{0<|a|<=c/2} |S_a| / |a|
  double max_weil_ratio = 0.0;  // max_a |S_a| / (sqrt(gcd(a,c)) sqrt(c) tau(c))
  i64 worst_frequency = 0;
  i64 frequencies_checked = 0;
  u64 terms_skipped = 0;
  bool passed = false;
};

/// Harmonic-weighted error term of the completion plus the per-frequency
/// Weil comparison, which must hold for every a != 0.
ErrorTermReport error_term_bound(const AmplitudeSpec& spec);

}  // namespace sievelab
